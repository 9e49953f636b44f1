// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <Eigen/Dense>

namespace ccopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Absolute slack for membership tests in polyhedral sets, scaled by the
// query point. One rule everywhere so support identification stays
// consistent across modules.
inline double poly_slack(const Vec& x) {
  double nx = x.size() == 0 ? 0.0 : x.lpNorm<Eigen::Infinity>();
  return 1e-9 * (1.0 + nx);
}

// Tolerance below which a component counts as zero for the cardinality
// functions and support sets. `base` defaults to 1e-8 at call sites.
inline double support_tol(double base, const Vec& v) {
  double nv = v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  return base * (1.0 + nv);
}

}  // namespace ccopt
