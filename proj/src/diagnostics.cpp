// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/diagnostics.hpp"

#include <algorithm>
#include <stdexcept>

namespace ccopt {

namespace {

// {x in dom f, Ax in dom g} plus optional Bx <= b / Bx = b rows
LinearSystem primal_domain_system(const PrimalModel& p, bool with_B, bool B_equality) {
  LinearSystem sys = LinearSystem::whole_space(p.n());
  LinearSystem fd = p.f.domain_system();
  LinearSystem gd = p.g.domain_system();
  if (!fd.representable || !gd.representable) {
    sys.representable = false;
    return sys;
  }
  for (int i = 0; i < fd.rows(); ++i)
    sys.append_row(fd.C.row(i).transpose(), fd.c[i],
                   std::find(fd.eq_rows.begin(), fd.eq_rows.end(), i) != fd.eq_rows.end());
  for (int i = 0; i < gd.rows(); ++i)
    sys.append_row((gd.C.row(i) * p.A).transpose(), gd.c[i],
                   std::find(gd.eq_rows.begin(), gd.eq_rows.end(), i) != gd.eq_rows.end());
  if (with_B)
    for (int i = 0; i < p.r(); ++i) sys.append_row(p.B.row(i).transpose(), p.b[i], B_equality);
  return sys;
}

}  // namespace

Certificate existence_check_primal(const PrimalModel& p, const SolverConfig& cfg) {
  // ALS registry: every piecewise linear-quadratic catalog atom
  if (!p.g.piecewise_linear_quadratic())
    return Certificate::indeterminate_result("g outside the ALS class registry");
  if (!p.g.bounded_below())
    return Certificate::indeterminate_result("g not bounded below: recession sign undecidable");

  if (p.f.is_indicator()) {
    if (!p.f.is_polyhedral())
      return Certificate::indeterminate_result(
          "C = dom f is not polyhedral; the sufficient conditions do not apply");
    LinearSystem sys = primal_domain_system(p, false, false);
    Certificate feas = lp_feasibility(sys.C, sys.c, sys.eq_rows, {}, 0.0, cfg);
    if (!feas.passed()) {
      Certificate out = Certificate::fail(feas.residual, "A C and dom g do not intersect");
      if (const Vec* fk = feas.witness("farkas")) out.set_witness("farkas", *fk);
      return out;
    }
    Certificate out = Certificate::pass(0.0, "polyhedral C, ALS g, feasible, nonnegative recession");
    if (const Vec* w = feas.witness("point")) out.set_witness("point", *w);
    return out;
  }

  // non-indicator f: both parts piecewise linear-quadratic, convex and
  // bounded below, so Theta is ALS with nonnegative recession
  if (!p.f.piecewise_linear_quadratic())
    return Certificate::indeterminate_result("f outside the ALS class registry");
  if (!p.f.bounded_below())
    return Certificate::indeterminate_result("f not bounded below: recession sign undecidable");
  LinearSystem sys = primal_domain_system(p, false, false);
  if (!sys.representable)
    return Certificate::indeterminate_result("domain not polyhedrally representable");
  Certificate feas = lp_feasibility(sys.C, sys.c, sys.eq_rows, {}, 0.0, cfg);
  if (!feas.passed()) {
    Certificate out = Certificate::fail(feas.residual, "dom f and A^{-1} dom g do not intersect");
    if (const Vec* fk = feas.witness("farkas")) out.set_witness("farkas", *fk);
    return out;
  }
  Certificate out = Certificate::pass(0.0, "piecewise linear-quadratic objective, bounded below");
  if (const Vec* w = feas.witness("point")) out.set_witness("point", *w);
  return out;
}

Certificate existence_check_dual(const PrimalModel& p, CardFlavor::Variant variant,
                                 const SolverConfig& cfg) {
  if (!p.f.bounded_below() || !p.g.bounded_below())
    return Certificate::indeterminate_result("bounded-below test undecidable for these atoms");
  LinearSystem sys = primal_domain_system(p, true, variant == CardFlavor::Variant::Zero);
  if (!sys.representable)
    return Certificate::indeterminate_result("domain not polyhedrally representable");
  Certificate feas = lp_feasibility(sys.C, sys.c, sys.eq_rows, {}, 0.0, cfg);
  if (!feas.passed()) {
    Certificate out = Certificate::fail(
        feas.residual, variant == CardFlavor::Variant::Zero
                           ? "no x with x in dom f, Ax in dom g, Bx = b"
                           : "no x with x in dom f, Ax in dom g, Bx <= b");
    if (const Vec* fk = feas.witness("farkas")) out.set_witness("farkas", *fk);
    return out;
  }
  Certificate out = Certificate::pass(0.0, "F bounded below and the Slater-type system is feasible");
  if (const Vec* w = feas.witness("point")) out.set_witness("point", *w);
  return out;
}

Certificate svm_separability(const Mat& points, const Vec& labels, const SolverConfig& cfg) {
  const int r = static_cast<int>(points.rows());
  const int s = static_cast<int>(points.cols());
  if (labels.size() != r) throw std::invalid_argument("labels length must match point count");
  for (int i = 0; i < r; ++i)
    if (labels[i] != 1.0 && labels[i] != -1.0)
      throw std::invalid_argument("labels must be +1 or -1");

  // c_i (<q_i, omega> + omega0) >= 1  as  -c_i [q_i; 1]^T x <= -1
  Mat C(r, s + 1);
  Vec c(r);
  for (int i = 0; i < r; ++i) {
    C.row(i).head(s) = -labels[i] * points.row(i);
    C(i, s) = -labels[i];
    c[i] = -1.0;
  }
  Certificate cert = lp_feasibility(C, c, {}, {}, 0.0, cfg);
  if (cert.passed()) cert.detail = "strictly separable";
  else if (cert.verdict == Certificate::Verdict::Fail) cert.detail = "not separable";
  return cert;
}

}  // namespace ccopt
