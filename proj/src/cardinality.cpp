// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/cardinality.hpp"

#include <cmath>
#include <stdexcept>

namespace ccopt {

namespace {
void check_weights(const Vec& w) {
  for (int i = 0; i < w.size(); ++i)
    if (!(w[i] > 0.0)) throw std::invalid_argument("cardinality weights must be strictly positive");
}

void check_dim(const CardFlavor& f, const Vec& u) {
  if (u.size() != f.weights.size())
    throw std::invalid_argument("dimension mismatch: flavor r=" + std::to_string(f.weights.size()) +
                                ", argument dim " + std::to_string(u.size()));
}
}  // namespace

CardFlavor CardFlavor::primal(Variant v, Vec lambda) {
  check_weights(lambda);
  return CardFlavor{Side::PrimalPhi, v, std::move(lambda)};
}

CardFlavor CardFlavor::dual(Variant v, Vec mu) {
  check_weights(mu);
  return CardFlavor{Side::DualPsi, v, std::move(mu)};
}

CardFlavor CardFlavor::paired_dual(Vec mu) const {
  if (side != Side::PrimalPhi) throw std::logic_error("paired_dual applies to primal flavors");
  return dual(variant, std::move(mu));
}

double resolve_zero_tol(double zero_tol, const Vec& point) {
  if (zero_tol >= 0.0) return zero_tol;
  return support_tol(kDefaultZeroTolBase, point);
}

std::vector<int> support_set(const Vec& v, double zero_tol) {
  double tol = resolve_zero_tol(zero_tol, v);
  std::vector<int> s;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > tol) s.push_back(i);
  return s;
}

ExtReal card_eval(const CardFlavor& flavor, const Vec& u, double zero_tol) {
  check_dim(flavor, u);
  double tol = resolve_zero_tol(zero_tol, u);
  double v = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    if (flavor.side == CardFlavor::Side::DualPsi && flavor.variant == CardFlavor::Variant::Plus &&
        u[i] < -tol)
      return ExtReal::inf();
    bool counted = (flavor.side == CardFlavor::Side::PrimalPhi &&
                    flavor.variant == CardFlavor::Variant::Plus)
                       ? u[i] > tol
                       : std::abs(u[i]) > tol;
    if (counted) v += flavor.weights[i];
  }
  return v;
}

Certificate card_subdiff_check(const CardFlavor& flavor, const Vec& point, const Vec& candidate,
                               double zero_tol) {
  check_dim(flavor, point);
  check_dim(flavor, candidate);
  const double tol_p = resolve_zero_tol(zero_tol, point);
  const double tol_c = resolve_zero_tol(zero_tol, candidate);
  const bool plus = flavor.variant == CardFlavor::Variant::Plus;
  const bool dual = flavor.side == CardFlavor::Side::DualPsi;

  if (dual && plus) {
    for (int i = 0; i < point.size(); ++i)
      if (point[i] < -tol_p) {
        Certificate c = Certificate::fail(-point[i], "Psi+ point outside the nonnegative orthant");
        c.domain_violation = true;
        return c;
      }
  }

  double worst = 0.0;
  for (int i = 0; i < point.size(); ++i) {
    bool point_zero = std::abs(point[i]) <= tol_p;
    double viol = 0.0;
    if (point_zero) {
      // dPhi0 / dPsi0 / dPsi+: free at zeros; dPhi+: nonnegative ray
      if (!dual && plus) viol = std::max(0.0, -candidate[i] - tol_c);
    } else {
      viol = std::max(0.0, std::abs(candidate[i]) - tol_c);
    }
    worst = std::max(worst, viol);
  }
  return worst <= 0.0 ? Certificate::pass(0.0)
                      : Certificate::fail(worst, "candidate violates the support pattern");
}

Vec card_subgradient_select(const CardFlavor& flavor, const Vec& point,
                            const std::optional<Vec>& target, double zero_tol) {
  check_dim(flavor, point);
  if (target) check_dim(flavor, *target);
  const double tol_p = resolve_zero_tol(zero_tol, point);
  const bool plus = flavor.variant == CardFlavor::Variant::Plus;
  const bool dual = flavor.side == CardFlavor::Side::DualPsi;

  if (dual && plus) {
    for (int i = 0; i < point.size(); ++i)
      if (point[i] < -tol_p)
        throw std::domain_error("empty subdifferential: Psi+ point outside the nonnegative orthant");
  }

  Vec out = Vec::Zero(point.size());
  if (!target) return out;  // minimum-norm member
  for (int i = 0; i < point.size(); ++i) {
    if (std::abs(point[i]) <= tol_p) {
      double ti = (*target)[i];
      out[i] = (!dual && plus) ? std::max(0.0, ti) : ti;
    }
  }
  return out;
}

}  // namespace ccopt
