// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>
#include <vector>

#include "ccopt/certificate.hpp"
#include "ccopt/ext_real.hpp"
#include "ccopt/types.hpp"

namespace ccopt {

// Weighted cardinality term. PrimalPhi counts entries of u = Bx - b,
// DualPsi counts entries of the dual variable z. The Plus variant counts
// strictly positive entries on the primal side and adds the nonnegativity
// indicator on the dual side.
struct CardFlavor {
  enum class Side { PrimalPhi, DualPsi };
  enum class Variant { Zero, Plus };

  Side side = Side::PrimalPhi;
  Variant variant = Variant::Zero;
  Vec weights;  // lambda or mu, strictly positive

  int r() const { return static_cast<int>(weights.size()); }
  static CardFlavor primal(Variant v, Vec lambda);
  static CardFlavor dual(Variant v, Vec mu);
  CardFlavor paired_dual(Vec mu) const;  // Phi+ <-> Psi+, Phi0 <-> Psi0
};

constexpr double kDefaultZeroTolBase = 1e-8;

// Resolves the caller tolerance: negative means "use the default rule
// 1e-8 * (1 + ||v||_inf)".
double resolve_zero_tol(double zero_tol, const Vec& point);

// Phi_{0,lambda}, Phi_{+,lambda}, Psi_{0,mu}, Psi_{+,mu}
ExtReal card_eval(const CardFlavor& flavor, const Vec& u, double zero_tol = -1.0);

// Membership of `candidate` in the limiting subdifferential of the flavor
// at `point`, tested componentwise against the support pattern.
Certificate card_subdiff_check(const CardFlavor& flavor, const Vec& point, const Vec& candidate,
                               double zero_tol = -1.0);

// Member of the limiting subdifferential closest to `target` in Euclidean
// norm; no target gives the minimum-norm member (all zeros).
Vec card_subgradient_select(const CardFlavor& flavor, const Vec& point,
                            const std::optional<Vec>& target, double zero_tol = -1.0);

// Indices with |v_i| > tol (the support set I(v)).
std::vector<int> support_set(const Vec& v, double zero_tol = -1.0);

}  // namespace ccopt
