// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include "ccopt/atoms.hpp"
#include "ccopt/cardinality.hpp"
#include "ccopt/ext_real.hpp"
#include "ccopt/types.hpp"

namespace ccopt {

// Primal problem data:
//   F(x) = f(x) + g(A x) + Phi_lambda(B x - b),  x in R^n
// with f on R^n, g on R^m, A (m x n), B (r x n), b in R^r.
struct PrimalModel {
  ConvexAtom f;
  ConvexAtom g;
  Mat A;
  Mat B;
  Vec b;
  CardFlavor card;  // PrimalPhi, weights lambda

  int n() const { return static_cast<int>(A.cols()); }
  int m() const { return static_cast<int>(A.rows()); }
  int r() const { return static_cast<int>(B.rows()); }
};

// Stationary dual problem data:
//   G(w) = <b, z> + f*(-A^T y - B^T z) + g*(y) + Psi_mu(z),  w = [y; z]
// f and g are the primal atoms; conjugates are evaluated through their
// registered closed forms. The convex part is
//   Xi(w) = f*(-Q^T w) + g*(y) + <b, z>,  Q = [A; B].
struct DualModel {
  ConvexAtom f;
  ConvexAtom g;
  Mat A;
  Mat B;
  Vec b;
  CardFlavor card;  // DualPsi, weights mu

  int n() const { return static_cast<int>(A.cols()); }
  int m() const { return static_cast<int>(A.rows()); }
  int r() const { return static_cast<int>(B.rows()); }
  int wdim() const { return m() + r(); }

  Vec y_part(const Vec& w) const { return w.head(m()); }
  Vec z_part(const Vec& w) const { return w.tail(r()); }
  // -Q^T w = -A^T y - B^T z
  Vec minus_Qt_w(const Vec& w) const;
};

PrimalModel build_primal(ConvexAtom f, ConvexAtom g, Mat A, Mat B, Vec b,
                         CardFlavor::Variant variant, Vec lambda);

// Mechanical stationary dual: keeps A, B, b, pairs Phi+ with Psi+ and
// Phi0 with Psi0, and requires registered conjugates for f and g.
DualModel derive_dual(const PrimalModel& p, Vec mu);

struct ObjectiveValue {
  ExtReal convex_part;  // Theta(x) or Xi(w)
  ExtReal card_part;    // Phi_lambda(Bx - b) or Psi_mu(z)
  ExtReal total;
};

ObjectiveValue objective_eval(const PrimalModel& p, const Vec& x, double zero_tol = -1.0);
ObjectiveValue objective_eval(const DualModel& d, const Vec& w, double zero_tol = -1.0);

// Convex parts alone.
ExtReal theta_eval(const PrimalModel& p, const Vec& x);
ExtReal xi_eval(const DualModel& d, const Vec& w);

}  // namespace ccopt
