// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccopt/certificate.hpp"
#include "ccopt/ext_real.hpp"
#include "ccopt/types.hpp"

namespace ccopt {

enum class AtomKind {
  Zero,                        // psi(x) = 0
  QuadraticHalfSqNorm,         // psi(x) = 1/2 sum_{i in mask} (x_i - a_i)^2
  L1Norm,                      // psi(x) = ||x - a||_1
  IndicatorBox,                // psi(x) = delta(L <= x <= U), entries may be +-inf
  IndicatorNonneg,             // psi(x) = delta(x >= 0)
  IndicatorZero,               // psi(x) = delta(x = 0)
  IndicatorPolyhedron,         // psi(x) = delta(C x <= c)
  LinearPlusIndicatorInfBall,  // psi(x) = <a, x> + delta(||x||_inf <= 1)
  IndicatorExpEpigraph,        // psi(x) = delta(x2 >= exp(x1)), dim 2; the
                               // one non-polyhedral indicator, kept so the
                               // existence checkers have a shape to reject
};

std::string atom_kind_name(AtomKind k);

// Subdifferential of a catalog atom at a point. Always one of: a product
// of (possibly unbounded) intervals, a finitely generated cone, or empty
// (point outside the domain). Membership and projection are closed form
// except the cone case, which is a tiny nonnegative least squares.
struct SubdiffSet {
  enum class Kind { Empty, IntervalProduct, GeneratedCone };
  Kind kind = Kind::Empty;
  Vec lo, hi;      // IntervalProduct bounds, +-inf entries allowed
  Mat generators;  // GeneratedCone: { generators * nu : nu >= 0 }

  bool empty() const { return kind == Kind::Empty; }
  Vec project(const Vec& target) const;
  double dist(const Vec& target) const;

  static SubdiffSet intervals(Vec lo, Vec hi);
  static SubdiffSet point(const Vec& p) { return intervals(p, p); }
  static SubdiffSet free_space(int dim);
  static SubdiffSet cone(Mat generators);
  static SubdiffSet empty_set() { return SubdiffSet{}; }
};

// Polyhedral description {x : C x <= c, equality on eq_rows} of a domain.
// `representable` is false when the set is not a polyhedron (exp epigraph).
struct LinearSystem {
  int dim = 0;
  Mat C;
  Vec c;
  std::vector<int> eq_rows;
  bool representable = true;

  int rows() const { return static_cast<int>(C.rows()); }
  static LinearSystem whole_space(int dim);
  void append_row(const Vec& row, double rhs, bool equality);
};

// One proper lsc convex function from the catalog. Immutable after
// construction; every operation is a pure function of the arguments.
class ConvexAtom {
 public:
  static ConvexAtom zero(int dim);
  static ConvexAtom quadratic(Vec center);
  static ConvexAtom quadratic_masked(Vec center, std::vector<std::uint8_t> mask);
  static ConvexAtom l1(Vec center);
  static ConvexAtom box(Vec lower, Vec upper);
  static ConvexAtom nonneg(int dim);
  static ConvexAtom indicator_zero(int dim);
  static ConvexAtom polyhedron(Mat C, Vec c);
  static ConvexAtom linear_inf_ball(Vec center);
  static ConvexAtom exp_epigraph();

  AtomKind kind() const { return kind_; }
  int dim() const { return dim_; }

  // psi(x); +inf exactly off the domain (with the shared polyhedral slack).
  ExtReal eval(const Vec& x) const;

  // psi*(q) by registered closed form; throws for kinds without one.
  bool has_conjugate() const;
  ExtReal conjugate(const Vec& q) const;

  // argmin_p psi(p) + ||p - v||^2 / (2 t)
  Vec prox(const Vec& v, double t) const;
  // prox of t * psi* via the Moreau identity
  Vec conj_prox(const Vec& v, double t) const;

  // Fenchel-Young residual test of q in subdiff psi(x). Falls back to the
  // subdifferential-set distance for kinds without a conjugate.
  Certificate subdiff_check(const Vec& x, const Vec& q, double tol) const;

  // Membership of x in dom psi, or ri(dom psi) when relative_interior is
  // set. Polyhedral atoms answer plain membership (the "ri" can be
  // dropped); full-domain atoms always pass.
  Certificate domain_check(const Vec& x, bool relative_interior) const;
  Certificate conj_domain_check(const Vec& q, bool relative_interior) const;

  // kink_tol controls the activity classification (which bounds count as
  // attained, which coordinates as kinks); negative means the shared
  // polyhedral slack. Certificates pass their own tolerance so that
  // solver-level noise below it cannot flip a set from a ray to a point.
  SubdiffSet subdiff(const Vec& x, double kink_tol = -1.0) const;
  SubdiffSet conj_subdiff(const Vec& q, double kink_tol = -1.0) const;

  // Euclidean projections onto dom psi / dom psi*; closed form per kind.
  Vec domain_project(const Vec& x) const;
  Vec conj_domain_project(const Vec& q) const;

  LinearSystem domain_system() const;
  LinearSystem conj_domain_system() const;

  bool is_polyhedral() const;
  bool conj_is_polyhedral() const;
  bool is_indicator() const;
  bool bounded_below() const;
  bool piecewise_linear_quadratic() const;
  bool strongly_convex() const;
  bool domain_is_whole_space() const;

  bool mask_flag(int i) const { return mask_.empty() || mask_[static_cast<size_t>(i)] != 0; }
  bool mask_all() const;

  const Vec& center() const { return a_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  const Vec& lower() const { return lo_; }
  const Vec& upper() const { return hi_; }
  const Mat& poly_C() const { return C_; }
  const Vec& poly_c() const { return c_; }

 private:
  ConvexAtom(AtomKind kind, int dim) : kind_(kind), dim_(dim) {}
  void check_dim(const Vec& x) const;

  AtomKind kind_;
  int dim_;
  Vec a_;
  std::vector<std::uint8_t> mask_;  // empty = all selected
  Vec lo_, hi_;
  Mat C_;
  Vec c_;
};

// Projection onto {C x <= c} by coordinate ascent on the dual NNQP.
Vec project_polyhedron(const Mat& C, const Vec& c, const Vec& v);

// min_{nu >= 0} || G nu - target ||^2, returns G nu. Small dense problems.
Vec nnls_cone_point(const Mat& G, const Vec& target);

}  // namespace ccopt
