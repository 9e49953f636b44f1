// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <vector>

#include "ccopt/atoms.hpp"
#include "ccopt/ext_real.hpp"
#include "ccopt/types.hpp"

namespace ccopt {

// Separable block function used to assemble solver problems. Covers the
// atom catalog (directly or through conjugates via Moreau) plus the three
// builtin shapes the feasibility and witness-search problems need.
struct Piece {
  enum class Kind {
    AtomFn,    // atom->eval / prox
    AtomConj,  // atom->conjugate / conj_prox
    BoxLinear, // <linear, u> + indicator of [lo, hi]
    HalfSq,    // 1/2 ||u||^2
    HalfSqPos, // 1/2 ||max(u,0)||^2
  };

  Kind kind = Kind::BoxLinear;
  const ConvexAtom* atom = nullptr;  // non-owning; models outlive solves
  int dim = 0;
  Vec linear;  // BoxLinear only; empty means zero
  Vec lo, hi;  // BoxLinear only

  static Piece atom_fn(const ConvexAtom* a);
  static Piece atom_conj(const ConvexAtom* a);
  static Piece box_linear(Vec lo, Vec hi, Vec linear = Vec());
  static Piece free_block(int dim);
  static Piece half_sq(int dim);
  static Piece half_sq_pos(int dim);

  ExtReal eval(const Vec& u) const;
  Vec prox(const Vec& u, double t) const;
  SubdiffSet subdiff(const Vec& u) const;
  // max violation of the piece's effective domain at u
  double domain_violation(const Vec& u) const;
};

// min sum_j h_j(x_j) + sum_k p_k(v_k)   s.t.  v = M x - q
// where x_j, v_k are consecutive blocks covering x and v exactly.
struct GraphProblem {
  std::vector<Piece> h;
  std::vector<Piece> p;
  Mat M;
  Vec q;

  int nx() const { return static_cast<int>(M.cols()); }
  int nv() const { return static_cast<int>(M.rows()); }
  void validate() const;

  ExtReal objective(const Vec& x, const Vec& v) const;
};

struct SolverConfig {
  double tol = 1e-8;
  int max_iter = 100000;
  double divergence_threshold = 1e6;
  double over_relaxation = 1.6;
  double rho = 1.0;
  bool adaptive_rho = true;
  int check_every = 25;
  int threads = 0;  // subset sweeps; 0 = pick from CCOPT_THREADS / hardware
};

// Result of the splitting loop. x and v are the prox (half) iterates, so
// they satisfy the separable domains exactly; lambda in dsubdiff p(v) and
// xgrad in dsubdiff h(x) hold exactly by prox optimality, which makes the
// reported residuals honest.
struct GraphResult {
  bool converged = false;
  bool diverged = false;
  Vec x, v;
  Vec lambda;  // dual for the coupling constraint, in subdiff p(v)
  Vec xgrad;   // in subdiff h(x); at optimality xgrad + M^T lambda = 0
  double r_stat = 0.0;
  double r_feas = 0.0;
  int iterations = 0;
  double objective = 0.0;
};

// Over-relaxed ADMM on the graph form with one cached factorization of
// (I + M^T M). Diagonal row scaling is applied to BoxLinear blocks only;
// the other pieces are not invariant under row scaling.
GraphResult graph_solve(const GraphProblem& gp, const SolverConfig& cfg,
                        const Vec* x0 = nullptr);

}  // namespace ccopt
