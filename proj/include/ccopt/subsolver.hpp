// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "ccopt/certificate.hpp"
#include "ccopt/graph_solver.hpp"
#include "ccopt/model.hpp"

namespace ccopt {

enum class SolveStatus { Optimal, Unbounded, Infeasible, Indeterminate };
std::string solve_status_name(SolveStatus s);

// One convex program obtained from (P) or (D) by fixing the support
// subset S of the cardinality term:
//   primal, Phi+:  min Theta(x)  s.t. (B x - b)_i <= 0  for i not in S
//   primal, Phi0:  min Theta(x)  s.t. (B x - b)_i  = 0  for i not in S
//   dual,   Psi+:  min Xi(w)    s.t. z_i = 0 off S, z_i >= 0 on S
//   dual,   Psi0:  min Xi(w)    s.t. z_i = 0 off S
struct RestrictedProgram {
  enum class Base { PrimalTheta, DualXi };
  enum class ConstraintFlavor {
    InequalityOnComplement,
    EqualityOnComplement,
    DualPlus,
    DualZero,
  };

  Base base;
  ConstraintFlavor flavor;
  const PrimalModel* primal = nullptr;
  const DualModel* dual = nullptr;
  std::vector<int> subset;  // S, sorted ascending

  int r() const;
  std::vector<int> complement() const;

  static RestrictedProgram primal_program(const PrimalModel& p, std::vector<int> subset);
  static RestrictedProgram dual_program(const DualModel& d, std::vector<int> subset);
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Indeterminate;
  Vec point;        // x (primal) or w = [y; z] (dual)
  Vec multipliers;  // full r-vector; zero on S by construction (primal side),
                    // the KKT u-vector on the dual side
  Vec aux_dual;     // primal: y in subdiff g(Ax); dual: x in subdiff f*(-Q^T w)
  ExtReal value = 0.0;  // restricted convex-part optimum; -inf / +inf for
                        // Unbounded / Infeasible
  std::array<double, 3> kkt_residuals{0.0, 0.0, 0.0};  // stationarity,
                                                       // complementarity,
                                                       // feasibility
  int iterations = 0;
  Vec unbounded_direction;     // status == Unbounded
  Vec infeasibility_witness;   // status == Infeasible (Farkas vector)
  std::string message;
};

SolveOutcome solve_restricted(const RestrictedProgram& prog, const SolverConfig& cfg);

// Feasibility of {x : C x <= c} with equalities on eq_rows and slack at
// least `margin` on strict_rows. Pass carries the witness point; fail
// carries a Farkas certificate y >= 0 (free on equalities) with
// C^T y = 0 and <c', y> < 0 for the margin-shifted right-hand side.
Certificate lp_feasibility(const Mat& C, const Vec& c, const std::vector<int>& eq_rows,
                           const std::vector<int>& strict_rows, double margin,
                           const SolverConfig& cfg = SolverConfig{});

// KKT residual triple of a candidate (point, multipliers) for a
// restricted program: (stationarity distance, max complementarity /
// multiplier-sign violation, max feasibility violation).
std::array<double, 3> kkt_residual(const RestrictedProgram& prog, const Vec& point,
                                   const Vec& multipliers, const SolverConfig& cfg = SolverConfig{});

namespace detail {
// Assembled graph form of a restricted program plus the metadata needed
// to read multipliers back out.
struct AssembledProgram {
  GraphProblem gp;
  int g_block_offset = -1;   // rows of the g piece (primal side)
  int cons_block_offset = -1;  // rows of the constraint piece (primal side)
  std::vector<int> cons_rows;  // original indices of constrained rows
  bool dual_side = false;
};
AssembledProgram assemble(const RestrictedProgram& prog);

// Polyhedral feasibility system of the restricted program's constraints
// and domains. representable=false when a domain is not polyhedral.
LinearSystem feasibility_system(const RestrictedProgram& prog);

// Try to certify that the assembled program is unbounded below: solve the
// recession problem over normalized directions and verify the witness by
// evaluation from `base_point`.
struct RecessionCertificate {
  bool unbounded = false;
  Vec direction;
};
RecessionCertificate certify_unbounded(const GraphProblem& gp, const Vec& base_point,
                                       const SolverConfig& cfg);
}  // namespace detail

}  // namespace ccopt
