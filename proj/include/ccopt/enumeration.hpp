// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccopt/model.hpp"
#include "ccopt/subsolver.hpp"

namespace ccopt {

// Subsets of [r] ordered by increasing cardinality, lexicographic within a
// cardinality. The sweep order fixes the deterministic tie-breaking of the
// reports (ties go to the smaller, lexicographically earlier subset).
std::vector<std::vector<int>> all_subsets(int r);
std::uint32_t subset_mask(const std::vector<int>& subset);

struct SubsetRecord {
  std::vector<int> subset;
  std::uint32_t mask = 0;
  SolveStatus status = SolveStatus::Indeterminate;
  ExtReal restricted_value = 0.0;  // convex-part optimum
  ExtReal total_value = 0.0;       // restricted + sum of weights over S
};

struct GlobalReport {
  ExtReal best_value = ExtReal::inf();
  Vec best_point;  // empty when not attained
  std::vector<int> best_subset;
  bool attained = false;
  bool any_indeterminate = false;
  std::vector<SubsetRecord> per_subset;
};

enum class Which { Primal, Dual };

constexpr int kDefaultSubsetCap = 20;

// Exact global solve of (P) or (D) by sweeping every support subset and
// solving the restricted convex program. One Unbounded subset drives the
// value to -inf; the sweep still completes for diagnostics.
GlobalReport enumerate_global(const PrimalModel& p, int cap = kDefaultSubsetCap,
                              const SolverConfig& cfg = SolverConfig{});
GlobalReport enumerate_global(const DualModel& d, int cap = kDefaultSubsetCap,
                              const SolverConfig& cfg = SolverConfig{});

// Optimal values of the three restricted families around a dual support
// set T*: S = T* (eta0), S proper subset of T* (eta1, +inf if T* empty),
// S not a subset of T* (eta2, +inf if T* = [r]).
struct Thresholds {
  ExtReal eta0 = 0.0;
  ExtReal eta1 = 0.0;
  ExtReal eta2 = 0.0;
  std::vector<int> T_star;
};

// When `reference` is supplied it must be optimal for the S = T* program
// and of smallest cardinality (equivalently eta1 > eta0); violations throw.
Thresholds compute_thresholds(const DualModel& d, const std::vector<int>& T_star,
                              const SolverConfig& cfg = SolverConfig{},
                              const std::optional<Vec>& reference = std::nullopt,
                              int cap = kDefaultSubsetCap);

// Weights making the smallest-cardinality local minimizer with support T*
// a global minimizer: sum over T* stays within eta1 - eta0 and every
// complement weight strictly exceeds max(eta1 - eta2, 0).
Vec select_mu(const Thresholds& th, int r, double slack);

// Lattice minimum of the objective over [lo, hi]^dim; test oracle only.
ExtReal brute_force_grid(const PrimalModel& p, const Vec& lo, const Vec& hi, int points_per_axis);
ExtReal brute_force_grid(const DualModel& d, const Vec& lo, const Vec& hi, int points_per_axis);

// Finite-difference bound on the convex part's local Lipschitz constant
// over the box; pairs with brute_force_grid in oracle comparisons.
double lipschitz_estimate(const PrimalModel& p, const Vec& lo, const Vec& hi,
                          int samples_per_axis = 5);

}  // namespace ccopt
