// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <vector>

#include "ccopt/certificate.hpp"
#include "ccopt/model.hpp"
#include "ccopt/subsolver.hpp"

namespace ccopt {

// Verdict plus the inclusion witnesses. The witness search poses the
// existential subdifferential inclusion as a least-squares problem over
// the product of closed-form subdifferential sets and solves it with the
// same splitting engine as the restricted programs.
struct StationarityCertificate {
  Certificate cert;
  std::vector<int> support;  // J* = I(Bx - b) for primal, T* = I(z) for dual
  bool passed() const { return cert.passed(); }
};

double model_data_scale(const PrimalModel& p);
double model_data_scale(const DualModel& d);

// default tol: 1e-7 * (1 + max-abs model datum)
constexpr double kStationarityTolBase = 1e-7;

// 0 in subdiff f(x) + A^T subdiff g(Ax) + B^T subdiff Phi_lambda(Bx - b).
// Witnesses on pass: "y" in subdiff g(Ax), "z" in subdiff Phi, "s" in
// subdiff f(x) with s + A^T y + B^T z ~ 0.
StationarityCertificate check_stationary_primal(const PrimalModel& p, const Vec& x,
                                                double tol = -1.0,
                                                const SolverConfig& cfg = SolverConfig{});

// Exists x in subdiff f*(-Q^T w) with A x in subdiff g*(y) and
// B x - b in subdiff Psi_mu(z). Witnesses: "x" (the primal recovery),
// "s" in subdiff g*(y), "u" in subdiff Psi_mu(z).
StationarityCertificate check_stationary_dual(const DualModel& d, const Vec& w, double tol = -1.0,
                                              const SolverConfig& cfg = SolverConfig{});

// Generalized Slater condition of the restricted program at `support`
// (primal: J*, dual: T*). The variant picks the Plus/Zero constraint
// shape, independent of the model's own flavor. The ri conditions reduce
// to plain feasibility for the catalog: polyhedral functions drop ri by
// the polyhedrality rule and the non-polyhedral ones have full-space or
// affine domains.
Certificate check_slater(const PrimalModel& p, CardFlavor::Variant variant,
                         const std::vector<int>& support, double margin = 0.0,
                         const SolverConfig& cfg = SolverConfig{});
Certificate check_slater(const DualModel& d, CardFlavor::Variant variant,
                         const std::vector<int>& support, double margin = 0.0,
                         const SolverConfig& cfg = SolverConfig{});

struct CorrespondenceResult {
  Vec point;              // w* = [y*; z*] (p2d) or x* (d2p)
  double value_residual;  // |Theta(x*) + Xi(w*)|
  StationarityCertificate check;  // stationarity of the produced point
};

// Thm-correspondence maps. Both throw std::invalid_argument when the
// input point is not stationary; the returned certificate reports the
// (postcondition) stationarity of the produced point.
CorrespondenceResult primal_to_dual(const PrimalModel& p, const Vec& x_star, const Vec& mu,
                                    double tol = -1.0, const SolverConfig& cfg = SolverConfig{});
CorrespondenceResult dual_to_primal(const DualModel& d, const Vec& w_star, double tol = -1.0,
                                    const SolverConfig& cfg = SolverConfig{});

}  // namespace ccopt
