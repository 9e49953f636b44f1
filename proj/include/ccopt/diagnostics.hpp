// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include "ccopt/certificate.hpp"
#include "ccopt/model.hpp"
#include "ccopt/subsolver.hpp"

namespace ccopt {

// Sufficient-condition checkers for existence of global solutions. The
// checks are one-sided: Fail and Indeterminate never assert non-existence
// (the SVM separability test below is the one iff case).

// Conditions for the primal: for indicator f they are (i) feasibility of
// {x in C, Ax in dom g}, (ii) g in the ALS class registry, (iii) C
// polyhedral, (iv) recession nonnegativity via bounded-below g. For the
// other catalog atoms the objective's convex part is piecewise
// linear-quadratic and bounded below, which is ALS with nonnegative
// recession.
Certificate existence_check_primal(const PrimalModel& p, const SolverConfig& cfg = SolverConfig{});

// Conditions for the stationary dual: F bounded below (via the catalog's
// bounded-below atoms) plus feasibility of {x in dom f, Ax in dom g,
// Bx <= b} (Plus) or {... , Bx = b} (Zero); ri dropped per the
// polyhedrality rule.
Certificate existence_check_dual(const PrimalModel& p, CardFlavor::Variant variant,
                                 const SolverConfig& cfg = SolverConfig{});

// Margin system Diag(c) [Q 1] x >= 1: pass iff the data is strictly
// linearly separable; witness is the separating (omega, omega0), the fail
// witness is a Farkas vector. Exact characterization of dual-SVM
// solvability.
Certificate svm_separability(const Mat& points, const Vec& labels,
                             const SolverConfig& cfg = SolverConfig{});

}  // namespace ccopt
