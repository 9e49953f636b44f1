// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include <catch2/catch_amalgamated.hpp>

#include "ccopt/diagnostics.hpp"
#include "ccopt/enumeration.hpp"
#include "ccopt/graph_solver.hpp"
#include "ccopt/rng.hpp"
#include "ccopt/zoo.hpp"

using namespace ccopt;
using Catch::Approx;

TEST_CASE("primal existence checker on the worked models") {
  Rng rng(3);
  SECTION("energy minimization passes for catalog constraint sets") {
    Vec a = rng.uniform_vec(3, 0.0, 2.0);
    Mat D = difference_matrix(3, line_graph_edges(3));
    PrimalModel box_model = build_energy_min(
        ConvexAtom::box(Vec::Zero(3), Vec::Constant(3, 2.0)), Mat::Identity(3, 3), a, D,
        Vec::Constant(2, 0.5));
    CHECK(existence_check_primal(box_model).passed());
    PrimalModel nn_model = build_energy_min(ConvexAtom::nonneg(3), Mat::Identity(3, 3), a, D,
                                            Vec::Constant(2, 0.5));
    CHECK(existence_check_primal(nn_model).passed());
  }
  SECTION("Heaviside SVM passes through the quadratic route") {
    Mat Q(2, 1);
    Q << 2, -2;
    Vec c(2);
    c << 1, -1;
    CHECK(existence_check_primal(build_heaviside_svm(Q, c, 1.0)).passed());
  }
  SECTION("non-polyhedral constraint set is not certified") {
    PrimalModel p = build_primal(ConvexAtom::exp_epigraph(), ConvexAtom::quadratic(Vec::Zero(2)),
                                 Mat::Identity(2, 2), Mat::Identity(2, 2), Vec::Zero(2),
                                 CardFlavor::Variant::Zero, Vec::Ones(2));
    Certificate cert = existence_check_primal(p);
    CHECK_FALSE(cert.passed());
    CHECK(cert.indeterminate());
  }
}

TEST_CASE("dual existence checker") {
  Rng rng(4);
  SECTION("energy minimization dual attains (0 is feasible for Bx = 0)") {
    Vec a = rng.uniform_vec(3, 0.0, 2.0);
    Mat D = difference_matrix(3, line_graph_edges(3));
    PrimalModel p = build_energy_min(ConvexAtom::nonneg(3), Mat::Identity(3, 3), a, D,
                                     Vec::Constant(2, 0.5));
    CHECK(existence_check_dual(p, CardFlavor::Variant::Zero).passed());
  }
  SECTION("separable SVM passes, nonseparable fails") {
    SvmDataset sep = generate_separable(2, 6, 1.0, 11);
    PrimalModel psep = build_heaviside_svm(sep.points, sep.labels, 1.0);
    CHECK(existence_check_dual(psep, CardFlavor::Variant::Plus).passed());

    SvmDataset non = generate_nonseparable(2, 6, 12);
    PrimalModel pnon = build_heaviside_svm(non.points, non.labels, 1.0);
    Certificate cert = existence_check_dual(pnon, CardFlavor::Variant::Plus);
    CHECK_FALSE(cert.passed());
    CHECK(cert.verdict == Certificate::Verdict::Fail);
  }
}

TEST_CASE("separability characterization") {
  SECTION("one-dimensional margins") {
    Mat Q(2, 1);
    Q << 2, -2;
    Vec c(2);
    c << 1, -1;
    Certificate cert = svm_separability(Q, c);
    REQUIRE(cert.passed());
    // substitution check of the returned witness
    const Vec& w = *cert.witness("point");
    for (int i = 0; i < 2; ++i) CHECK(c[i] * (Q.row(i).dot(w.head(1)) + w[1]) >= 1.0 - 1e-6);
  }
  SECTION("coincident opposite labels are not separable") {
    Mat Q(2, 1);
    Q << 1, 1;
    Vec c(2);
    c << 1, -1;
    CHECK_FALSE(svm_separability(Q, c).passed());
  }
  SECTION("a single point is always separable") {
    Mat Q(1, 2);
    Q << 0.3, -0.7;
    Vec c(1);
    c << -1;
    CHECK(svm_separability(Q, c).passed());
  }
}

TEST_CASE("separability verdict equals dual attainment", "[property]") {
  SolverConfig cfg;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    SvmDataset ds = seed % 2 == 0 ? generate_separable(2, 5, 0.8, seed)
                                  : generate_nonseparable(2, 5, seed);
    Certificate sep = svm_separability(ds.points, ds.labels, cfg);
    DualModel d = build_sparse_svm_dual(ds.points, ds.labels, Vec::Ones(5));
    GlobalReport rep = enumerate_global(d, kDefaultSubsetCap, cfg);
    INFO("seed " << seed);
    CHECK(sep.passed() == rep.attained);
  }
}

TEST_CASE("existence pass implies enumeration attains", "[property]") {
  Rng rng(9);
  Vec a = rng.uniform_vec(3, 0.0, 2.0);
  Mat D = difference_matrix(3, line_graph_edges(3));
  PrimalModel p = build_energy_min(ConvexAtom::nonneg(3), Mat::Identity(3, 3), a, D,
                                   Vec::Constant(2, 0.5));
  REQUIRE(existence_check_primal(p).passed());
  CHECK(enumerate_global(p).attained);
  REQUIRE(existence_check_dual(p, CardFlavor::Variant::Zero).passed());
  CHECK(enumerate_global(derive_dual(p, Vec::Constant(2, 1.0))).attained);
}

TEST_CASE("box-regularized SVM dual always attains") {
  // nonseparable data defeats the plain dual, but the box 0 <= z <= gamma
  // restores attainment on every subset program
  SvmDataset ds = generate_nonseparable(2, 4, 21);
  DualModel d = build_sparse_svm_dual(ds.points, ds.labels, Vec::Ones(4));
  const double gamma = 10.0;
  SolverConfig cfg;
  double best = 1e300;
  bool all_optimal = true;
  for (const auto& subset : all_subsets(d.r())) {
    GraphProblem gp;
    gp.h.push_back(Piece::atom_conj(&d.g));
    Vec zlo = Vec::Zero(d.r()), zhi = Vec::Zero(d.r());
    for (int i : subset) zhi[i] = gamma;
    gp.h.push_back(Piece::box_linear(zlo, zhi, d.b));
    gp.p.push_back(Piece::atom_conj(&d.f));
    gp.M.resize(d.n(), d.wdim());
    gp.M.leftCols(d.m()) = -d.A.transpose();
    gp.M.rightCols(d.r()) = -d.B.transpose();
    gp.q = Vec::Zero(d.n());
    GraphResult res = graph_solve(gp, cfg);
    all_optimal = all_optimal && res.converged;
    double weights = 0.0;
    for (int i : subset) weights += d.card.weights[i];
    best = std::min(best, res.objective + weights);
  }
  CHECK(all_optimal);
  CHECK(std::isfinite(best));
}
