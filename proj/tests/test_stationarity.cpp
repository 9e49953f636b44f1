// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include <catch2/catch_amalgamated.hpp>

#include "ccopt/enumeration.hpp"
#include "ccopt/rng.hpp"
#include "ccopt/stationarity.hpp"
#include "ccopt/zoo.hpp"

using namespace ccopt;
using Catch::Approx;

namespace {
Vec v4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}
}  // namespace

TEST_CASE("primal stationarity at the edge denoising minimizer") {
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));

  StationarityCertificate ok = check_stationary_primal(p, beta);
  REQUIRE(ok.passed());
  CHECK(ok.support == std::vector<int>{1});
  CHECK(ok.cert.witness("y")->lpNorm<Eigen::Infinity>() <= 1e-6);
  CHECK(ok.cert.witness("z")->lpNorm<Eigen::Infinity>() <= 1e-6);

  Vec bad = beta;
  bad[0] += 0.5;
  StationarityCertificate fail = check_stationary_primal(p, bad);
  CHECK_FALSE(fail.passed());
  CHECK(fail.cert.residual >= 0.4);
}

TEST_CASE("full-support points with vanishing gradient are stationary") {
  // x with all (Bx - b)_i != 0 forces z = 0; the gradient of Theta is
  // x - beta, so only x = beta qualifies, and beta with distinct entries
  // has full support
  Vec beta = v4(0, 1, 2, 5);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
  StationarityCertificate ok = check_stationary_primal(p, beta);
  REQUIRE(ok.passed());
  CHECK(ok.support.size() == 3);
}

TEST_CASE("dual stationarity checks") {
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
  DualModel d = derive_dual(p, Vec::Ones(3));

  SECTION("w = 0 is stationary (x = beta realizes the inclusion)") {
    StationarityCertificate ok = check_stationary_dual(d, Vec::Zero(d.wdim()));
    REQUIRE(ok.passed());
    CHECK((*ok.cert.witness("x") - beta).lpNorm<Eigen::Infinity>() <= 1e-5);
  }
  SECTION("negative z under Psi+ fails with the domain flag") {
    PrimalModel cal = build_calcium(beta, Vec::Ones(3));
    DualModel dcal = derive_dual(cal, Vec::Ones(3));
    Vec w = Vec::Zero(dcal.wdim());
    w[dcal.m()] = -0.5;
    StationarityCertificate bad = check_stationary_dual(dcal, w);
    CHECK_FALSE(bad.passed());
    CHECK(bad.cert.domain_violation);
  }
}

TEST_CASE("restricted optimum at its own support is stationary, and back") {
  Rng rng(2026);
  SolverConfig cfg;
  for (int trial = 0; trial < 6; ++trial) {
    Vec beta = rng.uniform_vec(4, -1.0, 3.0);
    PrimalModel p = build_calcium(beta, Vec::Constant(3, 0.6));
    GlobalReport rep = enumerate_global(p);
    REQUIRE(rep.attained);
    Vec x = rep.best_point;
    // KKT point of (P+) built at J*(x)
    StationarityCertificate sc = check_stationary_primal(p, x);
    REQUIRE(sc.passed());
    RestrictedProgram prog = RestrictedProgram::primal_program(p, sc.support);
    Vec z = *sc.cert.witness("z");
    auto res = kkt_residual(prog, x, z, cfg);
    CHECK(res[0] <= 1e-6);
    CHECK(res[1] <= 1e-6);
    CHECK(res[2] <= 1e-6);
  }
}

TEST_CASE("Slater condition checks") {
  SECTION("energy minimization duals satisfy the D-side condition") {
    Rng rng(8);
    Vec a = rng.uniform_vec(3, 0.0, 2.0);
    PrimalModel p = build_energy_min(ConvexAtom::nonneg(3), Mat::Identity(3, 3), a,
                                     difference_matrix(3, line_graph_edges(3)),
                                     Vec::Constant(2, 0.5));
    DualModel d = derive_dual(p, Vec::Constant(2, 1.0));
    for (std::vector<int> support : {std::vector<int>{}, {0}, {0, 1}}) {
      Certificate c = check_slater(d, CardFlavor::Variant::Zero, support);
      CHECK(c.passed());
    }
  }
  SECTION("infeasible margin system fails with a Farkas witness") {
    Mat Q(2, 1);
    Q << 1, 1;
    Vec c(2);
    c << 1, -1;
    PrimalModel svm = build_heaviside_svm(Q, c, 1.0);
    // support empty: the complement covers all rows, requiring Bx <= b,
    // i.e. the full margin system, which coincident points defeat
    Certificate cert = check_slater(svm, CardFlavor::Variant::Plus, {});
    CHECK_FALSE(cert.passed());
    CHECK(cert.witness("farkas") != nullptr);
  }
  SECTION("full support on full-domain atoms passes trivially") {
    Vec beta = v4(0, 0, 4, 4);
    PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
    Certificate cert = check_slater(p, CardFlavor::Variant::Zero, {0, 1, 2});
    CHECK(cert.passed());
  }
  SECTION("equality-shaped condition on the primal side") {
    Vec beta = v4(0, 0, 4, 4);
    PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
    // (Bx - b)_{complement of support} = 0 is satisfiable for any support
    // here because B x = 0 has the constant vectors in its kernel
    CHECK(check_slater(p, CardFlavor::Variant::Zero, {}).passed());
    CHECK(check_slater(p, CardFlavor::Variant::Zero, {1}).passed());
  }
  SECTION("non-polyhedral domains are not decided") {
    PrimalModel p = build_primal(ConvexAtom::exp_epigraph(), ConvexAtom::quadratic(Vec::Zero(2)),
                                 Mat::Identity(2, 2), Mat::Identity(2, 2), Vec::Zero(2),
                                 CardFlavor::Variant::Zero, Vec::Ones(2));
    Certificate cert = check_slater(p, CardFlavor::Variant::Zero, {0});
    CHECK(cert.indeterminate());
  }
}

TEST_CASE("correspondence maps") {
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));

  SECTION("edge denoising: x* = beta maps to w* = 0 with zero sum") {
    CorrespondenceResult cr = primal_to_dual(p, beta, Vec::Ones(3));
    CHECK(cr.check.passed());
    CHECK(cr.point.lpNorm<Eigen::Infinity>() <= 1e-5);
    CHECK(cr.value_residual <= 1e-8);
  }
  SECTION("non-stationary points are rejected") {
    Vec bad = beta;
    bad[2] += 1.0;
    CHECK_THROWS_AS(primal_to_dual(p, bad, Vec::Ones(3)), std::invalid_argument);
  }
  SECTION("dual to primal recovers beta from w = 0") {
    DualModel d = derive_dual(p, Vec::Ones(3));
    CorrespondenceResult cr = dual_to_primal(d, Vec::Zero(d.wdim()));
    CHECK(cr.check.passed());
    CHECK((cr.point - beta).lpNorm<Eigen::Infinity>() <= 1e-5);
    CHECK(cr.value_residual <= 1e-8);
  }
  SECTION("calcium stationary point with an active bound round-trips") {
    Vec betac = v4(0.5, -0.4, 2.0, 2.0);  // negative data activates x >= 0
    PrimalModel cal = build_calcium(betac, Vec::Constant(3, 0.4));
    GlobalReport rep = enumerate_global(cal);
    REQUIRE(rep.attained);
    Vec x = rep.best_point;
    CorrespondenceResult cr = primal_to_dual(cal, x, Vec::Ones(3));
    REQUIRE(cr.check.passed());
    CHECK(cr.value_residual <= 1e-6);
    DualModel dcal = derive_dual(cal, Vec::Ones(3));
    CorrespondenceResult back = dual_to_primal(dcal, cr.point);
    REQUIRE(back.check.passed());
    double f1 = objective_eval(cal, x).total.value();
    double f2 = objective_eval(cal, back.point).total.value();
    CHECK(f1 == Approx(f2).margin(1e-6));
  }
}

TEST_CASE("dual stationarity verdict does not depend on mu", "[property]") {
  Rng rng(55);
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
  DualModel d1 = derive_dual(p, Vec::Constant(3, 0.01));
  DualModel d2 = derive_dual(p, Vec::Constant(3, 50.0));
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Vec z(3);
    for (int i = 0; i < 3; ++i) z[i] = rng.uniform() < 0.5 ? 0.0 : rng.uniform(-2.0, 2.0);
    Vec w(d1.wdim());
    w.head(4) = -d1.B.transpose() * z;  // keep -Q^T w in dom f* (= {0})
    w.tail(3) = z;
    StationarityCertificate c1 = check_stationary_dual(d1, w);
    StationarityCertificate c2 = check_stationary_dual(d2, w);
    if (!c1.cert.indeterminate() && !c2.cert.indeterminate()) {
      ++checked;
      CHECK(c1.passed() == c2.passed());
    }
  }
  CHECK(checked > 0);
}
