// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include <catch2/catch_amalgamated.hpp>

#include "ccopt/model.hpp"
#include "ccopt/rng.hpp"
#include "ccopt/subsolver.hpp"
#include "ccopt/zoo.hpp"
#include "oracles.hpp"

using namespace ccopt;
using Catch::Approx;

namespace {
Vec v4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}
}  // namespace

TEST_CASE("edge denoising restricted programs have the hand solutions") {
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
  SolverConfig cfg;

  SECTION("S = {middle edge}: projection onto the pattern keeps beta") {
    SolveOutcome oc = solve_restricted(RestrictedProgram::primal_program(p, {1}), cfg);
    REQUIRE(oc.status == SolveStatus::Optimal);
    CHECK((oc.point - beta).lpNorm<Eigen::Infinity>() <= 1e-6);
    CHECK(oc.value.value() == Approx(0.0).margin(1e-8));
    CHECK(oc.multipliers.lpNorm<Eigen::Infinity>() <= 1e-6);
  }
  SECTION("S empty: all coordinates tied to the mean") {
    SolveOutcome oc = solve_restricted(RestrictedProgram::primal_program(p, {}), cfg);
    REQUIRE(oc.status == SolveStatus::Optimal);
    CHECK((oc.point - Vec::Constant(4, 2.0)).lpNorm<Eigen::Infinity>() <= 1e-6);
    CHECK(oc.value.value() == Approx(8.0).margin(1e-6));
  }
}

TEST_CASE("nonseparable SVM dual subsets are certified unbounded") {
  Mat Q(2, 1);
  Q << 1, 1;  // coincident points
  Vec c(2);
  c << 1, -1;
  DualModel d = build_sparse_svm_dual(Q, c, Vec::Ones(2));
  SolveOutcome oc = solve_restricted(RestrictedProgram::dual_program(d, {0, 1}), SolverConfig{});
  REQUIRE(oc.status == SolveStatus::Unbounded);
  CHECK(oc.value.is_neg_inf());
  REQUIRE(oc.unbounded_direction.size() == d.wdim());

  // witness validity: strictly decreasing along the ray
  Vec base = oc.point;
  double prev = xi_eval(d, base).value();
  for (double t : {10.0, 100.0, 1000.0}) {
    ExtReal val = xi_eval(d, base + t * oc.unbounded_direction);
    REQUIRE(val.finite());
    CHECK(val.value() < prev);
    prev = val.value();
  }
}

TEST_CASE("lp_feasibility verdicts and witnesses") {
  SECTION("interval [1, 2]") {
    Mat C(2, 1);
    C << -1, 1;  // x >= 1, x <= 2
    Vec c(2);
    c << -1, 2;
    Certificate cert = lp_feasibility(C, c, {}, {}, 0.0);
    REQUIRE(cert.passed());
    double x = (*cert.witness("point"))[0];
    CHECK(x >= 1.0 - 1e-6);
    CHECK(x <= 2.0 + 1e-6);
  }
  SECTION("empty interval gives a Farkas certificate") {
    Mat C(2, 1);
    C << -1, 1;  // x >= 1, x <= 0
    Vec c(2);
    c << -1, 0;
    Certificate cert = lp_feasibility(C, c, {}, {}, 0.0);
    REQUIRE_FALSE(cert.passed());
    const Vec* y = cert.witness("farkas");
    REQUIRE(y != nullptr);
    CHECK((*y)[0] >= 0.0);
    CHECK((*y)[1] >= 0.0);
    CHECK(std::abs((C.transpose() * *y)[0]) <= 1e-6);
    CHECK(c.dot(*y) < 0.0);
  }
  SECTION("separable 1-D SVM margin system") {
    // Diag(c) [q 1] x >= 1 for q = +-2 with labels +1/-1
    Mat C(2, 2);
    C << -2, -1, -2, 1;
    Vec c = Vec::Constant(2, -1.0);
    Certificate cert = lp_feasibility(C, c, {}, {}, 0.0);
    REQUIRE(cert.passed());
    Vec w = *cert.witness("point");
    CHECK((C * w - c).maxCoeff() <= 1e-6);  // substitution check
  }
  SECTION("strict margin rows") {
    Mat C(1, 1);
    C << 1;  // x <= 0, strict margin 0.5 forces x <= -0.5
    Vec c(1);
    c << 0;
    Certificate cert = lp_feasibility(C, c, {}, {0}, 0.5);
    REQUIRE(cert.passed());
    CHECK((*cert.witness("point"))[0] <= -0.5 + 1e-6);
  }
}

TEST_CASE("kkt_residual replay and perturbation") {
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
  RestrictedProgram prog = RestrictedProgram::primal_program(p, {1});
  SolverConfig cfg;
  SolveOutcome oc = solve_restricted(prog, cfg);
  REQUIRE(oc.status == SolveStatus::Optimal);
  auto [stat, comp, feas] = kkt_residual(prog, oc.point, oc.multipliers, cfg);
  CHECK(stat <= 1e-6);
  CHECK(comp <= 1e-6);
  CHECK(feas <= 1e-6);

  auto hand = kkt_residual(prog, beta, Vec::Zero(3), cfg);
  CHECK(hand[0] == Approx(0.0).margin(1e-9));
  CHECK(hand[1] == Approx(0.0).margin(1e-12));
  CHECK(hand[2] == Approx(0.0).margin(1e-12));

  Vec perturbed = beta;
  perturbed[0] += 0.1;
  auto bad = kkt_residual(prog, perturbed, Vec::Zero(3), cfg);
  CHECK(bad[0] >= 0.05);
}

TEST_CASE("multiplier sign convention on inequality-restricted programs", "[property]") {
  Rng rng(31);
  SolverConfig cfg;
  for (int trial = 0; trial < 12; ++trial) {
    Vec beta = rng.uniform_vec(4, -2.0, 4.0);
    PrimalModel p = build_calcium(beta, Vec::Ones(3));  // Phi+: inequality programs
    std::vector<int> subset;
    for (int i = 0; i < 3; ++i)
      if (rng.uniform() < 0.5) subset.push_back(i);
    RestrictedProgram prog = RestrictedProgram::primal_program(p, subset);
    SolveOutcome oc = solve_restricted(prog, cfg);
    REQUIRE(oc.status == SolveStatus::Optimal);
    Vec u = p.B * oc.point - p.b;
    for (int i : prog.complement()) {
      CHECK(oc.multipliers[i] >= -1e-7);
      CHECK(std::abs(oc.multipliers[i] * u[i]) <= 1e-6);
    }
  }
}

TEST_CASE("solver agrees with closed-form solutions", "[property]") {
  Rng rng(77);
  SolverConfig cfg;
  cfg.tol = 1e-9;  // the assertions gate at 1e-7; keep an order of headroom

  SECTION("equality-constrained least squares") {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 4, m = 3;
      Mat A(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
      Vec a = rng.uniform_vec(m, -2.0, 2.0);
      Mat B(2, n);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = rng.normal();
      Vec b = rng.uniform_vec(2, -1.0, 1.0);
      PrimalModel p = build_primal(ConvexAtom::zero(n), ConvexAtom::quadratic(a), A, B, b,
                                   CardFlavor::Variant::Zero, Vec::Ones(2));
      // oracle: stationarity A^T (A x - a) + B^T nu = 0, B x = b
      Mat K(n + 2, n + 2);
      K.setZero();
      K.topLeftCorner(n, n) = A.transpose() * A;
      K.topRightCorner(n, 2) = B.transpose();
      K.bottomLeftCorner(2, n) = B;
      Vec rhs(n + 2);
      rhs.head(n) = A.transpose() * a;
      rhs.tail(2) = b;
      Vec sol = K.fullPivLu().solve(rhs);

      SolveOutcome oc = solve_restricted(RestrictedProgram::primal_program(p, {}), cfg);
      REQUIRE(oc.status == SolveStatus::Optimal);
      CHECK((oc.point - sol.head(n)).lpNorm<Eigen::Infinity>() <= 10 * 1e-6);
      CHECK(oc.kkt_residuals[0] <= 1e-7);
    }
  }

  SECTION("box projection") {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 3;
      Vec lo = rng.uniform_vec(n, -2.0, 0.0);
      Vec hi = rng.uniform_vec(n, 0.5, 2.5);
      Vec a = rng.uniform_vec(n, -4.0, 4.0);
      PrimalModel p = build_primal(ConvexAtom::box(lo, hi), ConvexAtom::quadratic(a),
                                   Mat::Identity(n, n), Mat::Zero(1, n), Vec::Zero(1),
                                   CardFlavor::Variant::Zero, Vec::Ones(1));
      SolveOutcome oc = solve_restricted(RestrictedProgram::primal_program(p, {0}), cfg);
      REQUIRE(oc.status == SolveStatus::Optimal);
      Vec expect = a.cwiseMax(lo).cwiseMin(hi);
      CHECK((oc.point - expect).lpNorm<Eigen::Infinity>() <= 1e-6);
    }
  }

  SECTION("halfspace projection with its multiplier") {
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 3;
      Vec beta(n);
      for (int i = 0; i < n; ++i) beta[i] = rng.normal();
      if (beta.norm() < 0.3) continue;
      Vec a = rng.uniform_vec(n, -2.0, 2.0);
      double gamma = rng.uniform(-1.0, 1.0);
      Mat B(1, n);
      B.row(0) = beta.transpose();
      PrimalModel p = build_primal(ConvexAtom::zero(n), ConvexAtom::quadratic(a),
                                   Mat::Identity(n, n), B, Vec::Constant(1, gamma),
                                   CardFlavor::Variant::Plus, Vec::Ones(1));
      SolveOutcome oc = solve_restricted(RestrictedProgram::primal_program(p, {}), cfg);
      REQUIRE(oc.status == SolveStatus::Optimal);
      double mult_expect = 0.0;
      Vec expect = testing::halfspace_projection(beta, gamma, a, &mult_expect);
      CHECK((oc.point - expect).lpNorm<Eigen::Infinity>() <= 1e-6);
      CHECK(oc.multipliers[0] == Approx(mult_expect).margin(1e-6));
    }
  }
}

TEST_CASE("infeasible restricted program reports a Farkas witness") {
  // f = box [0,1], constraint row forces x_0 = 3
  Mat B(1, 2);
  B << 1, 0;
  PrimalModel p = build_primal(ConvexAtom::box(Vec::Zero(2), Vec::Ones(2)),
                               ConvexAtom::zero(2), Mat::Identity(2, 2), B, Vec::Constant(1, 3.0),
                               CardFlavor::Variant::Zero, Vec::Ones(1));
  SolveOutcome oc = solve_restricted(RestrictedProgram::primal_program(p, {}), SolverConfig{});
  CHECK(oc.status == SolveStatus::Infeasible);
  CHECK(oc.value.is_inf());
  CHECK(oc.infeasibility_witness.size() > 0);
}
