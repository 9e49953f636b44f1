// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include <catch2/catch_amalgamated.hpp>

#include "ccopt/model.hpp"
#include "ccopt/rng.hpp"
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

TEST_CASE("build validation") {
  CHECK_THROWS_AS(build_primal(ConvexAtom::zero(2), ConvexAtom::zero(2), Mat::Identity(2, 2),
                               Mat::Identity(2, 2), Vec::Zero(2), CardFlavor::Variant::Plus,
                               Vec::Zero(2)),  // lambda containing 0
                  std::invalid_argument);
  CHECK_THROWS_AS(build_primal(ConvexAtom::zero(3), ConvexAtom::zero(2), Mat::Identity(2, 2),
                               Mat::Identity(2, 2), Vec::Zero(2), CardFlavor::Variant::Plus,
                               Vec::Ones(2)),
                  std::invalid_argument);
}

TEST_CASE("dual derivation pairs flavors and keeps the data") {
  PrimalModel p = build_calcium(v4(1, 2, 0, 3), Vec::Ones(3));
  REQUIRE(p.card.variant == CardFlavor::Variant::Plus);
  DualModel d = derive_dual(p, Vec::Constant(3, 2.0));
  CHECK(d.card.side == CardFlavor::Side::DualPsi);
  CHECK(d.card.variant == CardFlavor::Variant::Plus);
  CHECK((d.A - p.A).norm() == 0.0);
  CHECK((d.B - p.B).norm() == 0.0);
  CHECK((d.b - p.b).norm() == 0.0);
  CHECK(d.r() == p.r());

  PrimalModel p0 = build_edge_denoising(v4(0, 0, 4, 4), line_graph_edges(4), Vec::Ones(3));
  CHECK(derive_dual(p0, Vec::Ones(3)).card.variant == CardFlavor::Variant::Zero);

  CHECK_THROWS_AS(derive_dual(p, Vec::Zero(3)), std::invalid_argument);  // mu must be > 0

  Mat C(1, 2);
  C << 1, 0;
  PrimalModel bad = build_primal(ConvexAtom::polyhedron(C, Vec::Ones(1)), ConvexAtom::zero(2),
                                 Mat::Identity(2, 2), Mat::Identity(2, 2), Vec::Zero(2),
                                 CardFlavor::Variant::Zero, Vec::Ones(2));
  CHECK_THROWS_AS(derive_dual(bad, Vec::Ones(2)), std::invalid_argument);  // no closed-form f*
}

TEST_CASE("objective evaluation splits the convex and cardinality parts") {
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
  ObjectiveValue ov = objective_eval(p, beta);
  CHECK(ov.convex_part.value() == Approx(0.0).margin(1e-12));
  CHECK(ov.card_part.value() == Approx(1.0));  // Dx = (0, 4, 0)
  CHECK(ov.total.value() == Approx(1.0));

  PrimalModel cal = build_calcium(beta, Vec::Ones(3));
  Vec neg = v4(-1, 0, 0, 0);
  CHECK(objective_eval(cal, neg).total.is_inf());  // outside dom f
}

TEST_CASE("SVM dual objective vanishes at zero") {
  Mat Q(2, 1);
  Q << 2, -2;
  Vec c(2);
  c << 1, -1;
  DualModel d = build_sparse_svm_dual(Q, c, Vec::Ones(2));
  Vec w = Vec::Zero(d.wdim());
  ObjectiveValue ov = objective_eval(d, w);
  CHECK(ov.total.value() == Approx(0.0).margin(1e-12));
}

TEST_CASE("dual objective is +inf off the Psi+ domain") {
  PrimalModel p = build_calcium(v4(1, 2, 0, 3), Vec::Ones(3));
  DualModel d = derive_dual(p, Vec::Ones(3));
  Vec w = Vec::Zero(d.wdim());
  w[d.m()] = -1.0;  // z_1 < 0
  CHECK(objective_eval(d, w).total.is_inf());
}

TEST_CASE("zero-sum of the convex parts at subdifferential pairs") {
  // hand-built stationary pair for edge denoising: x = beta, w = 0
  Vec beta = v4(0, 0, 4, 4);
  PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
  DualModel d = derive_dual(p, Vec::Ones(3));
  Vec y = Vec::Zero(4);
  Vec z = Vec::Zero(3);
  // memberships: y in dg(A beta) = {0}, z in dPhi0(D beta), -A^T y - B^T z = 0 in df
  REQUIRE(p.g.subdiff(p.A * beta).dist(y) == Approx(0.0).margin(1e-12));
  REQUIRE(card_subdiff_check(p.card, p.B * beta - p.b, z).passed());
  Vec w(d.wdim());
  w << y, z;
  CHECK(std::abs(theta_eval(p, beta).value() + xi_eval(d, w).value()) <= 1e-8);
}
