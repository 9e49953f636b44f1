// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/model.hpp"

#include <stdexcept>
#include <string>

namespace ccopt {

namespace {
void check_point_dim(int expected, const Vec& v, const char* what) {
  if (static_cast<int>(v.size()) != expected)
    throw std::invalid_argument(std::string(what) + ": expected dim " + std::to_string(expected) +
                                ", got " + std::to_string(v.size()));
}
}  // namespace

Vec DualModel::minus_Qt_w(const Vec& w) const {
  check_point_dim(wdim(), w, "dual point");
  return -(A.transpose() * y_part(w)) - B.transpose() * z_part(w);
}

PrimalModel build_primal(ConvexAtom f, ConvexAtom g, Mat A, Mat B, Vec b,
                         CardFlavor::Variant variant, Vec lambda) {
  const int n = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  const int r = static_cast<int>(B.rows());
  if (B.cols() != n) throw std::invalid_argument("cols(A) and cols(B) must agree");
  if (f.dim() != n) throw std::invalid_argument("dim(f) must equal cols(A)");
  if (g.dim() != m) throw std::invalid_argument("dim(g) must equal rows(A)");
  if (static_cast<int>(b.size()) != r || static_cast<int>(lambda.size()) != r)
    throw std::invalid_argument("rows(B), len(b) and len(lambda) must agree");
  CardFlavor card = CardFlavor::primal(variant, std::move(lambda));  // validates lambda > 0
  return PrimalModel{std::move(f), std::move(g), std::move(A), std::move(B), std::move(b),
                     std::move(card)};
}

DualModel derive_dual(const PrimalModel& p, Vec mu) {
  if (static_cast<int>(mu.size()) != p.r())
    throw std::invalid_argument("len(mu) must equal r");
  if (!p.f.has_conjugate())
    throw std::invalid_argument("f has no registered closed-form conjugate (" +
                                atom_kind_name(p.f.kind()) + ")");
  if (!p.g.has_conjugate())
    throw std::invalid_argument("g has no registered closed-form conjugate (" +
                                atom_kind_name(p.g.kind()) + ")");
  CardFlavor card = p.card.paired_dual(std::move(mu));  // validates mu > 0
  return DualModel{p.f, p.g, p.A, p.B, p.b, std::move(card)};
}

ExtReal theta_eval(const PrimalModel& p, const Vec& x) {
  check_point_dim(p.n(), x, "primal point");
  return p.f.eval(x) + p.g.eval(p.A * x);
}

ExtReal xi_eval(const DualModel& d, const Vec& w) {
  check_point_dim(d.wdim(), w, "dual point");
  Vec y = d.y_part(w);
  Vec z = d.z_part(w);
  return d.f.conjugate(d.minus_Qt_w(w)) + d.g.conjugate(y) + ExtReal(d.b.dot(z));
}

ObjectiveValue objective_eval(const PrimalModel& p, const Vec& x, double zero_tol) {
  ExtReal theta = theta_eval(p, x);
  ExtReal phi = card_eval(p.card, p.B * x - p.b, zero_tol);
  return ObjectiveValue{theta, phi, theta + phi};
}

ObjectiveValue objective_eval(const DualModel& d, const Vec& w, double zero_tol) {
  ExtReal xi = xi_eval(d, w);
  ExtReal psi = card_eval(d.card, d.z_part(w), zero_tol);
  return ObjectiveValue{xi, psi, xi + psi};
}

}  // namespace ccopt
