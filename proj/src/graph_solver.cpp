// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/graph_solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Piece

Piece Piece::atom_fn(const ConvexAtom* a) {
  Piece p;
  p.kind = Kind::AtomFn;
  p.atom = a;
  p.dim = a->dim();
  return p;
}

Piece Piece::atom_conj(const ConvexAtom* a) {
  if (!a->has_conjugate())
    throw std::invalid_argument("atom has no registered conjugate: " + atom_kind_name(a->kind()));
  Piece p;
  p.kind = Kind::AtomConj;
  p.atom = a;
  p.dim = a->dim();
  return p;
}

Piece Piece::box_linear(Vec lo, Vec hi, Vec linear) {
  Piece p;
  p.kind = Kind::BoxLinear;
  p.dim = static_cast<int>(lo.size());
  if (hi.size() != lo.size()) throw std::invalid_argument("box bounds mismatch");
  if (linear.size() != 0 && linear.size() != lo.size())
    throw std::invalid_argument("linear term dim mismatch");
  p.lo = std::move(lo);
  p.hi = std::move(hi);
  p.linear = std::move(linear);
  return p;
}

Piece Piece::free_block(int dim) {
  return box_linear(Vec::Constant(dim, -kInf), Vec::Constant(dim, kInf));
}

Piece Piece::half_sq(int dim) {
  Piece p;
  p.kind = Kind::HalfSq;
  p.dim = dim;
  return p;
}

Piece Piece::half_sq_pos(int dim) {
  Piece p;
  p.kind = Kind::HalfSqPos;
  p.dim = dim;
  return p;
}

ExtReal Piece::eval(const Vec& u) const {
  switch (kind) {
    case Kind::AtomFn:
      return atom->eval(u);
    case Kind::AtomConj:
      return atom->conjugate(u);
    case Kind::BoxLinear: {
      const double s = poly_slack(u);
      for (int i = 0; i < dim; ++i)
        if (u[i] < lo[i] - s || u[i] > hi[i] + s) return ExtReal::inf();
      return linear.size() ? linear.dot(u) : 0.0;
    }
    case Kind::HalfSq:
      return 0.5 * u.squaredNorm();
    case Kind::HalfSqPos:
      return 0.5 * u.cwiseMax(0.0).squaredNorm();
  }
  throw std::logic_error("unreachable");
}

Vec Piece::prox(const Vec& u, double t) const {
  switch (kind) {
    case Kind::AtomFn:
      return atom->prox(u, t);
    case Kind::AtomConj:
      return atom->conj_prox(u, t);
    case Kind::BoxLinear: {
      Vec w = linear.size() ? Vec(u - t * linear) : u;
      for (int i = 0; i < dim; ++i) w[i] = std::min(std::max(w[i], lo[i]), hi[i]);
      return w;
    }
    case Kind::HalfSq:
      return u / (1.0 + t);
    case Kind::HalfSqPos: {
      Vec w = u;
      for (int i = 0; i < dim; ++i)
        if (w[i] > 0) w[i] /= (1.0 + t);
      return w;
    }
  }
  throw std::logic_error("unreachable");
}

SubdiffSet Piece::subdiff(const Vec& u) const {
  switch (kind) {
    case Kind::AtomFn:
      return atom->subdiff(u);
    case Kind::AtomConj:
      return atom->conj_subdiff(u);
    case Kind::BoxLinear: {
      const double s = poly_slack(u);
      Vec slo(dim), shi(dim);
      for (int i = 0; i < dim; ++i) {
        double li = linear.size() ? linear[i] : 0.0;
        slo[i] = u[i] <= lo[i] + s ? -kInf : li;
        shi[i] = u[i] >= hi[i] - s ? kInf : li;
      }
      return SubdiffSet::intervals(slo, shi);
    }
    case Kind::HalfSq:
      return SubdiffSet::point(u);
    case Kind::HalfSqPos:
      return SubdiffSet::point(u.cwiseMax(0.0));
  }
  throw std::logic_error("unreachable");
}

namespace {
double system_violation(const LinearSystem& sys, const Vec& u) {
  if (sys.rows() == 0) return 0.0;
  Vec r = sys.C * u - sys.c;
  std::vector<bool> is_eq(static_cast<size_t>(r.size()), false);
  for (int e : sys.eq_rows) is_eq[static_cast<size_t>(e)] = true;
  double v = 0.0;
  for (int i = 0; i < r.size(); ++i) v = std::max(v, is_eq[static_cast<size_t>(i)] ? std::abs(r[i]) : r[i]);
  return std::max(v, 0.0);
}
}  // namespace

double Piece::domain_violation(const Vec& u) const {
  switch (kind) {
    case Kind::AtomFn: {
      LinearSystem sys = atom->domain_system();
      if (!sys.representable) return atom->eval(u).finite() ? 0.0 : kInf;
      return system_violation(sys, u);
    }
    case Kind::AtomConj: {
      LinearSystem sys = atom->conj_domain_system();
      if (!sys.representable) return atom->conjugate(u).finite() ? 0.0 : kInf;
      return system_violation(sys, u);
    }
    case Kind::BoxLinear: {
      double v = 0.0;
      for (int i = 0; i < dim; ++i) {
        if (std::isfinite(lo[i])) v = std::max(v, lo[i] - u[i]);
        if (std::isfinite(hi[i])) v = std::max(v, u[i] - hi[i]);
      }
      return v;
    }
    case Kind::HalfSq:
    case Kind::HalfSqPos:
      return 0.0;
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// GraphProblem

void GraphProblem::validate() const {
  int sx = 0;
  for (const auto& b : h) sx += b.dim;
  int sv = 0;
  for (const auto& b : p) sv += b.dim;
  if (sx != nx() || sv != nv()) throw std::logic_error("graph problem block layout mismatch");
  if (q.size() != M.rows()) throw std::logic_error("graph problem offset dim mismatch");
}

ExtReal GraphProblem::objective(const Vec& x, const Vec& v) const {
  ExtReal val = 0.0;
  int off = 0;
  for (const auto& b : h) {
    val += b.eval(x.segment(off, b.dim));
    off += b.dim;
  }
  off = 0;
  for (const auto& b : p) {
    val += b.eval(v.segment(off, b.dim));
    off += b.dim;
  }
  return val;
}

// ---------------------------------------------------------------------------
// solver

namespace {

struct BlockwiseProx {
  const std::vector<Piece>* pieces;
  Vec apply(const Vec& u, double t) const {
    Vec out(u.size());
    int off = 0;
    for (const auto& b : *pieces) {
      out.segment(off, b.dim) = b.prox(u.segment(off, b.dim), t);
      off += b.dim;
    }
    return out;
  }
};

// Row scaling is applied only to BoxLinear p-blocks: box sets scale
// componentwise and the multipliers map back exactly.
Vec compute_row_scaling(const GraphProblem& gp) {
  Vec e = Vec::Ones(gp.nv());
  int off = 0;
  for (const auto& b : gp.p) {
    if (b.kind == Piece::Kind::BoxLinear) {
      for (int i = 0; i < b.dim; ++i) {
        double nrm = gp.M.row(off + i).norm();
        if (nrm > 1e-12) e[off + i] = std::min(1e3, std::max(1e-3, 1.0 / nrm));
      }
    }
    off += b.dim;
  }
  return e;
}

GraphProblem scale_problem(const GraphProblem& gp, const Vec& e) {
  GraphProblem s = gp;
  s.M = e.asDiagonal() * gp.M;
  s.q = e.cwiseProduct(gp.q);
  int off = 0;
  for (auto& b : s.p) {
    if (b.kind == Piece::Kind::BoxLinear) {
      for (int i = 0; i < b.dim; ++i) {
        double ei = e[off + i];
        b.lo[i] *= ei;
        b.hi[i] *= ei;
        if (b.linear.size()) b.linear[i] /= ei;
      }
    }
    off += b.dim;
  }
  return s;
}

}  // namespace

GraphResult graph_solve(const GraphProblem& gp_in, const SolverConfig& cfg, const Vec* x0) {
  gp_in.validate();
  const Vec escale = compute_row_scaling(gp_in);
  const bool scaled = (escale.array() != 1.0).any();
  const GraphProblem gp = scaled ? scale_problem(gp_in, escale) : gp_in;

  const int nx = gp.nx();
  const int nv = gp.nv();

  Eigen::LLT<Mat> llt(Mat::Identity(nx, nx) + gp.M.transpose() * gp.M);
  if (llt.info() != Eigen::Success) throw std::runtime_error("graph projection factorization failed");

  BlockwiseProx proxh{&gp.h};
  BlockwiseProx proxp{&gp.p};

  Vec x = x0 ? *x0 : Vec::Zero(nx);
  Vec v = nv > 0 ? Vec(gp.M * x - gp.q) : Vec::Zero(0);
  Vec xt = Vec::Zero(nx), vt = Vec::Zero(nv);

  double rho = cfg.rho;
  const double alpha = cfg.over_relaxation;

  GraphResult best;
  best.r_stat = kInf;
  best.r_feas = kInf;

  Vec xh(nx), vh(nv), mu(nx), lam(nv);
  const int max_iter = std::max(1, cfg.max_iter);
  int it = 0;
  for (; it < max_iter; ++it) {
    xh = proxh.apply(x - xt, 1.0 / rho);
    vh = nv > 0 ? proxp.apply(v - vt, 1.0 / rho) : Vec::Zero(0);

    double pending_rho = rho;
    const bool check = (it % cfg.check_every == 0) || it == max_iter - 1;
    if (check) {
      mu = rho * (x - xt - xh);
      lam = rho * (v - vt - vh);
      Vec mtl = nv > 0 ? Vec(gp.M.transpose() * lam) : Vec::Zero(nx);
      double r_stat = (mu + mtl).lpNorm<Eigen::Infinity>();
      Vec mx = nv > 0 ? Vec(gp.M * xh - gp.q) : Vec::Zero(0);
      double r_feas = nv > 0 ? (mx - vh).lpNorm<Eigen::Infinity>() : 0.0;

      double s_stat = 1.0 + std::max(mu.lpNorm<Eigen::Infinity>(), mtl.lpNorm<Eigen::Infinity>());
      double s_feas =
          1.0 + (nv > 0 ? std::max(mx.lpNorm<Eigen::Infinity>(), vh.lpNorm<Eigen::Infinity>()) : 0.0);

      if (r_stat / s_stat + r_feas / s_feas < best.r_stat / s_stat + best.r_feas / s_feas) {
        best.x = xh;
        best.v = vh;
        best.lambda = lam;
        best.xgrad = mu;
        best.r_stat = r_stat;
        best.r_feas = r_feas;
      }

      if (r_stat <= cfg.tol * s_stat && r_feas <= cfg.tol * s_feas) {
        best.x = xh;
        best.v = vh;
        best.lambda = lam;
        best.xgrad = mu;
        best.r_stat = r_stat;
        best.r_feas = r_feas;
        best.converged = true;
        break;
      }
      if (xh.lpNorm<Eigen::Infinity>() > cfg.divergence_threshold) {
        best.diverged = true;
        break;
      }
      if (cfg.adaptive_rho && it > 0) {
        double ratio = (r_feas / s_feas + 1e-16) / (r_stat / s_stat + 1e-16);
        double factor = 1.0;
        if (ratio > 10.0)
          factor = std::min(10.0, std::sqrt(ratio));
        else if (ratio < 0.1)
          factor = std::max(0.1, std::sqrt(ratio));
        if (factor != 1.0) pending_rho = std::min(1e6, std::max(1e-6, rho * factor));
      }
    }

    Vec xr = alpha * xh + (1.0 - alpha) * x;
    Vec vr = nv > 0 ? Vec(alpha * vh + (1.0 - alpha) * v) : Vec::Zero(0);
    Vec rhs = (xr + xt);
    if (nv > 0) rhs += gp.M.transpose() * (vr + vt + gp.q);
    Vec xp = llt.solve(rhs);
    Vec vp = nv > 0 ? Vec(gp.M * xp - gp.q) : Vec::Zero(0);
    xt += xr - xp;
    if (nv > 0) vt += vr - vp;
    x = xp;
    v = vp;

    if (pending_rho != rho) {
      // scaled duals carry 1/rho; rescale so the multiplier estimates stay put
      xt *= rho / pending_rho;
      vt *= rho / pending_rho;
      rho = pending_rho;
    }
  }

  best.iterations = it;
  if (best.x.size() == 0) {  // never checked (max_iter tiny)
    best.x = xh;
    best.v = vh;
    best.lambda = Vec::Zero(nv);
    best.xgrad = Vec::Zero(nx);
  }

  if (scaled) {
    // map back: v = v' / e, lambda = e .* lambda', M^T lambda unchanged
    best.v = best.v.cwiseQuotient(escale);
    best.lambda = best.lambda.cwiseProduct(escale);
  }

  ExtReal obj = gp_in.objective(best.x, best.v);
  best.objective = obj.finite() ? obj.value() : (obj.is_inf() ? kInf : -kInf);
  return best;
}

}  // namespace ccopt
