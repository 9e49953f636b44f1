// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/subsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace ccopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

int RestrictedProgram::r() const { return primal ? primal->r() : dual->r(); }

std::vector<int> RestrictedProgram::complement() const {
  std::vector<int> comp;
  size_t j = 0;
  for (int i = 0; i < r(); ++i) {
    if (j < subset.size() && subset[j] == i) {
      ++j;
    } else {
      comp.push_back(i);
    }
  }
  return comp;
}

RestrictedProgram RestrictedProgram::primal_program(const PrimalModel& p, std::vector<int> subset) {
  RestrictedProgram rp;
  rp.base = Base::PrimalTheta;
  rp.flavor = p.card.variant == CardFlavor::Variant::Plus ? ConstraintFlavor::InequalityOnComplement
                                                          : ConstraintFlavor::EqualityOnComplement;
  rp.primal = &p;
  rp.subset = std::move(subset);
  std::sort(rp.subset.begin(), rp.subset.end());
  return rp;
}

RestrictedProgram RestrictedProgram::dual_program(const DualModel& d, std::vector<int> subset) {
  RestrictedProgram rp;
  rp.base = Base::DualXi;
  rp.flavor = d.card.variant == CardFlavor::Variant::Plus ? ConstraintFlavor::DualPlus
                                                          : ConstraintFlavor::DualZero;
  rp.dual = &d;
  rp.subset = std::move(subset);
  std::sort(rp.subset.begin(), rp.subset.end());
  return rp;
}

// ---------------------------------------------------------------------------
// assembly

namespace detail {

AssembledProgram assemble(const RestrictedProgram& prog) {
  AssembledProgram ap;
  if (prog.base == RestrictedProgram::Base::PrimalTheta) {
    const PrimalModel& pm = *prog.primal;
    const int n = pm.n();
    const int m = pm.m();
    std::vector<int> comp = prog.complement();
    const bool eq = prog.flavor == RestrictedProgram::ConstraintFlavor::EqualityOnComplement;

    const bool f_poly = pm.f.kind() == AtomKind::IndicatorPolyhedron;
    const bool g_poly = pm.g.kind() == AtomKind::IndicatorPolyhedron;

    ap.gp.h.push_back(f_poly ? Piece::free_block(n) : Piece::atom_fn(&pm.f));

    int nv = 0;
    // g block (possibly decomposed polyhedron rows)
    ap.g_block_offset = nv;
    Mat Mg = g_poly ? Mat(pm.g.poly_C() * pm.A) : pm.A;
    Vec qg = g_poly ? pm.g.poly_c() : Vec(Vec::Zero(m));
    ap.gp.p.push_back(g_poly ? Piece::box_linear(Vec::Constant(Mg.rows(), -kInf),
                                                 Vec::Zero(Mg.rows()))
                             : Piece::atom_fn(&pm.g));
    nv += static_cast<int>(Mg.rows());

    // constraint block on the complement rows
    Mat Mc(comp.size(), n);
    Vec qc(comp.size());
    for (size_t i = 0; i < comp.size(); ++i) {
      Mc.row(static_cast<int>(i)) = pm.B.row(comp[i]);
      qc[static_cast<int>(i)] = pm.b[comp[i]];
    }
    ap.cons_block_offset = nv;
    ap.cons_rows = comp;
    if (!comp.empty()) {
      Vec lo = eq ? Vec(Vec::Zero(comp.size())) : Vec(Vec::Constant(comp.size(), -kInf));
      Vec hi = Vec::Zero(comp.size());
      ap.gp.p.push_back(Piece::box_linear(lo, hi));
      nv += static_cast<int>(comp.size());
    }

    // decomposed f polyhedron rows
    Mat Mf(0, n);
    Vec qf(0);
    if (f_poly) {
      Mf = pm.f.poly_C();
      qf = pm.f.poly_c();
      ap.gp.p.push_back(Piece::box_linear(Vec::Constant(Mf.rows(), -kInf), Vec::Zero(Mf.rows())));
      nv += static_cast<int>(Mf.rows());
    }

    ap.gp.M.resize(nv, n);
    ap.gp.q.resize(nv);
    int off = 0;
    ap.gp.M.middleRows(off, Mg.rows()) = Mg;
    ap.gp.q.segment(off, Mg.rows()) = qg;
    off += static_cast<int>(Mg.rows());
    if (!comp.empty()) {
      ap.gp.M.middleRows(off, Mc.rows()) = Mc;
      ap.gp.q.segment(off, Mc.rows()) = qc;
      off += static_cast<int>(Mc.rows());
    }
    if (f_poly) {
      ap.gp.M.middleRows(off, Mf.rows()) = Mf;
      ap.gp.q.segment(off, Mf.rows()) = qf;
    }
    return ap;
  }

  // dual side
  ap.dual_side = true;
  const DualModel& dm = *prog.dual;
  const int m = dm.m();
  const int r = dm.r();
  const int n = dm.n();
  const bool plus = prog.flavor == RestrictedProgram::ConstraintFlavor::DualPlus;

  ap.gp.h.push_back(Piece::atom_conj(&dm.g));  // y block
  Vec zlo(r), zhi(r);
  std::set<int> sset(prog.subset.begin(), prog.subset.end());
  for (int i = 0; i < r; ++i) {
    if (sset.count(i)) {
      zlo[i] = plus ? 0.0 : -kInf;
      zhi[i] = kInf;
    } else {
      zlo[i] = zhi[i] = 0.0;
    }
  }
  ap.gp.h.push_back(Piece::box_linear(std::move(zlo), std::move(zhi), dm.b));

  ap.gp.p.push_back(Piece::atom_conj(&dm.f));
  ap.gp.M.resize(n, m + r);
  ap.gp.M.leftCols(m) = -dm.A.transpose();
  ap.gp.M.rightCols(r) = -dm.B.transpose();
  ap.gp.q = Vec::Zero(n);
  return ap;
}

LinearSystem feasibility_system(const RestrictedProgram& prog) {
  if (prog.base == RestrictedProgram::Base::PrimalTheta) {
    const PrimalModel& pm = *prog.primal;
    const int n = pm.n();
    LinearSystem sys = LinearSystem::whole_space(n);
    LinearSystem fd = pm.f.domain_system();
    LinearSystem gd = pm.g.domain_system();
    if (!fd.representable || !gd.representable) {
      sys.representable = false;
      return sys;
    }
    for (int i = 0; i < fd.rows(); ++i)
      sys.append_row(fd.C.row(i).transpose(), fd.c[i],
                     std::find(fd.eq_rows.begin(), fd.eq_rows.end(), i) != fd.eq_rows.end());
    for (int i = 0; i < gd.rows(); ++i)
      sys.append_row((gd.C.row(i) * pm.A).transpose(), gd.c[i],
                     std::find(gd.eq_rows.begin(), gd.eq_rows.end(), i) != gd.eq_rows.end());
    const bool eq = prog.flavor == RestrictedProgram::ConstraintFlavor::EqualityOnComplement;
    for (int i : prog.complement()) sys.append_row(pm.B.row(i).transpose(), pm.b[i], eq);
    return sys;
  }
  const DualModel& dm = *prog.dual;
  const int m = dm.m();
  const int r = dm.r();
  LinearSystem sys = LinearSystem::whole_space(m + r);
  LinearSystem gd = dm.g.conj_domain_system();
  LinearSystem fd = dm.f.conj_domain_system();
  if (!fd.representable || !gd.representable) {
    sys.representable = false;
    return sys;
  }
  for (int i = 0; i < gd.rows(); ++i) {
    Vec row = Vec::Zero(m + r);
    row.head(m) = gd.C.row(i).transpose();
    sys.append_row(row, gd.c[i],
                   std::find(gd.eq_rows.begin(), gd.eq_rows.end(), i) != gd.eq_rows.end());
  }
  // dom f* rows act on -Q^T w
  Mat Qt(dm.n(), m + r);
  Qt.leftCols(m) = dm.A.transpose();
  Qt.rightCols(r) = dm.B.transpose();
  for (int i = 0; i < fd.rows(); ++i) {
    Vec row = -(Qt.transpose() * fd.C.row(i).transpose());
    sys.append_row(row, fd.c[i],
                   std::find(fd.eq_rows.begin(), fd.eq_rows.end(), i) != fd.eq_rows.end());
  }
  std::set<int> sset(prog.subset.begin(), prog.subset.end());
  const bool plus = prog.flavor == RestrictedProgram::ConstraintFlavor::DualPlus;
  for (int i = 0; i < r; ++i) {
    Vec row = Vec::Zero(m + r);
    row[m + i] = 1.0;
    if (sset.count(i)) {
      if (plus) sys.append_row(-row, 0.0, false);  // z_i >= 0
    } else {
      sys.append_row(row, 0.0, true);  // z_i = 0
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------
// recession certification

namespace {

// accumulates the recession problem: min <lobj, d> + sum(t)
// s.t. rows, ||d||_inf <= 1, t >= 0
struct RecessionBuilder {
  int nx;
  Vec lobj;
  std::vector<Vec> rows;  // over d only; aux column filled on the fly
  std::vector<int> row_aux;  // aux index or -1
  std::vector<double> row_lo, row_hi;
  std::vector<std::pair<int, int>> eq_span;  // unused
  int naux = 0;

  explicit RecessionBuilder(int nx_) : nx(nx_), lobj(Vec::Zero(nx_)) {}

  void add_row(const Vec& rd, int aux, double lo, double hi) {
    rows.push_back(rd);
    row_aux.push_back(aux);
    row_lo.push_back(lo);
    row_hi.push_back(hi);
  }

  // encode the recession function of `pc` applied to R d (R = rows of M for
  // p pieces, identity segment for h pieces)
  void add_piece(const Piece& pc, const Mat& R) {
    const int k = static_cast<int>(R.rows());
    auto eq0 = [&](int i) { add_row(R.row(i).transpose(), -1, 0.0, 0.0); };
    auto le0 = [&](int i) { add_row(R.row(i).transpose(), -1, -kInf, 0.0); };
    auto ge0 = [&](int i) { add_row(R.row(i).transpose(), -1, 0.0, kInf); };
    auto abs_aux = [&](int i) {
      int t = naux++;
      add_row(R.row(i).transpose(), t, -kInf, 0.0);   // r d - t <= 0
      add_row(-R.row(i).transpose(), t, -kInf, 0.0);  // -r d - t <= 0
    };
    switch (pc.kind) {
      case Piece::Kind::BoxLinear:
        if (pc.linear.size()) lobj += R.transpose() * pc.linear;
        for (int i = 0; i < k; ++i) {
          if (std::isfinite(pc.hi[i])) le0(i);
          if (std::isfinite(pc.lo[i])) ge0(i);
        }
        return;
      case Piece::Kind::HalfSq:
        for (int i = 0; i < k; ++i) eq0(i);
        return;
      case Piece::Kind::HalfSqPos:
        for (int i = 0; i < k; ++i) le0(i);
        return;
      case Piece::Kind::AtomFn:
        switch (pc.atom->kind()) {
          case AtomKind::Zero:
            return;
          case AtomKind::QuadraticHalfSqNorm:
            for (int i = 0; i < k; ++i)
              if (pc.atom->mask_flag(i)) eq0(i);
            return;
          case AtomKind::L1Norm:
            for (int i = 0; i < k; ++i) abs_aux(i);
            return;
          case AtomKind::IndicatorBox:
            for (int i = 0; i < k; ++i) {
              if (std::isfinite(pc.atom->upper()[i])) le0(i);
              if (std::isfinite(pc.atom->lower()[i])) ge0(i);
            }
            return;
          case AtomKind::IndicatorNonneg:
            for (int i = 0; i < k; ++i) ge0(i);
            return;
          case AtomKind::IndicatorZero:
          case AtomKind::LinearPlusIndicatorInfBall:
            for (int i = 0; i < k; ++i) eq0(i);
            return;
          case AtomKind::IndicatorPolyhedron: {
            Mat CR = pc.atom->poly_C() * R;
            for (int i = 0; i < CR.rows(); ++i) add_row(CR.row(i).transpose(), -1, -kInf, 0.0);
            return;
          }
          case AtomKind::IndicatorExpEpigraph:
            le0(0);
            ge0(1);
            return;
        }
        return;
      case Piece::Kind::AtomConj:
        switch (pc.atom->kind()) {
          case AtomKind::Zero:          // conj = delta_{0}
          case AtomKind::QuadraticHalfSqNorm:  // quadratic on mask, delta_0 off
          case AtomKind::L1Norm:        // conj = linear + inf-ball
            for (int i = 0; i < k; ++i) eq0(i);
            return;
          case AtomKind::IndicatorBox: {
            // support function: positively homogeneous
            const Vec& lo = pc.atom->lower();
            const Vec& hi = pc.atom->upper();
            for (int i = 0; i < k; ++i) {
              bool lof = std::isfinite(lo[i]), hif = std::isfinite(hi[i]);
              if (!lof && !hif) {
                eq0(i);
              } else if (!hif) {  // domain d_i <= 0, slope lo on that branch
                le0(i);
                lobj += lo[i] * R.row(i).transpose();
              } else if (!lof) {
                ge0(i);
                lobj += hi[i] * R.row(i).transpose();
              } else if (lo[i] == hi[i]) {
                lobj += lo[i] * R.row(i).transpose();
              } else {
                int t = naux++;
                add_row(hi[i] * R.row(i).transpose(), t, -kInf, 0.0);
                add_row(lo[i] * R.row(i).transpose(), t, -kInf, 0.0);
              }
            }
            return;
          }
          case AtomKind::IndicatorNonneg:
            for (int i = 0; i < k; ++i) le0(i);
            return;
          case AtomKind::IndicatorZero:  // conj = zero function
            return;
          default:
            throw std::logic_error("recession encoding missing for conjugate of " +
                                   atom_kind_name(pc.atom->kind()));
        }
    }
  }
};

}  // namespace

RecessionCertificate certify_unbounded(const GraphProblem& gp, const Vec& base_point,
                                       const SolverConfig& cfg) {
  RecessionCertificate out;
  const int nx = gp.nx();
  RecessionBuilder rb(nx);
  {
    int off = 0;
    for (const auto& b : gp.h) {
      Mat R = Mat::Zero(b.dim, nx);
      for (int i = 0; i < b.dim; ++i) R(i, off + i) = 1.0;
      rb.add_piece(b, R);
      off += b.dim;
    }
    off = 0;
    for (const auto& b : gp.p) {
      rb.add_piece(b, gp.M.middleRows(off, b.dim));
      off += b.dim;
    }
  }

  const int naux = rb.naux;
  const int nrows = static_cast<int>(rb.rows.size());

  GraphProblem rec;
  {
    Vec dlin = rb.lobj;
    rec.h.push_back(Piece::box_linear(Vec::Constant(nx, -1.0), Vec::Constant(nx, 1.0), dlin));
    if (naux > 0)
      rec.h.push_back(Piece::box_linear(Vec::Zero(naux), Vec::Constant(naux, kInf),
                                        Vec::Ones(naux)));
    rec.M.resize(nrows, nx + naux);
    rec.M.setZero();
    rec.q = Vec::Zero(nrows);
    Vec lo(nrows), hi(nrows);
    for (int i = 0; i < nrows; ++i) {
      rec.M.block(i, 0, 1, nx) = rb.rows[static_cast<size_t>(i)].transpose();
      if (rb.row_aux[static_cast<size_t>(i)] >= 0)
        rec.M(i, nx + rb.row_aux[static_cast<size_t>(i)]) = -1.0;
      lo[i] = rb.row_lo[static_cast<size_t>(i)];
      hi[i] = rb.row_hi[static_cast<size_t>(i)];
    }
    if (nrows > 0) rec.p.push_back(Piece::box_linear(std::move(lo), std::move(hi)));
  }

  SolverConfig rcfg = cfg;
  rcfg.tol = std::min(cfg.tol, 1e-9);
  rcfg.max_iter = std::max(cfg.max_iter, 20000);
  GraphResult res = graph_solve(rec, rcfg);
  double scale = 1.0 + rb.lobj.lpNorm<Eigen::Infinity>();
  if (!(res.objective < -1e-6 * scale)) return out;

  Vec d = res.x.head(nx);
  for (int i = 0; i < nx; ++i)
    if (std::abs(d[i]) < 1e-9) d[i] = 0.0;

  // project exactly onto the equality recession rows
  {
    std::vector<int> eqr;
    for (int i = 0; i < nrows; ++i)
      if (rb.row_aux[static_cast<size_t>(i)] < 0 && rb.row_lo[static_cast<size_t>(i)] == 0.0 &&
          rb.row_hi[static_cast<size_t>(i)] == 0.0)
        eqr.push_back(i);
    if (!eqr.empty()) {
      Mat E(eqr.size(), nx);
      for (size_t i = 0; i < eqr.size(); ++i)
        E.row(static_cast<int>(i)) = rb.rows[static_cast<size_t>(eqr[i])].transpose();
      Eigen::CompleteOrthogonalDecomposition<Mat> cod(E);
      d -= cod.solve(E * d);
    }
  }

  // verify the witness by evaluation: strictly decreasing finite objective
  ExtReal v0 = gp.objective(base_point, gp.nv() > 0 ? Vec(gp.M * base_point - gp.q) : Vec::Zero(0));
  if (!v0.finite()) return out;
  double prev = v0.value();
  double delta = 1e-6 * (1.0 + std::abs(prev));
  for (double tau : {10.0, 100.0, 1000.0}) {
    Vec xt = base_point + tau * d;
    ExtReal vt = gp.objective(xt, gp.nv() > 0 ? Vec(gp.M * xt - gp.q) : Vec::Zero(0));
    if (!vt.finite() || !(vt.value() < prev - delta)) return out;
    prev = vt.value();
  }
  out.unbounded = true;
  out.direction = d;
  return out;
}

// ---------------------------------------------------------------------------
// active-set snap: support identification downstream reads zeros at the
// shared 1e-8 tolerance, so the constraints that define them must hold
// well below it. Activity is read off the prox iterate v (exact clamps),
// the correction is the minimum-norm solve of the active affine rows.

namespace {

void collect_piece_rows(const Piece& pc, const Mat& R, const Vec& qblk, const Vec& u,
                        std::vector<Vec>& rows, std::vector<double>& rhs) {
  const double eps = 1e-9 * (1.0 + u.lpNorm<Eigen::Infinity>());
  if (pc.kind == Piece::Kind::BoxLinear) {
    for (int i = 0; i < pc.dim; ++i) {
      double bound;
      if (std::isfinite(pc.lo[i]) && std::abs(u[i] - pc.lo[i]) <= eps)
        bound = pc.lo[i];
      else if (std::isfinite(pc.hi[i]) && std::abs(u[i] - pc.hi[i]) <= eps)
        bound = pc.hi[i];
      else
        continue;
      rows.push_back(R.row(i).transpose());
      rhs.push_back(qblk[i] + bound);
    }
    return;
  }
  if (pc.kind == Piece::Kind::AtomFn || pc.kind == Piece::Kind::AtomConj) {
    LinearSystem sys = pc.kind == Piece::Kind::AtomFn ? pc.atom->domain_system()
                                                      : pc.atom->conj_domain_system();
    if (!sys.representable || sys.rows() == 0) return;
    std::vector<bool> is_eq(static_cast<size_t>(sys.rows()), false);
    for (int e : sys.eq_rows) is_eq[static_cast<size_t>(e)] = true;
    Vec resid = sys.C * u - sys.c;
    for (int j = 0; j < sys.rows(); ++j) {
      if (!is_eq[static_cast<size_t>(j)] && std::abs(resid[j]) > eps) continue;
      rows.push_back((sys.C.row(j) * R).transpose());
      rhs.push_back(sys.C.row(j).dot(qblk) + sys.c[j]);
    }
  }
}

// projects x onto the active rows; returns false (leaving x unchanged)
// when the correction is implausibly large or does not converge
bool snap_active(const GraphProblem& gp, Vec& x, const Vec& vhat) {
  std::vector<Vec> rows;
  std::vector<double> rhs;
  int off = 0;
  for (const auto& b : gp.h) {
    Mat R = Mat::Zero(b.dim, gp.nx());
    for (int i = 0; i < b.dim; ++i) R(i, off + i) = 1.0;
    collect_piece_rows(b, R, Vec::Zero(b.dim), x.segment(off, b.dim), rows, rhs);
    off += b.dim;
  }
  off = 0;
  for (const auto& b : gp.p) {
    collect_piece_rows(b, gp.M.middleRows(off, b.dim), gp.q.segment(off, b.dim),
                       vhat.segment(off, b.dim), rows, rhs);
    off += b.dim;
  }
  if (rows.empty()) return true;
  Mat E(rows.size(), gp.nx());
  Vec e(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    E.row(static_cast<int>(i)) = rows[i].transpose();
    e[static_cast<int>(i)] = rhs[i];
  }
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(E);
  Vec delta = cod.solve(E * x - e);
  if (delta.lpNorm<Eigen::Infinity>() > 1e-4 * (1.0 + x.lpNorm<Eigen::Infinity>())) return false;
  Vec snapped = x - delta;
  if ((E * snapped - e).lpNorm<Eigen::Infinity>() > 1e-10 * (1.0 + e.lpNorm<Eigen::Infinity>()))
    return false;
  x = snapped;
  return true;
}

}  // namespace

}  // namespace detail

// ---------------------------------------------------------------------------
// lp_feasibility

Certificate lp_feasibility(const Mat& C, const Vec& c, const std::vector<int>& eq_rows,
                           const std::vector<int>& strict_rows, double margin,
                           const SolverConfig& cfg) {
  if (margin < 0.0) throw std::invalid_argument("lp_feasibility requires margin >= 0");
  const int n = static_cast<int>(C.cols());
  const int rows = static_cast<int>(C.rows());
  if (rows == 0) {
    Certificate cert = Certificate::pass(0.0, "empty system");
    cert.set_witness("point", Vec::Zero(n));
    return cert;
  }

  std::vector<bool> is_eq(static_cast<size_t>(rows), false);
  for (int e : eq_rows) is_eq[static_cast<size_t>(e)] = true;
  Vec ct = c;
  for (int s : strict_rows)
    if (!is_eq[static_cast<size_t>(s)]) ct[s] -= margin;

  std::vector<int> ineq_idx, eq_idx;
  for (int i = 0; i < rows; ++i) (is_eq[static_cast<size_t>(i)] ? eq_idx : ineq_idx).push_back(i);

  GraphProblem gp;
  gp.h.push_back(Piece::free_block(n));
  gp.M.resize(rows, n);
  gp.q.resize(rows);
  int off = 0;
  for (int i : ineq_idx) {
    gp.M.row(off) = C.row(i);
    gp.q[off] = ct[i];
    ++off;
  }
  if (!ineq_idx.empty()) gp.p.push_back(Piece::half_sq_pos(static_cast<int>(ineq_idx.size())));
  for (int i : eq_idx) {
    gp.M.row(off) = C.row(i);
    gp.q[off] = ct[i];
    ++off;
  }
  if (!eq_idx.empty()) gp.p.push_back(Piece::half_sq(static_cast<int>(eq_idx.size())));

  SolverConfig fcfg = cfg;
  fcfg.tol = std::min(cfg.tol, 1e-10);
  auto classify = [&](const GraphResult& res) -> Certificate {
    const Vec& x = res.x;
    Vec rvec = C * x - ct;
    double viol = 0.0;
    for (int i = 0; i < rows; ++i)
      viol = std::max(viol, is_eq[static_cast<size_t>(i)] ? std::abs(rvec[i]) : rvec[i]);
    double feps = 1e-6 * (1.0 + x.lpNorm<Eigen::Infinity>());
    if (viol <= feps) {
      Certificate cert = Certificate::pass(std::max(0.0, viol));
      cert.set_witness("point", x);
      return cert;
    }
    // Farkas candidate from the least-squares residual
    Vec y(rows);
    for (int i = 0; i < rows; ++i)
      y[i] = is_eq[static_cast<size_t>(i)] ? rvec[i] : std::max(0.0, rvec[i]);
    double ny = y.lpNorm<Eigen::Infinity>();
    if (ny > 0) y /= ny;
    double ortho = (C.transpose() * y).lpNorm<Eigen::Infinity>();
    double val = ct.dot(y);
    double cscale = 1.0 + ct.lpNorm<Eigen::Infinity>();
    if (ortho <= 1e-6 * (1.0 + C.lpNorm<Eigen::Infinity>()) && val < -1e-9 * cscale) {
      Certificate cert = Certificate::fail(viol, "Farkas infeasibility certificate");
      cert.set_witness("farkas", y);
      cert.set_witness("point", x);
      return cert;
    }
    Certificate cert = Certificate::indeterminate_result("feasibility unresolved");
    cert.residual = viol;
    cert.set_witness("point", x);
    cert.set_witness("farkas", y);
    return cert;
  };

  GraphResult res = graph_solve(gp, fcfg);
  Certificate cert = classify(res);
  if (cert.indeterminate()) {
    fcfg.max_iter = cfg.max_iter * 4;
    fcfg.tol = 1e-12;
    res = graph_solve(gp, fcfg, &res.x);
    cert = classify(res);
    if (cert.indeterminate()) {
      // decide by the residual side; always return a verdict
      double viol = cert.residual;
      cert.verdict = viol <= 1e-4 ? Certificate::Verdict::Pass : Certificate::Verdict::Fail;
      cert.detail = "borderline feasibility, resolved by residual magnitude";
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------
// kkt residuals

namespace {

// distance of 0 to { s + A^T y + c0 : s in Sf, y in Sg }, with Sf possibly
// a generated cone; exact when Sg is a single point, otherwise a small
// least-squares solve
double stationarity_distance(const SubdiffSet& Sf, const SubdiffSet& Sg, const Mat& At,
                             const Vec& c0, const SolverConfig& cfg) {
  if (Sf.empty() || Sg.empty()) return kInf;
  const bool sg_point =
      Sg.kind == SubdiffSet::Kind::IntervalProduct && (Sg.lo.array() == Sg.hi.array()).all();
  if (sg_point && Sf.kind != SubdiffSet::Kind::GeneratedCone) {
    Vec target = -(At * Sg.lo) - c0;
    return Sf.dist(target);
  }
  // variables: (s or nu, y)
  GraphProblem gp;
  int ns;
  Mat Ms;
  if (Sf.kind == SubdiffSet::Kind::GeneratedCone) {
    ns = static_cast<int>(Sf.generators.cols());
    gp.h.push_back(Piece::box_linear(Vec::Zero(ns), Vec::Constant(ns, kInf)));
    Ms = Sf.generators;
  } else {
    ns = static_cast<int>(Sf.lo.size());
    gp.h.push_back(Piece::box_linear(Sf.lo, Sf.hi));
    Ms = Mat::Identity(ns, ns);
  }
  int ny;
  Mat My;
  if (Sg.kind == SubdiffSet::Kind::GeneratedCone) {
    ny = static_cast<int>(Sg.generators.cols());
    gp.h.push_back(Piece::box_linear(Vec::Zero(ny), Vec::Constant(ny, kInf)));
    My = At * Sg.generators;
  } else {
    ny = static_cast<int>(Sg.lo.size());
    gp.h.push_back(Piece::box_linear(Sg.lo, Sg.hi));
    My = At;
  }
  const int nres = static_cast<int>(c0.size());
  gp.M.resize(nres, ns + ny);
  gp.M.leftCols(ns) = Ms;
  gp.M.rightCols(ny) = My;
  gp.q = -c0;
  gp.p.push_back(Piece::half_sq(nres));
  SolverConfig scfg = cfg;
  scfg.tol = std::min(cfg.tol, 1e-10);
  GraphResult res = graph_solve(gp, scfg);
  return std::sqrt(std::max(0.0, 2.0 * res.objective));
}

}  // namespace

std::array<double, 3> kkt_residual(const RestrictedProgram& prog, const Vec& point,
                                   const Vec& multipliers, const SolverConfig& cfg) {
  std::set<int> sset(prog.subset.begin(), prog.subset.end());
  if (prog.base == RestrictedProgram::Base::PrimalTheta) {
    const PrimalModel& pm = *prog.primal;
    if (static_cast<int>(point.size()) != pm.n())
      throw std::invalid_argument("kkt_residual: point dim mismatch");
    if (static_cast<int>(multipliers.size()) != pm.r())
      throw std::invalid_argument("kkt_residual: multipliers must be a full r-vector");
    const bool eq = prog.flavor == RestrictedProgram::ConstraintFlavor::EqualityOnComplement;

    Vec Ax = pm.A * point;
    Vec u = pm.B * point - pm.b;

    double dom_viol = std::max(Piece::atom_fn(&pm.f).domain_violation(point),
                               Piece::atom_fn(&pm.g).domain_violation(Ax));
    double feas = dom_viol;
    for (int i : prog.complement()) feas = std::max(feas, eq ? std::abs(u[i]) : u[i]);
    feas = std::max(feas, 0.0);
    // genuinely outside the domain of the convex part
    if (dom_viol > 1e-3 * (1.0 + point.lpNorm<Eigen::Infinity>())) feas = kInf;

    double comp = 0.0;
    for (int i = 0; i < pm.r(); ++i) {
      if (sset.count(i)) {
        comp = std::max(comp, std::abs(multipliers[i]));  // rows in S carry no constraint
      } else if (!eq) {
        comp = std::max(comp, std::abs(multipliers[i] * u[i]));
        comp = std::max(comp, -multipliers[i]);  // sign z_i >= 0
      }
    }
    comp = std::max(comp, 0.0);

    double stat;
    SubdiffSet Sf = pm.f.subdiff(pm.f.domain_project(point));
    SubdiffSet Sg = pm.g.subdiff(pm.g.domain_project(Ax));
    Vec c0 = pm.B.transpose() * multipliers;
    stat = stationarity_distance(Sf, Sg, pm.A.transpose(), c0, cfg);
    return {stat, comp, feas};
  }

  const DualModel& dm = *prog.dual;
  if (static_cast<int>(point.size()) != dm.wdim())
    throw std::invalid_argument("kkt_residual: point dim mismatch");
  if (static_cast<int>(multipliers.size()) != dm.r())
    throw std::invalid_argument("kkt_residual: multipliers must be a full r-vector");
  const bool plus = prog.flavor == RestrictedProgram::ConstraintFlavor::DualPlus;

  Vec y = dm.y_part(point);
  Vec z = dm.z_part(point);
  Vec q0 = dm.minus_Qt_w(point);

  double dom_viol = std::max(Piece::atom_conj(&dm.f).domain_violation(q0),
                             Piece::atom_conj(&dm.g).domain_violation(y));
  double feas = dom_viol;
  for (int i = 0; i < dm.r(); ++i) {
    if (sset.count(i)) {
      if (plus) feas = std::max(feas, -z[i]);
    } else {
      feas = std::max(feas, std::abs(z[i]));
    }
  }
  feas = std::max(feas, 0.0);
  if (dom_viol > 1e-3 * (1.0 + point.lpNorm<Eigen::Infinity>())) feas = kInf;

  double comp = 0.0;
  for (int i : prog.subset) {
    if (plus) {
      comp = std::max(comp, std::abs(multipliers[i] * z[i]));
      comp = std::max(comp, multipliers[i]);  // sign u_i <= 0 on S
    } else {
      comp = std::max(comp, std::abs(multipliers[i]));  // u_i = 0 on S
    }
  }
  comp = std::max(comp, 0.0);

  // stationarity: exists xh in subdiff f*(-Q^T w) with A xh in subdiff g*(y)
  // and B xh - b = u
  SubdiffSet Sf = dm.f.conj_subdiff(dm.f.conj_domain_project(q0));
  SubdiffSet Sg = dm.g.conj_subdiff(dm.g.conj_domain_project(y));
  double stat;
  if (Sf.empty() || Sg.empty()) {
    stat = kInf;
  } else {
    // variables (xh, s): minimize ||A xh - s||^2 + ||B xh - b - u||^2
    GraphProblem gp;
    const int n = dm.n();
    const bool sf_point =
        Sf.kind == SubdiffSet::Kind::IntervalProduct && (Sf.lo.array() == Sf.hi.array()).all();
    if (sf_point) {
      Vec xh = Sf.lo;
      double d1 = Sg.dist(dm.A * xh);
      double d2 = (dm.B * xh - dm.b - multipliers).norm();
      stat = std::sqrt(d1 * d1 + d2 * d2);
    } else {
      const int mm = dm.m();
      const int rr = dm.r();
      gp.h.push_back(Piece::box_linear(Sf.lo, Sf.hi));
      gp.h.push_back(Piece::box_linear(Sg.lo, Sg.hi));
      gp.M.resize(mm + rr, n + mm);
      gp.M.setZero();
      gp.M.topLeftCorner(mm, n) = dm.A;
      gp.M.topRightCorner(mm, mm) = -Mat::Identity(mm, mm);
      gp.M.bottomLeftCorner(rr, n) = dm.B;
      gp.q.resize(mm + rr);
      gp.q.head(mm).setZero();
      gp.q.tail(rr) = dm.b + multipliers;
      gp.p.push_back(Piece::half_sq(mm + rr));
      SolverConfig scfg = cfg;
      scfg.tol = std::min(cfg.tol, 1e-10);
      GraphResult res = graph_solve(gp, scfg);
      stat = std::sqrt(std::max(0.0, 2.0 * res.objective));
    }
  }
  return {stat, comp, feas};
}

// ---------------------------------------------------------------------------
// solve_restricted

SolveOutcome solve_restricted(const RestrictedProgram& prog, const SolverConfig& cfg) {
  SolveOutcome out;
  detail::AssembledProgram ap = detail::assemble(prog);

  // feasibility precheck (polyhedral domains only)
  Vec base = Vec::Zero(ap.gp.nx());
  LinearSystem fs = detail::feasibility_system(prog);
  if (fs.representable && fs.rows() > 0) {
    Certificate fc = lp_feasibility(fs.C, fs.c, fs.eq_rows, {}, 0.0, cfg);
    if (!fc.passed()) {
      out.status = SolveStatus::Infeasible;
      out.value = ExtReal::inf();
      if (const Vec* fk = fc.witness("farkas")) out.infeasibility_witness = *fk;
      out.message = "constraint system infeasible";
      return out;
    }
    if (const Vec* w = fc.witness("point")) base = *w;
  }

  // proactive unboundedness certification; all objective pieces are
  // piecewise linear-quadratic, so a negative recession value is exact
  detail::RecessionCertificate rc = detail::certify_unbounded(ap.gp, base, cfg);
  if (rc.unbounded) {
    out.status = SolveStatus::Unbounded;
    out.value = ExtReal::neg_inf();
    out.unbounded_direction = rc.direction;
    out.point = base;
    out.message = "certified descent direction";
    return out;
  }

  GraphResult res = graph_solve(ap.gp, cfg, &base);
  if (res.diverged) {
    out.status = SolveStatus::Indeterminate;
    out.message = "iterates diverged without an unboundedness certificate";
    out.point = res.x;
    out.iterations = res.iterations;
    return out;
  }

  // land the active rows exactly so support identification is unambiguous
  detail::snap_active(ap.gp, res.x, res.v);
  {
    ExtReal snapped_value =
        ap.gp.objective(res.x, ap.gp.nv() > 0 ? Vec(ap.gp.M * res.x - ap.gp.q) : Vec::Zero(0));
    if (snapped_value.finite()) res.objective = snapped_value.value();
  }

  out.iterations = res.iterations;
  out.point = res.x;
  out.value = res.objective;

  const int r = prog.r();
  if (!ap.dual_side) {
    const PrimalModel& pm = *prog.primal;
    out.multipliers = Vec::Zero(r);
    for (size_t i = 0; i < ap.cons_rows.size(); ++i)
      out.multipliers[ap.cons_rows[i]] = res.lambda[ap.cons_block_offset + static_cast<int>(i)];
    // y witness: lambda rows of the g block (C_g^T nu when decomposed)
    const int m = pm.m();
    if (pm.g.kind() == AtomKind::IndicatorPolyhedron) {
      Vec nu = res.lambda.segment(ap.g_block_offset, pm.g.poly_C().rows());
      out.aux_dual = pm.g.poly_C().transpose() * nu;
    } else {
      out.aux_dual = res.lambda.segment(ap.g_block_offset, m);
    }
  } else {
    const DualModel& dm = *prog.dual;
    out.multipliers = res.xgrad.tail(r) - dm.b;  // u = xgrad_z - b in N(z)
    out.aux_dual = res.lambda;                   // member of subdiff f*(-Q^T w)
  }

  out.kkt_residuals = kkt_residual(prog, out.point, out.multipliers, cfg);
  double scale = 1.0 + std::abs(res.objective);
  bool ok = res.converged && out.kkt_residuals[0] <= 100 * cfg.tol * scale &&
            out.kkt_residuals[1] <= 100 * cfg.tol * scale &&
            out.kkt_residuals[2] <= 100 * cfg.tol * scale;
  out.status = ok ? SolveStatus::Optimal : SolveStatus::Indeterminate;
  if (!ok)
    out.message = res.converged ? "KKT residual check above tolerance"
                                : "iteration budget exhausted before meeting tolerance";
  return out;
}

}  // namespace ccopt
