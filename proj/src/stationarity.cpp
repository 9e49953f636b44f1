// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/stationarity.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "ccopt/enumeration.hpp"
#include "ccopt/graph_solver.hpp"

namespace ccopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double data_scale(const Mat& A, const Mat& B, const Vec& b) {
  double s = 0.0;
  if (A.size()) s = std::max(s, A.cwiseAbs().maxCoeff());
  if (B.size()) s = std::max(s, B.cwiseAbs().maxCoeff());
  if (b.size()) s = std::max(s, b.cwiseAbs().maxCoeff());
  return s;
}

double resolve_tol(double tol, double scale) {
  return tol >= 0.0 ? tol : kStationarityTolBase * (1.0 + scale);
}

// pattern set of dPhi / dPsi at `point`: free at zeros (nonnegative ray
// for Phi+), pinned to zero on the support
SubdiffSet card_pattern(CardFlavor::Side side, CardFlavor::Variant variant, const Vec& point) {
  const double tol = support_tol(kDefaultZeroTolBase, point);
  const int r = static_cast<int>(point.size());
  Vec lo(r), hi(r);
  for (int i = 0; i < r; ++i) {
    if (std::abs(point[i]) <= tol) {
      bool primal_plus = side == CardFlavor::Side::PrimalPhi && variant == CardFlavor::Variant::Plus;
      lo[i] = primal_plus ? 0.0 : -kInf;
      hi[i] = kInf;
    } else {
      lo[i] = hi[i] = 0.0;
    }
  }
  return SubdiffSet::intervals(lo, hi);
}

// one block of the witness-search variable: either the set itself (box)
// or cone generators lifted through a left factor
struct SearchBlock {
  bool is_cone = false;
  Vec lo, hi;      // box case
  Mat generators;  // cone case
  Mat left;        // factor applied in the residual map (may be empty = I)
  int vars() const { return is_cone ? static_cast<int>(generators.cols()) : static_cast<int>(lo.size()); }
};

SearchBlock block_from_set(const SubdiffSet& s, const Mat& left = Mat()) {
  SearchBlock b;
  b.left = left;
  if (s.kind == SubdiffSet::Kind::GeneratedCone) {
    b.is_cone = true;
    b.generators = s.generators;
  } else {
    b.lo = s.lo;
    b.hi = s.hi;
  }
  return b;
}

// minimize (1/2) || sum_k F_k xi_k - rhs ||^2 over the block sets; returns
// the 2-norm residual and the per-block minimizers (cone blocks returned
// as the lifted point G nu)
struct SearchResult {
  double residual = kInf;
  std::vector<Vec> points;
  bool resolved = false;
};

SearchResult witness_search(const std::vector<SearchBlock>& blocks, const Vec& rhs,
                            const SolverConfig& cfg) {
  const int nres = static_cast<int>(rhs.size());
  GraphProblem gp;
  int nvars = 0;
  for (const auto& b : blocks) nvars += b.vars();
  gp.M.resize(nres, nvars);
  int off = 0;
  for (const auto& b : blocks) {
    if (b.is_cone) {
      gp.h.push_back(Piece::box_linear(Vec::Zero(b.vars()), Vec::Constant(b.vars(), kInf)));
      Mat cols = b.left.size() ? Mat(b.left * b.generators) : b.generators;
      gp.M.middleCols(off, b.vars()) = cols;
    } else {
      gp.h.push_back(Piece::box_linear(b.lo, b.hi));
      gp.M.middleCols(off, b.vars()) =
          b.left.size() ? b.left : Mat(Mat::Identity(nres, b.vars()));
    }
    off += b.vars();
  }
  gp.q = rhs;
  gp.p.push_back(Piece::half_sq(nres));

  SolverConfig scfg = cfg;
  scfg.tol = 1e-12;  // witness components feed domain-slack-sensitive maps
  scfg.max_iter = std::max(cfg.max_iter, 200000);
  GraphResult res = graph_solve(gp, scfg);

  SearchResult out;
  out.resolved = res.converged;
  out.residual = std::sqrt(std::max(0.0, 2.0 * res.objective));
  off = 0;
  for (const auto& b : blocks) {
    Vec xi = res.x.segment(off, b.vars());
    out.points.push_back(b.is_cone ? Vec(b.generators * xi) : xi);
    off += b.vars();
  }
  return out;
}

double domain_gap(const ConvexAtom& atom, const Vec& x, bool conj) {
  Piece pc = conj ? Piece::atom_conj(&atom) : Piece::atom_fn(&atom);
  return pc.domain_violation(x);
}

}  // namespace

double model_data_scale(const PrimalModel& p) { return data_scale(p.A, p.B, p.b); }
double model_data_scale(const DualModel& d) { return data_scale(d.A, d.B, d.b); }

namespace {

// Convex-part values for the correspondence identity, evaluated at the
// domain projections: witnesses carry solver noise below the certificate
// tolerance, and the strict evaluators would turn that into +inf.
double xi_value_projected(const DualModel& d, const Vec& w) {
  Vec q0 = d.f.conj_domain_project(d.minus_Qt_w(w));
  Vec y = d.g.conj_domain_project(d.y_part(w));
  ExtReal v = d.f.conjugate(q0) + d.g.conjugate(y) + ExtReal(d.b.dot(d.z_part(w)));
  return v.finite() ? v.value() : kInf;
}

double theta_value_projected(const PrimalModel& p, const Vec& x) {
  Vec xp = p.f.domain_project(x);
  ExtReal v = p.f.eval(xp) + p.g.eval(p.g.domain_project(p.A * xp));
  return v.finite() ? v.value() : kInf;
}

}  // namespace

// ---------------------------------------------------------------------------
// stationarity checks

StationarityCertificate check_stationary_primal(const PrimalModel& p, const Vec& x, double tol,
                                                const SolverConfig& cfg) {
  StationarityCertificate out;
  const double tolv = resolve_tol(tol, model_data_scale(p));
  Vec Ax = p.A * x;
  Vec u = p.B * x - p.b;
  out.support = support_set(u);

  double fgap = domain_gap(p.f, x, false);
  double ggap = domain_gap(p.g, Ax, false);
  if (fgap > tolv || ggap > tolv) {
    out.cert = Certificate::fail(std::max(fgap, ggap),
                                 fgap > tolv ? "x outside dom f" : "Ax outside dom g");
    out.cert.domain_violation = true;
    return out;
  }

  // sets are evaluated at the domain projections so the certificate is
  // insensitive to violations below its own tolerance
  SubdiffSet Sf = p.f.subdiff(p.f.domain_project(x), tolv);
  SubdiffSet Sg = p.g.subdiff(p.g.domain_project(Ax), tolv);
  SubdiffSet Sphi = card_pattern(p.card.side, p.card.variant, u);
  if (Sf.empty() || Sg.empty()) {
    out.cert = Certificate::fail(kInf, "empty subdifferential at the point");
    out.cert.domain_violation = true;
    return out;
  }

  // min over s in Sf, y in Sg, z in Sphi of || s + A^T y + B^T z ||
  std::vector<SearchBlock> blocks;
  blocks.push_back(block_from_set(Sf));
  blocks.push_back(block_from_set(Sg, p.A.transpose()));
  blocks.push_back(block_from_set(Sphi, p.B.transpose()));
  SearchResult sr = witness_search(blocks, Vec::Zero(p.n()), cfg);

  if (!sr.resolved && sr.residual > tolv) {
    out.cert = Certificate::indeterminate_result("witness search did not resolve");
    out.cert.residual = sr.residual;
    return out;
  }
  out.cert = sr.residual <= tolv
                 ? Certificate::pass(sr.residual)
                 : Certificate::fail(sr.residual, "no subgradient combination closes the inclusion");
  out.cert.set_witness("s", sr.points[0]);
  out.cert.set_witness("y", sr.points[1]);
  out.cert.set_witness("z", sr.points[2]);
  return out;
}

StationarityCertificate check_stationary_dual(const DualModel& d, const Vec& w, double tol,
                                              const SolverConfig& cfg) {
  StationarityCertificate out;
  const double tolv = resolve_tol(tol, model_data_scale(d));
  Vec y = d.y_part(w);
  Vec z = d.z_part(w);
  Vec q0 = d.minus_Qt_w(w);
  out.support = support_set(z);

  double fgap = domain_gap(d.f, q0, true);
  double ggap = domain_gap(d.g, y, true);
  double zgap = 0.0;
  if (d.card.variant == CardFlavor::Variant::Plus)
    for (int i = 0; i < z.size(); ++i) zgap = std::max(zgap, -z[i]);
  const double ztol = support_tol(kDefaultZeroTolBase, z);
  if (fgap > tolv || ggap > tolv || zgap > ztol) {
    out.cert = Certificate::fail(std::max({fgap, ggap, zgap}),
                                 zgap > ztol ? "z outside dom Psi+"
                                             : (fgap > tolv ? "-Q^T w outside dom f*"
                                                            : "y outside dom g*"));
    out.cert.domain_violation = true;
    return out;
  }

  SubdiffSet Sf = d.f.conj_subdiff(d.f.conj_domain_project(q0), tolv);
  SubdiffSet Sg = d.g.conj_subdiff(d.g.conj_domain_project(y), tolv);
  SubdiffSet Spsi = card_pattern(d.card.side, d.card.variant, z);
  if (Sf.empty() || Sg.empty()) {
    out.cert = Certificate::fail(kInf, "empty conjugate subdifferential at the point");
    out.cert.domain_violation = true;
    return out;
  }

  // min over x in Sf*, s in Sg*, u in Spsi of
  //   || [A x - s; B x - b - u] ||
  const int m = d.m(), r = d.r(), n = d.n();
  Mat left_x(m + r, n);
  left_x.topRows(m) = d.A;
  left_x.bottomRows(r) = d.B;
  Mat left_s = Mat::Zero(m + r, m);
  left_s.topRows(m) = -Mat::Identity(m, m);
  Mat left_u = Mat::Zero(m + r, r);
  left_u.bottomRows(r) = -Mat::Identity(r, r);
  Vec rhs = Vec::Zero(m + r);
  rhs.tail(r) = d.b;

  std::vector<SearchBlock> blocks;
  blocks.push_back(block_from_set(Sf, left_x));
  blocks.push_back(block_from_set(Sg, left_s));
  blocks.push_back(block_from_set(Spsi, left_u));
  SearchResult sr = witness_search(blocks, rhs, cfg);

  if (!sr.resolved && sr.residual > tolv) {
    out.cert = Certificate::indeterminate_result("witness search did not resolve");
    out.cert.residual = sr.residual;
    return out;
  }
  out.cert = sr.residual <= tolv
                 ? Certificate::pass(sr.residual)
                 : Certificate::fail(sr.residual, "no subgradient combination closes the inclusion");
  out.cert.set_witness("x", sr.points[0]);
  out.cert.set_witness("s", sr.points[1]);
  out.cert.set_witness("u", sr.points[2]);
  return out;
}

// ---------------------------------------------------------------------------
// Slater checks

namespace {
Certificate slater_from_system(const LinearSystem& sys, double margin, const SolverConfig& cfg,
                               const std::vector<int>& strict_rows) {
  if (!sys.representable)
    return Certificate::indeterminate_result(
        "domain not polyhedrally representable; ri test undecidable");
  return lp_feasibility(sys.C, sys.c, sys.eq_rows, strict_rows, margin, cfg);
}
}  // namespace

Certificate check_slater(const PrimalModel& p, CardFlavor::Variant variant,
                         const std::vector<int>& support, double margin, const SolverConfig& cfg) {
  PrimalModel tmp = p;  // variant may differ from the model's own flavor
  tmp.card.variant = variant;
  RestrictedProgram prog = RestrictedProgram::primal_program(tmp, support);
  LinearSystem sys = detail::feasibility_system(prog);
  // catalog domains are polyhedral or full; strict margin rows arise only
  // for non-polyhedral functions with inequality-described domains, of
  // which the catalog has none
  return slater_from_system(sys, margin, cfg, {});
}

Certificate check_slater(const DualModel& d, CardFlavor::Variant variant,
                         const std::vector<int>& support, double margin, const SolverConfig& cfg) {
  DualModel tmp = d;
  tmp.card.variant = variant;
  RestrictedProgram prog = RestrictedProgram::dual_program(tmp, support);
  LinearSystem sys = detail::feasibility_system(prog);
  return slater_from_system(sys, margin, cfg, {});
}

// ---------------------------------------------------------------------------
// correspondence maps

CorrespondenceResult primal_to_dual(const PrimalModel& p, const Vec& x_star, const Vec& mu,
                                    double tol, const SolverConfig& cfg) {
  StationarityCertificate pc = check_stationary_primal(p, x_star, tol, cfg);
  if (!pc.passed())
    throw std::invalid_argument("primal_to_dual requires a stationary point (residual " +
                                std::to_string(pc.cert.residual) + ")");
  const Vec* y = pc.cert.witness("y");
  const Vec* z = pc.cert.witness("z");
  Vec w(p.m() + p.r());
  w.head(p.m()) = *y;
  w.tail(p.r()) = *z;

  DualModel d = derive_dual(p, mu);
  CorrespondenceResult out;
  out.point = w;
  out.check = check_stationary_dual(d, w, tol, cfg);
  double theta = theta_value_projected(p, x_star);
  double xi = xi_value_projected(d, w);
  out.value_residual =
      (std::isfinite(theta) && std::isfinite(xi)) ? std::abs(theta + xi) : kInf;
  return out;
}

namespace {

// The witness set {x in subdiff f*(-Q^T w), Ax in subdiff g*(y),
// (Bx - b)_i = 0 on I(z)} is a polyhedron on which the convex part is
// constant, so the local minimizers it contains differ only in the
// cardinality term. Sweep support patterns by size and return a witness
// of smallest cardinality; for singleton subdifferentials this is the
// plain (conjugate-gradient) witness.
Vec smallest_cardinality_witness(const DualModel& d, const Vec& w, const Vec& fallback,
                                 const std::vector<int>& zsupport, double tolv,
                                 const SolverConfig& cfg) {
  SubdiffSet Sf = d.f.conj_subdiff(d.f.conj_domain_project(d.minus_Qt_w(w)), tolv);
  SubdiffSet Sg = d.g.conj_subdiff(d.g.conj_domain_project(d.y_part(w)), tolv);
  if (Sf.kind != SubdiffSet::Kind::IntervalProduct ||
      Sg.kind != SubdiffSet::Kind::IntervalProduct)
    return fallback;
  const int n = d.n();
  const int r = d.r();
  const bool plus = d.card.variant == CardFlavor::Variant::Plus;

  LinearSystem base = LinearSystem::whole_space(n);
  for (int i = 0; i < n; ++i) {
    if (Sf.lo[i] == Sf.hi[i]) {
      base.append_row(Vec::Unit(n, i), Sf.lo[i], true);
    } else {
      if (std::isfinite(Sf.hi[i])) base.append_row(Vec::Unit(n, i), Sf.hi[i], false);
      if (std::isfinite(Sf.lo[i])) base.append_row(-Vec::Unit(n, i), -Sf.lo[i], false);
    }
  }
  for (int i = 0; i < d.m(); ++i) {
    Vec row = d.A.row(i).transpose();
    if (Sg.lo[i] == Sg.hi[i]) {
      base.append_row(row, Sg.lo[i], true);
    } else {
      if (std::isfinite(Sg.hi[i])) base.append_row(row, Sg.hi[i], false);
      if (std::isfinite(Sg.lo[i])) base.append_row(-row, -Sg.lo[i], false);
    }
  }
  std::set<int> tset(zsupport.begin(), zsupport.end());
  for (int i : zsupport) base.append_row(d.B.row(i).transpose(), d.b[i], true);

  std::vector<int> free_rows;
  for (int i = 0; i < r; ++i)
    if (!tset.count(i)) free_rows.push_back(i);

  for (const auto& pick : all_subsets(static_cast<int>(free_rows.size()))) {
    std::set<int> on;
    for (int k : pick) on.insert(free_rows[static_cast<size_t>(k)]);
    LinearSystem sys = base;
    for (int i : free_rows)
      if (!on.count(i)) sys.append_row(d.B.row(i).transpose(), d.b[i], !plus);
    Certificate feas = lp_feasibility(sys.C, sys.c, sys.eq_rows, {}, 0.0, cfg);
    if (feas.passed())
      if (const Vec* pt = feas.witness("point")) return *pt;
  }
  return fallback;
}

}  // namespace

CorrespondenceResult dual_to_primal(const DualModel& d, const Vec& w_star, double tol,
                                    const SolverConfig& cfg) {
  StationarityCertificate dc = check_stationary_dual(d, w_star, tol, cfg);
  if (!dc.passed())
    throw std::invalid_argument("dual_to_primal requires a stationary point (residual " +
                                std::to_string(dc.cert.residual) + ")");
  // with f strongly convex the witness block is the singleton
  // {grad f*(-Q^T w)}, so this is the single-valued conjugate-gradient map
  Vec x = smallest_cardinality_witness(d, w_star, *dc.cert.witness("x"), dc.support,
                                       resolve_tol(tol, model_data_scale(d)), cfg);

  // stationarity of (P) does not involve lambda; unit weights stand in
  PrimalModel p = build_primal(d.f, d.g, d.A, d.B, d.b,
                               d.card.variant, Vec::Ones(d.r()));
  CorrespondenceResult out;
  out.point = x;
  out.check = check_stationary_primal(p, x, tol, cfg);
  double theta = theta_value_projected(p, x);
  double xi = xi_value_projected(d, w_star);
  out.value_residual =
      (std::isfinite(theta) && std::isfinite(xi)) ? std::abs(theta + xi) : kInf;
  return out;
}

}  // namespace ccopt
