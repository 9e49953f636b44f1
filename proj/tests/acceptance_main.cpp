// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0
//
// Acceptance suite: one line per criterion, desk-scale property checks
// with pinned tolerances. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "ccopt/diagnostics.hpp"
#include "ccopt/enumeration.hpp"
#include "ccopt/rng.hpp"
#include "ccopt/stationarity.hpp"
#include "ccopt/zoo.hpp"

using namespace ccopt;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& text) {
  std::printf("criterion %d [%s] %s\n", criterion, pass ? "PASS" : "FAIL", text.c_str());
  if (!pass) ++g_failures;
}

Vec sparse_draw(Rng& rng, int r) {
  Vec v(r);
  for (int i = 0; i < r; ++i) v[i] = rng.uniform() < 0.45 ? 0.0 : rng.uniform(-2.0, 2.0);
  return v;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

// ---------------------------------------------------------------------------
// criterion 1: stationary duality of the subdifferential patterns

void criterion1() {
  Rng rng(101);
  double t0 = now_seconds();
  int disagreements = 0;
  for (auto variant : {CardFlavor::Variant::Zero, CardFlavor::Variant::Plus}) {
    CardFlavor phi = CardFlavor::primal(variant, Vec::Constant(4, 0.7));
    CardFlavor psi = CardFlavor::dual(variant, Vec::Constant(4, 2.3));
    for (int trial = 0; trial < 1000; ++trial) {
      Vec u = sparse_draw(rng, 4);
      Vec z = sparse_draw(rng, 4);
      if (card_subdiff_check(phi, u, z).passed() != card_subdiff_check(psi, z, u).passed())
        ++disagreements;
    }
  }
  double dt = now_seconds() - t0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "stationary duality: %d disagreements in 2x1000 pairs, %.3f s (< 1 s)",
                disagreements, dt);
  report(1, disagreements == 0 && dt < 1.0, buf);
}

// ---------------------------------------------------------------------------
// criterion 2: prox optimality and conjugate closed forms vs grid oracles

double conjugate_grid_sup(const ConvexAtom& atom, const Vec& q, double lo, double hi, int points) {
  std::vector<int> idx(static_cast<size_t>(atom.dim()), 0);
  Vec x(atom.dim());
  double best = -1e300;
  while (true) {
    for (int d = 0; d < atom.dim(); ++d)
      x[d] = lo + (hi - lo) * idx[static_cast<size_t>(d)] / (points - 1);
    ExtReal fx = atom.eval(x);
    if (fx.finite()) best = std::max(best, q.dot(x) - fx.value());
    int d = 0;
    while (d < atom.dim() && ++idx[static_cast<size_t>(d)] == points) {
      idx[static_cast<size_t>(d)] = 0;
      ++d;
    }
    if (d == atom.dim()) break;
  }
  return best;
}

void criterion2() {
  Rng rng(202);
  std::vector<ConvexAtom> atoms;
  Vec a2(2);
  a2 << 1.0, -0.5;
  atoms.push_back(ConvexAtom::zero(2));
  atoms.push_back(ConvexAtom::quadratic(a2));
  atoms.push_back(ConvexAtom::quadratic_masked(a2, {1, 0}));
  atoms.push_back(ConvexAtom::l1(a2));
  Vec blo(2), bhi(2);
  blo << -1.0, 0.0;
  bhi << 2.0, 0.5;
  atoms.push_back(ConvexAtom::box(blo, bhi));
  atoms.push_back(ConvexAtom::nonneg(2));
  atoms.push_back(ConvexAtom::indicator_zero(2));
  Mat C(2, 2);
  C << 1, 1, -1, 0;
  Vec cc(2);
  cc << 1.5, 0.5;
  atoms.push_back(ConvexAtom::polyhedron(C, cc));
  atoms.push_back(ConvexAtom::linear_inf_ball(a2));
  atoms.push_back(ConvexAtom::exp_epigraph());

  double worst_prox = 0.0;
  int prox_fail = 0;
  for (const ConvexAtom& atom : atoms) {
    for (int trial = 0; trial < 200; ++trial) {
      Vec v = rng.uniform_vec(2, -3.0, 3.0);
      double t = std::exp(rng.uniform(-1.5, 1.5));
      Vec p = atom.prox(v, t);
      Certificate c = atom.subdiff_check(p, (v - p) / t, 1e-7);
      worst_prox = std::max(worst_prox, c.residual);
      if (!c.passed()) ++prox_fail;
    }
  }

  // conjugates against the lattice sup; query points drawn on the lattice
  // (shifted by the center) so the inner maximizer is a lattice point
  double worst_conj = 0.0;
  int conj_checked = 0;
  const double glo = -8.0, ghi = 8.0;
  const int gpoints = 65;  // spacing 0.25
  for (const ConvexAtom& atom : atoms) {
    if (!atom.has_conjugate()) continue;
    for (int trial = 0; trial < 40; ++trial) {
      Vec q(2);
      for (int d = 0; d < 2; ++d) q[d] = 0.25 * rng.uniform_int(-8, 8);
      ExtReal closed = atom.conjugate(q);
      if (!closed.finite()) continue;
      double oracle = conjugate_grid_sup(atom, q, glo, ghi, gpoints);
      worst_conj = std::max(worst_conj, std::abs(closed.value() - oracle));
      ++conj_checked;
    }
  }

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "prox residual max %.2e (<= 1e-7), conjugate-vs-grid max %.2e (<= 1e-4, %d checks)",
                worst_prox, worst_conj, conj_checked);
  report(2, prox_fail == 0 && worst_conj <= 1e-4 && conj_checked > 100, buf);
}

// ---------------------------------------------------------------------------
// criteria 3-5 share their instances

struct FoundPoint {
  PrimalModel model;
  Vec point;
};

std::vector<FoundPoint> g_stationary_points;

void criterion3() {
  Rng rng(303);
  SolverConfig cfg;
  double t0 = now_seconds();
  int checked = 0, failed = 0;
  double worst_gap = 0.0;
  for (int inst = 0; inst < 40; ++inst) {
    const bool calcium = inst >= 20;
    Vec beta = rng.uniform_vec(3, calcium ? 0.0 : -2.0, 3.0);
    Vec lambda = rng.uniform_vec(2, 0.3, 1.0);
    PrimalModel p = calcium ? build_calcium(beta, lambda)
                            : build_edge_denoising(beta, line_graph_edges(3), lambda);
    GlobalReport rep = enumerate_global(p, kDefaultSubsetCap, cfg);
    if (!rep.attained) {
      ++failed;
      continue;
    }
    double lo = calcium ? 0.0 : std::floor(beta.minCoeff()) - 1.0;
    double hi = std::ceil(beta.maxCoeff()) + 1.0;
    const int points = 61;
    ExtReal grid = brute_force_grid(p, Vec::Constant(3, lo), Vec::Constant(3, hi), points);
    double spacing = (hi - lo) / (points - 1);
    double L = lipschitz_estimate(p, Vec::Constant(3, lo), Vec::Constant(3, hi));
    double gap = std::abs(rep.best_value.value() - grid.value());
    worst_gap = std::max(worst_gap, gap - 2.0 * spacing * L);
    if (!(gap <= 2.0 * spacing * L)) ++failed;
    ++checked;
    g_stationary_points.push_back({p, rep.best_point});
  }
  double dt = now_seconds() - t0;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "enumeration vs grid oracle: %d/40 instances within 2*spacing*L, %.1f s (< 30 s)",
                checked - failed, dt);
  report(3, failed == 0 && checked == 40 && dt < 30.0, buf);
}

void criterion4() {
  SolverConfig cfg;
  int agree = 0, total = 0;
  for (int k = 0; k < 100; ++k) {
    const bool separable = k < 50;
    std::uint64_t seed = 1000 + static_cast<std::uint64_t>(k);
    Rng shape(seed * 7 + 1);
    int r = 3 + shape.uniform_int(0, 5);  // r <= 8
    int dim = 1 + shape.uniform_int(0, 2);
    SvmDataset ds = separable ? generate_separable(dim, r, 0.8, seed)
                              : generate_nonseparable(dim, r, seed);
    Certificate sep = svm_separability(ds.points, ds.labels, cfg);
    DualModel d = build_sparse_svm_dual(ds.points, ds.labels, Vec::Ones(r));
    GlobalReport rep = enumerate_global(d, kDefaultSubsetCap, cfg);
    if (sep.passed() == rep.attained) ++agree;
    ++total;
    if (separable && r <= 6) {
      PrimalModel p = build_heaviside_svm(ds.points, ds.labels, 1.0);
      GlobalReport prep = enumerate_global(p, kDefaultSubsetCap, cfg);
      if (prep.attained) g_stationary_points.push_back({p, prep.best_point});
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "separability iff dual attainment: %d/%d agree", agree, total);
  report(4, agree == 100 && total == 100, buf);
}

void criterion5() {
  SolverConfig cfg;
  int ok = 0, total = 0;
  double worst_sum = 0.0, worst_round = 0.0;
  for (const FoundPoint& fp : g_stationary_points) {
    ++total;
    try {
      Vec mu = Vec::Ones(fp.model.r());
      CorrespondenceResult fwd = primal_to_dual(fp.model, fp.point, mu, -1.0, cfg);
      if (!fwd.check.passed() || fwd.value_residual > 1e-6) {
        worst_sum = std::max(worst_sum, fwd.value_residual);
        continue;
      }
      worst_sum = std::max(worst_sum, fwd.value_residual);
      DualModel d = derive_dual(fp.model, mu);
      CorrespondenceResult back = dual_to_primal(d, fwd.point, -1.0, cfg);
      if (!back.check.passed()) continue;
      double f1 = objective_eval(fp.model, fp.point).total.value();
      double f2 = objective_eval(fp.model, back.point).total.value();
      worst_round = std::max(worst_round, std::abs(f1 - f2));
      if (std::abs(f1 - f2) <= 1e-6) ++ok;
    } catch (const std::exception&) {
      // a throw means the point failed the stationarity precondition
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "correspondence on %d stationary points: %d round-trips, |Theta+Xi| max %.2e, "
                "F-gap max %.2e",
                total, ok, worst_sum, worst_round);
  report(5, ok == total && total >= 40, buf);
}

// ---------------------------------------------------------------------------
// criterion 6: mu selection makes the reference local minimizer global

void criterion6() {
  Rng rng(606);
  SolverConfig cfg;
  int done = 0, ok = 0;
  int attempts = 0;
  while (done < 10 && attempts < 40) {
    ++attempts;
    Vec beta = rng.uniform_vec(4, -2.0, 4.0);
    PrimalModel p = build_edge_denoising(beta, line_graph_edges(4), Vec::Ones(3));
    DualModel d = derive_dual(p, Vec::Ones(3));

    // reference: optimum of a small-subset program whose support fills the
    // subset; shrink until the smallest-cardinality premise holds
    std::vector<int> tstar;
    Vec wref;
    bool found = false;
    for (const auto& s : all_subsets(3)) {
      if (s.empty() || s.size() > 2) continue;
      SolveOutcome oc = solve_restricted(RestrictedProgram::dual_program(d, s), cfg);
      if (oc.status != SolveStatus::Optimal) continue;
      std::vector<int> supp = support_set(d.z_part(oc.point));
      if (supp != s) continue;
      Thresholds th = compute_thresholds(d, s, cfg);
      if (!(th.eta1 > th.eta0) || !th.eta2.finite()) continue;
      tstar = s;
      wref = oc.point;
      found = true;
      break;
    }
    if (!found) continue;
    ++done;

    Thresholds th = compute_thresholds(d, tstar, cfg, wref);
    Vec mu = select_mu(th, 3, 0.25);
    // the selection rule holds exactly
    double sum_t = 0.0;
    for (int i : tstar) sum_t += mu[i];
    bool rule = sum_t <= th.eta1.value() - th.eta0.value() + 1e-12;
    double bound = std::max(th.eta1.value() - th.eta2.value(), 0.0);
    for (int j = 0; j < 3; ++j)
      if (!std::count(tstar.begin(), tstar.end(), j)) rule = rule && mu[j] > bound;

    DualModel dmu = derive_dual(p, mu);
    GlobalReport rep = enumerate_global(dmu, kDefaultSubsetCap, cfg);
    double ref_total = xi_eval(dmu, wref).value() + sum_t;
    bool attains = rep.attained && std::abs(ref_total - rep.best_value.value()) <= 1e-6;
    if (rule && attains) ++ok;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "mu selection: %d/%d instances follow the rule and the reference attains the "
                "global value",
                ok, done);
  report(6, ok == 10 && done == 10, buf);
}

// ---------------------------------------------------------------------------
// criterion 7: existence checkers across the zoo

void criterion7() {
  Rng rng(707);
  SolverConfig cfg;
  bool ok = true;
  std::string note;

  Vec beta4 = rng.uniform_vec(4, -2.0, 2.0);
  Vec a3 = rng.uniform_vec(3, 0.0, 2.0);
  Mat D3 = difference_matrix(3, line_graph_edges(3));
  SvmDataset sep = generate_separable(2, 5, 1.0, 71);
  SvmDataset non = generate_nonseparable(2, 5, 72);

  struct ZooEntry {
    std::string name;
    PrimalModel model;
    bool dual_should_pass;
  };
  std::vector<ZooEntry> zoo;
  zoo.push_back({"edge_denoising", build_edge_denoising(beta4, line_graph_edges(4), Vec::Ones(3)),
                 true});
  zoo.push_back({"calcium", build_calcium(beta4, Vec::Ones(3)), true});
  zoo.push_back({"energy_min_nonneg",
                 build_energy_min(ConvexAtom::nonneg(3), Mat::Identity(3, 3), a3, D3,
                                  Vec::Constant(2, 0.5)),
                 true});
  zoo.push_back({"energy_min_box",
                 build_energy_min(ConvexAtom::box(Vec::Zero(3), Vec::Constant(3, 2.0)),
                                  Mat::Identity(3, 3), a3, D3, Vec::Constant(2, 0.5)),
                 true});
  zoo.push_back({"l1_energy",
                 build_l1_energy(Mat::Identity(3, 3), a3, D3, Vec::Constant(2, 0.5)), true});
  zoo.push_back({"svm_separable", build_heaviside_svm(sep.points, sep.labels, 1.0), true});
  zoo.push_back({"svm_nonseparable", build_heaviside_svm(non.points, non.labels, 1.0), false});

  for (const auto& entry : zoo) {
    Certificate pc = existence_check_primal(entry.model, cfg);
    if (!pc.passed()) {
      ok = false;
      note += " primal:" + entry.name;
    }
    Certificate dc = existence_check_dual(entry.model, entry.model.card.variant, cfg);
    if (dc.passed() != entry.dual_should_pass) {
      ok = false;
      note += " dual:" + entry.name;
    }
  }

  // the non-polyhedral counterexample shape is rejected
  PrimalModel counter =
      build_primal(ConvexAtom::exp_epigraph(), ConvexAtom::quadratic(Vec::Zero(2)),
                   Mat::Identity(2, 2), Mat::Identity(2, 2), Vec::Zero(2),
                   CardFlavor::Variant::Zero, Vec::Ones(2));
  Certificate cc = existence_check_primal(counter, cfg);
  if (cc.passed()) {
    ok = false;
    note += " counterexample-not-rejected";
  }

  report(7, ok, "existence checkers: zoo primals pass, dual fails exactly on the nonseparable "
                "SVM, exp-epigraph shape rejected" + note);
}

// ---------------------------------------------------------------------------
// criterion 8: subsolver against closed-form KKT systems

void criterion8() {
  Rng rng(808);
  SolverConfig cfg;
  cfg.tol = 1e-9;  // residual gate is 1e-7; leave an order of headroom
  int ok = 0, total = 0;
  double worst_err = 0.0, worst_kkt = 0.0;

  auto tally = [&](bool good, double err, const std::array<double, 3>& res) {
    ++total;
    double kkt = std::max({res[0], res[1], res[2]});
    worst_err = std::max(worst_err, err);
    worst_kkt = std::max(worst_kkt, kkt);
    if (good && err <= 1e-6 && kkt <= 1e-7) ++ok;
  };

  // 40 equality-constrained least squares
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4, m = 3, rr = 2;
    Mat A(m, n), B(rr, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    for (int i = 0; i < rr; ++i)
      for (int j = 0; j < n; ++j) B(i, j) = rng.normal();
    Vec a = rng.uniform_vec(m, -2.0, 2.0);
    Vec b = rng.uniform_vec(rr, -1.0, 1.0);
    Mat K = Mat::Zero(n + rr, n + rr);
    K.topLeftCorner(n, n) = A.transpose() * A + 1e-12 * Mat::Identity(n, n);
    K.topRightCorner(n, rr) = B.transpose();
    K.bottomLeftCorner(rr, n) = B;
    Vec rhs(n + rr);
    rhs.head(n) = A.transpose() * a;
    rhs.tail(rr) = b;
    Vec sol = K.fullPivLu().solve(rhs);

    PrimalModel p = build_primal(ConvexAtom::zero(n), ConvexAtom::quadratic(a), A, B, b,
                                 CardFlavor::Variant::Zero, Vec::Ones(rr));
    RestrictedProgram prog = RestrictedProgram::primal_program(p, {});
    SolveOutcome oc = solve_restricted(prog, cfg);
    tally(oc.status == SolveStatus::Optimal, (oc.point - sol.head(n)).lpNorm<Eigen::Infinity>(),
          oc.kkt_residuals);
  }

  // 30 box projections
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3;
    Vec lo = rng.uniform_vec(n, -2.0, 0.0);
    Vec hi = rng.uniform_vec(n, 0.5, 2.5);
    Vec a = rng.uniform_vec(n, -4.0, 4.0);
    PrimalModel p = build_primal(ConvexAtom::box(lo, hi), ConvexAtom::quadratic(a),
                                 Mat::Identity(n, n), Mat::Zero(1, n), Vec::Zero(1),
                                 CardFlavor::Variant::Zero, Vec::Ones(1));
    RestrictedProgram prog = RestrictedProgram::primal_program(p, {0});
    SolveOutcome oc = solve_restricted(prog, cfg);
    Vec expect = a.cwiseMax(lo).cwiseMin(hi);
    tally(oc.status == SolveStatus::Optimal, (oc.point - expect).lpNorm<Eigen::Infinity>(),
          oc.kkt_residuals);
  }

  // 30 halfspace projections with the analytic multiplier
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3;
    Vec beta(n);
    for (int i = 0; i < n; ++i) beta[i] = rng.normal();
    if (beta.norm() < 0.3) beta[0] += 1.0;
    Vec a = rng.uniform_vec(n, -2.0, 2.0);
    double gamma = rng.uniform(-1.0, 1.0);
    Mat B(1, n);
    B.row(0) = beta.transpose();
    PrimalModel p =
        build_primal(ConvexAtom::zero(n), ConvexAtom::quadratic(a), Mat::Identity(n, n), B,
                     Vec::Constant(1, gamma), CardFlavor::Variant::Plus, Vec::Ones(1));
    RestrictedProgram prog = RestrictedProgram::primal_program(p, {});
    SolveOutcome oc = solve_restricted(prog, cfg);
    double viol = beta.dot(a) - gamma;
    Vec expect = viol <= 0 ? a : Vec(a - (viol / beta.squaredNorm()) * beta);
    tally(oc.status == SolveStatus::Optimal, (oc.point - expect).lpNorm<Eigen::Infinity>(),
          oc.kkt_residuals);
  }

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "subsolver vs closed forms: %d/%d, error max %.2e (<= 1e-6), KKT max %.2e (<= 1e-7)",
                ok, total, worst_err, worst_kkt);
  report(8, ok == 100 && total == 100, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (g_failures == 0) std::printf("all acceptance criteria passed\n");
  return g_failures;
}
