// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <set>
#include <stdexcept>
#include <thread>

namespace ccopt {

std::vector<std::vector<int>> all_subsets(int r) {
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<size_t>(1) << r);
  for (int k = 0; k <= r; ++k) {
    // combinations of size k in lexicographic order
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && idx[i] == r - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::uint32_t subset_mask(const std::vector<int>& subset) {
  std::uint32_t m = 0;
  for (int i : subset) m |= (1u << i);
  return m;
}

namespace {

int resolve_threads(const SolverConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("CCOPT_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

double weight_sum(const Vec& weights, const std::vector<int>& subset) {
  double s = 0.0;
  for (int i : subset) s += weights[i];
  return s;
}

template <typename MakeProg>
GlobalReport sweep(int r, const Vec& weights, int cap, const SolverConfig& cfg,
                   MakeProg&& make_prog) {
  if (r > cap)
    throw std::invalid_argument("enumeration refused: r=" + std::to_string(r) + " exceeds cap=" +
                                std::to_string(cap));
  auto subsets = all_subsets(r);
  std::vector<SubsetRecord> records(subsets.size());
  std::vector<SolveOutcome> outcomes(subsets.size());

  const int nthreads = std::min<int>(resolve_threads(cfg), static_cast<int>(subsets.size()));
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      RestrictedProgram prog = make_prog(subsets[i]);
      outcomes[i] = solve_restricted(prog, cfg);
      SubsetRecord rec;
      rec.subset = subsets[i];
      rec.mask = subset_mask(subsets[i]);
      rec.status = outcomes[i].status;
      rec.restricted_value = outcomes[i].value;
      rec.total_value = outcomes[i].value + ExtReal(weight_sum(weights, subsets[i]));
      records[i] = std::move(rec);
    }
  };
  if (nthreads <= 1) {
    work(0, subsets.size());
  } else {
    std::vector<std::future<void>> futs;
    size_t chunk = (subsets.size() + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      size_t b = t * chunk, e = std::min(subsets.size(), b + chunk);
      if (b >= e) break;
      futs.push_back(std::async(std::launch::async, work, b, e));
    }
    for (auto& f : futs) f.get();
  }

  GlobalReport rep;
  rep.per_subset = std::move(records);
  size_t best_idx = subsets.size();
  for (size_t i = 0; i < subsets.size(); ++i) {
    const SubsetRecord& rec = rep.per_subset[i];
    if (rec.status == SolveStatus::Indeterminate) {
      rep.any_indeterminate = true;
      continue;
    }
    if (rec.status == SolveStatus::Infeasible) continue;
    if (best_idx == subsets.size() || rec.total_value < rep.best_value) {
      rep.best_value = rec.total_value;
      best_idx = i;
    }
  }
  if (best_idx < subsets.size()) {
    rep.best_subset = rep.per_subset[best_idx].subset;
    if (rep.per_subset[best_idx].status == SolveStatus::Optimal && rep.best_value.finite()) {
      rep.attained = true;
      rep.best_point = outcomes[best_idx].point;
    }
  }
  return rep;
}

}  // namespace

GlobalReport enumerate_global(const PrimalModel& p, int cap, const SolverConfig& cfg) {
  return sweep(p.r(), p.card.weights, cap, cfg, [&](const std::vector<int>& s) {
    return RestrictedProgram::primal_program(p, s);
  });
}

GlobalReport enumerate_global(const DualModel& d, int cap, const SolverConfig& cfg) {
  return sweep(d.r(), d.card.weights, cap, cfg, [&](const std::vector<int>& s) {
    return RestrictedProgram::dual_program(d, s);
  });
}

// ---------------------------------------------------------------------------
// thresholds and the mu-selection rule

Thresholds compute_thresholds(const DualModel& d, const std::vector<int>& T_star,
                              const SolverConfig& cfg, const std::optional<Vec>& reference,
                              int cap) {
  const int r = d.r();
  if (r > cap)
    throw std::invalid_argument("thresholds refused: r exceeds cap");
  std::set<int> tset(T_star.begin(), T_star.end());

  auto family_value = [&](auto&& member) -> ExtReal {
    ExtReal best = ExtReal::inf();  // empty family convention
    for (const auto& s : all_subsets(r)) {
      if (!member(s)) continue;
      SolveOutcome oc = solve_restricted(RestrictedProgram::dual_program(d, s), cfg);
      if (oc.status == SolveStatus::Indeterminate)
        throw std::runtime_error("threshold subproblem did not resolve");
      best = min(best, oc.value);
    }
    return best;
  };

  Thresholds th;
  th.T_star = T_star;
  std::sort(th.T_star.begin(), th.T_star.end());
  th.eta0 = family_value([&](const std::vector<int>& s) {
    return s.size() == tset.size() && std::all_of(s.begin(), s.end(), [&](int i) { return tset.count(i); });
  });
  th.eta1 = family_value([&](const std::vector<int>& s) {
    return s.size() < tset.size() &&
           std::all_of(s.begin(), s.end(), [&](int i) { return tset.count(i) > 0; });
  });
  th.eta2 = family_value([&](const std::vector<int>& s) {
    return !std::all_of(s.begin(), s.end(), [&](int i) { return tset.count(i) > 0; });
  });

  if (reference) {
    ExtReal xi = xi_eval(d, *reference);
    if (!xi.finite() || !th.eta0.finite() ||
        std::abs(xi.value() - th.eta0.value()) > 1e-6 * (1.0 + std::abs(th.eta0.value())))
      throw std::invalid_argument("reference point is not optimal for the S = T* program");
    if (!(th.eta1 > th.eta0))
      throw std::invalid_argument(
          "reference point is not of smallest cardinality (eta1 <= eta0)");
  }
  return th;
}

Vec select_mu(const Thresholds& th, int r, double slack) {
  if (!(slack > 0.0)) throw std::invalid_argument("select_mu requires slack > 0");
  if (th.eta2.is_neg_inf())
    throw std::invalid_argument("eta2 = -inf: no finite mu satisfies the complement rule");
  std::set<int> tset(th.T_star.begin(), th.T_star.end());
  Vec mu(r);

  if (!tset.empty()) {
    if (!(th.eta1 > th.eta0))
      throw std::invalid_argument("mu selection requires eta1 > eta0");
    if (!th.eta0.finite())
      throw std::invalid_argument("eta0 must be finite for mu selection");
    if (!th.eta1.finite())
      throw std::invalid_argument("eta1 must be finite when T* is nonempty");
    double gap = th.eta1.value() - th.eta0.value();
    double on_support = gap / (static_cast<double>(tset.size()) * (1.0 + slack));
    double bound = th.eta2.is_inf() ? 0.0
                                    : std::max(th.eta1.value() - th.eta2.value(), 0.0);
    double off_support =
        bound + slack * (1.0 + (th.eta2.is_inf() ? 0.0 : std::abs(th.eta1.value() - th.eta2.value())));
    for (int i = 0; i < r; ++i) mu[i] = tset.count(i) ? on_support : off_support;
    return mu;
  }

  // T* empty: the eta1 family is empty (+inf convention) and the chain
  // collapses to eta0 <= eta2 + min_j mu_j, so eta0 replaces eta1 in the
  // complement rule
  if (!th.eta0.finite()) throw std::invalid_argument("eta0 must be finite for mu selection");
  double bound =
      th.eta2.is_inf() ? 0.0 : std::max(th.eta0.value() - th.eta2.value(), 0.0);
  double off_support =
      bound + slack * (1.0 + (th.eta2.is_inf() ? 0.0 : std::abs(th.eta0.value() - th.eta2.value())));
  for (int i = 0; i < r; ++i) mu[i] = off_support;
  return mu;
}

// ---------------------------------------------------------------------------
// grid oracle

namespace {
template <typename Model>
ExtReal grid_min(const Model& model, const Vec& lo, const Vec& hi, int points, int dim) {
  if (dim > 4) throw std::invalid_argument("brute_force_grid limited to dimension <= 4");
  if (points < 2 || points > 201) throw std::invalid_argument("points_per_axis out of range");
  std::vector<int> idx(static_cast<size_t>(dim), 0);
  Vec x(dim);
  ExtReal best = ExtReal::inf();
  while (true) {
    for (int d = 0; d < dim; ++d)
      x[d] = lo[d] + (hi[d] - lo[d]) * idx[static_cast<size_t>(d)] / (points - 1);
    ObjectiveValue ov = objective_eval(model, x);
    best = min(best, ov.total);
    int d = 0;
    while (d < dim && ++idx[static_cast<size_t>(d)] == points) {
      idx[static_cast<size_t>(d)] = 0;
      ++d;
    }
    if (d == dim) break;
  }
  return best;
}
}  // namespace

ExtReal brute_force_grid(const PrimalModel& p, const Vec& lo, const Vec& hi, int points_per_axis) {
  if (lo.size() != p.n() || hi.size() != p.n())
    throw std::invalid_argument("grid box dimension mismatch");
  return grid_min(p, lo, hi, points_per_axis, p.n());
}

ExtReal brute_force_grid(const DualModel& d, const Vec& lo, const Vec& hi, int points_per_axis) {
  if (lo.size() != d.wdim() || hi.size() != d.wdim())
    throw std::invalid_argument("grid box dimension mismatch");
  return grid_min(d, lo, hi, points_per_axis, d.wdim());
}

double lipschitz_estimate(const PrimalModel& p, const Vec& lo, const Vec& hi,
                          int samples_per_axis) {
  const int dim = p.n();
  std::vector<int> idx(static_cast<size_t>(dim), 0);
  Vec x(dim);
  double best = 1.0;
  while (true) {
    for (int d = 0; d < dim; ++d)
      x[d] = lo[d] + (hi[d] - lo[d]) * idx[static_cast<size_t>(d)] / (samples_per_axis - 1);
    ExtReal f0 = theta_eval(p, x);
    if (f0.finite()) {
      double g2 = 0.0;
      bool ok = true;
      for (int d = 0; d < dim && ok; ++d) {
        double h = 1e-5 * (1.0 + std::abs(x[d]));
        Vec xp = x, xm = x;
        xp[d] += h;
        xm[d] -= h;
        ExtReal fp = theta_eval(p, xp), fm = theta_eval(p, xm);
        if (fp.finite() && fm.finite()) {
          double gd = (fp.value() - fm.value()) / (2.0 * h);
          g2 += gd * gd;
        } else if (fp.finite()) {
          double gd = (fp.value() - f0.value()) / h;
          g2 += gd * gd;
        } else if (fm.finite()) {
          double gd = (f0.value() - fm.value()) / h;
          g2 += gd * gd;
        } else {
          ok = false;
        }
      }
      if (ok) best = std::max(best, std::sqrt(g2));
    }
    int d = 0;
    while (d < dim && ++idx[static_cast<size_t>(d)] == samples_per_axis) {
      idx[static_cast<size_t>(d)] = 0;
      ++d;
    }
    if (d == dim) break;
  }
  return best;
}

}  // namespace ccopt
