// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccopt/diagnostics.hpp"
#include "ccopt/rng.hpp"
#include "ccopt/serialize.hpp"
#include "ccopt/stationarity.hpp"
#include "ccopt/zoo.hpp"

namespace ccopt {

namespace {

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Vec point_from_json(const json& j) {
  if (j.is_array()) return vec_from_json(j);
  if (j.contains("point")) return vec_from_json(j.at("point"));
  throw std::invalid_argument("point file must be an array or an object with a \"point\" field");
}

json config_json(const SolverConfig& cfg) {
  json c;
  c["tol"] = cfg.tol;
  c["max_iter"] = cfg.max_iter;
  c["divergence_threshold"] = cfg.divergence_threshold;
  return c;
}

json envelope(const std::string& command, const SolverConfig& cfg) {
  json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["timestamp"] = timestamp_utc();
  j["config"] = config_json(cfg);
  j["zero_tol"] = kDefaultZeroTolBase;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text(out_path, j.dump(2) + "\n");
}

Vec parse_weights(const std::string& text, int r, const char* what) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) vals.push_back(std::stod(item));
  }
  if (vals.empty()) throw std::invalid_argument(std::string(what) + " list is empty");
  Vec w(r);
  if (vals.size() == 1) {
    w.setConstant(vals[0]);
  } else if (static_cast<int>(vals.size()) == r) {
    for (int i = 0; i < r; ++i) w[i] = vals[static_cast<size_t>(i)];
  } else {
    throw std::invalid_argument(std::string(what) + " must have 1 or r entries");
  }
  return w;
}

std::vector<int> parse_support(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

struct LoadedModel {
  std::optional<PrimalModel> primal;
  std::optional<DualModel> dual;
};

LoadedModel load_model(const std::string& path) {
  json j = load_json(path);
  LoadedModel lm;
  const std::string type = j.value("type", "primal");
  if (type == "primal")
    lm.primal = primal_from_json(j);
  else if (type == "dual")
    lm.dual = dual_from_json(j);
  else
    throw std::invalid_argument("model type must be \"primal\" or \"dual\"");
  return lm;
}

DualModel dual_from(const LoadedModel& lm, const std::string& mu_text) {
  if (lm.dual) return *lm.dual;
  Vec mu = mu_text.empty() ? Vec(Vec::Ones(lm.primal->r()))
                           : parse_weights(mu_text, lm.primal->r(), "mu");
  return derive_dual(*lm.primal, mu);
}

// ---------------------------------------------------------------------------
// demo

struct DemoCheck {
  std::string name;
  bool ok;
};

int run_demo(const std::string& example, std::uint64_t seed, const std::string& out_prefix,
             const SolverConfig& cfg) {
  std::vector<DemoCheck> checks;
  auto check = [&](const std::string& name, bool ok) {
    checks.push_back({name, ok});
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
  };

  std::optional<PrimalModel> model;
  double grid_halfwidth = 5.0;
  if (example == "edge_denoising") {
    Vec beta = generate_piecewise_signal(4, 2, 0.2, seed);
    model = build_edge_denoising(beta, line_graph_edges(4), Vec::Constant(3, 0.5));
  } else if (example == "calcium") {
    Vec beta = generate_spike_train(4, 1, 0.1, seed);
    model = build_calcium(beta, Vec::Constant(3, 0.5));
  } else if (example == "energy_min") {
    Rng rng(seed);
    Vec a = rng.uniform_vec(3, 0.0, 2.0);
    model = build_energy_min(ConvexAtom::box(Vec::Zero(3), Vec::Constant(3, 3.0)),
                             Mat::Identity(3, 3), a, difference_matrix(3, line_graph_edges(3)),
                             Vec::Constant(2, 0.4));
    grid_halfwidth = 4.0;
  } else if (example == "l1_energy") {
    Rng rng(seed);
    Vec a = rng.uniform_vec(3, 0.0, 2.0);
    model = build_l1_energy(Mat::Identity(3, 3), a, difference_matrix(3, line_graph_edges(3)),
                            Vec::Constant(2, 0.4));
  } else if (example == "heaviside_svm" || example == "sparse_svm_dual") {
    SvmDataset ds = generate_separable(2, 6, 1.0, seed);
    PrimalModel svm = build_heaviside_svm(ds.points, ds.labels, 1.0);
    Certificate sep = svm_separability(ds.points, ds.labels, cfg);
    check("separability holds on generated data", sep.passed());
    DualModel dual = build_sparse_svm_dual(ds.points, ds.labels, Vec::Ones(svm.r()));
    GlobalReport drep = enumerate_global(dual, kDefaultSubsetCap, cfg);
    check("dual global solution attained", drep.attained);
    GlobalReport prep = enumerate_global(svm, kDefaultSubsetCap, cfg);
    check("primal global solution attained", prep.attained);
    if (prep.attained) {
      StationarityCertificate st = check_stationary_primal(svm, prep.best_point, -1.0, cfg);
      check("primal minimizer is stationary", st.passed());
      if (st.passed()) {
        CorrespondenceResult cr = primal_to_dual(svm, prep.best_point, Vec::Ones(svm.r()), -1.0, cfg);
        check("primal-to-dual correspondence", cr.check.passed() && cr.value_residual <= 1e-6);
      }
    }
    json out = envelope("demo", cfg);
    out["example"] = example;
    out["seed"] = seed;
    out["report"] = report_to_json(example == "heaviside_svm" ? prep : drep,
                                   example == "heaviside_svm" ? Which::Primal : Which::Dual, cfg,
                                   kDefaultZeroTolBase);
    emit(out, out_prefix.empty() ? "" : out_prefix + ".json");
    bool all = true;
    for (const auto& c : checks) all = all && c.ok;
    return all ? 0 : 1;
  } else {
    throw std::invalid_argument("unknown example \"" + example + "\"");
  }

  const PrimalModel& p = *model;
  GlobalReport rep = enumerate_global(p, kDefaultSubsetCap, cfg);
  check("primal enumeration attained", rep.attained);

  Vec lo = Vec::Constant(p.n(), -grid_halfwidth);
  Vec hi = Vec::Constant(p.n(), grid_halfwidth);
  if (p.f.kind() == AtomKind::IndicatorNonneg) lo.setZero();
  int points = 41;
  ExtReal grid = brute_force_grid(p, lo, hi, points);
  double spacing = (hi[0] - lo[0]) / (points - 1);
  double L = lipschitz_estimate(p, lo, hi);
  bool grid_ok = rep.best_value.finite() && grid.finite() &&
                 std::abs(rep.best_value.value() - grid.value()) <= 2.0 * spacing * L + 1e-6;
  check("enumerated value matches grid oracle", grid_ok);

  if (rep.attained) {
    StationarityCertificate st = check_stationary_primal(p, rep.best_point, -1.0, cfg);
    check("global minimizer is stationary", st.passed());
    if (st.passed()) {
      CorrespondenceResult cr = primal_to_dual(p, rep.best_point, Vec::Ones(p.r()), -1.0, cfg);
      check("primal-to-dual correspondence", cr.check.passed() && cr.value_residual <= 1e-6);
    }
  }

  json out = envelope("demo", cfg);
  out["example"] = example;
  out["seed"] = seed;
  out["report"] = report_to_json(rep, Which::Primal, cfg, kDefaultZeroTolBase);
  out["grid_value"] = ext_to_json(grid);
  emit(out, out_prefix.empty() ? "" : out_prefix + ".json");

  bool all = true;
  for (const auto& c : checks) all = all && c.ok;
  return all ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"composite cardinality optimization toolkit"};
  app.require_subcommand(1);

  SolverConfig cfg;
  app.add_option("--tol", cfg.tol, "solver tolerance");
  app.add_option("--max-iter", cfg.max_iter, "solver iteration budget");
  app.add_option("--divergence-threshold", cfg.divergence_threshold,
                 "iterate norm treated as divergence");
  app.add_option("--threads", cfg.threads, "parallelism cap (CCOPT_THREADS also honored)");

  // solve
  auto* solve = app.add_subcommand("solve", "enumerate the exact global solution");
  std::string solve_which, solve_model, solve_mu, solve_out = "report";
  int solve_cap = kDefaultSubsetCap;
  solve->add_option("--which", solve_which, "primal or dual")->required();
  solve->add_option("--model", solve_model, "model JSON file")->required();
  solve->add_option("--cap", solve_cap, "subset enumeration cap");
  solve->add_option("--mu", solve_mu, "dual weights when deriving from a primal model");
  solve->add_option("--out", solve_out, "output prefix for .json/.csv");

  // check-stationary
  auto* chk = app.add_subcommand("check-stationary", "stationarity certificate at a point");
  std::string chk_which, chk_model, chk_point, chk_out;
  double chk_tol = -1.0;
  chk->add_option("--which", chk_which, "primal or dual")->required();
  chk->add_option("--model", chk_model, "model JSON file")->required();
  chk->add_option("--point", chk_point, "point JSON file")->required();
  chk->add_option("--check-tol", chk_tol, "stationarity tolerance");
  chk->add_option("--out", chk_out, "output JSON path (stdout if omitted)");

  // correspond
  auto* cor = app.add_subcommand("correspond", "map a stationary point across the duality");
  std::string cor_dir, cor_model, cor_point, cor_mu, cor_out;
  cor->add_option("--direction", cor_dir, "p2d or d2p")->required();
  cor->add_option("--model", cor_model, "model JSON file")->required();
  cor->add_option("--point", cor_point, "point JSON file")->required();
  cor->add_option("--mu", cor_mu, "dual weights for p2d");
  cor->add_option("--out", cor_out, "output JSON path");

  // separability
  auto* sep = app.add_subcommand("separability", "SVM separability certificate");
  std::string sep_data, sep_out;
  sep->add_option("--data", sep_data, "dataset JSON with points and labels")->required();
  sep->add_option("--out", sep_out, "output JSON path");

  // mu-select
  auto* mus = app.add_subcommand("mu-select", "weights making a dual local minimizer global");
  std::string mus_model, mus_support, mus_out, mus_mu;
  double mus_slack = 0.25;
  mus->add_option("--model", mus_model, "model JSON file")->required();
  mus->add_option("--support", mus_support, "comma-separated T* indices")->required();
  mus->add_option("--slack", mus_slack, "strictness slack (> 0)");
  mus->add_option("--mu", mus_mu, "weights when deriving the dual from a primal model");
  mus->add_option("--out", mus_out, "output JSON path");

  // exists
  auto* exi = app.add_subcommand("exists", "existence-of-global-solution certificate");
  std::string exi_which, exi_model, exi_out;
  exi->add_option("--which", exi_which, "primal or dual")->required();
  exi->add_option("--model", exi_model, "model JSON file")->required();
  exi->add_option("--out", exi_out, "output JSON path");

  // demo
  auto* dem = app.add_subcommand("demo", "build, solve and cross-check a worked example");
  std::string dem_example, dem_out;
  std::uint64_t dem_seed = 1;
  dem->add_option("--example", dem_example,
                  "heaviside_svm | sparse_svm_dual | energy_min | edge_denoising | calcium | l1_energy")
      ->required();
  dem->add_option("--seed", dem_seed, "data seed");
  dem->add_option("--out", dem_out, "output prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      LoadedModel lm = load_model(solve_model);
      GlobalReport rep;
      Which which;
      if (solve_which == "primal") {
        if (!lm.primal) throw std::invalid_argument("--which primal needs a primal model file");
        rep = enumerate_global(*lm.primal, solve_cap, cfg);
        which = Which::Primal;
      } else if (solve_which == "dual") {
        DualModel d = dual_from(lm, solve_mu);
        rep = enumerate_global(d, solve_cap, cfg);
        which = Which::Dual;
      } else {
        throw std::invalid_argument("--which must be primal or dual");
      }
      json out = envelope("solve", cfg);
      out["report"] = report_to_json(rep, which, cfg, kDefaultZeroTolBase);
      emit(out, solve_out + ".json");
      write_text(solve_out + ".csv", report_to_csv(rep));
      return 0;
    }

    if (*chk) {
      LoadedModel lm = load_model(chk_model);
      Vec point = point_from_json(load_json(chk_point));
      StationarityCertificate sc;
      if (chk_which == "primal") {
        if (!lm.primal) throw std::invalid_argument("--which primal needs a primal model file");
        sc = check_stationary_primal(*lm.primal, point, chk_tol, cfg);
      } else if (chk_which == "dual") {
        DualModel d = dual_from(lm, "");
        sc = check_stationary_dual(d, point, chk_tol, cfg);
      } else {
        throw std::invalid_argument("--which must be primal or dual");
      }
      json out = envelope("check-stationary", cfg);
      out["certificate"] = certificate_to_json(sc.cert);
      out["support"] = sc.support;
      emit(out, chk_out);
      return sc.passed() ? 0 : 1;
    }

    if (*cor) {
      LoadedModel lm = load_model(cor_model);
      Vec point = point_from_json(load_json(cor_point));
      CorrespondenceResult cr;
      if (cor_dir == "p2d") {
        if (!lm.primal) throw std::invalid_argument("p2d needs a primal model file");
        Vec mu = cor_mu.empty() ? Vec(Vec::Ones(lm.primal->r()))
                                : parse_weights(cor_mu, lm.primal->r(), "mu");
        cr = primal_to_dual(*lm.primal, point, mu, -1.0, cfg);
      } else if (cor_dir == "d2p") {
        DualModel d = dual_from(lm, cor_mu);
        cr = dual_to_primal(d, point, -1.0, cfg);
      } else {
        throw std::invalid_argument("--direction must be p2d or d2p");
      }
      json out = envelope("correspond", cfg);
      out["direction"] = cor_dir;
      out["point"] = vec_to_json(cr.point);
      out["value_residual"] = cr.value_residual;
      out["postcondition"] = certificate_to_json(cr.check.cert);
      emit(out, cor_out);
      return cr.check.passed() ? 0 : 1;
    }

    if (*sep) {
      json data = load_json(sep_data);
      Mat points = mat_from_json(data.at("points"));
      Vec labels = vec_from_json(data.at("labels"));
      Certificate cert = svm_separability(points, labels, cfg);
      json out = envelope("separability", cfg);
      out["certificate"] = certificate_to_json(cert);
      emit(out, sep_out);
      return cert.passed() ? 0 : 1;
    }

    if (*mus) {
      LoadedModel lm = load_model(mus_model);
      DualModel d = dual_from(lm, mus_mu);
      std::vector<int> support = parse_support(mus_support);
      Thresholds th = compute_thresholds(d, support, cfg);
      Vec mu = select_mu(th, d.r(), mus_slack);
      json out = envelope("mu-select", cfg);
      out["support"] = th.T_star;
      json tj;
      tj["eta0"] = ext_to_json(th.eta0);
      tj["eta1"] = ext_to_json(th.eta1);
      tj["eta2"] = ext_to_json(th.eta2);
      out["thresholds"] = tj;
      out["mu"] = vec_to_json(mu);
      emit(out, mus_out);
      return 0;
    }

    if (*exi) {
      LoadedModel lm = load_model(exi_model);
      if (!lm.primal)
        throw std::invalid_argument("exists operates on the primal model data");
      Certificate cert = exi_which == "primal"
                             ? existence_check_primal(*lm.primal, cfg)
                             : existence_check_dual(*lm.primal, lm.primal->card.variant, cfg);
      json out = envelope("exists", cfg);
      out["which"] = exi_which;
      out["certificate"] = certificate_to_json(cert);
      emit(out, exi_out);
      return cert.passed() ? 0 : 1;
    }

    if (*dem) return run_demo(dem_example, dem_seed, dem_out, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ccopt
