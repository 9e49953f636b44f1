// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#include "ccopt/serialize.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ccopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

json scalar_to_json(double v) {
  if (v == kInf) return json("inf");
  if (v == -kInf) return json("-inf");
  return json(v);
}

double scalar_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw std::invalid_argument("expected a number or \"inf\"/\"-inf\", got \"" + s + "\"");
  }
  return j.get<double>();
}

json ext_to_json(const ExtReal& v) { return scalar_to_json(v.value()); }

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(scalar_to_json(v[i]));
  return arr;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array for a vector");
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = scalar_from_json(j[i]);
  return v;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i).transpose()));
  return rows;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rows for a matrix");
  const int r = static_cast<int>(j.size());
  if (r == 0) return Mat(0, 0);
  Vec first = vec_from_json(j[0]);
  Mat m(r, first.size());
  m.row(0) = first.transpose();
  for (int i = 1; i < r; ++i) {
    Vec row = vec_from_json(j[static_cast<size_t>(i)]);
    if (row.size() != first.size()) throw std::invalid_argument("ragged matrix rows");
    m.row(i) = row.transpose();
  }
  return m;
}

// ---------------------------------------------------------------------------
// atoms

json atom_to_json(const ConvexAtom& a) {
  json j;
  j["kind"] = atom_kind_name(a.kind());
  j["dim"] = a.dim();
  json params = json::object();
  switch (a.kind()) {
    case AtomKind::QuadraticHalfSqNorm: {
      params["center"] = vec_to_json(a.center());
      if (!a.mask_all()) {
        json m = json::array();
        for (int i = 0; i < a.dim(); ++i) m.push_back(a.mask_flag(i) ? 1 : 0);
        params["mask"] = m;
      }
      break;
    }
    case AtomKind::L1Norm:
    case AtomKind::LinearPlusIndicatorInfBall:
      params["center"] = vec_to_json(a.center());
      break;
    case AtomKind::IndicatorBox:
      params["lower"] = vec_to_json(a.lower());
      params["upper"] = vec_to_json(a.upper());
      break;
    case AtomKind::IndicatorPolyhedron:
      params["C"] = mat_to_json(a.poly_C());
      params["c"] = vec_to_json(a.poly_c());
      break;
    default:
      break;
  }
  j["params"] = params;
  return j;
}

ConvexAtom atom_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int dim = j.at("dim").get<int>();
  const json params = j.value("params", json::object());
  if (kind == "zero") return ConvexAtom::zero(dim);
  if (kind == "quadratic_half_sq_norm") {
    Vec center = vec_from_json(params.at("center"));
    if (params.contains("mask")) {
      std::vector<std::uint8_t> mask;
      for (const auto& e : params.at("mask")) mask.push_back(e.get<int>() != 0 ? 1 : 0);
      return ConvexAtom::quadratic_masked(std::move(center), std::move(mask));
    }
    return ConvexAtom::quadratic(std::move(center));
  }
  if (kind == "l1_norm") return ConvexAtom::l1(vec_from_json(params.at("center")));
  if (kind == "indicator_box")
    return ConvexAtom::box(vec_from_json(params.at("lower")), vec_from_json(params.at("upper")));
  if (kind == "indicator_nonneg") return ConvexAtom::nonneg(dim);
  if (kind == "indicator_zero") return ConvexAtom::indicator_zero(dim);
  if (kind == "indicator_polyhedron")
    return ConvexAtom::polyhedron(mat_from_json(params.at("C")), vec_from_json(params.at("c")));
  if (kind == "linear_plus_indicator_inf_ball")
    return ConvexAtom::linear_inf_ball(vec_from_json(params.at("center")));
  if (kind == "indicator_exp_epigraph") return ConvexAtom::exp_epigraph();
  throw std::invalid_argument("unknown atom kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// models

namespace {
std::string variant_name(CardFlavor::Variant v) {
  return v == CardFlavor::Variant::Zero ? "zero" : "plus";
}
CardFlavor::Variant variant_from_name(const std::string& s) {
  if (s == "zero") return CardFlavor::Variant::Zero;
  if (s == "plus") return CardFlavor::Variant::Plus;
  throw std::invalid_argument("variant must be \"zero\" or \"plus\", got \"" + s + "\"");
}
}  // namespace

json primal_to_json(const PrimalModel& p) {
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "primal";
  j["f"] = atom_to_json(p.f);
  j["g"] = atom_to_json(p.g);
  j["A"] = mat_to_json(p.A);
  j["B"] = mat_to_json(p.B);
  j["b"] = vec_to_json(p.b);
  j["variant"] = variant_name(p.card.variant);
  j["lambda"] = vec_to_json(p.card.weights);
  return j;
}

PrimalModel primal_from_json(const json& j) {
  return build_primal(atom_from_json(j.at("f")), atom_from_json(j.at("g")),
                      mat_from_json(j.at("A")), mat_from_json(j.at("B")), vec_from_json(j.at("b")),
                      variant_from_name(j.at("variant").get<std::string>()),
                      vec_from_json(j.at("lambda")));
}

json dual_to_json(const DualModel& d) {
  json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "dual";
  j["f"] = atom_to_json(d.f);
  j["g"] = atom_to_json(d.g);
  j["A"] = mat_to_json(d.A);
  j["B"] = mat_to_json(d.B);
  j["b"] = vec_to_json(d.b);
  j["variant"] = variant_name(d.card.variant);
  j["mu"] = vec_to_json(d.card.weights);
  return j;
}

DualModel dual_from_json(const json& j) {
  PrimalModel p = build_primal(atom_from_json(j.at("f")), atom_from_json(j.at("g")),
                               mat_from_json(j.at("A")), mat_from_json(j.at("B")),
                               vec_from_json(j.at("b")),
                               variant_from_name(j.at("variant").get<std::string>()),
                               Vec::Ones(static_cast<int>(j.at("b").size())));
  return derive_dual(p, vec_from_json(j.at("mu")));
}

// ---------------------------------------------------------------------------
// certificates and reports

json certificate_to_json(const Certificate& c) {
  json j;
  switch (c.verdict) {
    case Certificate::Verdict::Pass: j["verdict"] = "pass"; break;
    case Certificate::Verdict::Fail: j["verdict"] = "fail"; break;
    case Certificate::Verdict::Indeterminate: j["verdict"] = "indeterminate"; break;
  }
  j["residual"] = scalar_to_json(c.residual);
  j["domain_violation"] = c.domain_violation;
  j["detail"] = c.detail;
  json w = json::object();
  for (const auto& [name, vec] : c.witnesses) w[name] = vec_to_json(vec);
  j["witnesses"] = w;
  return j;
}

json report_to_json(const GlobalReport& rep, Which which, const SolverConfig& cfg,
                    double zero_tol_base) {
  json j;
  j["schema"] = kSchemaVersion;
  j["which"] = which == Which::Primal ? "primal" : "dual";
  j["best_value"] = ext_to_json(rep.best_value);
  j["attained"] = rep.attained;
  j["best_subset"] = rep.best_subset;
  j["best_point"] = rep.best_point.size() ? vec_to_json(rep.best_point) : json();
  j["any_indeterminate"] = rep.any_indeterminate;
  json table = json::array();
  for (const auto& rec : rep.per_subset) {
    json row;
    row["mask"] = rec.mask;
    row["subset"] = rec.subset;
    row["status"] = solve_status_name(rec.status);
    row["restricted_value"] = ext_to_json(rec.restricted_value);
    row["total_value"] = ext_to_json(rec.total_value);
    table.push_back(row);
  }
  j["per_subset"] = table;
  json c;
  c["tol"] = cfg.tol;
  c["max_iter"] = cfg.max_iter;
  c["divergence_threshold"] = cfg.divergence_threshold;
  j["config"] = c;
  j["zero_tol"] = zero_tol_base;
  return j;
}

std::string report_to_csv(const GlobalReport& rep) {
  std::ostringstream os;
  os << "mask,status,value\n";
  for (const auto& rec : rep.per_subset) {
    os << rec.mask << "," << solve_status_name(rec.status) << ",";
    double v = rec.total_value.value();
    if (v == kInf)
      os << "inf";
    else if (v == -kInf)
      os << "-inf";
    else
      os << json(v).dump();
    os << "\n";
  }
  return os.str();
}

}  // namespace ccopt
