// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <string>

#include <json.hpp>

#include "ccopt/certificate.hpp"
#include "ccopt/enumeration.hpp"
#include "ccopt/model.hpp"

namespace ccopt {

// ordered_json keeps insertion order, which makes the emitted files
// byte-deterministic for fixed inputs
using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "ccopt-v1";

// scalars serialize as numbers; +-infinity as the strings "inf" / "-inf"
json scalar_to_json(double v);
double scalar_from_json(const json& j);
json ext_to_json(const ExtReal& v);

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);
json mat_to_json(const Mat& m);  // dense row-major nested arrays
Mat mat_from_json(const json& j);

json atom_to_json(const ConvexAtom& a);
ConvexAtom atom_from_json(const json& j);

json primal_to_json(const PrimalModel& p);
PrimalModel primal_from_json(const json& j);
json dual_to_json(const DualModel& d);
DualModel dual_from_json(const json& j);

json certificate_to_json(const Certificate& c);

json report_to_json(const GlobalReport& rep, Which which, const SolverConfig& cfg,
                    double zero_tol_base);
// one row per subset: mask, status, total value
std::string report_to_csv(const GlobalReport& rep);

}  // namespace ccopt
