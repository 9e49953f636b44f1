// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccopt/types.hpp"

namespace ccopt {

// Verdict plus the vectors backing it (subgradients, multipliers, Slater
// points, Farkas/recession directions). Witnesses keep insertion order so
// serialized reports are deterministic.
struct Certificate {
  enum class Verdict { Pass, Fail, Indeterminate };

  Verdict verdict = Verdict::Fail;
  double residual = 0.0;
  bool domain_violation = false;
  std::string detail;
  std::vector<std::pair<std::string, Vec>> witnesses;

  bool passed() const { return verdict == Verdict::Pass; }
  bool indeterminate() const { return verdict == Verdict::Indeterminate; }

  void set_witness(std::string name, Vec v) {
    for (auto& [k, w] : witnesses)
      if (k == name) {
        w = std::move(v);
        return;
      }
    witnesses.emplace_back(std::move(name), std::move(v));
  }

  const Vec* witness(std::string_view name) const {
    for (const auto& [k, w] : witnesses)
      if (k == name) return &w;
    return nullptr;
  }

  static Certificate pass(double residual = 0.0, std::string detail = {}) {
    Certificate c;
    c.verdict = Verdict::Pass;
    c.residual = residual;
    c.detail = std::move(detail);
    return c;
  }
  static Certificate fail(double residual = 0.0, std::string detail = {}) {
    Certificate c;
    c.verdict = Verdict::Fail;
    c.residual = residual;
    c.detail = std::move(detail);
    return c;
  }
  static Certificate indeterminate_result(std::string detail) {
    Certificate c;
    c.verdict = Verdict::Indeterminate;
    c.detail = std::move(detail);
    return c;
  }
};

}  // namespace ccopt
