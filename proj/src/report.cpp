// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/report.hpp"

#include <algorithm>
#include <cmath>

namespace qre {

namespace {

// JSON has no inf/nan; keep them readable instead of emitting null.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

bool Check::passed() const { return std::isfinite(margin()) ? margin() >= -tolerance : false; }

Check make_check(std::string name, double lhs, double rhs, double rel_tol, double abs_tol) {
  Check c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.tolerance = abs_tol + rel_tol * std::max(std::abs(lhs), std::abs(rhs));
  return c;
}

void BoundReport::add(const Check& c) {
  if (checks.empty()) {
    lhs = c.lhs;
    rhs = c.rhs;
    gap = c.margin();
  }
  checks.push_back(c);
  passed = passed && c.passed();
}

void BoundReport::mark_divergent(const std::string& why) {
  divergent = true;
  notes.push_back("divergent: " + why);
}

const Check* BoundReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json BoundReport::to_json() const {
  nlohmann::ordered_json j;
  j["inequality_id"] = inequality_id;
  j["function_id"] = function_id;
  j["beta"] = beta ? number(*beta) : nlohmann::ordered_json(nullptr);
  j["dims"] = dims;
  j["seed"] = seed;
  j["inputs_digest"] = inputs_digest;
  j["lhs"] = number(lhs);
  j["rhs"] = number(rhs);
  j["gap"] = number(gap);
  j["passed"] = passed;
  j["divergent"] = divergent;
  j["constants"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : constants.items()) {
    j["constants"][k] = v.is_number_float() ? number(v.get<double>()) : v;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"lhs", number(c.lhs)},
                   {"rhs", number(c.rhs)},
                   {"margin", number(c.margin())},
                   {"tolerance", number(c.tolerance)},
                   {"passed", c.passed()}});
  }
  j["checks"] = arr;
  j["notes"] = notes;
  return j;
}

}  // namespace qre
