// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qre {

// One inequality lhs <= rhs, accepted when rhs - lhs >= -tolerance.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;

  double margin() const { return rhs - lhs; }
  bool passed() const;
};

// tolerance = abs_tol + rel_tol * max(|lhs|, |rhs|).
Check make_check(std::string name, double lhs, double rhs, double rel_tol, double abs_tol = 0.0);

struct BoundReport {
  std::string inequality_id;
  std::string function_id;
  std::optional<double> beta;
  std::vector<int> dims;
  std::uint64_t seed = 0;
  std::string inputs_digest;
  // Headline numbers, copied from the first check.
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool passed = true;
  bool divergent = false;
  nlohmann::ordered_json constants = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add(const Check& c);
  // Marks the report as vacuous because an entropy is infinite.
  void mark_divergent(const std::string& why);
  const Check* find(const std::string& name) const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace qre
