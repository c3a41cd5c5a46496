// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "qre/linalg.hpp"

namespace qre {

// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted for real
// matrices. Malformed input raises InputError.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix read_matrix_file(const std::string& path);

// 64-bit FNV-1a over the raw entries, for report digests.
std::uint64_t digest(const Matrix& m, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex_digest(std::uint64_t h);

}  // namespace qre
