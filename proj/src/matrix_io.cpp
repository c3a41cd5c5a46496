// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/matrix_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "qre/errors.hpp"

namespace qre {

namespace {

void read_part(const nlohmann::json& rows, int n, const char* name, Matrix& m, bool imag) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw InputError(std::string("\"") + name + "\" must be an array of " + std::to_string(n) +
                     " rows");
  }
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw InputError(std::string("\"") + name + "\" row " + std::to_string(i) +
                       " must have " + std::to_string(n) + " entries");
    }
    for (int k = 0; k < n; ++k) {
      if (!row[k].is_number()) throw InputError(std::string("non-numeric entry in ") + name);
      const double v = row[k].get<double>();
      if (imag) {
        m(i, k).imag(v);
      } else {
        m(i, k).real(v);
      }
    }
  }
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
    throw InputError("matrix JSON needs \"dim\" and \"re\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1) {
    throw InputError("\"dim\" must be a positive integer");
  }
  const int n = j["dim"].get<int>();
  Matrix m = Matrix::Zero(n, n);
  read_part(j["re"], n, "re", m, false);
  if (j.contains("im")) read_part(j["im"], n, "im", m, true);
  return m;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    nlohmann::json c = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

std::uint64_t digest(const Matrix& m, std::uint64_t h) {
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t shape[2] = {m.rows(), m.cols()};
  feed(shape, sizeof(shape));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double parts[2] = {m.data()[i].real(), m.data()[i].imag()};
    feed(parts, sizeof(parts));
  }
  return h;
}

std::string hex_digest(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace qre
