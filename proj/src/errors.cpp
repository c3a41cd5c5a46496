// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/errors.hpp"

namespace qre {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::NotPsd: return "NotPSD";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::IrregularFunction: return "IrregularFunction";
    case ErrorKind::SingularArgument: return "SingularArgument";
    case ErrorKind::DivergentEntropy: return "DivergentEntropy";
    case ErrorKind::InputError: return "InputError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind) {}

}  // namespace qre
