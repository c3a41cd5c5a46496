// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qre {

enum class ErrorKind {
  InvalidMatrix,
  NotPsd,
  ShapeMismatch,
  InvalidRank,
  InvalidParameter,
  IrregularFunction,
  SingularArgument,
  DivergentEntropy,
  InputError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define QRE_DECLARE_ERROR(Name)                                      \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what)                           \
        : Error(ErrorKind::Name, what) {}                            \
  };

QRE_DECLARE_ERROR(InvalidMatrix)
QRE_DECLARE_ERROR(NotPsd)
QRE_DECLARE_ERROR(ShapeMismatch)
QRE_DECLARE_ERROR(InvalidRank)
QRE_DECLARE_ERROR(InvalidParameter)
QRE_DECLARE_ERROR(IrregularFunction)
QRE_DECLARE_ERROR(InputError)

#undef QRE_DECLARE_ERROR

// Raised when f(Delta) must be evaluated at 0 and f(0+) is infinite on a
// block the argument actually touches.
class SingularArgument : public Error {
 public:
  SingularArgument(const std::string& what, int k, int j)
      : Error(ErrorKind::SingularArgument, what), k_(k), j_(j) {}
  int k() const { return k_; }
  int j() const { return j_; }

 private:
  int k_;
  int j_;
};

// Carries the offending eigen-index pair (k of sigma, j of rho).
class DivergentEntropy : public Error {
 public:
  DivergentEntropy(const std::string& what, int k, int j)
      : Error(ErrorKind::DivergentEntropy, what), k_(k), j_(j) {}
  int k() const { return k_; }
  int j() const { return j_; }

 private:
  int k_;
  int j_;
};

}  // namespace qre
