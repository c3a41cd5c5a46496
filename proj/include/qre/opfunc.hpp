// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qre {

// mu(t) = scale * t^exponent on (0, inf).
struct PowerLawDensity {
  double scale = 1.0;
  double exponent = 0.0;
  double operator()(double t) const;
};

// C^f_{T,beta} <= C T^{2c}.
struct RegularityConstants {
  double C = 0.0;
  double c = 0.0;
};

struct RegularityWindow {
  double T = 0.0;
  double beta = 0.0;
  double T_L = 0.0;
  double T_R = 0.0;
  // sup of 1/mu(t) over [1/T_L, T_R].
  double C = 0.0;
};

// Operator convex f on (0, inf), with optional integral representation
//   f(x) = a x + b + int_0^inf (1/(t+x) - t/(t^2+1)) mu(t) dt.
class OperatorConvexFunction {
 public:
  struct Definition {
    std::string id;
    std::function<double(double)> eval;
    double second_derivative_at_one = 1.0;
    std::optional<double> value_at_zero;      // f(0+) when finite
    std::optional<double> slope_at_infinity;  // lim f(x)/x when finite
    bool has_representation = false;
    double a = 0.0;
    double b = 0.0;
    std::optional<PowerLawDensity> density;
  };

  explicit OperatorConvexFunction(Definition d);

  const std::string& id() const { return d_.id; }
  double operator()(double x) const { return d_.eval(x); }
  double second_derivative_at_one() const { return d_.second_derivative_at_one; }
  std::optional<double> value_at_zero() const { return d_.value_at_zero; }
  std::optional<double> slope_at_infinity() const { return d_.slope_at_infinity; }

  bool has_representation() const { return d_.has_representation; }
  double loewner_a() const;
  double loewner_b() const;
  // True when mu has a strictly positive power-law density.
  bool is_regular() const { return d_.density.has_value() && d_.density->scale > 0.0; }
  const std::optional<PowerLawDensity>& density() const { return d_.density; }
  double mu_density(double t) const;

  // Constants of the bound C^f_{T,beta} <= C T^{2c}; IrregularFunction if
  // mu has no positive power-law density.
  RegularityConstants regularity(double beta) const;

 private:
  Definition d_;
};

OperatorConvexFunction make_neg_log();
// -x^p, p in (0, 1). Not normalized: f(1) = -1.
OperatorConvexFunction make_neg_power(double p);
// (1 - x^p) / (p (1 - p)), p in (-1, 0) u (0, 1) u (1, 2). Regular only for
// p in (0, 1).
OperatorConvexFunction make_f_p(double p);
// x f(1/x). mu~(s) = s mu(1/s); no integral representation is attached
// because the transposed measure need not satisfy the convergence condition.
OperatorConvexFunction make_transpose(const OperatorConvexFunction& f);

// "neg_log", "f_p:<p>", "neg_power:<p>", optionally wrapped as "T(<id>)" for
// the transpose.
OperatorConvexFunction function_from_id(std::string_view id);
// p of an "f_p:<p>" id; nullopt otherwise.
std::optional<double> f_p_exponent(std::string_view id);

// Window endpoints only (C left at 0).
RegularityWindow regularity_window(double T, double beta);
// Exact sup for power-law densities.
RegularityWindow regularity_constant(const OperatorConvexFunction& f, double T, double beta);
// Log-grid search plus golden-section refinement of sup 1/mu over the window.
// Works for any positive density; used to cross-check the closed form.
RegularityWindow regularity_constant_numeric(const OperatorConvexFunction& f, double T,
                                             double beta, int grid = 400);

struct RepresentationCheck {
  double x = 0.0;
  double value = 0.0;
  double quadrature = 0.0;
  double abs_error = 0.0;
};

// a x + b + int (1/(t+x) - t/(t^2+1)) mu(t) dt by adaptive Gauss-Kronrod
// over decade panels in t, extended outward until the tails are negligible.
double representation_value(const OperatorConvexFunction& f, double x, double tol = 1e-11);
std::vector<RepresentationCheck> representation_check(const OperatorConvexFunction& f,
                                                      const std::vector<double>& xs);

}  // namespace qre
