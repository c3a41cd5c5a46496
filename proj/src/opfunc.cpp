// Copyright 2026 The qre Authors
// SPDX-License-Identifier: Apache-2.0

#include "qre/opfunc.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qre/errors.hpp"

namespace qre {

namespace {

constexpr double kPi = std::numbers::pi;

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InvalidParameter("beta must lie in (0, 1), got " + std::to_string(beta));
  }
}

std::string format_param(double p) {
  std::string s = std::to_string(p);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

double parse_number(std::string_view text, std::string_view id) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("bad numeric parameter in function id '" + std::string(id) + "'");
  }
  if (used != s.size()) {
    throw InputError("bad numeric parameter in function id '" + std::string(id) + "'");
  }
  return v;
}

}  // namespace

double PowerLawDensity::operator()(double t) const { return scale * std::pow(t, exponent); }

OperatorConvexFunction::OperatorConvexFunction(Definition d) : d_(std::move(d)) {}

double OperatorConvexFunction::loewner_a() const {
  if (!d_.has_representation) throw IrregularFunction(d_.id + " has no integral representation");
  return d_.a;
}

double OperatorConvexFunction::loewner_b() const {
  if (!d_.has_representation) throw IrregularFunction(d_.id + " has no integral representation");
  return d_.b;
}

double OperatorConvexFunction::mu_density(double t) const {
  if (!d_.density) throw IrregularFunction(d_.id + " has no density");
  return (*d_.density)(t);
}

RegularityConstants OperatorConvexFunction::regularity(double beta) const {
  require_beta(beta);
  if (!is_regular()) throw IrregularFunction(d_.id + " is not regular");
  const PowerLawDensity& mu = *d_.density;
  // sup over [1/T_L, T_R] of t^{-q} sits at the left end for q >= 0 and at
  // the right end otherwise; T_L and T_R are powers of T.
  const double left = beta <= 0.5 ? 1.0 : (1.0 - beta) / beta;
  const double right = beta <= 0.5 ? beta / (1.0 - beta) : 1.0;
  const double q = mu.exponent;
  RegularityConstants out;
  out.C = 1.0 / mu.scale;
  out.c = q >= 0.0 ? 0.5 * q * left : -0.5 * q * right;
  return out;
}

OperatorConvexFunction make_neg_log() {
  OperatorConvexFunction::Definition d;
  d.id = "neg_log";
  d.eval = [](double x) { return -std::log(x); };
  d.second_derivative_at_one = 1.0;
  d.value_at_zero = std::nullopt;
  d.slope_at_infinity = 0.0;
  d.has_representation = true;
  d.a = 0.0;
  d.b = 0.0;
  d.density = PowerLawDensity{1.0, 0.0};
  return OperatorConvexFunction(std::move(d));
}

OperatorConvexFunction make_neg_power(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidParameter("neg_power needs p in (0, 1), got " + std::to_string(p));
  }
  OperatorConvexFunction::Definition d;
  d.id = "neg_power:" + format_param(p);
  d.eval = [p](double x) { return -std::pow(x, p); };
  d.second_derivative_at_one = p * (1.0 - p);
  d.value_at_zero = 0.0;
  d.slope_at_infinity = 0.0;
  d.has_representation = true;
  d.a = 0.0;
  // b = Re f(i).
  d.b = -std::cos(p * kPi / 2.0);
  d.density = PowerLawDensity{std::sin(p * kPi) / kPi, p};
  return OperatorConvexFunction(std::move(d));
}

OperatorConvexFunction make_f_p(double p) {
  if (p == 0.0 || p == 1.0) {
    throw InvalidParameter("f_p at p = 0 or 1 is -log x or x log x; use make_neg_log");
  }
  if (!(p > -1.0 && p < 2.0)) {
    throw InvalidParameter("f_p needs p in (-1, 2), got " + std::to_string(p));
  }
  const double norm = p * (1.0 - p);
  OperatorConvexFunction::Definition d;
  d.id = "f_p:" + format_param(p);
  d.eval = [p, norm](double x) { return (1.0 - std::pow(x, p)) / norm; };
  d.second_derivative_at_one = 1.0;
  if (p > 0.0) {
    d.value_at_zero = 1.0 / norm;
  }
  if (p < 1.0) {
    d.slope_at_infinity = 0.0;
  }
  if (p > 0.0 && p < 1.0) {
    d.has_representation = true;
    d.a = 0.0;
    d.b = (1.0 - std::cos(p * kPi / 2.0)) / norm;
    d.density = PowerLawDensity{std::sin(p * kPi) / (kPi * norm), p};
  }
  return OperatorConvexFunction(std::move(d));
}

OperatorConvexFunction make_transpose(const OperatorConvexFunction& f) {
  OperatorConvexFunction::Definition d;
  d.id = "T(" + f.id() + ")";
  d.eval = [f](double x) { return x * f(1.0 / x); };
  d.second_derivative_at_one = f.second_derivative_at_one();
  d.value_at_zero = f.slope_at_infinity();
  d.slope_at_infinity = f.value_at_zero();
  if (f.density()) {
    d.density = PowerLawDensity{f.density()->scale, 1.0 - f.density()->exponent};
  }
  return OperatorConvexFunction(std::move(d));
}

OperatorConvexFunction function_from_id(std::string_view id) {
  if (id.size() > 3 && id.substr(0, 2) == "T(" && id.back() == ')') {
    return make_transpose(function_from_id(id.substr(2, id.size() - 3)));
  }
  if (id == "neg_log") return make_neg_log();
  const auto colon = id.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view name = id.substr(0, colon);
    const double p = parse_number(id.substr(colon + 1), id);
    if (name == "f_p") return make_f_p(p);
    if (name == "neg_power") return make_neg_power(p);
  }
  throw InputError("unknown function id '" + std::string(id) + "'");
}

std::optional<double> f_p_exponent(std::string_view id) {
  if (id.substr(0, 4) != "f_p:") return std::nullopt;
  return parse_number(id.substr(4), id);
}

RegularityWindow regularity_window(double T, double beta) {
  require_beta(beta);
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidParameter("T must be positive");
  RegularityWindow w;
  w.T = T;
  w.beta = beta;
  if (beta <= 0.5) {
    w.T_L = T;
    w.T_R = std::pow(T, beta / (1.0 - beta));
  } else {
    w.T_L = std::pow(T, (1.0 - beta) / beta);
    w.T_R = T;
  }
  return w;
}

RegularityWindow regularity_constant(const OperatorConvexFunction& f, double T, double beta) {
  RegularityWindow w = regularity_window(T, beta);
  if (!f.is_regular()) throw IrregularFunction(f.id() + " is not regular");
  const PowerLawDensity& mu = *f.density();
  const double t_worst = mu.exponent >= 0.0 ? 1.0 / w.T_L : w.T_R;
  w.C = 1.0 / mu(t_worst);
  return w;
}

RegularityWindow regularity_constant_numeric(const OperatorConvexFunction& f, double T,
                                             double beta, int grid) {
  RegularityWindow w = regularity_window(T, beta);
  if (!f.density()) throw IrregularFunction(f.id() + " has no density");
  const double lo = -std::log(w.T_L);
  const double hi = std::log(w.T_R);
  if (lo > hi) throw InvalidParameter("empty regularity window (T < 1)");
  auto inv_mu = [&f](double u) {
    const double m = f.mu_density(std::exp(u));
    if (!(m > 0.0)) throw IrregularFunction(f.id() + " density vanishes in the window");
    return 1.0 / m;
  };
  int best = 0;
  double best_val = -1.0;
  const double step = grid > 0 ? (hi - lo) / grid : 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double v = inv_mu(lo + step * i);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + step * std::max(0, best - 1);
  double b = lo + step * std::min(grid, best + 1);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (inv_mu(c) >= inv_mu(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  w.C = std::max({best_val, inv_mu(0.5 * (a + b)), inv_mu(lo), inv_mu(hi)});
  return w;
}

double representation_value(const OperatorConvexFunction& f, double x, double tol) {
  if (!(x > 0.0)) throw InvalidParameter("representation needs x > 0");
  if (!f.has_representation()) throw IrregularFunction(f.id() + " has no integral representation");
  // 1/(t+x) - t/(t^2+1) combined to avoid cancellation at large t.
  auto integrand = [&f, x](double t) {
    return (1.0 - t * x) / ((t + x) * (t * t + 1.0)) * f.mu_density(t);
  };
  auto decade = [&](int k) {
    const double a = std::pow(10.0, k);
    const double b = std::pow(10.0, k + 1);
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(integrand, a, b, 8,
                                                                         1e-12, &err);
  };
  // Walk outward from t = 1 until the decade contributions are negligible,
  // then add the geometric tail estimate.
  auto sweep = [&](int start, int step) {
    double sum = 0.0;
    double prev = 0.0;
    double v = 0.0;
    int quiet = 0;
    for (int k = start; std::abs(k) <= 140 && quiet < 3; k += step) {
      prev = v;
      v = decade(k);
      sum += v;
      quiet = std::abs(v) < 1e-3 * tol ? quiet + 1 : 0;
    }
    const double r = prev != 0.0 ? v / prev : 0.0;
    if (r > 0.0 && r < 1.0) sum += v * r / (1.0 - r);
    return sum;
  };
  const double integral = sweep(0, 1) + sweep(-1, -1);
  return f.loewner_a() * x + f.loewner_b() + integral;
}

std::vector<RepresentationCheck> representation_check(const OperatorConvexFunction& f,
                                                      const std::vector<double>& xs) {
  std::vector<RepresentationCheck> out;
  for (double x : xs) {
    RepresentationCheck r;
    r.x = x;
    r.value = f(x);
    r.quadrature = representation_value(f, x);
    r.abs_error = std::abs(r.value - r.quadrature);
    out.push_back(r);
  }
  return out;
}

}  // namespace qre
