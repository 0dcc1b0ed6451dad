#pragma once

// Second moments of the ohmically damped oscillator by direct quadrature of
//
//   f_n = int dw/2pi  gamma w^(n+1) / ((w^2 - w0^2)^2 + gamma^2 w^2)  coth(w / 2 theta)
//
// in units hbar = M = omega0 = 1. The integrand is even, so the integral is
// taken over [0, inf) and doubled. For n = 2 the coth = 1 + 2/(e^(w/theta) - 1)
// split isolates the temperature-independent log divergence, which is
// dropped; only the Bose-weighted part is integrated.

#include <algorithm>
#include <cmath>
#include <string>

#include "qbm/core.hpp"
#include "qbm/detail/gauss_kronrod.hpp"

namespace qbm {

struct QuadratureValue {
  double value = 0.0;
  double abs_err = 0.0;
};

struct MomentResult {
  double q2 = 0.0;      // <q^2> M omega0 / hbar
  double p2_reg = 0.0;  // <p^2> / (M hbar omega0) without its divergent constant
  double abs_err = 0.0;

  /// E = p^2/2 + q^2/2 up to a temperature-independent constant.
  double energy_reg() const { return 0.5 * (p2_reg + q2); }
};

namespace detail {

inline double lorentz_weight(double w, double alpha) {
  const double s = w * w - 1.0;
  return alpha / (s * s + alpha * alpha * w * w);
}

inline QuadratureValue checked(const QuadResult& r, double tol, const char* what) {
  if (!r.converged || r.abs_err > tol)
    throw ConvergenceError(std::string(what) + ": quadrature tolerance not reached (estimate " +
                               format_g(r.abs_err, 3) + ")",
                           r.abs_err);
  return {r.value, r.abs_err};
}

// (1/pi) int_0^inf alpha w coth(w / 2 theta) / L(w) dw
inline QuadratureValue f0_integral(double theta, double alpha, double tol) {
  auto integrand = [&](double w) {
    return w / std::tanh(0.5 * w / theta) * lorentz_weight(w, alpha) / pi;
  };
  const double cut = 4.0 * std::max({1.0, alpha, theta});
  // the peak sits near w = 1 with width ~alpha
  std::vector<double> points{0.0, cut};
  for (double p : {1.0 - alpha, 1.0, 1.0 + alpha, 2.0})
    if (p > 0.0 && p < cut) points.push_back(p);
  const auto body = integrate(integrand, points, 0.5 * tol);
  // w = cut / t maps [cut, inf) onto (0, 1]
  auto tail_integrand = [&](double t) {
    const double w = cut / t;
    return integrand(w) * cut / (t * t);
  };
  const auto tail = integrate(tail_integrand, 0.0, 1.0, 0.5 * tol);
  QuadResult sum{body.value + tail.value, body.abs_err + tail.abs_err, 0,
                 body.converged && tail.converged};
  return checked(sum, tol, "f0");
}

// (2/pi) int_0^W alpha w^3 / L(w) / (e^(w/theta) - 1) dw, with W chosen so
// the analytic tail bound beyond it is below tol/10.
inline QuadratureValue f2_regularized_integral(double theta, double alpha, double tol) {
  auto integrand = [&](double w) {
    return 2.0 / pi * w * w * w * lorentz_weight(w, alpha) / std::expm1(w / theta);
  };
  // For w >= W >= max(2, theta): alpha w^3 / L <= 16 alpha / (9 w) and
  // 1/(e^x - 1) <= 2 e^-x, so the tail is at most
  // (64 alpha / (9 pi W)) theta e^(-W/theta).
  double cut = std::max({2.0, 2.0 * alpha, theta});
  auto tail_bound = [&](double w) {
    return 64.0 * alpha / (9.0 * pi * w) * theta * std::exp(-w / theta);
  };
  while (tail_bound(cut) > 0.1 * tol) cut *= 1.5;

  std::vector<double> points{0.0, cut};
  for (double p : {1.0 - alpha, 1.0, 1.0 + alpha, 2.0, 10.0 * theta})
    if (p > 0.0 && p < cut) points.push_back(p);
  auto body = integrate(integrand, points, 0.5 * tol);
  body.abs_err += tail_bound(cut);
  return checked(body, tol, "f2");
}

}  // namespace detail

/// f_0 (full) or the regularized f_2, theta = k_B T / hbar omega0,
/// alpha = gamma / omega0 > 0.
inline QuadratureValue f_n_integral(int n, double theta, double alpha, double tol = 1e-10) {
  detail::require(theta > 0 && std::isfinite(theta), "theta must be positive and finite");
  detail::require(alpha > 0 && std::isfinite(alpha), "quadrature needs alpha > 0");
  detail::require(tol > 0, "tolerance must be positive");
  if (n == 0) return detail::f0_integral(theta, alpha, tol);
  if (n == 2) return detail::f2_regularized_integral(theta, alpha, tol);
  throw DomainError("f_n is only defined for n = 0 and n = 2");
}

inline MomentResult moments(double theta, double alpha, double tol = 1e-10) {
  const auto f0 = f_n_integral(0, theta, alpha, tol);
  const auto f2 = f_n_integral(2, theta, alpha, tol);
  return {f0.value, f2.value, f0.abs_err + f2.abs_err};
}

}  // namespace qbm
