#pragma once

// Harmonic oscillator thermodynamics: the uncoupled oscillator and the
// oscillator with strictly ohmic damping, in units hbar = k_B = omega0 = 1.
//
// theta = k_B T / hbar omega0, alpha = gamma / omega0.

#include <cmath>
#include <complex>
#include <optional>

#include "qbm/core.hpp"
#include "qbm/specfun.hpp"

namespace qbm {

struct OscillatorPoint {
  double theta = 0.0;
  double alpha = 0.0;
  std::optional<double> Z;  // undamped only
  std::optional<double> E;
  std::optional<double> S;
  std::optional<double> C;
  PrescriptionTag route = PrescriptionTag::EnergyRoute;
  double im_residual = 0.0;  // |Im| discarded when the result was made real
};

/// lambda_+- = (alpha/2 +- sqrt(alpha^2/4 - 1)) / (2 pi theta)
struct LambdaPair {
  ComplexValue plus;
  ComplexValue minus;
};

namespace detail {

inline void require_oscillator_args(double theta, double alpha) {
  require(theta > 0 && std::isfinite(theta), "theta must be positive and finite");
  require(alpha >= 0 && std::isfinite(alpha), "alpha must be non-negative");
}

}  // namespace detail

inline OscillatorPoint undamped_thermo(double theta) {
  detail::require(theta > 0 && std::isfinite(theta), "theta must be positive and finite");
  const double x = 1.0 / theta;
  const double em1 = std::expm1(x);
  const double sh = std::sinh(0.5 * x);

  OscillatorPoint p;
  p.theta = theta;
  p.Z = 0.5 / sh;
  p.E = 0.5 + 1.0 / em1;
  p.S = x / em1 - std::log1p(-std::exp(-x));
  const double r = x / (2.0 * sh);
  p.C = r * r;
  return p;
}

inline LambdaPair lambda_pm(double theta, double alpha) {
  detail::require_oscillator_args(theta, alpha);
  const double scale = 1.0 / (2.0 * pi * theta);
  const double half = 0.5 * alpha;
  if (alpha >= 2.0) {
    // both real; the small root from the product avoids cancellation
    const double plus = scale * (half + std::sqrt(half * half - 1.0));
    return {plus, scale * scale / plus};
  }
  const double root = std::sqrt(1.0 - half * half);
  return {ComplexValue(scale * half, scale * root), ComplexValue(scale * half, -scale * root)};
}

/// C = 1 - a + lambda_+^2 psi'(1+lambda_+) + lambda_-^2 psi'(1+lambda_-),
/// a = alpha / (2 pi theta), evaluated as the sum of the two cancelled
/// remainders so that the linear low-temperature regime keeps full
/// relative accuracy.
inline OscillatorPoint damped_specific_heat(double theta, double alpha) {
  detail::require_oscillator_args(theta, alpha);
  OscillatorPoint p;
  p.theta = theta;
  p.alpha = alpha;
  p.route = PrescriptionTag::EnergyRoute;
  if (alpha == 0.0) {
    p.C = undamped_thermo(theta).C;
    return p;
  }
  const auto [lp, lm] = lambda_pm(theta, alpha);
  const ComplexValue c = trigamma_remainder(lp) + trigamma_remainder(lm);
  p.C = c.real();
  p.im_residual = std::abs(c.imag());
  return p;
}

/// S = 1 - ln(1/theta) + a + g(lambda_+) + g(lambda_-). The ln theta, a and
/// Stirling parts of g cancel identically, leaving two remainders.
inline OscillatorPoint damped_entropy(double theta, double alpha) {
  detail::require_oscillator_args(theta, alpha);
  OscillatorPoint p;
  p.theta = theta;
  p.alpha = alpha;
  p.route = PrescriptionTag::PartitionRoute;
  if (alpha == 0.0) {
    p.S = undamped_thermo(theta).S;
    return p;
  }
  const auto [lp, lm] = lambda_pm(theta, alpha);
  const ComplexValue s = g_func_remainder(lp) + g_func_remainder(lm);
  p.S = s.real();
  p.im_residual = std::abs(s.imag());
  return p;
}

/// C = -beta dS/dbeta of the entropy above. lambda_+- are linear in beta,
/// so beta d lambda / d beta = lambda and
///   C = 1 - a - sum lambda g'(lambda),  g'(z) = -z psi'(1+z).
inline OscillatorPoint damped_specific_heat_via_entropy(double theta, double alpha) {
  detail::require_oscillator_args(theta, alpha);
  OscillatorPoint p;
  p.theta = theta;
  p.alpha = alpha;
  p.route = PrescriptionTag::PartitionRoute;
  if (alpha == 0.0) {
    p.C = undamped_thermo(theta).C;
    return p;
  }
  const auto [lp, lm] = lambda_pm(theta, alpha);
  const double a = alpha / (2.0 * pi * theta);
  const ComplexValue c = 1.0 - a - lp * g_func_derivative(lp) - lm * g_func_derivative(lm);
  p.C = c.real();
  p.im_residual = std::abs(c.imag());
  return p;
}

// -- asymptotic expansions ---------------------------------------------------

enum class ExpansionKind { UndampedLowT, UndampedHighT, DampedLowT, DampedHighT, FreeLowT };

inline const char* to_string(ExpansionKind kind) {
  switch (kind) {
    case ExpansionKind::UndampedLowT: return "undamped_lowT";
    case ExpansionKind::UndampedHighT: return "undamped_highT";
    case ExpansionKind::DampedLowT: return "damped_lowT";
    case ExpansionKind::DampedHighT: return "damped_highT";
    case ExpansionKind::FreeLowT: return "free_lowT";
  }
  return "?";
}

/// Truncated series value and the magnitude of its last retained term.
struct ExpansionValue {
  double value = 0.0;
  double last_term = 0.0;
};

/// Specific-heat expansions of the oscillator. Nothing is rejected; the
/// last_term field is the only indication of whether theta is in range.
inline ExpansionValue oscillator_expansion(ExpansionKind kind, double theta, double alpha = 0.0) {
  detail::require(theta > 0, "theta must be positive");
  switch (kind) {
    case ExpansionKind::UndampedLowT: {
      // Einstein: (1/theta)^2 exp(-1/theta)
      const double x = 1.0 / theta;
      const double v = x * x * std::exp(-x);
      return {v, v};
    }
    case ExpansionKind::UndampedHighT: {
      const double t = 1.0 / (12.0 * theta * theta);
      return {1.0 - t, t};
    }
    case ExpansionKind::DampedLowT: {
      const double linear = pi / 3.0 * alpha * theta;
      const double cubic =
          4.0 * pi * pi * pi / 15.0 * alpha * (3.0 - alpha * alpha) * theta * theta * theta;
      return {linear + cubic, std::abs(cubic)};
    }
    case ExpansionKind::DampedHighT: {
      const double quad = (alpha * alpha - 2.0) / (24.0 * theta * theta);
      return {1.0 - alpha / (2.0 * pi * theta) + quad, std::abs(quad)};
    }
    case ExpansionKind::FreeLowT:
      break;
  }
  throw DomainError("not an oscillator expansion");
}

}  // namespace qbm
