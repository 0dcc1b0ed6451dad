#pragma once

// Specific heat of a free quantum Brownian particle, hbar = k_B = gamma = 1.
//
// theta = k_B T / hbar gamma. The free particle has its own formulas; taking
// omega0 -> 0 in the oscillator results would count the potential-energy
// degree of freedom that the free particle does not have.

#include <cmath>
#include <complex>
#include <optional>
#include <utility>

#include "qbm/core.hpp"
#include "qbm/matsubara.hpp"
#include "qbm/oscillator.hpp"
#include "qbm/specfun.hpp"

namespace qbm {

struct FreeParticlePoint {
  double theta = 0.0;
  double cutoff_ratio = infinity;
  std::optional<double> E;
  std::optional<double> C;
  double im_residual = 0.0;
};

namespace detail {

inline void require_theta(double theta) {
  require(theta > 0 && std::isfinite(theta), "theta must be positive and finite");
}

inline void require_cutoff(double cutoff_ratio) {
  require(cutoff_ratio > 0 && std::isfinite(cutoff_ratio), "cutoff ratio must be positive and finite");
}

// q(z) = (z^2 psi'(1+z) - z + 1/2) / z = z psi'(1+z) - 1 + 1/(2z)
inline ComplexValue drude_q(ComplexValue z) { return trigamma_remainder(z) / z; }

// psi''(x) from a fourth-order central difference of psi'.
inline ComplexValue tetragamma_fd(ComplexValue x) {
  const double h = 1e-3 * std::max(1.0, std::abs(x));
  return (-trigamma(x + 2.0 * h) + 8.0 * trigamma(x + h) - 8.0 * trigamma(x - h) +
          trigamma(x - 2.0 * h)) /
         (12.0 * h);
}

// dq/dz
inline ComplexValue drude_q_prime(ComplexValue z) {
  if (std::abs(z) >= asymptotic_threshold) {
    // q = sum B_2k z^-2k
    const ComplexValue inv = 1.0 / z;
    const ComplexValue w = inv * inv;
    const int terms = static_cast<int>(bernoulli_even.size());
    return -horner(w, terms, [](int k) { return 2.0 * k * bernoulli_even[k - 1]; }) * w * inv;
  }
  return trigamma(1.0 + z) + z * tetragamma_fd(1.0 + z) - 0.5 / (z * z);
}

}  // namespace detail

/// C = 1/2 - a + a^2 psi'(1+a), a = 1/(2 pi theta).
inline FreeParticlePoint ohmic_specific_heat(double theta) {
  detail::require_theta(theta);
  const double a = 1.0 / (2.0 * pi * theta);
  FreeParticlePoint p;
  p.theta = theta;
  p.C = trigamma_remainder(a).real();
  return p;
}

/// (pi/3) theta - (4 pi^3 / 15) theta^3
inline ExpansionValue ohmic_lowT_expansion(double theta) {
  detail::require(theta > 0, "theta must be positive");
  const double cubic = 4.0 * pi * pi * pi / 15.0 * theta * theta * theta;
  return {pi / 3.0 * theta - cubic, cubic};
}

/// z_+- = (rho / (4 pi theta)) (1 +- sqrt(1 - 4/rho)), rho = omega_D / gamma.
inline std::pair<ComplexValue, ComplexValue> drude_z_pm(double theta, double cutoff_ratio) {
  detail::require_theta(theta);
  detail::require_cutoff(cutoff_ratio);
  const double z0 = cutoff_ratio / (4.0 * pi * theta);
  const double disc = 1.0 - 4.0 / cutoff_ratio;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    const double plus = z0 * (1.0 + root);
    // z_+ z_- = z0^2 (4 / rho)
    return {plus, z0 * z0 * (4.0 / cutoff_ratio) / plus};
  }
  const double root = std::sqrt(-disc);
  return {ComplexValue(z0, z0 * root), ComplexValue(z0, -z0 * root)};
}

/// C = 1/2 - (a / sqrt(1 - 4/rho)) [z_+ psi'(1+z_+) - z_- psi'(1+z_-)].
///
/// The constant 1/2 cancels against the leading parts of the bracket, which
/// leaves C = (a/d) [q(z_-) - q(z_+)] with q(z) = z psi'(1+z) - 1 + 1/(2z)
/// and d = sqrt(1 - 4/rho). At rho = 4 the quotient is replaced by its limit
/// -2 a z0 q'(z0). An infinite rho is the strict ohmic result.
inline FreeParticlePoint drude_specific_heat(double theta, double cutoff_ratio) {
  detail::require_theta(theta);
  detail::require(cutoff_ratio > 0, "cutoff ratio must be positive");
  if (std::isinf(cutoff_ratio)) return ohmic_specific_heat(theta);

  const double a = 1.0 / (2.0 * pi * theta);
  FreeParticlePoint p;
  p.theta = theta;
  p.cutoff_ratio = cutoff_ratio;

  ComplexValue c;
  if (cutoff_ratio == 4.0) {
    const double z0 = cutoff_ratio / (4.0 * pi * theta);
    c = -2.0 * a * z0 * detail::drude_q_prime(z0);
  } else {
    const auto [zp, zm] = drude_z_pm(theta, cutoff_ratio);
    const ComplexValue d = std::sqrt(ComplexValue(1.0 - 4.0 / cutoff_ratio));
    c = a / d * (detail::drude_q(zm) - detail::drude_q(zp));
  }
  p.C = c.real();
  p.im_residual = std::abs(c.imag());
  return p;
}

/// <E> = (1/2 beta) [1 + 2 sum nu g(nu) / (nu^2 + nu g(nu))] with beta = 1/theta;
/// the kernel's frequencies are in the same unit as theta (a kernel with
/// gamma = 1 makes theta = theta_gamma). Strict ohmic damping has no finite
/// absolute energy, so that case returns the sum with the temperature-
/// independent divergent constant removed and marks it regularized.
inline SumResult free_energy_internal(double theta, const DampingKernel& kernel,
                                      const SumOptions& opt = {}) {
  detail::require_theta(theta);
  SumOptions o = opt;
  o.regularization = Regularization::SubtractDivergentConstant;
  return energy_sum(0.0, kernel, 1.0 / theta, PrescriptionTag::EnergyRoute, o);
}

}  // namespace qbm
