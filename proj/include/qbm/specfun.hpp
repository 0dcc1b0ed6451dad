#pragma once

// Complex log-gamma, digamma and trigamma, plus the entropy kernel
// g(z) = ln Gamma(1+z) - z psi(1+z).
//
// All three use the Stirling-type asymptotic series once Re(z) >= 10 and
// the upward recurrences below that. With |z| >= 10 the Bernoulli tails
// used here are below 1e-20, so the shifted sums dominate the error budget.

#include <array>
#include <cmath>
#include <complex>

#include "qbm/core.hpp"

namespace qbm {

using ComplexValue = std::complex<double>;

namespace detail {

// B_2, B_4, ..., B_32
inline constexpr std::array<double, 16> bernoulli_even = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
};

inline constexpr double asymptotic_threshold = 10.0;
inline constexpr int stirling_terms = 12;

inline void check_pole(ComplexValue z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw PoleError(static_cast<long long>(z.real()));
}

inline int shift_count(ComplexValue z) {
  if (z.real() >= asymptotic_threshold) return 0;
  return static_cast<int>(std::ceil(asymptotic_threshold - z.real()));
}

// sum_{k=1}^{K} c_k w^{k-1}, evaluated by Horner in w = 1/z^2
template <class Coef>
ComplexValue horner(ComplexValue w, int terms, Coef coef) {
  ComplexValue acc = 0.0;
  for (int k = terms; k >= 1; --k) acc = acc * w + coef(k);
  return acc;
}

inline ComplexValue ln_gamma_asymptotic(ComplexValue z) {
  const ComplexValue inv = 1.0 / z;
  const ComplexValue series = horner(inv * inv, stirling_terms, [](int k) {
    return bernoulli_even[k - 1] / (2.0 * k * (2.0 * k - 1.0));
  });
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi) + series * inv;
}

inline ComplexValue digamma_asymptotic(ComplexValue z) {
  const ComplexValue inv = 1.0 / z;
  const ComplexValue w = inv * inv;
  const ComplexValue series =
      horner(w, stirling_terms, [](int k) { return bernoulli_even[k - 1] / (2.0 * k); });
  return std::log(z) - 0.5 * inv - series * w;
}

inline ComplexValue trigamma_asymptotic(ComplexValue z) {
  const ComplexValue inv = 1.0 / z;
  const ComplexValue w = inv * inv;
  const ComplexValue series =
      horner(w, stirling_terms, [](int k) { return bernoulli_even[k - 1]; });
  return inv + 0.5 * w + series * w * inv;
}

}  // namespace detail

/// ln Gamma(z), continuous in the upper and lower half planes (the branch
/// obtained by analytic continuation from the positive real axis).
inline ComplexValue ln_gamma(ComplexValue z) {
  detail::check_pole(z);
  if (z.imag() == 0.0 && (z.real() == 1.0 || z.real() == 2.0)) return 0.0;
  const int n = detail::shift_count(z);
  ComplexValue logs = 0.0;
  for (int k = 0; k < n; ++k) logs += std::log(z + static_cast<double>(k));
  return detail::ln_gamma_asymptotic(z + static_cast<double>(n)) - logs;
}

inline ComplexValue digamma(ComplexValue z) {
  detail::check_pole(z);
  const int n = detail::shift_count(z);
  ComplexValue shift = 0.0;
  for (int k = 0; k < n; ++k) shift += 1.0 / (z + static_cast<double>(k));
  return detail::digamma_asymptotic(z + static_cast<double>(n)) - shift;
}

inline ComplexValue trigamma(ComplexValue z) {
  detail::check_pole(z);
  const int n = detail::shift_count(z);
  ComplexValue shift = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    const ComplexValue inv = 1.0 / (z + static_cast<double>(k));
    shift += inv * inv;
  }
  return detail::trigamma_asymptotic(z + static_cast<double>(n)) + shift;
}

/// g(z) = ln Gamma(1+z) - z psi(1+z); g(0) = 0.
inline ComplexValue g_func(ComplexValue z) {
  if (z == ComplexValue(0.0)) return 0.0;
  const ComplexValue w = 1.0 + z;
  return ln_gamma(w) - z * digamma(w);
}

/// d g / dz = -z psi'(1+z).
inline ComplexValue g_func_derivative(ComplexValue z) {
  if (z == ComplexValue(0.0)) return 0.0;
  return -z * trigamma(1.0 + z);
}

// The damped closed forms are sums of large terms that cancel down to
// O(1/z). The two helpers below return the cancelled remainders directly,
// switching to the Bernoulli series for |z| >= 10.

/// z^2 psi'(1+z) - z + 1/2  ~  sum_k B_2k / z^(2k-1)
inline ComplexValue trigamma_remainder(ComplexValue z) {
  if (std::abs(z) >= detail::asymptotic_threshold) {
    const ComplexValue inv = 1.0 / z;
    const int terms = static_cast<int>(detail::bernoulli_even.size());
    return detail::horner(inv * inv, terms,
                          [](int k) { return detail::bernoulli_even[k - 1]; }) *
           inv;
  }
  return z * z * trigamma(1.0 + z) - z + 0.5;
}

/// g(z) - ln(2 pi z)/2 + z + 1/2  ~  sum_k B_2k / ((2k-1) z^(2k-1))
inline ComplexValue g_func_remainder(ComplexValue z) {
  if (std::abs(z) >= detail::asymptotic_threshold) {
    const ComplexValue inv = 1.0 / z;
    const int terms = static_cast<int>(detail::bernoulli_even.size());
    return detail::horner(inv * inv, terms,
                          [](int k) { return detail::bernoulli_even[k - 1] / (2.0 * k - 1.0); }) *
           inv;
  }
  return g_func(z) - 0.5 * std::log(2.0 * pi * z) + z + 0.5;
}

}  // namespace qbm
