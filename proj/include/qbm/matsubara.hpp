#pragma once

// Damping kernels and Matsubara-frequency sums for the system energy.
//
// Both energy prescriptions share the form
//
//   E = (1/beta) [ c0 + sum_{n>=1} f(nu_n) ],  nu_n = 2 pi n / beta,
//
// with c0 = 1 for the oscillator and 1/2 for the free particle (omega0 = 0)
// and
//
//   f(nu) = (2 omega0^2 + nu g(nu) [- nu^2 g'(nu)]) / (nu^2 + nu g(nu) + omega0^2),
//
// where g is the Laplace-transformed damping kernel and the bracketed term
// is present only for the partition-function prescription. The sums are
// taken directly up to N and the remainder is an Euler-Maclaurin midpoint
// correction: the integral from N + 1/2 to infinity plus f'(N + 1/2)/24.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "qbm/core.hpp"
#include "qbm/detail/gauss_kronrod.hpp"

namespace qbm {

enum class KernelKind { Ohmic, Drude };

/// Laplace transform of the damping kernel, hat-gamma(z).
/// Ohmic: gamma. Drude: gamma omega_D / (z + omega_D).
class DampingKernel {
 public:
  static DampingKernel ohmic(double gamma) {
    detail::require(gamma >= 0 && std::isfinite(gamma), "gamma must be non-negative");
    return DampingKernel(KernelKind::Ohmic, gamma, infinity);
  }

  static DampingKernel drude(double gamma, double omega_D) {
    detail::require(gamma >= 0 && std::isfinite(gamma), "gamma must be non-negative");
    detail::require(omega_D > 0 && std::isfinite(omega_D), "omega_D must be positive and finite");
    return DampingKernel(KernelKind::Drude, gamma, omega_D);
  }

  /// Drude with omega_D = cutoff_ratio * gamma, or ohmic for an infinite ratio.
  static DampingKernel from_cutoff_ratio(double gamma, double cutoff_ratio) {
    detail::require(cutoff_ratio > 0, "cutoff ratio must be positive");
    if (std::isinf(cutoff_ratio)) return ohmic(gamma);
    return drude(gamma, cutoff_ratio * gamma);
  }

  KernelKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  double omega_D() const noexcept { return omega_D_; }

  /// True when the energy sums diverge logarithmically (gamma/nu tail).
  bool has_log_divergence() const noexcept { return kind_ == KernelKind::Ohmic && gamma_ > 0; }

  template <class T>
  T gamma_hat(T z) const {
    if (kind_ == KernelKind::Ohmic) return T(gamma_);
    return gamma_ * omega_D_ / (z + omega_D_);
  }

  template <class T>
  T gamma_hat_prime(T z) const {
    if (kind_ == KernelKind::Ohmic) return T(0.0);
    const T d = z + omega_D_;
    return -gamma_ * omega_D_ / (d * d);
  }

  /// Largest frequency scale of the kernel (0 for gamma = 0).
  double frequency_scale() const noexcept {
    if (gamma_ == 0.0) return 0.0;
    return kind_ == KernelKind::Ohmic ? gamma_ : std::max(gamma_, omega_D_);
  }

 private:
  DampingKernel(KernelKind kind, double gamma, double omega_D)
      : kind_(kind), gamma_(gamma), omega_D_(omega_D) {}

  KernelKind kind_;
  double gamma_;
  double omega_D_;
};

struct KernelValue {
  double gamma_hat = 0.0;
  double gamma_hat_prime = 0.0;
};

inline KernelValue kernel_laplace(const DampingKernel& kernel, double z) {
  detail::require(z > 0, "kernel argument must be positive");
  return {kernel.gamma_hat(z), kernel.gamma_hat_prime(z)};
}

// -- summation engine -------------------------------------------------------

/// How to treat the logarithmically divergent strict-ohmic sums.
enum class Regularization {
  Absolute,                 // divergent configurations throw DivergenceError
  SubtractDivergentConstant // drop the cutoff-dependent, temperature-independent constant
};

struct SumOptions {
  double tol = 1e-12;              // relative tail bound
  long long min_terms = 1024;      // direct terms before the tail correction
  long long max_terms = 100000000; // cap on direct terms
  Regularization regularization = Regularization::Absolute;
};

struct SumResult {
  double value = 0.0;
  long long terms_used = 0;
  double tail_bound = 0.0;
  PrescriptionTag route = PrescriptionTag::EnergyRoute;
  bool regularized = false;
};

namespace detail {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    abs_ += std::abs(x);
  }
  double value() const { return sum_ + comp_; }
  double abs_total() const { return abs_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double abs_ = 0.0;
};

struct SeriesResult {
  double value = 0.0;  // c0 + sum, not yet divided by beta
  long long terms = 0;
  double bound = 0.0;
};

/// c0 + sum_{n>=1} f(2 pi n / beta). `f` must accept double and
/// std::complex<double> (the tail derivative uses a complex step).
/// `scale` is the largest frequency at which f has structure.
template <class F>
SeriesResult matsubara_series(F&& f, double c0, double beta, double scale, const SumOptions& opt) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double step = 2.0 * pi / beta;  // nu_{n+1} - nu_n

  // The tail integrand is smooth once N + 1/2 is well past every pole of f.
  const double structure_n = 8.0 * scale / step;
  long long n_target = std::max<long long>(opt.min_terms, static_cast<long long>(std::ceil(structure_n)));
  if (n_target > opt.max_terms)
    throw ConvergenceError("Matsubara sum needs " + std::to_string(n_target) +
                               " terms, above the cap of " + std::to_string(opt.max_terms),
                           infinity);

  CompensatedSum direct;
  direct.add(c0);
  long long n = 0;
  while (true) {
    for (; n < n_target; ++n) direct.add(f(step * static_cast<double>(n + 1)));

    const double x0 = static_cast<double>(n) + 0.5;
    auto tail_integrand = [&](double t) {
      const double x = x0 / t;
      return f(step * x) * x0 / (t * t);
    };
    const auto integral = integrate(tail_integrand, 0.0, 1.0, 1e-300, 1e-15, 200);

    const double h = 1e-20 * x0;
    const double fprime = std::imag(f(step * std::complex<double>(x0, h))) / h;
    const double tail = integral.value + fprime / 24.0;

    CompensatedSum total = direct;
    total.add(tail);
    // next Euler-Maclaurin term, 7/5760 |f'''|, with f''' ~ 12 f' / x^2 for a 1/x^2 tail
    const double em_next = 7.0 / 5760.0 * 12.0 * std::abs(fprime) / (x0 * x0);
    const double rounding = 4.0 * eps * (total.abs_total() + std::abs(integral.value));
    const double bound = em_next + integral.abs_err + rounding;

    const double value = total.value();
    if (bound <= opt.tol * std::abs(value) || bound == 0.0) return {value, n, bound};
    if (n_target >= opt.max_terms)
      throw ConvergenceError("Matsubara tail bound " + format_g(bound, 3) +
                                 " not reached within " + std::to_string(opt.max_terms) + " terms",
                             bound);
    n_target = std::min(opt.max_terms, 2 * n_target);
  }
}

inline void require_sum_args(double omega0, double beta, const SumOptions& opt) {
  require(omega0 >= 0 && std::isfinite(omega0), "omega0 must be non-negative");
  require(beta > 0 && std::isfinite(beta), "beta must be positive and finite");
  require(opt.tol > 0, "tolerance must be positive");
}

}  // namespace detail

/// System energy from the Matsubara representation, in the frequency units
/// of omega0, the kernel, and 1/beta. omega0 = 0 selects the free particle.
///
/// For the strict ohmic kernel both prescriptions diverge like
/// sum gamma/nu_n. A frequency cutoff omega_c keeps about omega_c beta / 2pi
/// of those terms, so the divergent piece is
/// (gamma/2pi) [ln(omega_c beta / 2pi) + euler_gamma]: a temperature-
/// independent constant plus (gamma/2pi) ln beta. With
/// Regularization::SubtractDivergentConstant the result is
///
///   (1/beta) [c0 + sum (f(nu_n) - gamma/nu_n)] + (gamma/2pi) ln(beta gamma / 2pi),
///
/// which equals the Drude energy minus (gamma/2pi) [ln(omega_D/gamma) + euler_gamma]
/// as omega_D -> infinity.
inline SumResult energy_sum(double omega0, const DampingKernel& kernel, double beta,
                            PrescriptionTag route, const SumOptions& opt = {}) {
  detail::require_sum_args(omega0, beta, opt);
  const bool regularize = kernel.has_log_divergence();
  if (regularize && opt.regularization == Regularization::Absolute)
    throw DivergenceError(
        "strict ohmic damping: the absolute energy diverges logarithmically; "
        "request Regularization::SubtractDivergentConstant for temperature derivatives");

  const double w2 = omega0 * omega0;
  const double gamma = kernel.gamma();
  const bool partition = route == PrescriptionTag::PartitionRoute;

  auto f = [&](auto nu) {
    using T = decltype(nu);
    if (regularize) {
      // (2 w2 + nu gamma)/D - gamma/nu, combined to keep the 1/nu^2 decay exact
      const T d = nu * nu + nu * gamma + w2;
      return (nu * (2.0 * w2 - gamma * gamma) - gamma * w2) / (nu * d);
    }
    const T gh = kernel.gamma_hat(nu);
    const T d = nu * nu + nu * gh + w2;
    T num = 2.0 * w2 + nu * gh;
    if (partition) num -= nu * nu * kernel.gamma_hat_prime(nu);
    return num / d;
  };

  const double c0 = omega0 > 0 ? 1.0 : 0.5;
  const double scale = std::max(omega0, kernel.frequency_scale());
  const auto s = detail::matsubara_series(f, c0, beta, scale, opt);
  double value = s.value / beta;
  if (regularize) value += gamma / (2.0 * pi) * std::log(beta * gamma / (2.0 * pi));
  return {value, s.terms, s.bound / beta, route, regularize};
}

/// <E>_Z - <E> = (1/beta) sum -nu^2 g'(nu) / (nu^2 + nu g(nu) + omega0^2),
/// summed directly. Identically zero for the ohmic kernel.
inline SumResult prescription_gap(double omega0, const DampingKernel& kernel, double beta,
                                  const SumOptions& opt = {}) {
  detail::require_sum_args(omega0, beta, opt);
  SumResult r;
  r.route = PrescriptionTag::PartitionRoute;
  if (kernel.kind() == KernelKind::Ohmic || kernel.gamma() == 0.0) return r;

  const double w2 = omega0 * omega0;
  auto f = [&](auto nu) {
    using T = decltype(nu);
    const T d = nu * nu + nu * kernel.gamma_hat(nu) + w2;
    return -nu * nu * kernel.gamma_hat_prime(nu) / d;
  };
  const double scale = std::max(omega0, kernel.frequency_scale());
  const auto s = detail::matsubara_series(f, 0.0, beta, scale, opt);
  r.value = s.value / beta;
  r.terms_used = s.terms;
  r.tail_bound = s.bound / beta;
  return r;
}

/// <q^2> (M = hbar = 1) = (1/beta) [1/omega0^2 + 2 sum 1/(nu^2 + nu g(nu) + omega0^2)].
inline SumResult position_variance_sum(double omega0, const DampingKernel& kernel, double beta,
                                       const SumOptions& opt = {}) {
  detail::require_sum_args(omega0, beta, opt);
  detail::require(omega0 > 0, "position variance needs a confining potential");
  const double w2 = omega0 * omega0;
  auto f = [&](auto nu) {
    return 2.0 / (nu * nu + nu * kernel.gamma_hat(nu) + w2);
  };
  const double scale = std::max(omega0, kernel.frequency_scale());
  const auto s = detail::matsubara_series(f, 1.0 / w2, beta, scale, opt);
  return {s.value / beta, s.terms, s.bound / beta, PrescriptionTag::EnergyRoute, false};
}

// -- numeric specific heat ----------------------------------------------------

struct FdResult {
  double value = 0.0;        // central difference at step h
  double extrapolated = 0.0; // Richardson combination of h and h/2
  double error_estimate = 0.0;
};

/// C = dE/dtheta by central differences on theta (1 +- h), with a Richardson
/// comparison against h/2 as the discretization error estimate.
template <class Energy>
FdResult specific_heat_fd(Energy&& energy, double theta, double rel_step) {
  detail::require(theta > 0, "theta must be positive");
  detail::require(rel_step > 0 && rel_step < 0.5, "relative step must lie in (0, 0.5)");
  auto central = [&](double h) {
    const double up = energy(theta * (1.0 + h));
    const double down = energy(theta * (1.0 - h));
    return (up - down) / (2.0 * theta * h);
  };
  const double full = central(rel_step);
  const double half = central(0.5 * rel_step);
  FdResult r;
  r.value = full;
  r.extrapolated = (4.0 * half - full) / 3.0;
  r.error_estimate = 4.0 / 3.0 * std::abs(full - half);
  return r;
}

}  // namespace qbm
