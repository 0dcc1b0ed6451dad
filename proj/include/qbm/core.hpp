#pragma once

// Reduced-unit conventions, parameter validation and shared tolerances.
//
// Everything inside the library works with hbar = k_B = M = 1. Temperatures
// are measured against hbar*omega0 for the oscillator and against hbar*gamma
// for the free particle; the convention in force is carried by the
// ReducedParams value itself.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qbm {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double infinity = std::numeric_limits<double>::infinity();

inline constexpr const char* version = "1.0.0";

// -- errors ----------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma-family function evaluated at a nonpositive integer.
class PoleError : public DomainError {
 public:
  explicit PoleError(long long pole)
      : DomainError("pole of the gamma function at z = " + std::to_string(pole)),
        pole_(pole) {}
  long long pole() const noexcept { return pole_; }

 private:
  long long pole_;
};

/// A sum or integral could not reach the requested accuracy.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// The requested absolute quantity is infinite (cutoff divergence); only
/// temperature derivatives or regularized differences are meaningful.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

inline std::string format_g(double x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace detail

/// Which definition of the system energy a result was derived from: the
/// expectation value of the system Hamiltonian, or -d ln Z / d beta with Z
/// the reduced partition function.
enum class PrescriptionTag { EnergyRoute, PartitionRoute };

inline const char* to_string(PrescriptionTag tag) {
  return tag == PrescriptionTag::EnergyRoute ? "energy" : "partition";
}

// -- tolerances ------------------------------------------------------------

struct Tolerances {
  double rel_sum_tail = 1e-12;  // Matsubara tail, relative to the sum
  double quad_abs = 1e-10;      // quadrature, absolute
  double fd_step = 1e-5;        // relative temperature step for dE/dT

  void validate() const {
    detail::require(rel_sum_tail > 0 && quad_abs > 0 && fd_step > 0,
                    "tolerances must be strictly positive");
  }
};

// -- reduced parameters ----------------------------------------------------

enum class Convention {
  Oscillator,    // theta = k_B T / hbar omega0, alpha = gamma / omega0
  FreeParticle,  // theta = k_B T / hbar gamma
};

struct ReducedParams {
  Convention convention = Convention::Oscillator;
  double theta = 1.0;
  std::optional<double> alpha;        // oscillator only
  double cutoff_ratio = infinity;     // omega_D / gamma; infinity = strict ohmic

  bool strict_ohmic() const noexcept { return std::isinf(cutoff_ratio); }
};

/// Physical inputs in units where hbar = k_B = 1, i.e. T and all rates are
/// expressed as angular frequencies.
struct PhysicalParams {
  double temperature = 1.0;
  double omega0 = 1.0;
  double gamma = 0.0;
  double omega_D = infinity;
};

/// Converts physical inputs to the dimensionless groups. A zero omega0
/// selects the free-particle convention, which needs gamma > 0 to set the
/// temperature scale.
inline ReducedParams make_reduced(double temperature, double omega0, double gamma,
                                  double omega_D = infinity) {
  detail::require(temperature > 0 && std::isfinite(temperature),
                  "temperature must be positive and finite");
  detail::require(gamma >= 0 && std::isfinite(gamma), "gamma must be non-negative");
  detail::require(omega0 >= 0 && std::isfinite(omega0), "omega0 must be non-negative");
  detail::require(omega_D > 0, "omega_D must be positive or infinite");

  ReducedParams p;
  p.cutoff_ratio = gamma > 0 ? omega_D / gamma : infinity;
  if (omega0 > 0) {
    p.convention = Convention::Oscillator;
    p.theta = temperature / omega0;
    p.alpha = gamma / omega0;
  } else {
    detail::require(gamma > 0, "free particle needs gamma > 0 to define theta_gamma");
    p.convention = Convention::FreeParticle;
    p.theta = temperature / gamma;
  }
  return p;
}

inline ReducedParams make_reduced(const PhysicalParams& p) {
  return make_reduced(p.temperature, p.omega0, p.gamma, p.omega_D);
}

/// Inverse of make_reduced. `scale` is omega0 (oscillator) or gamma (free
/// particle) in physical units.
inline PhysicalParams to_physical(const ReducedParams& r, double scale) {
  detail::require(scale > 0, "frequency scale must be positive");
  PhysicalParams p;
  p.temperature = r.theta * scale;
  if (r.convention == Convention::Oscillator) {
    p.omega0 = scale;
    p.gamma = r.alpha.value_or(0.0) * scale;
  } else {
    p.omega0 = 0.0;
    p.gamma = scale;
  }
  p.omega_D = r.strict_ohmic() ? infinity : r.cutoff_ratio * p.gamma;
  return p;
}

}  // namespace qbm
