#include <gtest/gtest.h>

#include <cmath>

#include "qbm/detail/gauss_kronrod.hpp"
#include "qbm/matsubara.hpp"
#include "qbm/oscillator.hpp"
#include "qbm/quadrature.hpp"

using namespace qbm;

TEST(GaussKronrod, SmoothAndBreakpointIntegrals) {
  const auto r = detail::integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-14);
  EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-14);
  EXPECT_TRUE(r.converged);
  const auto k = detail::integrate([](double x) { return std::abs(x - 0.3); }, {0.0, 0.3, 1.0}, 1e-14);
  EXPECT_NEAR(k.value, 0.045 + 0.245, 1e-14);
}

TEST(Quadrature, F0MatchesMatsubaraVariance) {
  for (double alpha : {0.2, 1.0, 3.0})
    for (double theta : {0.05, 0.5, 5.0}) {
      const double quad = f_n_integral(0, theta, alpha).value;
      const double sum = position_variance_sum(1.0, DampingKernel::ohmic(alpha), 1.0 / theta).value;
      EXPECT_NEAR(quad, sum, 1e-8) << theta << " " << alpha;
    }
}

TEST(Quadrature, RegularizedMomentsGiveSpecificHeat) {
  for (double alpha : {0.5, 1.0, 2.0})
    for (double theta : {0.1, 0.5, 2.0}) {
      auto e = [&](double t) { return moments(t, alpha, 1e-13).energy_reg(); };
      EXPECT_NEAR(specific_heat_fd(e, theta, 1e-4).value, *damped_specific_heat(theta, alpha).C, 1e-5)
          << theta << " " << alpha;
    }
}

TEST(Quadrature, RejectsInvalidArguments) {
  EXPECT_THROW(f_n_integral(1, 1.0, 1.0), DomainError);
  EXPECT_THROW(f_n_integral(0, 1.0, 0.0), DomainError);
  EXPECT_THROW(f_n_integral(0, -1.0, 1.0), DomainError);
}
