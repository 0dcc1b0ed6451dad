#include <gtest/gtest.h>

#include <cmath>

#include "qbm/matsubara.hpp"
#include "qbm/oscillator.hpp"

using namespace qbm;

namespace {

SumOptions regularized() {
  SumOptions o;
  o.regularization = Regularization::SubtractDivergentConstant;
  return o;
}

}  // namespace

TEST(Kernel, LaplaceValues) {
  const auto ohm = DampingKernel::ohmic(0.7);
  EXPECT_EQ(kernel_laplace(ohm, 3.0).gamma_hat, 0.7);
  EXPECT_EQ(kernel_laplace(ohm, 3.0).gamma_hat_prime, 0.0);
  const auto dr = DampingKernel::drude(2.0, 5.0);
  EXPECT_DOUBLE_EQ(kernel_laplace(dr, 5.0).gamma_hat, 1.0);
  EXPECT_DOUBLE_EQ(kernel_laplace(dr, 5.0).gamma_hat_prime, -0.1);
  EXPECT_THROW(kernel_laplace(dr, 0.0), DomainError);
  EXPECT_THROW(DampingKernel::drude(1.0, 0.0), DomainError);
  EXPECT_THROW(DampingKernel::ohmic(-1.0), DomainError);
  EXPECT_EQ(DampingKernel::from_cutoff_ratio(1.0, infinity).kind(), KernelKind::Ohmic);
  EXPECT_EQ(DampingKernel::from_cutoff_ratio(2.0, 3.0).omega_D(), 6.0);
}

TEST(Kernel, DrudeApproachesOhmic) {
  const auto dr = DampingKernel::drude(1.0, 1e12);
  EXPECT_NEAR(kernel_laplace(dr, 10.0).gamma_hat, 1.0, 1e-10);
}

TEST(EnergySum, UndampedOscillatorIsPlanck) {
  const auto k = DampingKernel::ohmic(0.0);
  for (double theta : {0.1, 1.0, 10.0}) {
    const auto r = energy_sum(1.0, k, 1.0 / theta, PrescriptionTag::EnergyRoute);
    EXPECT_NEAR(r.value, *undamped_thermo(theta).E, 1e-12 * *undamped_thermo(theta).E);
    EXPECT_FALSE(r.regularized);
  }
}

TEST(EnergySum, StrictOhmicDivergesUnlessRegularized) {
  EXPECT_THROW(energy_sum(1.0, DampingKernel::ohmic(1.0), 2.0, PrescriptionTag::EnergyRoute), DivergenceError);
  EXPECT_THROW(energy_sum(0.0, DampingKernel::ohmic(1.0), 2.0, PrescriptionTag::PartitionRoute), DivergenceError);
  EXPECT_TRUE(energy_sum(1.0, DampingKernel::ohmic(1.0), 2.0, PrescriptionTag::EnergyRoute, regularized()).regularized);
}

TEST(EnergySum, OhmicRoutesAgree) {
  const auto k = DampingKernel::ohmic(1.3);
  for (double beta : {0.1, 1.0, 20.0}) {
    const double a = energy_sum(1.0, k, beta, PrescriptionTag::EnergyRoute, regularized()).value;
    const double b = energy_sum(1.0, k, beta, PrescriptionTag::PartitionRoute, regularized()).value;
    EXPECT_EQ(a, b);
  }
}

TEST(EnergySum, RegularizedOhmicIsDrudeMinusConstant) {
  const double wd = 1e5, gamma = 1.0;
  const double offset = gamma / (2 * pi) * (std::log(wd / gamma) + euler_gamma);
  SumOptions opt;
  opt.max_terms = 200000000;
  for (double beta : {0.5, 2.0}) {
    const double drude =
        energy_sum(1.0, DampingKernel::drude(gamma, wd), beta, PrescriptionTag::EnergyRoute, opt).value;
    const double ohm = energy_sum(1.0, DampingKernel::ohmic(gamma), beta, PrescriptionTag::EnergyRoute,
                                  regularized())
                           .value;
    EXPECT_NEAR(drude - ohm, offset, 1e-3);
  }
}

TEST(EnergySum, TailBoundIsHonest) {
  const auto k = DampingKernel::drude(1.0, 3.0);
  for (double beta : {0.3, 3.0, 30.0}) {
    SumOptions opt;
    opt.tol = 1e-10;
    const auto r = energy_sum(1.0, k, beta, PrescriptionTag::PartitionRoute, opt);
    SumOptions longer = opt;
    longer.min_terms = 10 * r.terms_used;
    longer.tol = 1e-14;
    const auto l = energy_sum(1.0, k, beta, PrescriptionTag::PartitionRoute, longer);
    EXPECT_LE(std::abs(r.value - l.value), r.tail_bound + l.tail_bound + 1e-15 * std::abs(l.value));
    EXPECT_LE(r.tail_bound, opt.tol * std::abs(r.value));
  }
}

TEST(EnergySum, TermCapRaisesConvergenceError) {
  SumOptions opt;
  opt.max_terms = 10;
  opt.min_terms = 10;
  opt.tol = 1e-15;
  EXPECT_THROW(energy_sum(1.0, DampingKernel::drude(1.0, 1e6), 0.5, PrescriptionTag::EnergyRoute, opt),
               ConvergenceError);
}

TEST(EnergySum, RejectsBadArguments) {
  const auto k = DampingKernel::drude(1.0, 2.0);
  EXPECT_THROW(energy_sum(-1.0, k, 1.0, PrescriptionTag::EnergyRoute), DomainError);
  EXPECT_THROW(energy_sum(1.0, k, 0.0, PrescriptionTag::EnergyRoute), DomainError);
  SumOptions bad;
  bad.tol = 0.0;
  EXPECT_THROW(energy_sum(1.0, k, 1.0, PrescriptionTag::EnergyRoute, bad), DomainError);
}

TEST(PrescriptionGap, ZeroForOhmic) {
  EXPECT_EQ(prescription_gap(1.0, DampingKernel::ohmic(2.0), 1.0).value, 0.0);
  EXPECT_EQ(prescription_gap(0.0, DampingKernel::ohmic(1.0), 1.0).value, 0.0);
}

TEST(PrescriptionGap, DrudeIsPositiveAndMatchesRouteDifference) {
  for (double wd : {0.5, 3.0, 20.0})
    for (double beta : {0.2, 2.0, 20.0}) {
      const auto k = DampingKernel::drude(1.0, wd);
      SumOptions opt;
      opt.tol = 1e-14;
      const double gap = prescription_gap(1.0, k, beta, opt).value;
      const double e = energy_sum(1.0, k, beta, PrescriptionTag::EnergyRoute, opt).value;
      const double z = energy_sum(1.0, k, beta, PrescriptionTag::PartitionRoute, opt).value;
      EXPECT_GT(gap, 0.0);
      EXPECT_NEAR((z - e) / gap, 1.0, 1e-12 * (std::abs(z) / gap + 1.0));
    }
}

TEST(PositionVariance, UndampedClosedForm) {
  for (double theta : {0.1, 1.0, 10.0}) {
    const auto r = position_variance_sum(1.0, DampingKernel::ohmic(0.0), 1.0 / theta);
    EXPECT_NEAR(r.value, 0.5 / std::tanh(0.5 / theta), 1e-12);
  }
  EXPECT_THROW(position_variance_sum(0.0, DampingKernel::ohmic(1.0), 1.0), DomainError);
}

TEST(SpecificHeatFd, PolynomialExactness) {
  const auto r = specific_heat_fd([](double t) { return t * t * t; }, 2.0, 1e-3);
  EXPECT_NEAR(r.extrapolated, 12.0, 1e-8);
  EXPECT_LT(r.error_estimate, 1e-4);
  EXPECT_THROW(specific_heat_fd([](double t) { return t; }, 1.0, 0.0), DomainError);
}

TEST(SpecificHeatFd, OhmicOscillatorMatchesClosedForm) {
  const auto k = DampingKernel::ohmic(2.0);
  for (double theta : {0.05, 1.0, 50.0}) {
    auto e = [&](double t) {
      return energy_sum(1.0, k, 1.0 / t, PrescriptionTag::EnergyRoute, regularized()).value;
    };
    EXPECT_NEAR(specific_heat_fd(e, theta, 1e-4).value, *damped_specific_heat(theta, 2.0).C, 1e-6);
  }
}

TEST(CompensatedSum, RecoversLostLowBits) {
  detail::CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-17);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-14, 1e-27);
}
