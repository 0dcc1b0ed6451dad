#pragma once

// Reference values from mpmath at 40 digits (tests/oracle/reference_values.py).

#include <complex>

namespace qbm::testing::ref {

inline const std::complex<double> ln_gamma_3p7_2p1i{0.78534695807382238876, 2.5830129251152622486};
inline const std::complex<double> ln_gamma_0p3_m4p2i{-5.9650223378728921767, -1.5183667813380881307};
inline const std::complex<double> ln_gamma_m2p5_0p7i{-1.4941873089113575064, -8.6464756828033773445};
inline const std::complex<double> digamma_0p5_5i{1.6077593216071878661, 1.5707963267948252705};
inline const std::complex<double> digamma_12_m3i{2.475522888235460357, -0.25503860183529873739};
inline const std::complex<double> trigamma_0p25_0p5i{-1.0011295420359397028, -3.0823818724169024676};
inline const std::complex<double> trigamma_1_30i{0.00055555555555555555556, -0.033327159120994665993};
inline constexpr double g_10 = -8.4131133175916957812;
inline const std::complex<double> g_2_3i{-0.91394945401953811412, -2.5470112265914083675};

// damped oscillator, energy route closed form
inline constexpr double C_osc_theta0p5_alpha1 = 0.63147386907251605023;
inline constexpr double C_osc_theta0p2_alpha3 = 0.37718420238173861301;
inline constexpr double C_osc_theta1em3_alpha1 = 0.0010472140881106388722;
inline constexpr double S_osc_theta1em3_alpha1 = 0.0010472030634701928626;
inline constexpr double S_osc_theta0p5_alpha1 = 0.66641563780025091605;
inline constexpr double C_undamped_theta1 = 0.92067359420779231895;
inline constexpr double S_undamped_theta1 = 1.0406518522564083154;

// free particle
inline constexpr double C_free_ohmic_a1 = 0.14493406684822643647;  // pi^2/6 - 3/2
inline constexpr double C_drude_theta0p5_ratio1 = 0.40211205306405037678;
inline constexpr double C_drude_theta0p5_ratio10 = 0.31083609038926791612;
inline constexpr double C_drude_theta0p5_ratio4 = 0.33370037124275782411;

}  // namespace qbm::testing::ref
