#pragma once

#include <utility>

namespace sqcc {

/// Absolute tolerance for physicality checks; values inside the band are
/// clamped rather than rejected so optimizer probes at domain edges survive.
inline constexpr double kPhysTol = 1e-9;

/// Symmetric two-mode covariance matrix in the block form
///   ( a*I    c*sz )
///   ( c*sz   b*I  )
/// with sz = diag(1,-1). All entries in shot-noise units (vacuum = 1).
struct TwoModeCovariance {
    double a = 1.0;  ///< Alice variance
    double b = 1.0;  ///< Bob variance
    double c = 0.0;  ///< cross correlation
};

/// Covariance of a pure two-mode squeezed vacuum of modal variance V.
TwoModeCovariance tmsv_covariance(double variance);

/// Modal variance V = (1 + lambda^2) / (1 - lambda^2) of a TMSV with
/// squeezing parameter lambda in [0, 1).
double tmsv_variance(double lambda);

/// Symplectic eigenvalues of the joint and conditional covariance matrices.
struct EntropySpectrum {
    double nu1 = 1.0;
    double nu2 = 1.0;
    double nu3 = 1.0;
};

/// Per-operating-point protocol result.
struct RateReport {
    double mutual_information = 0.0;  ///< I_AB, bits/use
    double holevo = 0.0;              ///< chi_EB, bits/use
    double key_rate = 0.0;            ///< K >= 0, bits/use
    double ber = 0.5;                 ///< classical bit-error rate
    double success_prob = 1.0;        ///< heralding probability of the variant
    double ber_noise = 0.0;           ///< postprocessing excess noise, SNU
};

/// True if both symplectic eigenvalues and ab - c^2 clear 1 within tol.
bool is_physical(const TwoModeCovariance& cov, double tol = kPhysTol);

/// Symplectic eigenvalues (nu1 >= nu2) without any physicality enforcement.
/// Still throws NonPhysicalCovariance when the discriminant is negative
/// beyond tolerance (no real spectrum exists).
std::pair<double, double> symplectic_spectrum_raw(const TwoModeCovariance& cov);

/// Symplectic eigenvalues (nu1 >= nu2 >= 1). Values in [1 - tol, 1) are
/// clamped to 1; anything below throws NonPhysicalCovariance.
std::pair<double, double> symplectic_eigenvalues(const TwoModeCovariance& cov);

/// nu3 = a - c^2/(b+1): symplectic eigenvalue of Alice's state conditioned on
/// Bob's heterodyne outcome. Clamps within tolerance, throws below it.
double conditional_eigenvalue(const TwoModeCovariance& cov);

/// (nu1, nu2, nu3) in one call.
EntropySpectrum entropy_spectrum(const TwoModeCovariance& cov);

/// Von Neumann entropy of a thermal mode with symplectic eigenvalue nu:
/// G(nu) = ((nu+1)/2) log2((nu+1)/2) - ((nu-1)/2) log2((nu-1)/2), G(1) = 0.
double entropy_g(double nu);

/// Heterodyne-heterodyne Shannon mutual information
/// I_AB = log2( (a+1) / (a + 1 - c^2/(b+1)) ).
double mutual_information(const TwoModeCovariance& cov);

/// Holevo bound chi_EB = G(nu1) + G(nu2) - G(nu3) for collective attacks,
/// clamped to 0 from tiny negative rounding.
double holevo_bound(const TwoModeCovariance& cov);

/// Asymptotic reverse-reconciliation key rate
/// max(0, prefactor * (beta * I_AB - chi_EB)).
/// The prefactor carries 1/g^2 or 2*P for heralded variants, 1 otherwise.
double key_rate(const TwoModeCovariance& cov, double beta, double prefactor = 1.0);

/// Repeaterless secret-key capacity -log2(1 - T) of the pure-loss channel.
double plob_bound(double transmissivity);

/// Two-way assisted capacity upper bound g[(1+T)Nm/2] - g[(1-T)Nm/2] with
/// g(x) = (x+1)log2(x+1) - x log2 x (thermal-mode entropy).
double takeoka_bound(double transmissivity, double n_mode);

/// Large-photon-number limit log2((1+T)/(1-T)) of takeoka_bound.
double takeoka_limit(double transmissivity);

}  // namespace sqcc
