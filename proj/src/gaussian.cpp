#include "sqcc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqcc/errors.hpp"
#include "sqcc/math_util.hpp"

namespace sqcc {

TwoModeCovariance tmsv_covariance(double variance) {
    if (variance < 1.0) throw DomainError("tmsv_covariance: variance < 1");
    return {variance, variance, std::sqrt(variance * variance - 1.0)};
}

double tmsv_variance(double lambda) {
    if (lambda < 0.0 || lambda >= 1.0) throw DomainError("tmsv_variance: lambda outside [0,1)");
    return (1.0 + lambda * lambda) / (1.0 - lambda * lambda);
}

std::pair<double, double> symplectic_spectrum_raw(const TwoModeCovariance& cov) {
    const double delta = cov.a * cov.a + cov.b * cov.b - 2.0 * cov.c * cov.c;
    const double det = cov.a * cov.b - cov.c * cov.c;
    double disc = delta * delta - 4.0 * det * det;
    if (disc < 0.0) {
        if (disc < -kPhysTol * std::max(1.0, delta * delta))
            throw NonPhysicalCovariance("symplectic spectrum: negative discriminant");
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    const double nu1 = std::sqrt(std::max(0.0, (delta + root) / 2.0));
    const double nu2 = std::sqrt(std::max(0.0, (delta - root) / 2.0));
    return {nu1, nu2};
}

namespace {

double clamp_nu(double nu, const char* what) {
    if (nu < 1.0) {
        if (nu < 1.0 - kPhysTol)
            throw NonPhysicalCovariance(std::string(what) + ": symplectic eigenvalue " +
                                        std::to_string(nu) + " below 1");
        return 1.0;
    }
    return nu;
}

}  // namespace

std::pair<double, double> symplectic_eigenvalues(const TwoModeCovariance& cov) {
    auto [nu1, nu2] = symplectic_spectrum_raw(cov);
    return {clamp_nu(nu1, "symplectic_eigenvalues"), clamp_nu(nu2, "symplectic_eigenvalues")};
}

bool is_physical(const TwoModeCovariance& cov, double tol) {
    if (cov.a < 1.0 - tol || cov.b < 1.0 - tol) return false;
    if (cov.a * cov.b - cov.c * cov.c < 1.0 - tol) return false;
    try {
        auto [nu1, nu2] = symplectic_spectrum_raw(cov);
        (void)nu1;
        return nu2 >= 1.0 - tol;
    } catch (const NonPhysicalCovariance&) {
        return false;
    }
}

double conditional_eigenvalue(const TwoModeCovariance& cov) {
    const double nu3 = cov.a - cov.c * cov.c / (cov.b + 1.0);
    return clamp_nu(nu3, "conditional_eigenvalue");
}

EntropySpectrum entropy_spectrum(const TwoModeCovariance& cov) {
    auto [nu1, nu2] = symplectic_eigenvalues(cov);
    return {nu1, nu2, conditional_eigenvalue(cov)};
}

double entropy_g(double nu) {
    if (nu < 1.0) {
        if (nu < 1.0 - kPhysTol) throw DomainError("entropy_g: nu < 1");
        nu = 1.0;
    }
    const double xp = (nu + 1.0) / 2.0;
    const double xm = (nu - 1.0) / 2.0;
    return xlog2(xp) - xlog2(xm);
}

double mutual_information(const TwoModeCovariance& cov) {
    const double denom = cov.a + 1.0 - cov.c * cov.c / (cov.b + 1.0);
    if (denom <= 0.0)
        throw NonPhysicalCovariance("mutual_information: conditional variance <= 0");
    return std::log2((cov.a + 1.0) / denom);
}

double holevo_bound(const TwoModeCovariance& cov) {
    const EntropySpectrum nu = entropy_spectrum(cov);
    double chi = entropy_g(nu.nu1) + entropy_g(nu.nu2) - entropy_g(nu.nu3);
    if (chi < 0.0) {
        if (chi < -kPhysTol)
            throw NonPhysicalCovariance("holevo_bound: negative beyond tolerance");
        chi = 0.0;
    }
    return chi;
}

double key_rate(const TwoModeCovariance& cov, double beta, double prefactor) {
    const double margin = beta * mutual_information(cov) - holevo_bound(cov);
    return std::max(0.0, prefactor * margin);
}

double plob_bound(double transmissivity) {
    if (transmissivity <= 0.0 || transmissivity >= 1.0)
        throw DomainError("plob_bound: T outside (0,1)");
    return -std::log2(1.0 - transmissivity);
}

namespace {

// thermal-mode entropy g(x) = (x+1)log2(x+1) - x log2 x, g(0) = 0
double thermal_g(double x) {
    if (x < 0.0) throw DomainError("takeoka_bound: negative photon number");
    if (x == 0.0) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

}  // namespace

double takeoka_bound(double transmissivity, double n_mode) {
    if (transmissivity <= 0.0 || transmissivity >= 1.0)
        throw DomainError("takeoka_bound: T outside (0,1)");
    if (n_mode < 0.0) throw DomainError("takeoka_bound: n_mode < 0");
    return thermal_g((1.0 + transmissivity) * n_mode / 2.0) -
           thermal_g((1.0 - transmissivity) * n_mode / 2.0);
}

double takeoka_limit(double transmissivity) {
    if (transmissivity <= 0.0 || transmissivity >= 1.0)
        throw DomainError("takeoka_limit: T outside (0,1)");
    return std::log2((1.0 + transmissivity) / (1.0 - transmissivity));
}

}  // namespace sqcc
