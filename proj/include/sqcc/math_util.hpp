#pragma once

#include <cmath>

namespace sqcc {

/// log2(x) with the x -> 0 limit of x*log2(x) handled by callers; plain wrapper
/// kept for symmetry with xlog2.
inline double log2_(double x) { return std::log2(x); }

/// x * log2(x), continuously extended to 0 at x = 0.
inline double xlog2(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

/// Natural-log of erfc(x), valid for all x representable in double.
/// For moderate arguments defers to std::erfc; beyond the underflow knee it
/// switches to the asymptotic series
///   erfc(x) ~ exp(-x^2) / (x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4) - ...)
/// so BERs far below 1e-300 remain representable as log-values.
inline double log_erfc(double x) {
    if (x < 25.0) {
        return std::log(std::erfc(x));
    }
    const double ix2 = 1.0 / (x * x);
    const double series = 1.0 + ix2 * (-0.5 + ix2 * (0.75 + ix2 * (-1.875 + ix2 * 6.5625)));
    return -x * x - std::log(x * std::sqrt(M_PI)) + std::log(series);
}

/// 0.5 * erfc(x); underflows to 0 for x beyond ~26.6.
inline double half_erfc(double x) { return 0.5 * std::erfc(x); }

}  // namespace sqcc
