#pragma once

#include "sqcc/baseline.hpp"
#include "sqcc/channel.hpp"
#include "sqcc/gaussian.hpp"

namespace sqcc {

/// Static parameters of a first-order quantum scissor at one operating point.
/// R and S are the two Gaussian-integral denominators of the heralding
/// statistics: R = 2 + T(V + eps - 1) = 1 + B_in, S = R + 2.
struct ScissorPoint {
    double tau = 0.5;        ///< resource beamsplitter transmissivity
    double gain = 1.0;       ///< g = sqrt((1 - tau)/tau)
    double r_param = 2.0;    ///< R
    double s_param = 4.0;    ///< S
    double channel_t = 1.0;  ///< transmissivity seen by the device input
};

/// First and second moments of the post-scissor state, taken along the
/// classical-modulation quadrature. The correlation sign convention assumes
/// the heralding-pattern phase flip is corrected by feed-forward, so
/// `correlation` is reported non-negative.
struct ScissorMoments {
    double success_prob = 0.0;   ///< single-pattern heralding probability
    double displacement = 0.0;   ///< d, Bob's output quadrature displacement
    double bob_variance = 1.0;   ///< B along the modulation axis
    double alice_variance = 1.0; ///< A
    double correlation = 0.0;    ///< |C|
};

/// tau = 1 / (1 + g^2). Throws DomainError for g <= 0.
double gain_to_tau(double gain);

ScissorPoint make_scissor_point(const ProtocolConfig& config, const ChannelModel& channel,
                                double gain);

/// Single-pattern heralding probability. The displacement entering the
/// heralding statistics is the quadrature displacement arriving at the
/// device, x = 2 sqrt(T) alpha; with x^2 substituted the closed form is
///   P = 4 e^{-x^2/2S} [tau (x^2 - 2S) + S^2] / S^3
///       - 2 (1 - tau) e^{-x^2/2R} / R.
/// Two detector patterns herald success, each with this probability; rate
/// prefactors therefore carry 2P.
///
/// Throws NumericUnderflow when both exponentials underflow (the operating
/// point is far outside the device's useful regime).
double scissor_success_prob(double alpha, const ScissorPoint& point);

/// All five Gaussified moments of the heralded Alice/Bob state, evaluated
/// from closed forms that carry only decaying exponentials (safe for large
/// displacement probes). Cross-checked against the brute-force number-basis
/// simulator by the oracle test suites.
ScissorMoments scissor_moments(const ProtocolConfig& config, const ChannelModel& channel,
                               double gain);

/// e_C = erfc(sqrt(d^2 / 2B)) / 2 on the heralded output.
double scissor_ber(const ScissorMoments& moments);

/// Heralded key rate: Gaussified covariance (A, B + T eps_BER, C) with
/// eps_BER = 4 d^2 e_C, key-rate prefactor 2P.
RateReport scissor_key_rate(const ProtocolConfig& config, const ChannelModel& channel,
                            double gain);

}  // namespace sqcc
