#pragma once

#include "sqcc/baseline.hpp"
#include "sqcc/channel.hpp"
#include "sqcc/gaussian.hpp"

namespace sqcc {

/// Operating parameters of the non-amplified protocol equivalent to an
/// amplified one. At g = 1 the map is the identity.
struct EffectiveParams {
    double alpha_eff = 0.0;
    double variance_eff = 1.0;
    double transmissivity_eff = 1.0;  ///< may exceed 1; that is the amplifier's gain
    double excess_noise_eff = 0.0;
};

/// Equivalent-channel map for a receiver-side ideal noiseless amplifier g^n.
///
/// Derived from the Husimi-function transformation Q'(beta) ∝
/// exp((g^2-1)|beta|^2) Q(g beta): with M = (V + I)^{-1} on the x block, the
/// amplified state's inverse Q covariance is
///   Gamma = ( M00     g*M01                  )
///           ( g*M01   g^2*M11 - (g^2 - 1)/2  )
/// and V' = Gamma^{-1} - I; means transform as Gamma^{-1} S^T M m with
/// S = diag(1, g). The primed operating parameters are read off V' and the
/// transformed displacement.
///
/// Throws GainOutOfDomain when Gamma loses positivity or the implied
/// parameters degenerate (the operating point is unusable and an optimizer
/// should skip it).
EffectiveParams effective_params(const ProtocolConfig& config, const ChannelModel& channel,
                                 double gain);

/// Amplified-protocol BER e_C = erfc(sqrt(T' alpha'^2 / 2B')) / 2 with
/// B' = T'(V' + chi') and chi' = (1-T')/T' + eps0' + alpha'^2 sigma.
double ideal_ber(const ProtocolConfig& config, const ChannelModel& channel, double gain);

/// Amplified key rate: the primed covariance with eps'_BER = 4 alpha'^2 e_C
/// folded into Bob's variance, key rate prefactor and success probability
/// both 1/g^2.
RateReport ideal_key_rate(const ProtocolConfig& config, const ChannelModel& channel, double gain);

}  // namespace sqcc
