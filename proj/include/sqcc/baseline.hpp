#pragma once

#include "sqcc/channel.hpp"
#include "sqcc/gaussian.hpp"
#include "sqcc/search_grid.hpp"

namespace sqcc {

/// Total excess noise eps = eps0 + alpha^2 * sigma. The phase-instability
/// term is applied for all alpha to keep the map smooth for optimizers.
double total_excess_noise(const ProtocolConfig& config, const ChannelModel& channel);

/// Post-channel covariance (V, T(V + chi), sqrt(T(V^2 - 1))) with
/// chi = (1 - T)/T + eps.
TwoModeCovariance channel_cov(const ProtocolConfig& config, const ChannelModel& channel);

/// Total noise variance B = T(V - 1 + eps0 + alpha^2 sigma) + 1 of Bob's
/// received signal.
double total_noise_b(const ProtocolConfig& config, const ChannelModel& channel);

/// BPSK bit-error rate e_C = erfc(sqrt(T alpha^2 / 2B)) / 2.
double ber(const ProtocolConfig& config, const ChannelModel& channel);

/// Natural log of ber(); stays finite where the BER itself underflows.
double log_ber(const ProtocolConfig& config, const ChannelModel& channel);

/// Wrong-postprocessing excess noise eps_BER = 4 alpha^2 e_C.
double ber_noise(double alpha, double e_c);

/// Full protocol evaluation: covariance with the eps_BER term folded into
/// Bob's variance, key rate with unit prefactor, and all intermediates.
RateReport sqcc_key_rate(const ProtocolConfig& config, const ChannelModel& channel);

/// Mean pulse photon number nbar = alpha^2 + 2V.
double mean_photon(double alpha, double variance);

/// Minimum mean photon number over (alpha, V) meeting both QoS targets:
/// coarse scan over the grid's alpha/V axes, then pattern-search polish.
/// Infeasibility is reported through the result, never thrown.
PhotonBudgetResult min_photon_search(const ChannelModel& channel, const QosTarget& qos,
                                     const FixedProtocolParams& fixed, const SearchGrid& grid,
                                     int threads = 1);

}  // namespace sqcc
