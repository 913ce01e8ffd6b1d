#pragma once

#include "sqcc/channel.hpp"
#include "sqcc/gaussian.hpp"

namespace sqcc {

/// BER of the classical decode on the tap arm of transmissivity (1 - t):
/// erfc(sqrt((1-t) T alpha^2 / 2 B_tap)) / 2 with
/// B_tap = (1-t) T (V - 1 + eps0 + alpha^2 sigma) + 1.
double tap_ber(const ProtocolConfig& config, const ChannelModel& channel, double t);

/// Natural log of tap_ber; finite far below the double underflow threshold.
double tap_log_ber(const ProtocolConfig& config, const ChannelModel& channel, double t);

/// Dual-measurement protocol: a tap of transmissivity t decodes the classical
/// bit, the retained arm is re-displaced to zero mean and amplified by a
/// quantum scissor. The retained arm is a zero-mean protocol through
/// effective transmissivity t*T whose excess noise picks up the residual
/// wrong-decode term 4 alpha^2 e_tap (evaluated in log space, so enormous
/// alpha never evaluates any growing exponential).
///
/// The report carries the tap BER in `ber` and the Bob-side residual noise
/// 4 t T alpha^2 e_tap in `ber_noise`.
RateReport dual_key_rate(const ProtocolConfig& config, const ChannelModel& channel, double gain,
                         double t);

}  // namespace sqcc
