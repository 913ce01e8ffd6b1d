#include "sqcc/dual.hpp"

#include <algorithm>
#include <cmath>

#include "sqcc/errors.hpp"
#include "sqcc/math_util.hpp"
#include "sqcc/nla_scissor.hpp"

namespace sqcc {

namespace {

double tap_argument(const ProtocolConfig& config, const ChannelModel& channel, double t) {
    if (!(t > 0.0) || t > 1.0) throw DomainError("tap_ber: t outside (0,1]");
    const double tap = (1.0 - t) * channel.transmissivity;
    const double b_tap =
        tap * (config.variance - 1.0 + channel.excess_noise +
               config.alpha * config.alpha * config.phase_noise) +
        1.0;
    return std::sqrt(tap * config.alpha * config.alpha / (2.0 * b_tap));
}

}  // namespace

double tap_ber(const ProtocolConfig& config, const ChannelModel& channel, double t) {
    return half_erfc(tap_argument(config, channel, t));
}

double tap_log_ber(const ProtocolConfig& config, const ChannelModel& channel, double t) {
    return log_erfc(tap_argument(config, channel, t)) - std::log(2.0);
}

RateReport dual_key_rate(const ProtocolConfig& config, const ChannelModel& channel, double gain,
                         double t) {
    const double ln_e_tap = tap_log_ber(config, channel, t);
    const double e_tap = std::exp(ln_e_tap);  // 0 when far underflowed

    // residual wrong-decode noise, input-referred on the retained arm;
    // computed in log space so alpha ~ 1e12 never evaluates a growing
    // exponential anywhere
    double eps_residual = 0.0;
    if (config.alpha > 0.0) {
        const double ln_eps = std::log(4.0 * config.alpha * config.alpha) + ln_e_tap;
        eps_residual = ln_eps < -745.0 ? 0.0 : std::exp(ln_eps);
    }

    const double t_eff = t * channel.transmissivity;
    const ChannelModel retained = ChannelModel::from_transmissivity(
        t_eff, channel.excess_noise + config.alpha * config.alpha * config.phase_noise +
                   eps_residual);

    ProtocolConfig zero_mean = config;
    zero_mean.alpha = 0.0;

    RateReport report = scissor_key_rate(zero_mean, retained, gain);
    report.ber = e_tap;
    report.ber_noise = 4.0 * t_eff * config.alpha * config.alpha * e_tap;
    if (!std::isfinite(report.ber_noise)) {
        const double ln_noise =
            std::log(4.0 * t_eff * config.alpha * config.alpha) + ln_e_tap;
        report.ber_noise = ln_noise < -745.0 ? 0.0 : std::exp(ln_noise);
    }
    return report;
}

}  // namespace sqcc
