#include "sqcc/nla_ideal.hpp"

#include <algorithm>
#include <cmath>

#include "sqcc/errors.hpp"
#include "sqcc/math_util.hpp"

namespace sqcc {

namespace {

struct Sym2 {
    double m00, m01, m11;
    double det() const { return m00 * m11 - m01 * m01; }
};

}  // namespace

EffectiveParams effective_params(const ProtocolConfig& config, const ChannelModel& channel,
                                 double gain) {
    if (gain < 1.0) throw DomainError("effective_params: gain < 1");

    const TwoModeCovariance cov = channel_cov(config, channel);
    const double g2 = gain * gain;

    // x-block of the joint covariance plus heterodyne vacuum
    const Sym2 n{cov.a + 1.0, cov.c, cov.b + 1.0};
    const double dn = n.det();
    if (dn <= 0.0) throw NonPhysicalCovariance("effective_params: Q covariance not positive");
    const Sym2 m{n.m11 / dn, -n.m01 / dn, n.m00 / dn};

    // inverse Q covariance of the amplified state
    const Sym2 gam{m.m00, gain * m.m01, g2 * m.m11 - (g2 - 1.0) / 2.0};
    const double dg = gam.det();
    if (gam.m00 <= 0.0 || dg <= 0.0)
        throw GainOutOfDomain("effective_params: amplified state not normalizable");

    const double ap = gam.m11 / dg - 1.0;
    const double bp = gam.m00 / dg - 1.0;
    const double cp = -gam.m01 / dg;

    if (ap <= 1.0 + 1e-12)
        throw GainOutOfDomain("effective_params: degenerate effective variance");
    if (!is_physical({ap, bp, cp}, 1e-7))
        throw GainOutOfDomain("effective_params: effective covariance unphysical");

    const double t_eff = cp * cp / (ap * ap - 1.0);
    if (!(t_eff > 0.0)) throw GainOutOfDomain("effective_params: effective transmissivity <= 0");
    double eps_eff = (bp - 1.0) / t_eff - ap + 1.0;
    if (eps_eff < 0.0) {
        if (eps_eff < -1e-7)
            throw GainOutOfDomain("effective_params: negative effective excess noise");
        eps_eff = 0.0;
    }

    // displacement map: mean' = Gamma^{-1} S^T M (0, x_B)
    const double x_b = 2.0 * std::sqrt(channel.transmissivity) * config.alpha;
    const double r0 = m.m01 * x_b;
    const double r1 = gain * m.m11 * x_b;
    const double xp_b = (-gam.m01 * r0 + gam.m00 * r1) / dg;
    const double alpha_eff = std::abs(xp_b) / (2.0 * std::sqrt(t_eff));

    EffectiveParams out;
    out.variance_eff = ap;
    out.transmissivity_eff = t_eff;
    out.alpha_eff = alpha_eff;
    out.excess_noise_eff =
        std::max(0.0, eps_eff - alpha_eff * alpha_eff * config.phase_noise);
    return out;
}

namespace {

double ideal_ber_from(const EffectiveParams& p, double sigma) {
    const double chi_p = (1.0 - p.transmissivity_eff) / p.transmissivity_eff +
                         p.excess_noise_eff + p.alpha_eff * p.alpha_eff * sigma;
    const double b_id = p.transmissivity_eff * (p.variance_eff + chi_p);
    const double arg =
        std::sqrt(p.transmissivity_eff * p.alpha_eff * p.alpha_eff / (2.0 * b_id));
    return half_erfc(arg);
}

}  // namespace

double ideal_ber(const ProtocolConfig& config, const ChannelModel& channel, double gain) {
    return ideal_ber_from(effective_params(config, channel, gain), config.phase_noise);
}

RateReport ideal_key_rate(const ProtocolConfig& config, const ChannelModel& channel,
                          double gain) {
    const EffectiveParams p = effective_params(config, channel, gain);
    const double e_c = ideal_ber_from(p, config.phase_noise);
    const double eps_ber = ber_noise(p.alpha_eff, e_c);

    ProtocolConfig primed = config;
    primed.variance = p.variance_eff;
    primed.alpha = p.alpha_eff;

    const double t_eff = p.transmissivity_eff;
    const double chi_p = (1.0 - t_eff) / t_eff + p.excess_noise_eff +
                         p.alpha_eff * p.alpha_eff * config.phase_noise;
    TwoModeCovariance cov{p.variance_eff,
                          t_eff * (p.variance_eff + chi_p + eps_ber),
                          std::sqrt(t_eff * (p.variance_eff * p.variance_eff - 1.0))};

    RateReport report;
    report.ber = e_c;
    report.ber_noise = eps_ber;
    report.success_prob = 1.0 / (gain * gain);
    report.mutual_information = mutual_information(cov);
    report.holevo = holevo_bound(cov);
    report.key_rate = std::max(
        0.0, report.success_prob *
                 (config.reconciliation * report.mutual_information - report.holevo));
    return report;
}

}  // namespace sqcc
