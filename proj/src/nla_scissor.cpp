#include "sqcc/nla_scissor.hpp"

#include <algorithm>
#include <cmath>

#include "sqcc/errors.hpp"
#include "sqcc/math_util.hpp"

namespace sqcc {

double gain_to_tau(double gain) {
    if (!(gain > 0.0)) throw DomainError("gain_to_tau: gain <= 0");
    return 1.0 / (1.0 + gain * gain);
}

ScissorPoint make_scissor_point(const ProtocolConfig& config, const ChannelModel& channel,
                                double gain) {
    ScissorPoint point;
    point.gain = gain;
    point.tau = gain_to_tau(gain);
    const double eps = total_excess_noise(config, channel);
    point.r_param = 2.0 + channel.transmissivity * (config.variance + eps - 1.0);
    point.s_param = point.r_param + 2.0;
    point.channel_t = channel.transmissivity;
    return point;
}

namespace {

// Shared tilted-Gaussian machinery. The heralded statistics reduce to
// Gaussian integrals of the input P-function against exp(-s|beta|^2) tilts at
// s = 1/2 and s = 1; the printed R/S parameters are R = 2(1+n), S = 4(1+n/2)
// for n = (B_in - 1)/2.
struct Tilt {
    double tau, n, u, w, e_half, e_one, nt, qt, k00, q;
};

Tilt make_tilt(double tau, double n, double q) {
    Tilt t;
    t.tau = tau;
    t.n = n;
    t.q = q;
    t.u = 1.0 + n / 2.0;
    t.w = 1.0 + n;
    const double a_half = q / (2.0 * t.u);
    const double a_one = q / t.w;
    if (a_half > 700.0 && a_one > 700.0)
        throw NumericUnderflow("scissor: displacement far outside device regime");
    t.e_half = std::exp(-a_half) / t.u;
    t.e_one = std::exp(-a_one) / t.w;
    t.nt = n / t.u;
    t.qt = q / (t.u * t.u);
    t.k00 = 1.0 + (t.nt + t.qt) / 2.0;
    return t;
}

double success_prob_from(const Tilt& t) {
    const double p = (t.tau / 2.0) * t.e_half * t.k00 + (1.0 - t.tau) * (t.e_half - t.e_one);
    if (!(p > 0.0)) throw NumericUnderflow("scissor: heralding probability underflow");
    return std::min(p, 1.0);
}

}  // namespace

double scissor_success_prob(double alpha, const ScissorPoint& point) {
    const double n = (point.r_param - 2.0) / 2.0;
    const double q = point.channel_t * alpha * alpha;  // arriving amplitude squared
    return success_prob_from(make_tilt(point.tau, n, q));
}

ScissorMoments scissor_moments(const ProtocolConfig& config, const ChannelModel& channel,
                               double gain) {
    const double tau = gain_to_tau(gain);
    const TwoModeCovariance cov = channel_cov(config, channel);
    const double mu = std::sqrt(channel.transmissivity) * config.alpha;
    const double ct = std::cos(config.theta);

    const double n = (cov.b - 1.0) / 2.0;
    const Tilt t = make_tilt(tau, n, mu * mu);

    const bool correlated = cov.b > 1.0 + 1e-300;
    const double lam = correlated ? cov.c / (cov.b - 1.0) : 0.0;
    const double v_a = cov.a - (correlated ? cov.c * cov.c / (cov.b - 1.0) : 0.0);

    const double p = success_prob_from(t);
    const double root_tt = std::sqrt(tau * (1.0 - tau));

    // first and second moments of the output mode
    const double x_sum = -root_tt * t.e_half * (mu / t.u);  // radial
    const double d = std::abs(x_sum) / p;
    const double m2 = (tau / 2.0) * t.e_half * t.k00 +
                      3.0 * (1.0 - tau) * (t.e_half - t.e_one);
    const double b_x = m2 / p - (d * ct) * (d * ct);

    // Alice mean along the modulation axis
    const double mu_x = mu * ct;
    const double y_sum =
        lam * ((tau / 2.0) * t.e_half *
                   ((mu_x / t.u) * (t.qt + 2.0 * t.nt + 2.0) - 2.0 * mu_x * t.k00) +
               (1.0 - tau) * 2.0 * mu_x *
                   (t.e_half * (1.0 / t.u - 1.0) - t.e_one * (1.0 / t.w - 1.0)));

    // Alice second moment
    const double h = mu_x * (1.0 / t.u - 1.0);
    const double remu_t = mu_x / t.u;
    const double g2 = 4.0 * ((t.nt * t.qt / 2.0 + t.nt * t.nt + 2.0 * h * remu_t * t.nt +
                              h * h * (t.qt + t.nt)) /
                                 2.0 +
                             t.nt / 2.0 + h * h);
    const auto fluct = [&](double s) {
        return 4.0 * mu_x * mu_x * (1.0 / s - 1.0) * (1.0 / s - 1.0) + 2.0 * n / s;
    };
    const double w2 = (tau / 2.0) * t.e_half * g2 +
                      (1.0 - tau) * (t.e_half * fluct(t.u) - t.e_one * fluct(t.w));
    const double z_sum = v_a * p + lam * lam * w2;
    const double a_qs = z_sum / p - (y_sum / p) * (y_sum / p);

    // Alice-output correlation; heralding phase flip corrected downstream
    const double u_sum = -lam * root_tt * t.e_half *
                         (t.nt + 2.0 * mu * mu * ct * ct * (1.0 / (t.u * t.u) - 1.0 / t.u));
    const double c_qs = u_sum / p - (y_sum / p) * (x_sum * ct / p);

    ScissorMoments m;
    m.success_prob = p;
    m.displacement = d;
    m.bob_variance = b_x;
    m.alice_variance = a_qs;
    m.correlation = std::abs(c_qs);
    return m;
}

double scissor_ber(const ScissorMoments& moments) {
    if (!(moments.bob_variance > 0.0)) return 0.5;
    const double arg = std::sqrt(moments.displacement * moments.displacement /
                                 (2.0 * moments.bob_variance));
    return half_erfc(arg);
}

RateReport scissor_key_rate(const ProtocolConfig& config, const ChannelModel& channel,
                            double gain) {
    const ScissorMoments m = scissor_moments(config, channel, gain);
    const double e_c = scissor_ber(m);
    const double eps_ber = ber_noise(m.displacement, e_c);

    TwoModeCovariance cov{m.alice_variance,
                          m.bob_variance + channel.transmissivity * eps_ber,
                          m.correlation};
    if (!is_physical(cov, 1e-7))
        throw NonPhysicalCovariance("scissor_key_rate: heralded covariance unphysical");
    cov.a = std::max(cov.a, 1.0);
    cov.b = std::max(cov.b, 1.0);

    RateReport report;
    report.ber = e_c;
    report.ber_noise = eps_ber;
    report.success_prob = m.success_prob;
    report.mutual_information = mutual_information(cov);
    report.holevo = holevo_bound(cov);
    report.key_rate =
        std::max(0.0, 2.0 * m.success_prob *
                          (config.reconciliation * report.mutual_information - report.holevo));
    return report;
}

}  // namespace sqcc
