#include "sqcc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sqcc/errors.hpp"
#include "sqcc/math_util.hpp"
#include "sqcc/parallel.hpp"

namespace sqcc {

double total_excess_noise(const ProtocolConfig& config, const ChannelModel& channel) {
    return channel.excess_noise + config.alpha * config.alpha * config.phase_noise;
}

TwoModeCovariance channel_cov(const ProtocolConfig& config, const ChannelModel& channel) {
    const double v = config.variance;
    const double t = channel.transmissivity;
    const double eps = total_excess_noise(config, channel);
    const double chi = (1.0 - t) / t + eps;
    return {v, t * (v + chi), std::sqrt(t * (v * v - 1.0))};
}

double total_noise_b(const ProtocolConfig& config, const ChannelModel& channel) {
    const double t = channel.transmissivity;
    return t * (config.variance - 1.0 + total_excess_noise(config, channel)) + 1.0;
}

double ber(const ProtocolConfig& config, const ChannelModel& channel) {
    const double b = total_noise_b(config, channel);
    const double arg =
        std::sqrt(channel.transmissivity * config.alpha * config.alpha / (2.0 * b));
    return half_erfc(arg);
}

double log_ber(const ProtocolConfig& config, const ChannelModel& channel) {
    const double b = total_noise_b(config, channel);
    const double arg =
        std::sqrt(channel.transmissivity * config.alpha * config.alpha / (2.0 * b));
    return log_erfc(arg) - std::log(2.0);
}

double ber_noise(double alpha, double e_c) {
    if (e_c < 0.0 || e_c > 0.5 + 1e-12) throw DomainError("ber_noise: e_c outside [0, 0.5]");
    return 4.0 * alpha * alpha * e_c;
}

RateReport sqcc_key_rate(const ProtocolConfig& config, const ChannelModel& channel) {
    const double e_c = ber(config, channel);
    const double eps_ber = ber_noise(config.alpha, e_c);
    TwoModeCovariance cov = channel_cov(config, channel);
    cov.b += channel.transmissivity * eps_ber;

    RateReport report;
    report.ber = e_c;
    report.ber_noise = eps_ber;
    report.success_prob = 1.0;
    report.mutual_information = mutual_information(cov);
    report.holevo = holevo_bound(cov);
    report.key_rate =
        std::max(0.0, config.reconciliation * report.mutual_information - report.holevo);
    return report;
}

double mean_photon(double alpha, double variance) {
    if (variance < 1.0) throw DomainError("mean_photon: variance < 1");
    if (alpha < 0.0) throw DomainError("mean_photon: alpha < 0");
    return alpha * alpha + 2.0 * variance;
}

namespace {

struct BudgetEval {
    bool feasible = false;
    double nbar = std::numeric_limits<double>::infinity();
    double e_c = 0.5;
};

BudgetEval eval_budget_point(double alpha, double variance, const ChannelModel& channel,
                             const QosTarget& qos, const FixedProtocolParams& fixed) {
    BudgetEval ev;
    if (variance < 1.0 || alpha < 0.0) return ev;
    ProtocolConfig cfg;
    cfg.variance = variance;
    cfg.alpha = alpha;
    cfg.theta = fixed.theta;
    cfg.phase_noise = fixed.sigma;
    cfg.reconciliation = fixed.beta;
    try {
        const RateReport rep = sqcc_key_rate(cfg, channel);
        ev.e_c = rep.ber;
        ev.feasible = rep.key_rate >= qos.min_key_rate && rep.ber <= qos.max_ber;
        ev.nbar = mean_photon(alpha, variance);
    } catch (const Error&) {
        ev.feasible = false;
    }
    return ev;
}

Regime classify_regime(double alpha, double e_c) {
    if (e_c < 1e-2) return Regime::large_alpha;
    if (e_c > 0.4) return Regime::small_alpha;
    return alpha >= 1.0 ? Regime::large_alpha : Regime::small_alpha;
}

}  // namespace

PhotonBudgetResult min_photon_search(const ChannelModel& channel, const QosTarget& qos,
                                     const FixedProtocolParams& fixed, const SearchGrid& grid,
                                     int threads) {
    qos.validate();
    grid.validate();

    const int na = grid.n_alpha;
    const int nv = grid.n_v;
    std::vector<double> alphas(na), variances(nv);
    const double la0 = std::log(grid.alpha_min);
    const double la1 = std::log(grid.alpha_max);
    for (int i = 0; i < na; ++i) alphas[i] = std::exp(la0 + (la1 - la0) * i / (na - 1));
    for (int j = 0; j < nv; ++j)
        variances[j] = grid.v_min + (grid.v_max - grid.v_min) * j / (nv - 1);

    std::vector<BudgetEval> cells(static_cast<std::size_t>(na) * nv);
    parallel_for(cells.size(), threads, [&](std::size_t k) {
        const int i = static_cast<int>(k) / nv;
        const int j = static_cast<int>(k) % nv;
        cells[k] = eval_budget_point(alphas[i], variances[j], channel, qos, fixed);
    });

    // deterministic argmin: lowest nbar, ties to smaller alpha then smaller V
    long best = -1;
    for (long k = 0; k < static_cast<long>(cells.size()); ++k) {
        if (!cells[k].feasible) continue;
        if (best < 0 || cells[k].nbar < cells[best].nbar) best = k;
    }

    PhotonBudgetResult result;
    if (best < 0) return result;

    double cur_la = std::log(alphas[best / nv]);
    double cur_v = variances[best % nv];
    double cur_nbar = cells[best].nbar;
    double cur_ec = cells[best].e_c;
    double step_la = (la1 - la0) / (na - 1);
    double step_v = (grid.v_max - grid.v_min) / (nv - 1);

    for (int it = 0; it < grid.refine_iters; ++it) {
        bool moved = false;
        const double probes[4][2] = {{cur_la + step_la, cur_v},
                                     {cur_la - step_la, cur_v},
                                     {cur_la, cur_v + step_v},
                                     {cur_la, cur_v - step_v}};
        for (const auto& p : probes) {
            const double a = std::exp(p[0]);
            const double v = std::clamp(p[1], grid.v_min, grid.v_max);
            if (a < 0.0) continue;
            const BudgetEval ev = eval_budget_point(a, v, channel, qos, fixed);
            if (ev.feasible && ev.nbar < cur_nbar) {
                cur_la = p[0];
                cur_v = v;
                cur_nbar = ev.nbar;
                cur_ec = ev.e_c;
                moved = true;
            }
        }
        if (!moved) {
            step_la *= grid.shrink;
            step_v *= grid.shrink;
            if (step_la < 1e-12 && step_v < 1e-12) break;
        }
    }

    result.feasible = true;
    result.min_photons = cur_nbar;
    result.arg_alpha = std::exp(cur_la);
    result.arg_variance = cur_v;
    result.regime = classify_regime(result.arg_alpha, cur_ec);
    return result;
}

}  // namespace sqcc
