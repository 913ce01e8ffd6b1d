#include "sqcc/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqcc/dual.hpp"
#include "sqcc/errors.hpp"
#include "sqcc/nla_ideal.hpp"
#include "sqcc/nla_scissor.hpp"
#include "sqcc/parallel.hpp"

namespace sqcc {

Variant variant_from_string(const std::string& name) {
    if (name == "baseline") return Variant::baseline;
    if (name == "ideal") return Variant::ideal;
    if (name == "scissor") return Variant::scissor;
    if (name == "dual") return Variant::dual;
    throw ConfigError("unknown variant: " + name);
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::baseline: return "baseline";
        case Variant::ideal: return "ideal";
        case Variant::scissor: return "scissor";
        case Variant::dual: return "dual";
    }
    return "?";
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Eval {
    double key_rate = kNegInf;
    double ber = 0.5;
    bool ok = false;
};

Eval evaluate(Variant variant, const ProtocolConfig& base, const ChannelModel& channel,
              double v, double g, double t) {
    Eval ev;
    if (v < 1.0 || g < 1.0 || !(t > 0.0) || t > 1.0) return ev;
    ProtocolConfig cfg = base;
    cfg.variance = v;
    try {
        RateReport rep;
        switch (variant) {
            case Variant::baseline: rep = sqcc_key_rate(cfg, channel); break;
            case Variant::ideal: rep = ideal_key_rate(cfg, channel, g); break;
            case Variant::scissor: rep = scissor_key_rate(cfg, channel, g); break;
            case Variant::dual: rep = dual_key_rate(cfg, channel, g, t); break;
        }
        ev.key_rate = rep.key_rate;
        ev.ber = rep.ber;
        ev.ok = true;
    } catch (const Error&) {
        ev.ok = false;
    }
    return ev;
}

double variant_g_max(Variant variant, const SearchGrid& grid, const ChannelModel& channel) {
    if (grid.g_max > 0.0) return grid.g_max;
    if (variant == Variant::ideal) return 10.0 / std::sqrt(channel.transmissivity);
    return 100.0;
}

std::vector<double> log_axis(double lo, double hi, int n) {
    std::vector<double> axis(n);
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < n; ++i) axis[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
    return axis;
}

struct Candidate {
    double key_rate = kNegInf;
    double v = 1.0, g = 1.0, t = 1.0;
    double ber = 0.5;
};

/// strict preference order used everywhere: higher K beyond 1e-12, then
/// smaller g, smaller V, larger t
bool prefer(const Candidate& x, const Candidate& y) {
    if (x.key_rate > y.key_rate + 1e-12) return true;
    if (x.key_rate < y.key_rate - 1e-12) return false;
    if (x.g != y.g) return x.g < y.g;
    if (x.v != y.v) return x.v < y.v;
    return x.t > y.t;
}

Candidate refine(Variant variant, const ProtocolConfig& base, const ChannelModel& channel,
                 const SearchGrid& grid, Candidate start, double step_v, double step_g,
                 double step_t) {
    // compass search in (ln(V-1+1e-3), ln g, ln(1-t))
    const double v_floor = 1e-3;
    double xv = std::log(start.v - 1.0 + v_floor);
    double xg = std::log(start.g);
    double xt = std::log(std::max(1.0 - start.t, grid.t_eps));
    const double g_hi = std::log(variant_g_max(variant, grid, channel));
    const double xv_lo = std::log(std::max(grid.v_min - 1.0, 0.0) + v_floor);
    const double xv_hi = std::log(grid.v_max - 1.0 + v_floor);
    const double xt_lo = std::log(grid.t_eps);
    const double xt_hi = std::log(1.0 - grid.t_min);

    Candidate cur = start;
    const bool has_g = variant != Variant::baseline;
    const bool has_t = variant == Variant::dual;

    for (int it = 0; it < grid.refine_iters; ++it) {
        Candidate best_probe;
        bool any = false;
        auto consider = [&](double nxv, double nxg, double nxt) {
            nxv = std::clamp(nxv, xv_lo, xv_hi);
            nxg = std::clamp(nxg, 0.0, g_hi);
            nxt = std::clamp(nxt, xt_lo, xt_hi);
            Candidate cand;
            cand.v = std::exp(nxv) + 1.0 - v_floor;
            cand.g = has_g ? std::exp(nxg) : 1.0;
            cand.t = has_t ? 1.0 - std::exp(nxt) : 1.0;
            const Eval ev = evaluate(variant, base, channel, cand.v, cand.g, cand.t);
            if (!ev.ok) return;
            cand.key_rate = ev.key_rate;
            cand.ber = ev.ber;
            if (!any || prefer(cand, best_probe)) {
                best_probe = cand;
                any = true;
            }
        };
        consider(xv + step_v, xg, xt);
        consider(xv - step_v, xg, xt);
        if (has_g) {
            consider(xv, xg + step_g, xt);
            consider(xv, xg - step_g, xt);
        }
        if (has_t) {
            consider(xv, xg, xt + step_t);
            consider(xv, xg, xt - step_t);
        }
        if (any && best_probe.key_rate > cur.key_rate) {
            cur = best_probe;
            xv = std::log(cur.v - 1.0 + v_floor);
            xg = std::log(cur.g);
            xt = std::log(std::max(1.0 - cur.t, grid.t_eps));
        } else {
            step_v *= grid.shrink;
            step_g *= grid.shrink;
            step_t *= grid.shrink;
            if (step_v < 1e-12 && step_g < 1e-12 && step_t < 1e-12) break;
        }
    }
    return cur;
}

Candidate optimize_impl(Variant variant, const ProtocolConfig& base, const ChannelModel& channel,
                        const SearchGrid& grid, int threads, const Candidate* hint) {
    grid.validate();
    const double v_lo = std::max(grid.v_min - 1.0, 0.0) + 1e-3;
    const std::vector<double> v_off = log_axis(v_lo, grid.v_max - 1.0 + 1e-3, grid.n_v);
    std::vector<double> v_axis(v_off.size());
    for (std::size_t i = 0; i < v_off.size(); ++i) v_axis[i] = v_off[i] + 1.0 - 1e-3;

    std::vector<double> g_axis{1.0};
    if (variant != Variant::baseline)
        g_axis = log_axis(1.0, variant_g_max(variant, grid, channel), grid.n_g);
    std::vector<double> t_axis{1.0};
    if (variant == Variant::dual) {
        t_axis = log_axis(grid.t_eps, 1.0 - grid.t_min, grid.n_t);
        for (auto& om : t_axis) om = 1.0 - om;
    }

    const std::size_t n_cells = v_axis.size() * g_axis.size() * t_axis.size();
    std::vector<Eval> cells(n_cells);
    parallel_for(n_cells, threads, [&](std::size_t k) {
        const std::size_t iv = k / (g_axis.size() * t_axis.size());
        const std::size_t ig = (k / t_axis.size()) % g_axis.size();
        const std::size_t it = k % t_axis.size();
        cells[k] = evaluate(variant, base, channel, v_axis[iv], g_axis[ig], t_axis[it]);
    });

    double k_max = kNegInf;
    bool any_ok = false;
    for (const auto& ev : cells) {
        if (!ev.ok) continue;
        any_ok = true;
        k_max = std::max(k_max, ev.key_rate);
    }
    if (!any_ok) throw EmptyFeasibleSet("optimize_point: every grid point failed");

    Candidate coarse;
    bool have = false;
    for (std::size_t k = 0; k < n_cells; ++k) {
        if (!cells[k].ok || cells[k].key_rate < k_max - 1e-12) continue;
        Candidate cand;
        const std::size_t iv = k / (g_axis.size() * t_axis.size());
        const std::size_t ig = (k / t_axis.size()) % g_axis.size();
        const std::size_t it = k % t_axis.size();
        cand.v = v_axis[iv];
        cand.g = g_axis[ig];
        cand.t = t_axis[it];
        cand.key_rate = cells[k].key_rate;
        cand.ber = cells[k].ber;
        if (!have || prefer(cand, coarse)) {
            coarse = cand;
            have = true;
        }
    }

    const double step_v = std::log(v_off[1] / v_off[0]);
    const double step_g =
        g_axis.size() > 1 ? std::log(g_axis[1] / g_axis[0]) : 0.25;
    const double step_t = 0.5 * std::log((1.0 - grid.t_min) / grid.t_eps) /
                          std::max(1, grid.n_t - 1) * 2.0;

    Candidate best = refine(variant, base, channel, grid, coarse, step_v, step_g, step_t);
    if (hint != nullptr) {
        const Eval hv = evaluate(variant, base, channel, hint->v, hint->g, hint->t);
        if (hv.ok) {
            Candidate hc;
            hc.v = hint->v;
            hc.g = hint->g;
            hc.t = hint->t;
            hc.key_rate = hv.key_rate;
            hc.ber = hv.ber;
            const Candidate refined =
                refine(variant, base, channel, grid, hc, step_v, step_g, step_t);
            if (prefer(refined, best)) best = refined;
        }
    }
    return best;
}

SweepRecord to_record(Variant variant, const Candidate& best, const ProtocolConfig& base,
                      const ChannelModel& channel) {
    SweepRecord rec;
    rec.loss_db = channel.loss_db;
    rec.alpha = base.alpha;
    rec.variant = variant;
    rec.v_opt = best.v;
    rec.g_opt = best.g;
    rec.t_opt = best.t;
    rec.key_rate = std::max(0.0, best.key_rate);
    rec.ber = best.ber;
    const double t_ch = channel.transmissivity;
    switch (variant) {
        case Variant::baseline:
            rec.g2t = t_ch;
            rec.t_eff = t_ch;
            break;
        case Variant::ideal: {
            rec.g2t = best.g * best.g * t_ch;
            ProtocolConfig cfg = base;
            cfg.variance = best.v;
            try {
                rec.t_eff = effective_params(cfg, channel, best.g).transmissivity_eff;
            } catch (const Error&) {
                rec.t_eff = rec.g2t;
            }
            break;
        }
        case Variant::scissor:
            rec.g2t = best.g * best.g * t_ch;
            rec.t_eff = rec.g2t;
            break;
        case Variant::dual:
            rec.g2t = best.g * best.g * best.t * t_ch;
            rec.t_eff = rec.g2t;
            break;
    }
    rec.plob = t_ch < 1.0 ? plob_bound(t_ch)
                          : std::numeric_limits<double>::infinity();
    return rec;
}

}  // namespace

SweepRecord optimize_point(Variant variant, const ProtocolConfig& config,
                           const ChannelModel& channel, const SearchGrid& grid, int threads) {
    const Candidate best = optimize_impl(variant, config, channel, grid, threads, nullptr);
    return to_record(variant, best, config, channel);
}

std::vector<SweepRecord> loss_sweep(Variant variant, const std::vector<double>& alphas,
                                    const std::vector<double>& loss_grid_db,
                                    double excess_noise, const FixedProtocolParams& fixed,
                                    const SearchGrid& grid, int threads) {
    std::vector<SweepRecord> records;
    records.reserve(alphas.size() * loss_grid_db.size());
    for (const double alpha : alphas) {
        ProtocolConfig cfg;
        cfg.alpha = alpha;
        cfg.theta = fixed.theta;
        cfg.phase_noise = fixed.sigma;
        cfg.reconciliation = fixed.beta;

        bool have_hint = false;
        Candidate hint;
        for (const double loss : loss_grid_db) {
            const ChannelModel channel = ChannelModel::from_loss_db(loss, excess_noise);
            SweepRecord rec;
            try {
                const Candidate best = optimize_impl(variant, cfg, channel, grid, threads,
                                                     have_hint ? &hint : nullptr);
                rec = to_record(variant, best, cfg, channel);
                hint = best;
                have_hint = true;
            } catch (const Error&) {
                rec.loss_db = loss;
                rec.alpha = alpha;
                rec.variant = variant;
                rec.failed = true;
                rec.key_rate = 0.0;
                rec.plob = channel.transmissivity < 1.0
                               ? plob_bound(channel.transmissivity)
                               : std::numeric_limits<double>::infinity();
                have_hint = false;
            }
            records.push_back(rec);
        }
    }
    return records;
}

std::vector<std::vector<PhotonBudgetResult>> photon_landscape(
    const ChannelModel& channel, const std::vector<double>& k0_list,
    const std::vector<double>& ec0_list, const FixedProtocolParams& fixed,
    const SearchGrid& grid, int threads) {
    std::vector<std::vector<PhotonBudgetResult>> matrix(
        k0_list.size(), std::vector<PhotonBudgetResult>(ec0_list.size()));
    const std::size_t n = k0_list.size() * ec0_list.size();
    parallel_for(n, threads, [&](std::size_t k) {
        const std::size_t i = k / ec0_list.size();
        const std::size_t j = k % ec0_list.size();
        QosTarget qos{k0_list[i], ec0_list[j]};
        matrix[i][j] = min_photon_search(channel, qos, fixed, grid, 1);
    });
    return matrix;
}

}  // namespace sqcc
