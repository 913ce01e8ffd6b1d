#include <doctest.h>

#include <cmath>
#include <random>

#include "sqcc/baseline.hpp"
#include "sqcc/errors.hpp"
#include "sqcc/nla_ideal.hpp"

using namespace sqcc;

namespace {

ProtocolConfig make_config(double v, double alpha, double sigma = 0.0, double beta = 0.95) {
    ProtocolConfig cfg;
    cfg.variance = v;
    cfg.alpha = alpha;
    cfg.phase_noise = sigma;
    cfg.reconciliation = beta;
    return cfg;
}

}  // namespace

TEST_CASE("unit gain is the identity map") {
    std::mt19937 rng(411);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double v = 1.01 + 3.0 * u(rng);
        const double alpha = 0.5 * u(rng);
        const double t = 0.05 + 0.9 * u(rng);
        const double eps = 0.1 * u(rng);
        const ProtocolConfig cfg = make_config(v, alpha, 1e-6);
        const ChannelModel ch = ChannelModel::from_transmissivity(t, eps);

        const EffectiveParams p = effective_params(cfg, ch, 1.0);
        CHECK(p.variance_eff == doctest::Approx(v).epsilon(1e-12));
        CHECK(p.transmissivity_eff == doctest::Approx(t).epsilon(1e-12));
        CHECK(p.excess_noise_eff ==
              doctest::Approx(ch.excess_noise).epsilon(1e-9).scale(1.0));
        CHECK(p.alpha_eff == doctest::Approx(alpha).epsilon(1e-12));

        CHECK(ideal_ber(cfg, ch, 1.0) == doctest::Approx(ber(cfg, ch)).epsilon(1e-12));
        CHECK(std::abs(ideal_key_rate(cfg, ch, 1.0).key_rate -
                       sqcc_key_rate(cfg, ch).key_rate) < 1e-12);
    }
}

TEST_CASE("zero displacement keeps the primed displacement at zero") {
    const ProtocolConfig cfg = make_config(1.3, 0.0);
    const ChannelModel ch = ChannelModel::from_transmissivity(0.5, 0.02);
    const EffectiveParams p = effective_params(cfg, ch, 1.8);
    CHECK(p.alpha_eff == 0.0);
    CHECK(ideal_ber(cfg, ch, 1.8) == doctest::Approx(0.5));
    // the amplifier re-shapes the channel
    CHECK(p.transmissivity_eff > ch.transmissivity);
    CHECK(p.variance_eff > cfg.variance);
}

TEST_CASE("effective channel parameters do not depend on the source variance") {
    // the amplifier composed with the channel acts on the coherent-state
    // ensemble, so T' and eps' are source-independent
    const ChannelModel ch = ChannelModel::from_transmissivity(0.4, 0.05);
    const EffectiveParams p1 = effective_params(make_config(1.2, 0.0), ch, 1.5);
    const EffectiveParams p2 = effective_params(make_config(2.6, 0.0), ch, 1.5);
    CHECK(p1.transmissivity_eff == doctest::Approx(p2.transmissivity_eff).epsilon(1e-12));
    CHECK(p1.excess_noise_eff == doctest::Approx(p2.excess_noise_eff).epsilon(1e-10));
    CHECK(p1.variance_eff != doctest::Approx(p2.variance_eff));
}

TEST_CASE("gain domain boundary throws rather than returning junk") {
    // large thermal occupation makes g^n non-normalizable beyond a finite gain
    const ProtocolConfig cfg = make_config(5.0, 0.0);
    const ChannelModel ch = ChannelModel::from_transmissivity(0.9, 0.5);
    bool hit_domain_edge = false;
    for (double g = 1.0; g < 50.0; g *= 1.3) {
        try {
            (void)effective_params(cfg, ch, g);
        } catch (const GainOutOfDomain&) {
            hit_domain_edge = true;
            break;
        }
    }
    CHECK(hit_domain_edge);
    CHECK_THROWS_AS((void)effective_params(cfg, ch, 0.5), DomainError);
}

TEST_CASE("amplified rate beats the baseline when the gain is optimized") {
    const ProtocolConfig cfg = make_config(1.6, 0.05, 1e-6);
    const ChannelModel ch = ChannelModel::from_loss_db(20.0, 0.03);
    const double base = sqcc_key_rate(cfg, ch).key_rate;
    double best = 0.0;
    for (double g = 1.0; g < 40.0; g *= 1.12) {
        try {
            best = std::max(best, ideal_key_rate(cfg, ch, g).key_rate);
        } catch (const GainOutOfDomain&) {
            break;
        }
    }
    CHECK(best >= base);  // g = 1 is always in the feasible set
    CHECK(best > base);   // and amplification helps at 20 dB
}

TEST_CASE("success probability is 1/g^2") {
    const ProtocolConfig cfg = make_config(1.3, 0.1, 1e-6);
    const ChannelModel ch = ChannelModel::from_loss_db(10.0, 0.01);
    for (double g : {1.0, 2.0, 5.0}) {
        CHECK(ideal_key_rate(cfg, ch, g).success_prob == doctest::Approx(1.0 / (g * g)));
    }
}

TEST_CASE("saturation diagnostics: g^2 T and K/T approach constants") {
    // with g scaled as g = sqrt(G/T), the equivalent channel freezes and the
    // rate becomes proportional to T
    const double g2t = 0.3;
    double prev_teff = -1.0, prev_kt = -1.0;
    for (double loss = 40.0; loss <= 60.0; loss += 10.0) {
        const ChannelModel ch = ChannelModel::from_loss_db(loss, 0.03);
        const double g = std::sqrt(g2t / ch.transmissivity);
        const ProtocolConfig cfg = make_config(1.8, 0.12, 1e-6);
        const EffectiveParams p = effective_params(cfg, ch, g);
        const double k = ideal_key_rate(cfg, ch, g).key_rate;
        if (prev_teff > 0.0) {
            CHECK(p.transmissivity_eff == doctest::Approx(prev_teff).epsilon(1e-3));
            CHECK(k / ch.transmissivity == doctest::Approx(prev_kt).epsilon(0.05));
        }
        prev_teff = p.transmissivity_eff;
        prev_kt = k / ch.transmissivity;
    }
}
