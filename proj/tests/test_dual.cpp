#include <doctest.h>

#include <cmath>

#include "sqcc/dual.hpp"
#include "sqcc/nla_scissor.hpp"

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

TEST_CASE("tap ber edge cases") {
    const ChannelModel ch = ChannelModel::from_loss_db(10.0, 0.03);
    CHECK(tap_ber(make_config(1.2, 5.0), ch, 1.0) == doctest::Approx(0.5));
    CHECK(tap_ber(make_config(1.2, 0.0), ch, 0.9) == doctest::Approx(0.5));
}

TEST_CASE("tap ber far below underflow is representable in log space") {
    const ChannelModel ch = ChannelModel::from_loss_db(60.0, 0.03);
    const ProtocolConfig cfg = make_config(1.2, 1e6);
    const double lb = tap_log_ber(cfg, ch, 0.99);
    CHECK(lb < std::log(1e-9));
    CHECK(tap_ber(cfg, ch, 0.99) < 1e-9);
}

TEST_CASE("tap ber is nonincreasing in alpha and in the tapped fraction") {
    const ChannelModel ch = ChannelModel::from_loss_db(10.0, 0.03);
    double prev = 0.6;
    for (double a : {0.0, 0.5, 1.0, 5.0, 20.0}) {
        const double e = tap_ber(make_config(1.5, a), ch, 0.9);
        CHECK(e <= prev + 1e-15);
        prev = e;
    }
    prev = 0.6;
    for (double t : {0.999, 0.99, 0.9, 0.7, 0.5}) {
        const double e = tap_ber(make_config(1.5, 2.0), ch, t);
        CHECK(e <= prev + 1e-15);
        prev = e;
    }
}

TEST_CASE("degenerate tap reduces to the plain amplified protocol") {
    const ChannelModel ch = ChannelModel::from_loss_db(25.0, 0.03);
    const ProtocolConfig cfg = make_config(1.15, 0.0);
    const RateReport dual = dual_key_rate(cfg, ch, 6.0, 1.0);
    const RateReport plain = scissor_key_rate(cfg, ch, 6.0);
    CHECK(dual.key_rate == doctest::Approx(plain.key_rate).epsilon(1e-14));
    CHECK(dual.success_prob == doctest::Approx(plain.success_prob).epsilon(1e-14));
}

TEST_CASE("exact decode equals the zero-displacement protocol at t T") {
    // with sigma = 0 and enormous alpha the tap decodes perfectly, so the
    // retained arm is exactly the zero-mean protocol through t*T
    for (double eps0 : {0.0, 0.03}) {
        for (double loss : {0.0, 20.0, 40.0, 60.0}) {
            for (double t : {0.999999, 0.99, 0.8}) {
                const ChannelModel ch = ChannelModel::from_loss_db(loss, eps0);
                const ProtocolConfig cfg = make_config(1.2, 1e12);
                const double g = 4.0;
                const RateReport dual = dual_key_rate(cfg, ch, g, t);
                const ChannelModel eff = ChannelModel::from_transmissivity(
                    t * ch.transmissivity, eps0);
                const RateReport ref = scissor_key_rate(make_config(1.2, 0.0), eff, g);
                CHECK(dual.key_rate == doctest::Approx(ref.key_rate).epsilon(1e-12));
                CHECK(dual.ber == 0.0);
                CHECK(dual.ber_noise == 0.0);
            }
        }
    }
}

TEST_CASE("rate is continuous in the tap transmissivity") {
    const ChannelModel ch = ChannelModel::from_loss_db(30.0, 0.03);
    const ProtocolConfig cfg = make_config(1.2, 1e12);
    double prev = dual_key_rate(cfg, ch, 8.0, 0.90).key_rate;
    for (double t = 0.902; t <= 0.9999; t += 0.002) {
        const double k = dual_key_rate(cfg, ch, 8.0, t).key_rate;
        CHECK(std::abs(k - prev) < 0.05 * std::max({k, prev, 1e-12}));
        prev = k;
    }
}

TEST_CASE("moderate alpha folds residual decode noise into the channel") {
    const ChannelModel ch = ChannelModel::from_loss_db(10.0, 0.0);
    const ProtocolConfig cfg = make_config(1.2, 1.0);
    const double t = 0.9;
    const RateReport rep = dual_key_rate(cfg, ch, 3.0, t);
    const double e_tap = tap_ber(cfg, ch, t);
    CHECK(rep.ber == doctest::Approx(e_tap));
    // the retained-arm channel carries the extra excess noise 4 a^2 e_tap
    const ChannelModel eff = ChannelModel::from_transmissivity(
        t * ch.transmissivity, 4.0 * cfg.alpha * cfg.alpha * e_tap);
    const RateReport ref = scissor_key_rate(make_config(1.2, 0.0), eff, 3.0);
    CHECK(rep.key_rate == doctest::Approx(ref.key_rate).epsilon(1e-12));
    CHECK(rep.ber_noise ==
          doctest::Approx(4.0 * t * ch.transmissivity * cfg.alpha * cfg.alpha * e_tap));
}
