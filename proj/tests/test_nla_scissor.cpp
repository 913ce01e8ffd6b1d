#include <doctest.h>

#include <cmath>

#include "sqcc/baseline.hpp"
#include "sqcc/errors.hpp"
#include "sqcc/gaussian.hpp"
#include "sqcc/nla_scissor.hpp"

using namespace sqcc;

namespace {

ProtocolConfig make_config(double v, double alpha, double sigma = 1e-6, double beta = 0.95,
                           double theta = 0.0) {
    ProtocolConfig cfg;
    cfg.variance = v;
    cfg.alpha = alpha;
    cfg.phase_noise = sigma;
    cfg.reconciliation = beta;
    cfg.theta = theta;
    return cfg;
}

// the heralding probability and displacement in their published form, with
// the displacement symbol substituted by the arriving quadrature value
// x^2 = 4 T alpha^2; numerically safe only for moderate arguments, used here
// to pin the production implementation against an independent transcription
double published_success_prob(double v, double t, double eps, double alpha, double g) {
    const double tau = 1.0 / (1.0 + g * g);
    const double r = 2.0 + t * (v + eps - 1.0);
    const double s = 2.0 + r;
    const double a2 = 4.0 * t * alpha * alpha;
    return 4.0 * std::exp(-a2 / (2.0 * s)) * (tau * (a2 - 2.0 * s) + s * s) / (s * s * s) -
           2.0 * (1.0 - tau) * std::exp(-a2 / (2.0 * r)) / r;
}

double published_displacement_sq(double v, double t, double eps, double alpha, double g) {
    const double tau = 1.0 / (1.0 + g * g);
    const double r = 2.0 + t * (v + eps - 1.0);
    const double s = 2.0 + r;
    const double a2 = 4.0 * t * alpha * alpha;
    const double den = 2.0 * r * (tau * (a2 - 2.0 * s) + s * s) * std::exp(a2 / (2.0 * r)) -
                       s * s * s * (1.0 - tau) * std::exp(a2 / (2.0 * s));
    return 16.0 * a2 * (1.0 - tau) * tau * r * r * s * s * std::exp(a2 / r) / (den * den);
}

}  // namespace

TEST_CASE("gain to tau") {
    CHECK(gain_to_tau(1.0) == doctest::Approx(0.5));
    CHECK(gain_to_tau(2.0) == doctest::Approx(0.2));
    CHECK(gain_to_tau(22.0) == doctest::Approx(2.0648e-3).epsilon(1e-4));
    CHECK_THROWS_AS((void)gain_to_tau(0.0), DomainError);
    // round trip with the point constructor
    const auto pt = make_scissor_point(make_config(1.2, 0.0),
                                       ChannelModel::from_transmissivity(0.5, 0.0), 3.0);
    CHECK(pt.gain * pt.gain * pt.tau == doctest::Approx(1.0 - pt.tau).epsilon(1e-12));
    CHECK(pt.s_param == doctest::Approx(pt.r_param + 2.0));
}

TEST_CASE("heralding probability at the balanced vacuum point") {
    // V=1, eps=0, T=1 gives R=2, S=4; the probability is tau/2
    const ChannelModel unity = ChannelModel::from_transmissivity(1.0, 0.0);
    const auto pt = make_scissor_point(make_config(1.0, 0.0, 0.0), unity, 1.0);
    CHECK(pt.r_param == doctest::Approx(2.0));
    CHECK(pt.s_param == doctest::Approx(4.0));
    CHECK(scissor_success_prob(0.0, pt) == doctest::Approx(0.25).epsilon(1e-14));
    for (double g : {0.5, 1.5, 4.0, 22.0}) {
        const auto p = make_scissor_point(make_config(1.0, 0.0, 0.0), unity, g);
        CHECK(scissor_success_prob(0.0, p) == doctest::Approx(p.tau / 2.0).epsilon(1e-14));
    }
}

TEST_CASE("production statistics equal the published closed forms") {
    for (double loss : {5.0, 10.0, 30.0}) {
        for (double alpha : {0.0, 0.06, 0.12, 0.24}) {
            for (double g : {1.0, 2.0, 5.0, 10.0}) {
                const double v = 1.15;
                const ChannelModel ch = ChannelModel::from_loss_db(loss, 0.03);
                const ProtocolConfig cfg = make_config(v, alpha);
                const double eps = total_excess_noise(cfg, ch);
                const auto m = scissor_moments(cfg, ch, g);
                const double p_ref =
                    published_success_prob(v, ch.transmissivity, eps, alpha, g);
                const double d2_ref =
                    published_displacement_sq(v, ch.transmissivity, eps, alpha, g);
                CHECK(m.success_prob == doctest::Approx(p_ref).epsilon(1e-11));
                CHECK(m.displacement * m.displacement ==
                      doctest::Approx(d2_ref).epsilon(1e-10).scale(1e-12));
            }
        }
    }
}

TEST_CASE("displacement vanishes at alpha = 0 and at the tau edges") {
    const ChannelModel ch = ChannelModel::from_loss_db(10.0, 0.03);
    CHECK(scissor_moments(make_config(1.2, 0.0), ch, 3.0).displacement == 0.0);
    // (1 - tau) tau prefactor kills the displacement at both edges
    const double d_lo = scissor_moments(make_config(1.2, 0.1), ch, 1e3).displacement;
    const double d_mid = scissor_moments(make_config(1.2, 0.1), ch, 3.0).displacement;
    CHECK(d_lo < d_mid);
}

TEST_CASE("output variance depends on theta only through cos^2") {
    const ChannelModel ch = ChannelModel::from_loss_db(10.0, 0.03);
    const double b0 = scissor_moments(make_config(1.2, 0.12), ch, 3.0).bob_variance;
    for (double theta : {0.1, 0.7, 1.2}) {
        const auto mt = scissor_moments(make_config(1.2, 0.12, 1e-6, 0.95, theta), ch, 3.0);
        const auto mt_ref =
            scissor_moments(make_config(1.2, 0.12, 1e-6, 0.95, M_PI - theta), ch, 3.0);
        CHECK(mt.bob_variance == doctest::Approx(mt_ref.bob_variance).epsilon(1e-14));
        const auto m0 = scissor_moments(make_config(1.2, 0.12), ch, 3.0);
        const double d2 = m0.displacement * m0.displacement;
        CHECK(mt.bob_variance ==
              doctest::Approx(b0 + d2 * (1.0 - std::cos(theta) * std::cos(theta)))
                  .epsilon(1e-10));
    }
}

TEST_CASE("scissor ber") {
    ScissorMoments m;
    m.displacement = 0.0;
    m.bob_variance = 1.3;
    CHECK(scissor_ber(m) == doctest::Approx(0.5));
    m.displacement = 0.5;
    CHECK(scissor_ber(m) < 0.5);
}

TEST_CASE("heralded statistics stay physical across the operating box") {
    for (double loss : {0.0, 10.0, 30.0, 60.0}) {
        for (double v : {1.01, 1.2, 3.0, 10.0}) {
            for (double g : {1.0, 3.0, 20.0, 90.0}) {
                for (double alpha : {0.0, 0.1, 0.29}) {
                    const ChannelModel ch = ChannelModel::from_loss_db(loss, 0.03);
                    const ProtocolConfig cfg = make_config(v, alpha);
                    const auto m = scissor_moments(cfg, ch, g);
                    CHECK(m.success_prob > 0.0);
                    CHECK(m.success_prob <= 1.0);
                    CHECK(m.bob_variance > 0.0);
                    const double eps_ber = 4.0 * m.displacement * m.displacement *
                                           scissor_ber(m);
                    const TwoModeCovariance cov{m.alice_variance,
                                                m.bob_variance +
                                                    ch.transmissivity * eps_ber,
                                                m.correlation};
                    CHECK(is_physical(cov, 1e-7));
                }
            }
        }
    }
}

TEST_CASE("rate never exceeds the heralded mutual-information ceiling") {
    for (double loss : {5.0, 25.0, 45.0}) {
        for (double g : {1.0, 4.0, 15.0}) {
            const ChannelModel ch = ChannelModel::from_loss_db(loss, 0.03);
            const ProtocolConfig cfg = make_config(1.3, 0.1);
            const RateReport rep = scissor_key_rate(cfg, ch, g);
            CHECK(rep.key_rate <= 2.0 * rep.success_prob * cfg.reconciliation *
                                          rep.mutual_information +
                                      1e-15);
        }
    }
}

TEST_CASE("enormous displacements raise the underflow signal") {
    const ChannelModel unity = ChannelModel::from_transmissivity(1.0, 0.0);
    CHECK_THROWS_AS((void)scissor_moments(make_config(1.1, 80.0, 0.0), unity, 2.0),
                    NumericUnderflow);
}

TEST_CASE("report carries the heralding probability and ber noise") {
    const ChannelModel ch = ChannelModel::from_loss_db(20.0, 0.03);
    const ProtocolConfig cfg = make_config(1.1, 0.12);
    const RateReport rep = scissor_key_rate(cfg, ch, 5.0);
    const auto m = scissor_moments(cfg, ch, 5.0);
    CHECK(rep.success_prob == doctest::Approx(m.success_prob));
    CHECK(rep.ber == doctest::Approx(scissor_ber(m)));
    CHECK(rep.ber_noise ==
          doctest::Approx(4.0 * m.displacement * m.displacement * rep.ber));
}
