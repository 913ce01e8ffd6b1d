#include "sqcc/oracle_suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "sqcc/baseline.hpp"
#include "sqcc/errors.hpp"
#include "sqcc/fock.hpp"
#include "sqcc/nla_ideal.hpp"
#include "sqcc/nla_scissor.hpp"
#include "sqcc/parallel.hpp"

namespace sqcc {

namespace {

double rel_dev(double x, double y) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-12});
}

struct DevTracker {
    std::vector<double> devs;
    double max() const {
        double m = 0.0;
        for (double d : devs) m = std::max(m, d);
        return m;
    }
};

struct ScissorFockResult {
    double prob1 = 0.0, prob2 = 0.0;
    double d = 0.0, b = 1.0, a = 1.0, c = 0.0;
};

ScissorFockResult run_scissor_circuit(const ProtocolConfig& cfg, const ChannelModel& ch,
                                      double gain, int dim) {
    const double lam = std::sqrt((cfg.variance - 1.0) / (cfg.variance + 1.0));
    const int da = dim;
    const int db = dim + 2;
    const int d_bob = 12 + std::max(0, dim - 20);
    const int d_env2 = 6;

    fock::FockTensor tm = fock::build_tmsv(lam, da);
    // widen the transmitted mode for displacement headroom
    fock::FockTensor st = fock::vacuum({da, db});
    st.amp.setZero();
    for (int n = 0; n < da; ++n) st.amp(n * static_cast<long>(db) + n) = tm.amp(n * da + n);
    st.normalize();

    fock::displace(st, 1, cfg.alpha * std::exp(std::complex<double>(0, cfg.theta)));

    ChannelModel eff = ch;
    eff.excess_noise = total_excess_noise(cfg, ch);  // fold phase noise into the bath
    const int bob = fock::thermal_loss(st, 1, eff, d_bob);
    (void)d_env2;

    const double tau = gain_to_tau(gain);
    fock::ScissorOutcome out = fock::scissor_apply(st, bob, tau);

    const fock::GaussianMoments m = fock::moments(out.state_on_off);
    const int out_mode = out.state_on_off.n_modes() - 1;
    ScissorFockResult res;
    res.prob1 = out.prob_on_off;
    res.prob2 = out.prob_off_on;
    res.d = std::hypot(m.mean(2 * out_mode), m.mean(2 * out_mode + 1));
    res.b = m.cov(2 * out_mode, 2 * out_mode);
    res.a = m.cov(0, 0);
    res.c = std::abs(m.cov(0, 2 * out_mode));
    return res;
}

}  // namespace

OracleReport oracle_check_scissor(int dim, int dim_step, double tol_pdb, double tol_ac,
                                  int threads) {
    const std::vector<double> alphas{0.0, 0.06, 0.12};
    const std::vector<double> gains{1.0, 3.0, 10.0};
    const std::vector<double> losses{10.0, 30.0, 50.0};
    const std::vector<double> variances{1.05, 1.2};

    struct Point {
        double alpha, gain, loss, variance;
    };
    std::vector<Point> grid;
    for (double a : alphas)
        for (double g : gains)
            for (double l : losses)
                for (double v : variances) grid.push_back({a, g, l, v});

    struct PointDevs {
        double p = 0, d2 = 0, b = 0, a = 0, c = 0, sym = 0, conv = 0;
        bool failed = false;
    };
    std::vector<PointDevs> devs(grid.size());

    parallel_for(grid.size(), threads, [&](std::size_t i) {
        const Point& pt = grid[i];
        ProtocolConfig cfg;
        cfg.variance = pt.variance;
        cfg.alpha = pt.alpha;
        cfg.phase_noise = 1e-6;
        cfg.reconciliation = 0.95;
        const ChannelModel ch = ChannelModel::from_loss_db(pt.loss, 0.03);
        try {
            const ScissorMoments an = scissor_moments(cfg, ch, pt.gain);
            const ScissorFockResult lo = run_scissor_circuit(cfg, ch, pt.gain, dim);
            const ScissorFockResult hi = run_scissor_circuit(cfg, ch, pt.gain, dim + dim_step);

            // truncation convergence gate before any comparison counts
            double conv = rel_dev(lo.prob1, hi.prob1);
            conv = std::max(conv, rel_dev(lo.b, hi.b));
            conv = std::max(conv, rel_dev(lo.a, hi.a));
            devs[i].conv = conv;

            devs[i].p = rel_dev(an.success_prob, hi.prob1);
            devs[i].d2 = rel_dev(an.displacement * an.displacement, hi.d * hi.d);
            devs[i].b = rel_dev(an.bob_variance, hi.b);
            devs[i].a = rel_dev(an.alice_variance, hi.a);
            devs[i].c = rel_dev(an.correlation, hi.c);
            devs[i].sym = rel_dev(hi.prob1, hi.prob2);
        } catch (const Error&) {
            devs[i].failed = true;
        }
    });

    OracleReport report;
    report.suite = "scissor";
    double mp = 0, md = 0, mb = 0, ma = 0, mc = 0, ms = 0, mconv = 0;
    bool any_failed = false;
    for (const auto& d : devs) {
        if (d.failed) {
            any_failed = true;
            continue;
        }
        mp = std::max(mp, d.p);
        md = std::max(md, d.d2);
        mb = std::max(mb, d.b);
        ma = std::max(ma, d.a);
        mc = std::max(mc, d.c);
        ms = std::max(ms, d.sym);
        mconv = std::max(mconv, d.conv);
    }
    report.entries = {
        {"success_prob", mp, tol_pdb, mp < tol_pdb},
        {"displacement_sq", md, tol_pdb, md < tol_pdb},
        {"bob_variance", mb, tol_pdb, mb < tol_pdb},
        {"alice_variance", ma, tol_ac, ma < tol_ac},
        {"correlation", mc, tol_ac, mc < tol_ac},
        {"pattern_symmetry", ms, 1e-10, ms < 1e-10},
        {"truncation_convergence", mconv, tol_pdb, mconv < tol_pdb},
    };
    report.pass = !any_failed;
    for (const auto& e : report.entries) report.pass = report.pass && e.pass;
    return report;
}

OracleReport oracle_check_ideal_nla(int dim, int dim_step, double tol, unsigned seed,
                                    int n_points, int threads) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    struct Point {
        double variance, alpha, gain, t, eps0;
    };
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n_points) {
        Point p;
        p.variance = 1.02 + 0.48 * u01(rng);
        p.alpha = 0.3 * u01(rng);
        p.gain = 1.0 + u01(rng);
        p.t = 0.2 + 0.75 * u01(rng);
        p.eps0 = 0.1 * u01(rng);
        ProtocolConfig cfg;
        cfg.variance = p.variance;
        cfg.alpha = p.alpha;
        try {
            const EffectiveParams ep =
                effective_params(cfg, ChannelModel::from_transmissivity(p.t, p.eps0), p.gain);
            if (ep.variance_eff > 2.2) continue;  // keep truncation controlled
        } catch (const Error&) {
            continue;
        }
        pts.push_back(p);
    }

    struct PointDevs {
        double a = 0, b = 0, c = 0, mean = 0, conv = 0;
        bool failed = false;
    };
    std::vector<PointDevs> devs(pts.size());

    auto run_circuit = [](const Point& p, int da) {
        const double lam = std::sqrt((p.variance - 1.0) / (p.variance + 1.0));
        const int db = da + 2;
        fock::FockTensor tm = fock::build_tmsv(lam, da);
        fock::FockTensor st = fock::vacuum({da, db});
        st.amp.setZero();
        for (int n = 0; n < da; ++n)
            st.amp(n * static_cast<long>(db) + n) = tm.amp(n * static_cast<long>(da) + n);
        st.normalize();
        fock::displace(st, 1, p.alpha);
        const ChannelModel ch = ChannelModel::from_transmissivity(p.t, p.eps0);
        const int bob = fock::thermal_loss(st, 1, ch, da);
        fock::ideal_nla_apply(st, bob, p.gain);
        const fock::GaussianMoments m = fock::moments(st);
        struct {
            double a, b, c, xb;
        } r{m.cov(0, 0), m.cov(2 * bob, 2 * bob), m.cov(0, 2 * bob), m.mean(2 * bob)};
        return r;
    };

    parallel_for(pts.size(), threads, [&](std::size_t i) {
        const Point& p = pts[i];
        ProtocolConfig cfg;
        cfg.variance = p.variance;
        cfg.alpha = p.alpha;
        const ChannelModel ch = ChannelModel::from_transmissivity(p.t, p.eps0);
        try {
            const EffectiveParams ep = effective_params(cfg, ch, p.gain);
            const double tp = ep.transmissivity_eff;
            const double a_pred = ep.variance_eff;
            const double b_pred = tp * (ep.variance_eff - 1.0 + ep.excess_noise_eff) + 1.0;
            const double c_pred =
                std::sqrt(tp * (ep.variance_eff * ep.variance_eff - 1.0));
            const double xb_pred = 2.0 * std::sqrt(tp) * ep.alpha_eff;

            const auto lo = run_circuit(p, dim);
            const auto hi = run_circuit(p, dim + dim_step);
            double conv = std::max({rel_dev(lo.a, hi.a), rel_dev(lo.b, hi.b),
                                    rel_dev(std::abs(lo.c), std::abs(hi.c))});
            devs[i].conv = conv;
            devs[i].a = rel_dev(a_pred, hi.a);
            devs[i].b = rel_dev(b_pred, hi.b);
            devs[i].c = rel_dev(c_pred, std::abs(hi.c));
            devs[i].mean = rel_dev(xb_pred, std::abs(hi.xb));
        } catch (const Error&) {
            devs[i].failed = true;
        }
    });

    OracleReport report;
    report.suite = "ideal-nla";
    double ma = 0, mb = 0, mc = 0, mm = 0, mconv = 0;
    bool any_failed = false;
    for (const auto& d : devs) {
        if (d.failed) {
            any_failed = true;
            continue;
        }
        ma = std::max(ma, d.a);
        mb = std::max(mb, d.b);
        mc = std::max(mc, d.c);
        mm = std::max(mm, d.mean);
        mconv = std::max(mconv, d.conv);
    }
    report.entries = {
        {"alice_variance", ma, tol, ma < tol},
        {"bob_variance", mb, tol, mb < tol},
        {"correlation", mc, tol, mc < tol},
        {"bob_displacement", mm, tol, mm < tol},
        {"truncation_convergence", mconv, tol, mconv < tol},
    };
    report.pass = !any_failed;
    for (const auto& e : report.entries) report.pass = report.pass && e.pass;
    return report;
}

namespace {

// |eig(i Omega V)| for the 4x4 block covariance built from (a, b, c)
std::pair<double, double> symplectic_via_eigensolver(const TwoModeCovariance& cov) {
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    v(0, 0) = v(1, 1) = cov.a;
    v(2, 2) = v(3, 3) = cov.b;
    v(0, 2) = v(2, 0) = cov.c;
    v(1, 3) = v(3, 1) = -cov.c;
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    Eigen::Matrix4cd m = std::complex<double>(0, 1) * (omega * v).cast<std::complex<double>>();
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(m);
    std::vector<double> mags;
    for (int i = 0; i < 4; ++i) mags.push_back(std::abs(solver.eigenvalues()(i)));
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    return {(mags[0] + mags[1]) / 2.0, (mags[2] + mags[3]) / 2.0};
}

}  // namespace

OracleReport oracle_check_gaussian_core(unsigned seed, int n_cov, double tol, int threads) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::vector<TwoModeCovariance> covs(n_cov);
    for (auto& cov : covs) {
        // two-mode squeezed thermal states cover the physical (a, b, c) space
        const double nu1 = 1.0 + 7.0 * u01(rng);
        const double nu2 = 1.0 + 7.0 * u01(rng);
        const double r = 2.0 * u01(rng);
        const double ch = std::cosh(r), sh = std::sinh(r);
        cov.a = nu1 * ch * ch + nu2 * sh * sh;
        cov.b = nu1 * sh * sh + nu2 * ch * ch;
        cov.c = (nu1 + nu2) * ch * sh;
    }

    std::vector<double> dev_sym(covs.size(), 0.0);
    parallel_for(covs.size(), threads, [&](std::size_t i) {
        const auto closed = symplectic_eigenvalues(covs[i]);
        const auto eig = symplectic_via_eigensolver(covs[i]);
        dev_sym[i] =
            std::max(rel_dev(closed.first, eig.first), rel_dev(closed.second, eig.second));
    });
    double msym = 0.0;
    for (double d : dev_sym) msym = std::max(msym, d);

    // thermal-mode entropy against a diagonal density operator
    const double g_target = entropy_g(10.0);
    const double g_fock = fock::von_neumann_entropy_bits(fock::thermal_state(400, 10.0));
    const double dev_entropy = rel_dev(g_target, g_fock);

    // Holevo bound against a purified channel simulation at one spot point:
    // chi = S(rho_AB) - S(rho_A | Bob heterodyne outcome 0)
    double dev_holevo = 0.0;
    {
        ProtocolConfig cfg;
        cfg.variance = 2.0;
        const ChannelModel ch = ChannelModel::from_transmissivity(0.6, 0.05);
        const double chi_closed = holevo_bound(channel_cov(cfg, ch));

        const double lam = std::sqrt((cfg.variance - 1.0) / (cfg.variance + 1.0));
        fock::FockTensor st = fock::build_tmsv(lam, 22);
        const int bob = fock::thermal_loss(st, 1, ch, 8);
        const double s_ab = fock::von_neumann_entropy_bits(fock::partial_trace(st, {0, bob}));
        fock::FockTensor cond = fock::heterodyne_project(st, bob, 0.0);
        cond.normalize();
        const double s_a = fock::von_neumann_entropy_bits(fock::partial_trace(cond, {0}));
        dev_holevo = rel_dev(chi_closed, s_ab - s_a);
    }

    OracleReport report;
    report.suite = "gaussian-core";
    report.entries = {
        {"symplectic_eigenvalues", msym, tol, msym < tol},
        {"thermal_entropy", dev_entropy, 1e-10, dev_entropy < 1e-10},
        {"holevo_purification", dev_holevo, 1e-5, dev_holevo < 1e-5},
    };
    report.pass = true;
    for (const auto& e : report.entries) report.pass = report.pass && e.pass;
    return report;
}

}  // namespace sqcc
