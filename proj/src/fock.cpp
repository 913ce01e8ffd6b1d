#include "sqcc/fock.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "sqcc/errors.hpp"

namespace sqcc::fock {

namespace {

constexpr double kNormTol = 1e-10;

std::vector<long> strides_of(const std::vector<int>& dims) {
    std::vector<long> s(dims.size());
    long acc = 1;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        s[i] = acc;
        acc *= dims[i];
    }
    return s;
}

// <m| D(alpha) |n> via the associated-Laguerre closed form.
Eigen::MatrixXcd displacement_matrix(int dim, cplx alpha) {
    Eigen::MatrixXcd d(dim, dim);
    const double x = std::norm(alpha);
    const double pre = std::exp(-x / 2.0);
    for (int n = 0; n < dim; ++n) {
        for (int m = 0; m < dim; ++m) {
            const int lo = std::min(m, n);
            const int k = std::abs(m - n);
            double lag = 1.0;
            if (lo >= 1) {
                double lprev = 1.0;
                double lcur = 1.0 + k - x;
                lag = lcur;
                for (int j = 1; j < lo; ++j) {
                    const double lnext =
                        ((2.0 * j + 1.0 + k - x) * lcur - (j + k) * lprev) / (j + 1.0);
                    lprev = lcur;
                    lcur = lnext;
                    lag = lnext;
                }
            }
            const double ratio =
                std::exp(0.5 * (std::lgamma(lo + 1.0) - std::lgamma(std::max(m, n) + 1.0)));
            cplx pow_amp = 1.0;
            if (m >= n) {
                for (int j = 0; j < k; ++j) pow_amp *= alpha;
            } else {
                for (int j = 0; j < k; ++j) pow_amp *= -std::conj(alpha);
            }
            d(m, n) = pre * ratio * pow_amp * lag;
        }
    }
    return d;
}

// Beamsplitter matrix on the truncated two-mode space.
// Convention: U a1+ U+ = t a1+ + r a2+, U a2+ U+ = -r a1+ + t a2+, i.e. a
// coherent pair |b1,b2> maps to |t b1 - r b2, r b1 + t b2>.
Eigen::MatrixXd bs_full(int d1, int d2, double t_amp) {
    const double r = std::sqrt(std::max(0.0, 1.0 - t_amp * t_amp));
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(d1 * d2, d1 * d2);
    std::vector<double> lfact(d1 + d2 + 1);
    for (int i = 0; i <= d1 + d2; ++i) lfact[i] = std::lgamma(i + 1.0);
    for (int j = 0; j < d1; ++j) {
        for (int k = 0; k < d2; ++k) {
            const int n_tot = j + k;
            for (int l = 0; l <= j; ++l) {
                for (int lp = 0; lp <= k; ++lp) {
                    const int m = l + lp;
                    const int n = n_tot - m;
                    if (m >= d1 || n >= d2) continue;
                    const double lbin = lfact[j] - lfact[l] - lfact[j - l] + lfact[k] -
                                        lfact[lp] - lfact[k - lp];
                    const double coeff = std::exp(lbin) * std::pow(t_amp, l) *
                                         std::pow(r, j - l) * std::pow(-r, lp) *
                                         std::pow(t_amp, k - lp);
                    const double norm =
                        std::exp(0.5 * (lfact[m] + lfact[n] - lfact[j] - lfact[k]));
                    u(m * d2 + n, j * d2 + k) += coeff * norm;
                }
            }
        }
    }
    return u;
}

void apply_one_mode(FockTensor& st, int mode, const Eigen::MatrixXcd& mat) {
    const auto strides = strides_of(st.dims);
    const int d = st.dims[mode];
    const long s = strides[mode];
    const long total = st.size();
    const long block = s * d;
    Eigen::VectorXcd in(d), out(d);
    for (long base = 0; base < total; base += block) {
        for (long off = 0; off < s; ++off) {
            for (int n = 0; n < d; ++n) in(n) = st.amp(base + off + n * s);
            out.noalias() = mat * in;
            for (int n = 0; n < d; ++n) st.amp(base + off + n * s) = out(n);
        }
    }
}

void apply_two_mode_real(FockTensor& st, int m1, int m2, const Eigen::MatrixXd& mat) {
    const auto strides = strides_of(st.dims);
    const int d1 = st.dims[m1];
    const int d2 = st.dims[m2];
    const long s1 = strides[m1];
    const long s2 = strides[m2];
    const long total = st.size();
    const long n_rest = total / (static_cast<long>(d1) * d2);

    Eigen::VectorXd in_re(d1 * d2), in_im(d1 * d2), out_re(d1 * d2), out_im(d1 * d2);
    for (long rst = 0; rst < n_rest; ++rst) {
        long rem = rst;
        long base = 0;
        for (int m = static_cast<int>(st.dims.size()) - 1; m >= 0; --m) {
            if (m == m1 || m == m2) continue;
            base += (rem % st.dims[m]) * strides[m];
            rem /= st.dims[m];
        }
        for (int a = 0; a < d1; ++a)
            for (int b = 0; b < d2; ++b) {
                const cplx v = st.amp(base + a * s1 + b * s2);
                in_re(a * d2 + b) = v.real();
                in_im(a * d2 + b) = v.imag();
            }
        out_re.noalias() = mat * in_re;
        out_im.noalias() = mat * in_im;
        for (int a = 0; a < d1; ++a)
            for (int b = 0; b < d2; ++b)
                st.amp(base + a * s1 + b * s2) = cplx(out_re(a * d2 + b), out_im(a * d2 + b));
    }
}

Eigen::VectorXcd ladder(const FockTensor& st, int mode, const Eigen::VectorXcd& v) {
    const auto strides = strides_of(st.dims);
    const int d = st.dims[mode];
    const long s = strides[mode];
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    const long total = v.size();
    const long block = s * d;
    for (long base = 0; base < total; base += block)
        for (long off = 0; off < s; ++off)
            for (int n = 1; n < d; ++n)
                out(base + off + (n - 1) * s) += std::sqrt(double(n)) * v(base + off + n * s);
    return out;
}

}  // namespace

long FockTensor::size() const {
    long n = 1;
    for (int d : dims) n *= d;
    return n;
}

long FockTensor::stride(int mode) const { return strides_of(dims)[mode]; }

double FockTensor::weight() const {
    return is_density ? rho.trace().real() : amp.norm();
}

void FockTensor::normalize() {
    if (is_density) {
        const double tr = rho.trace().real();
        if (tr <= 0.0) throw ZeroProbability("normalize: vanishing trace");
        rho /= tr;
    } else {
        const double n = amp.norm();
        if (n <= 0.0) throw ZeroProbability("normalize: vanishing norm");
        amp /= n;
    }
}

FockTensor vacuum(const std::vector<int>& dims) {
    FockTensor st;
    st.dims = dims;
    st.amp = Eigen::VectorXcd::Zero(st.size());
    st.amp(0) = 1.0;
    return st;
}

FockTensor build_tmsv(double lambda, int dim) {
    if (lambda < 0.0 || lambda >= 1.0) throw DomainError("build_tmsv: lambda outside [0,1)");
    const double tail = std::pow(lambda, 2.0 * dim);
    if (tail > kNormTol) throw TruncationError("build_tmsv: truncated tail exceeds tolerance");
    FockTensor st;
    st.dims = {dim, dim};
    st.amp = Eigen::VectorXcd::Zero(st.size());
    double a = std::sqrt(1.0 - lambda * lambda);
    for (int n = 0; n < dim; ++n) {
        st.amp(n * dim + n) = a;
        a *= lambda;
    }
    st.normalize();
    return st;
}

FockTensor thermal_state(int dim, double variance) {
    if (variance < 1.0) throw DomainError("thermal_state: variance < 1");
    const double nbar = (variance - 1.0) / 2.0;
    FockTensor st;
    st.dims = {dim};
    st.is_density = true;
    st.rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        st.rho(n, n) = std::pow(nbar / (nbar + 1.0), n) / (nbar + 1.0);
    st.normalize();
    return st;
}

FockTensor tensor(const FockTensor& a, const FockTensor& b) {
    if (a.is_density != b.is_density) throw DomainError("tensor: mixed purity");
    FockTensor st;
    st.dims = a.dims;
    st.dims.insert(st.dims.end(), b.dims.begin(), b.dims.end());
    st.is_density = a.is_density;
    if (a.is_density) {
        const long na = a.rho.rows(), nb = b.rho.rows();
        st.rho.resize(na * nb, na * nb);
        for (long i = 0; i < na; ++i)
            for (long j = 0; j < na; ++j)
                st.rho.block(i * nb, j * nb, nb, nb) = a.rho(i, j) * b.rho;
    } else {
        st.amp.resize(a.amp.size() * b.amp.size());
        for (long i = 0; i < a.amp.size(); ++i)
            st.amp.segment(i * b.amp.size(), b.amp.size()) = a.amp(i) * b.amp;
    }
    return st;
}

void displace(FockTensor& state, int mode, cplx amp) {
    if (state.is_density) throw DomainError("displace: pure states only");
    const double before = state.amp.norm();
    apply_one_mode(state, mode, displacement_matrix(state.dims[mode], amp));
    if (std::abs(state.amp.norm() - before) > 1e-8)
        throw TruncationError("displace: norm loss beyond tolerance");
}

void beamsplitter(FockTensor& state, int m1, int m2, double t_amp) {
    if (state.is_density) throw DomainError("beamsplitter: pure states only");
    if (m1 == m2) throw DomainError("beamsplitter: identical modes");
    apply_two_mode_real(state, m1, m2, bs_full(state.dims[m1], state.dims[m2], t_amp));
}

int thermal_loss(FockTensor& state, int mode, const ChannelModel& channel, int env_dim) {
    if (state.is_density) throw DomainError("thermal_loss: pure states only");
    const double t = channel.transmissivity;
    if (t >= 1.0) {
        if (channel.excess_noise > 0.0)
            throw DomainError("thermal_loss: T = 1 with excess noise has no finite realization");
        return mode;
    }
    const double w = 1.0 + t * channel.excess_noise / (1.0 - t);
    const double lam_e = w > 1.0 ? std::sqrt((w - 1.0) / (w + 1.0)) : 0.0;

    FockTensor env = lam_e > 0.0 ? build_tmsv(lam_e, env_dim) : vacuum({env_dim, env_dim});
    const int e_index = state.n_modes();
    FockTensor joint = tensor(state, env);

    int bob = mode;
    if (t < 0.5) {
        // route the weak transmitted beam into the fresh environment slot so
        // its truncation stays small; the original mode keeps the lost light
        beamsplitter(joint, mode, e_index, std::sqrt(1.0 - t));
        bob = e_index;
    } else {
        beamsplitter(joint, mode, e_index, std::sqrt(t));
    }
    state = std::move(joint);
    return bob;
}

void ideal_nla_apply(FockTensor& state, int mode, double gain) {
    if (state.is_density) throw DomainError("ideal_nla_apply: pure states only");
    if (gain < 1.0) throw DomainError("ideal_nla_apply: gain < 1");
    const auto strides = strides_of(state.dims);
    const int d = state.dims[mode];
    const long s = strides[mode];
    const long total = state.size();
    const long block = s * d;
    for (long base = 0; base < total; base += block)
        for (long off = 0; off < s; ++off) {
            double scale = 1.0;
            for (int n = 1; n < d; ++n) {
                scale *= gain;
                state.amp(base + off + n * s) *= scale;
            }
        }
    state.normalize();
    double top = 0.0;
    for (long base = 0; base < total; base += block)
        for (long off = 0; off < s; ++off)
            for (int n = d - 2; n < d; ++n) top += std::norm(state.amp(base + off + n * s));
    if (top > 1e-8) throw TruncationError("ideal_nla_apply: amplified state hit truncation");
}

GaussianMoments moments(const FockTensor& state) {
    const int nm = state.n_modes();
    GaussianMoments out;
    out.mean = Eigen::VectorXd::Zero(2 * nm);
    out.cov = Eigen::MatrixXd::Zero(2 * nm, 2 * nm);

    // density inputs are handled through their purification-free ladder sums
    // below; pure inputs use vector contractions.
    if (!state.is_density) {
        std::vector<Eigen::VectorXcd> apsi(nm);
        for (int m = 0; m < nm; ++m) apsi[m] = ladder(state, m, state.amp);
        std::vector<cplx> ea(nm);
        for (int m = 0; m < nm; ++m) ea[m] = state.amp.dot(apsi[m]);
        for (int m = 0; m < nm; ++m) {
            out.mean(2 * m) = 2.0 * ea[m].real();
            out.mean(2 * m + 1) = 2.0 * ea[m].imag();
        }
        for (int m = 0; m < nm; ++m) {
            for (int k = m; k < nm; ++k) {
                const cplx aa = state.amp.dot(ladder(state, m, apsi[k])) - ea[m] * ea[k];
                const cplx ada = apsi[m].dot(apsi[k]) - std::conj(ea[m]) * ea[k];
                if (m == k) {
                    out.cov(2 * m, 2 * m) = 2.0 * aa.real() + 2.0 * ada.real() + 1.0;
                    out.cov(2 * m + 1, 2 * m + 1) = -2.0 * aa.real() + 2.0 * ada.real() + 1.0;
                    out.cov(2 * m, 2 * m + 1) = 2.0 * aa.imag();
                    out.cov(2 * m + 1, 2 * m) = 2.0 * aa.imag();
                } else {
                    const cplx adad = std::conj(aa);
                    const cplx aad = std::conj(apsi[k].dot(apsi[m])) - ea[m] * std::conj(ea[k]);
                    out.cov(2 * m, 2 * k) = (aa + adad + ada + aad).real();
                    out.cov(2 * k, 2 * m) = out.cov(2 * m, 2 * k);
                    out.cov(2 * m + 1, 2 * k + 1) = (-aa - adad + ada + aad).real();
                    out.cov(2 * k + 1, 2 * m + 1) = out.cov(2 * m + 1, 2 * k + 1);
                    out.cov(2 * m, 2 * k + 1) = (aa - adad - ada + aad).imag();
                    out.cov(2 * k + 1, 2 * m) = out.cov(2 * m, 2 * k + 1);
                    out.cov(2 * m + 1, 2 * k) = (aa - adad + ada - aad).imag();
                    out.cov(2 * k, 2 * m + 1) = out.cov(2 * m + 1, 2 * k);
                }
            }
        }
        return out;
    }

    const auto strides = strides_of(state.dims);
    const long total = state.size();
    // Tr[rho * Op_second Op_first], each Op a ladder on one mode
    auto trace2 = [&](int m_first, bool dag_first, int m_second, bool dag_second) {
        cplx sum = 0.0;
        for (long i = 0; i < total; ++i) {
            long j = i;
            double wgt = 1.0;
            {
                const int d = state.dims[m_first];
                const long s = strides[m_first];
                const int n = static_cast<int>((j / s) % d);
                if (dag_first) {
                    if (n + 1 >= d) continue;
                    wgt *= std::sqrt(double(n + 1));
                    j += s;
                } else {
                    if (n == 0) continue;
                    wgt *= std::sqrt(double(n));
                    j -= s;
                }
            }
            {
                const int d = state.dims[m_second];
                const long s = strides[m_second];
                const int n = static_cast<int>((j / s) % d);
                if (dag_second) {
                    if (n + 1 >= d) continue;
                    wgt *= std::sqrt(double(n + 1));
                    j += s;
                } else {
                    if (n == 0) continue;
                    wgt *= std::sqrt(double(n));
                    j -= s;
                }
            }
            sum += wgt * state.rho(i, j);
        }
        return sum;
    };
    auto trace1 = [&](int m, bool dag) {
        cplx sum = 0.0;
        const int d = state.dims[m];
        const long s = strides[m];
        for (long i = 0; i < total; ++i) {
            const int n = static_cast<int>((i / s) % d);
            if (dag) {
                if (n + 1 >= d) continue;
                sum += std::sqrt(double(n + 1)) * state.rho(i, i + s);
            } else {
                if (n == 0) continue;
                sum += std::sqrt(double(n)) * state.rho(i, i - s);
            }
        }
        return sum;
    };

    std::vector<cplx> ea(nm);
    for (int m = 0; m < nm; ++m) ea[m] = trace1(m, false);
    for (int m = 0; m < nm; ++m) {
        out.mean(2 * m) = 2.0 * ea[m].real();
        out.mean(2 * m + 1) = 2.0 * ea[m].imag();
    }
    for (int m = 0; m < nm; ++m) {
        for (int k = m; k < nm; ++k) {
            // operator products read right-to-left: <a_m a_k> applies a_k first
            const cplx aa = trace2(k, false, m, false) - ea[m] * ea[k];
            const cplx ada = trace2(k, false, m, true) - std::conj(ea[m]) * ea[k];
            if (m == k) {
                out.cov(2 * m, 2 * m) = 2.0 * aa.real() + 2.0 * ada.real() + 1.0;
                out.cov(2 * m + 1, 2 * m + 1) = -2.0 * aa.real() + 2.0 * ada.real() + 1.0;
                out.cov(2 * m, 2 * m + 1) = 2.0 * aa.imag();
                out.cov(2 * m + 1, 2 * m) = 2.0 * aa.imag();
            } else {
                const cplx adad = std::conj(aa);
                const cplx aad = trace2(k, true, m, false) - ea[m] * std::conj(ea[k]);
                out.cov(2 * m, 2 * k) = (aa + adad + ada + aad).real();
                out.cov(2 * k, 2 * m) = out.cov(2 * m, 2 * k);
                out.cov(2 * m + 1, 2 * k + 1) = (-aa - adad + ada + aad).real();
                out.cov(2 * k + 1, 2 * m + 1) = out.cov(2 * m + 1, 2 * k + 1);
                out.cov(2 * m, 2 * k + 1) = (aa - adad - ada + aad).imag();
                out.cov(2 * k + 1, 2 * m) = out.cov(2 * m, 2 * k + 1);
                out.cov(2 * m + 1, 2 * k) = (aa - adad + ada - aad).imag();
                out.cov(2 * k, 2 * m + 1) = out.cov(2 * m + 1, 2 * k);
            }
        }
    }
    return out;
}

FockTensor partial_trace(const FockTensor& state, const std::vector<int>& keep) {
    const auto strides = strides_of(state.dims);
    std::vector<int> drop;
    for (int m = 0; m < state.n_modes(); ++m)
        if (std::find(keep.begin(), keep.end(), m) == keep.end()) drop.push_back(m);

    FockTensor out;
    for (int m : keep) out.dims.push_back(state.dims[m]);
    out.is_density = true;
    long keep_size = 1;
    for (int d : out.dims) keep_size *= d;
    long drop_size = 1;
    for (int m : drop) drop_size *= state.dims[m];

    auto compose = [&](long k_idx, long d_idx) {
        long full = 0;
        long rem = k_idx;
        for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
            full += (rem % state.dims[keep[i]]) * strides[keep[i]];
            rem /= state.dims[keep[i]];
        }
        rem = d_idx;
        for (int i = static_cast<int>(drop.size()) - 1; i >= 0; --i) {
            full += (rem % state.dims[drop[i]]) * strides[drop[i]];
            rem /= state.dims[drop[i]];
        }
        return full;
    };

    if (state.is_density) {
        out.rho = Eigen::MatrixXcd::Zero(keep_size, keep_size);
        for (long i = 0; i < keep_size; ++i)
            for (long j = 0; j < keep_size; ++j) {
                cplx sum = 0.0;
                for (long e = 0; e < drop_size; ++e)
                    sum += state.rho(compose(i, e), compose(j, e));
                out.rho(i, j) = sum;
            }
    } else {
        Eigen::MatrixXcd m(keep_size, drop_size);
        for (long i = 0; i < keep_size; ++i)
            for (long e = 0; e < drop_size; ++e) m(i, e) = state.amp(compose(i, e));
        out.rho = m * m.adjoint();
    }
    return out;
}

ScissorOutcome scissor_apply(const FockTensor& state, int mode, double tau) {
    if (state.is_density) throw DomainError("scissor_apply: pure input required");
    if (!(tau > 0.0) || tau >= 1.0) throw DomainError("scissor_apply: tau outside (0,1)");

    const int dc = state.dims[mode] + 2;
    const int c_index = state.n_modes();

    // resource sqrt(1-tau)|01> - sqrt(tau)|10> from a single photon split on a
    // tau-beamsplitter
    FockTensor res = vacuum({dc, 2});
    res.amp.setZero();
    res.amp(1 * 2 + 0) = 1.0;
    beamsplitter(res, 0, 1, std::sqrt(tau));

    FockTensor joint = tensor(state, res);
    beamsplitter(joint, mode, c_index, std::sqrt(0.5));

    // herald on exactly one 'on' detector between the two beamsplitter
    // outputs; the conditional states are returned as projected pure tensors
    // whose reduction over the detector modes is the heralded mixture
    const auto strides = strides_of(joint.dims);
    const long total = joint.size();
    const int d_sig = joint.dims[mode];
    const int d_anc = joint.dims[c_index];
    const long s_sig = strides[mode];
    const long s_anc = strides[c_index];

    ScissorOutcome outcome;
    outcome.state_on_off = joint;
    outcome.state_off_on = joint;
    for (long i = 0; i < total; ++i) {
        const int n_sig = static_cast<int>((i / s_sig) % d_sig);
        const int n_anc = static_cast<int>((i / s_anc) % d_anc);
        if (!(n_sig >= 1 && n_anc == 0)) outcome.state_on_off.amp(i) = 0.0;
        if (!(n_sig == 0 && n_anc >= 1)) outcome.state_off_on.amp(i) = 0.0;
    }
    const double n1 = outcome.state_on_off.amp.norm();
    const double n2 = outcome.state_off_on.amp.norm();
    outcome.prob_on_off = n1 * n1;
    outcome.prob_off_on = n2 * n2;
    if (outcome.prob_on_off < 1e-300 || outcome.prob_off_on < 1e-300)
        throw ZeroProbability("scissor_apply: heralding pattern probability vanished");
    outcome.state_on_off.amp /= n1;
    outcome.state_off_on.amp /= n2;
    return outcome;
}

FockTensor heterodyne_project(const FockTensor& state, int mode, cplx gamma) {
    if (state.is_density) throw DomainError("heterodyne_project: pure states only");
    const int d = state.dims[mode];
    Eigen::VectorXcd bra(d);
    const double pre = std::exp(-std::norm(gamma) / 2.0);
    cplx pw = 1.0;
    for (int n = 0; n < d; ++n) {
        bra(n) = pre * std::conj(pw) / std::exp(0.5 * std::lgamma(n + 1.0));
        pw *= gamma;
    }

    const auto strides = strides_of(state.dims);
    FockTensor out;
    for (int m = 0; m < state.n_modes(); ++m)
        if (m != mode) out.dims.push_back(state.dims[m]);
    out.amp = Eigen::VectorXcd::Zero(state.size() / d);
    const long s = strides[mode];
    for (long i = 0; i < out.amp.size(); ++i) {
        long rem = i;
        long base = 0;
        for (int m = state.n_modes() - 1; m >= 0; --m) {
            if (m == mode) continue;
            base += (rem % state.dims[m]) * strides[m];
            rem /= state.dims[m];
        }
        cplx sum = 0.0;
        for (int n = 0; n < d; ++n) sum += bra(n) * state.amp(base + n * s);
        out.amp(i) = sum;
    }
    return out;
}

double von_neumann_entropy_bits(const FockTensor& density) {
    if (!density.is_density) throw DomainError("von_neumann_entropy_bits: density required");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(density.rho);
    double s = 0.0;
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        const double p = solver.eigenvalues()(i);
        if (p > 1e-14) s -= p * std::log2(p);
    }
    return s;
}

}  // namespace sqcc::fock
