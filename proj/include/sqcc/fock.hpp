#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sqcc/channel.hpp"

namespace sqcc::fock {

using cplx = std::complex<double>;

/// Truncated number-basis state over an ordered list of modes. Pure states
/// hold a flattened amplitude vector (row-major in mode order); mixed states
/// hold a density matrix over the same flattened index.
struct FockTensor {
    std::vector<int> dims;
    Eigen::VectorXcd amp;   // pure path
    Eigen::MatrixXcd rho;   // density path
    bool is_density = false;

    int n_modes() const { return static_cast<int>(dims.size()); }
    long size() const;
    long stride(int mode) const;
    /// Norm (pure) or trace (density).
    double weight() const;
    void normalize();
};

/// |0...0> over the given dimensions.
FockTensor vacuum(const std::vector<int>& dims);

/// Two-mode squeezed vacuum sum_n lambda^n |n,n>, renormalized. Throws
/// TruncationError when the truncated tail exceeds 1e-10.
FockTensor build_tmsv(double lambda, int dim);

/// Single-mode thermal density operator of quadrature variance >= 1.
FockTensor thermal_state(int dim, double variance);

/// Tensor product (pure x pure or density x density).
FockTensor tensor(const FockTensor& a, const FockTensor& b);

/// Displacement D(amp) on one mode via exact matrix elements
/// (associated-Laguerre closed form). Throws TruncationError on norm loss
/// beyond 1e-8.
void displace(FockTensor& state, int mode, cplx amp);

/// Beamsplitter with amplitude transmissivity t on modes (m1, m2).
/// Convention: U a1+ U+ = t a1+ + r a2+, U a2+ U+ = -r a1+ + t a2+, so a
/// coherent pair |b1, b2> maps to |t b1 - r b2, r b1 + t b2>.
void beamsplitter(FockTensor& state, int m1, int m2, double t_amp);

/// Thermal-loss channel (T, eps0) on `mode`, realized unitarily: a fresh
/// environment pair purifying a thermal mode of variance W = 1 + T eps0/(1-T)
/// is appended and coupled on a beamsplitter, keeping the global state pure.
/// At high loss the weak transmitted beam is routed into the fresh
/// environment slot (dimension env_dim) so truncation stays controlled;
/// the returned index is the mode now holding the channel output.
/// Throws DomainError for T = 1 with eps0 > 0 (no finite-W realization).
int thermal_loss(FockTensor& state, int mode, const ChannelModel& channel, int env_dim);

/// Noiseless amplification g^n on one mode: scales amplitudes by g^n and
/// renormalizes (moment-comparison semantics only). Throws TruncationError
/// if more than 1e-8 of the renormalized mass sits in the top two levels.
void ideal_nla_apply(FockTensor& state, int mode, double gain);

/// Quadrature means and covariance, x = a + a^dag, p = -i(a - a^dag),
/// vacuum variance 1.
struct GaussianMoments {
    Eigen::VectorXd mean;   // (x1, p1, x2, p2, ...)
    Eigen::MatrixXd cov;
};

GaussianMoments moments(const FockTensor& state);

/// Density operator over a subset of modes (order preserved).
FockTensor partial_trace(const FockTensor& state, const std::vector<int>& keep);

/// Result of heralding a first-order quantum scissor: the conditional state
/// for each accepted detector pattern plus the two pattern probabilities,
/// kept separate so the factor-two rate convention can be tested rather than
/// assumed.
struct ScissorOutcome {
    FockTensor state_on_off;   ///< pattern: signal-port detector fires
    FockTensor state_off_on;   ///< pattern: ancilla-port detector fires
    double prob_on_off = 0.0;
    double prob_off_on = 0.0;
};

/// First-order quantum scissor on `mode`: prepares the resource
/// sqrt(1-tau)|01> - sqrt(tau)|10> by splitting a single photon on a
/// beamsplitter of transmissivity tau, mixes one half with the input on a
/// balanced beamsplitter, and applies on/off detection to both outputs.
/// Heralded states are density operators over the remaining modes with the
/// scissor output appended last. Throws ZeroProbability if a pattern
/// probability falls below 1e-300.
ScissorOutcome scissor_apply(const FockTensor& state, int mode, double tau);

/// Projects `mode` onto the heterodyne outcome <gamma| (coherent bra) and
/// drops the mode; the result is left unnormalized so the caller can read
/// the outcome density. Pure input only.
FockTensor heterodyne_project(const FockTensor& state, int mode, cplx gamma);

/// Von Neumann entropy in bits of a density operator.
double von_neumann_entropy_bits(const FockTensor& density);

}  // namespace sqcc::fock
