#pragma once

#include <string>

namespace sqcc {

/// Untrusted thermal-loss channel. Transmissivity and dB loss are kept
/// mutually consistent (T = 10^(-L/10)).
struct ChannelModel {
    double transmissivity = 1.0;  ///< T in (0, 1]
    double excess_noise = 0.0;    ///< epsilon_0 >= 0, SNU, input-referred
    double loss_db = 0.0;         ///< L >= 0 dB

    static ChannelModel from_loss_db(double loss_db, double excess_noise);
    static ChannelModel from_transmissivity(double transmissivity, double excess_noise);

    /// Throws DomainError on out-of-range values or a T/loss_db mismatch
    /// beyond 1e-12.
    void validate() const;
};

/// Alice-side protocol knobs.
struct ProtocolConfig {
    double variance = 1.0;        ///< modulation variance V >= 1, SNU
    double alpha = 0.0;           ///< classical displacement magnitude
    double theta = 0.0;           ///< BPSK orientation, radians
    double phase_noise = 0.0;     ///< sigma >= 0 (eps_sigma = alpha^2 sigma)
    double reconciliation = 1.0;  ///< beta in [0, 1]

    void validate() const;
};

/// Joint quality-of-service floor for the two signal components.
struct QosTarget {
    double min_key_rate = 0.0;  ///< K0 > 0, bits/pulse
    double max_ber = 0.5;       ///< e_C0 in (0, 1)

    void validate() const;
};

enum class Regime { large_alpha, small_alpha };

std::string to_string(Regime r);

/// Outcome of a minimum-photon-budget search.
struct PhotonBudgetResult {
    double min_photons = 0.0;  ///< nbar at the best feasible point
    double arg_alpha = 0.0;
    double arg_variance = 1.0;
    bool feasible = false;
    Regime regime = Regime::small_alpha;
};

/// Parameters held fixed during budget searches and sweeps.
struct FixedProtocolParams {
    double sigma = 0.0;
    double beta = 1.0;
    double theta = 0.0;
};

}  // namespace sqcc
