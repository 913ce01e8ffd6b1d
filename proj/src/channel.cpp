#include "sqcc/channel.hpp"

#include <cmath>

#include "sqcc/errors.hpp"

namespace sqcc {

ChannelModel ChannelModel::from_loss_db(double loss_db, double excess_noise) {
    ChannelModel ch;
    ch.loss_db = loss_db;
    ch.transmissivity = std::pow(10.0, -loss_db / 10.0);
    ch.excess_noise = excess_noise;
    ch.validate();
    return ch;
}

ChannelModel ChannelModel::from_transmissivity(double transmissivity, double excess_noise) {
    ChannelModel ch;
    ch.transmissivity = transmissivity;
    ch.loss_db = -10.0 * std::log10(transmissivity);
    ch.excess_noise = excess_noise;
    ch.validate();
    return ch;
}

void ChannelModel::validate() const {
    if (!(transmissivity > 0.0) || transmissivity > 1.0)
        throw DomainError("ChannelModel: transmissivity outside (0,1]");
    if (excess_noise < 0.0) throw DomainError("ChannelModel: excess_noise < 0");
    if (loss_db < 0.0) throw DomainError("ChannelModel: loss_db < 0");
    const double t_from_db = std::pow(10.0, -loss_db / 10.0);
    if (std::abs(t_from_db - transmissivity) > 1e-12 * std::max(1.0, transmissivity))
        throw DomainError("ChannelModel: loss_db and transmissivity inconsistent");
}

void ProtocolConfig::validate() const {
    if (variance < 1.0) throw DomainError("ProtocolConfig: variance < 1");
    if (alpha < 0.0) throw DomainError("ProtocolConfig: alpha < 0");
    if (phase_noise < 0.0) throw DomainError("ProtocolConfig: phase_noise < 0");
    if (reconciliation < 0.0 || reconciliation > 1.0)
        throw DomainError("ProtocolConfig: reconciliation outside [0,1]");
}

void QosTarget::validate() const {
    if (!(min_key_rate > 0.0)) throw DomainError("QosTarget: min_key_rate <= 0");
    if (!(max_ber > 0.0) || max_ber >= 1.0) throw DomainError("QosTarget: max_ber outside (0,1)");
}

std::string to_string(Regime r) {
    return r == Regime::large_alpha ? "large-alpha" : "small-alpha";
}

}  // namespace sqcc
