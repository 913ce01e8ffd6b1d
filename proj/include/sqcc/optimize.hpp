#pragma once

#include <string>
#include <vector>

#include "sqcc/baseline.hpp"
#include "sqcc/channel.hpp"
#include "sqcc/search_grid.hpp"

namespace sqcc {

enum class Variant { baseline, ideal, scissor, dual };

Variant variant_from_string(const std::string& name);
std::string to_string(Variant v);

/// One optimized operating point of a loss sweep.
struct SweepRecord {
    double loss_db = 0.0;
    double alpha = 0.0;
    Variant variant = Variant::baseline;
    double v_opt = 1.0;
    double g_opt = 1.0;
    double t_opt = 1.0;
    double key_rate = 0.0;
    double ber = 0.5;
    double g2t = 0.0;    ///< g^2 T diagnostic
    double t_eff = 0.0;  ///< effective transmissivity diagnostic
    double plob = 0.0;   ///< repeaterless bound at this loss (+inf at T = 1)
    bool failed = false;
};

/// Maximizes the variant's key rate over its free parameters (baseline: V;
/// ideal/scissor: V, g; dual: V, g, t) by coarse grid scan plus compass
/// pattern search (shrink factor grid.shrink, at most grid.refine_iters
/// iterations). Domain errors from inner evaluations score -inf. Ties within
/// 1e-12 in K resolve to smaller g, then smaller V, then larger t, so results
/// are reproducible bit-for-bit across thread counts.
///
/// Throws EmptyFeasibleSet if every grid point errors.
SweepRecord optimize_point(Variant variant, const ProtocolConfig& config,
                           const ChannelModel& channel, const SearchGrid& grid,
                           int threads = 1);

/// One optimized record per (alpha, loss) pair. Loss points of a family are
/// processed in order so each can warm-start from its lower-loss neighbour;
/// the hint only seeds an extra refinement start and never changes feasibility.
/// Per-point failures become records with key_rate = 0 and failed = true.
std::vector<SweepRecord> loss_sweep(Variant variant, const std::vector<double>& alphas,
                                    const std::vector<double>& loss_grid_db,
                                    double excess_noise, const FixedProtocolParams& fixed,
                                    const SearchGrid& grid, int threads = 1);

/// min_photon_search per QoS cell; infeasible cells are flagged, never fatal.
/// Row index follows k0_list, column index ec0_list.
std::vector<std::vector<PhotonBudgetResult>> photon_landscape(
    const ChannelModel& channel, const std::vector<double>& k0_list,
    const std::vector<double>& ec0_list, const FixedProtocolParams& fixed,
    const SearchGrid& grid, int threads = 1);

}  // namespace sqcc
