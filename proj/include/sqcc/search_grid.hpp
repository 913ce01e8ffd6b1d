#pragma once

namespace sqcc {

/// Coarse-scan bounds and refinement knobs shared by the optimizers.
///
/// V is scanned on a logarithmic grid in (V - 1), g on a logarithmic grid,
/// and t on a logarithmic grid in (1 - t); the local polish is a compass
/// pattern search in those coordinates.
struct SearchGrid {
    double v_min = 1.0;
    double v_max = 20.0;
    int n_v = 14;

    double g_max = 0.0;  ///< 0 selects a per-variant adaptive cap
    int n_g = 14;

    double t_min = 0.5;
    double t_eps = 1e-6;  ///< search box reaches t = 1 - t_eps
    int n_t = 8;

    double alpha_min = 1e-3;  ///< photon-budget searches only
    double alpha_max = 100.0;
    int n_alpha = 48;

    int refine_iters = 60;
    double shrink = 0.5;

    /// Throws DomainError on unordered bounds or axes with < 2 points.
    void validate() const;
};

}  // namespace sqcc
