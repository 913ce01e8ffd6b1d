#include "sqcc/search_grid.hpp"

#include "sqcc/errors.hpp"

namespace sqcc {

void SearchGrid::validate() const {
    if (v_min < 1.0 || v_max <= v_min) throw DomainError("SearchGrid: bad V bounds");
    if (n_v < 2) throw DomainError("SearchGrid: n_v < 2");
    if (g_max < 0.0) throw DomainError("SearchGrid: g_max < 0");
    if (n_g < 2) throw DomainError("SearchGrid: n_g < 2");
    if (!(t_min > 0.0) || t_min >= 1.0) throw DomainError("SearchGrid: t_min outside (0,1)");
    if (!(t_eps > 0.0) || t_eps >= 1.0 - t_min) throw DomainError("SearchGrid: bad t_eps");
    if (n_t < 2) throw DomainError("SearchGrid: n_t < 2");
    if (!(alpha_min > 0.0) || alpha_max <= alpha_min)
        throw DomainError("SearchGrid: bad alpha bounds");
    if (n_alpha < 2) throw DomainError("SearchGrid: n_alpha < 2");
    if (refine_iters < 0) throw DomainError("SearchGrid: refine_iters < 0");
    if (!(shrink > 0.0) || shrink >= 1.0) throw DomainError("SearchGrid: shrink outside (0,1)");
}

}  // namespace sqcc
