#pragma once

#include <string>
#include <vector>

namespace sqcc {

/// Outcome of one analytic-vs-simulator comparison suite.
struct OracleReport {
    struct Entry {
        std::string quantity;
        double max_rel_dev = 0.0;
        double tolerance = 0.0;
        bool pass = false;
    };
    std::vector<Entry> entries;
    bool pass = false;
    std::string suite;
};

/// Scissor heralding statistics and Gaussified moments vs the number-basis
/// circuit on the standard alpha/gain/loss/variance grid. Every comparison is
/// run at truncation dim and dim + dim_step and must agree before it counts.
OracleReport oracle_check_scissor(int dim = 20, int dim_step = 5, double tol_pdb = 1e-6,
                                  double tol_ac = 1e-8, int threads = 1);

/// Equivalent-parameter map vs g^n applied numerically, on n_points random
/// low-energy operating points.
OracleReport oracle_check_ideal_nla(int dim = 20, int dim_step = 5, double tol = 1e-6,
                                    unsigned seed = 20240901, int n_points = 100,
                                    int threads = 1);

/// Symplectic eigenvalues vs |eig(i Omega V)| on n_cov random physical
/// covariances, plus entropy and Holevo spot checks against density-operator
/// brute force.
OracleReport oracle_check_gaussian_core(unsigned seed = 20240902, int n_cov = 1000,
                                        double tol = 1e-10, int threads = 1);

}  // namespace sqcc
