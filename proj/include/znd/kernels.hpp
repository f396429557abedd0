#pragma once

#include <cstddef>
#include <string_view>

#include "znd/errors.hpp"

namespace znd::kernels {

/// Node-parallel work arrays for one time level of the stepped system.
/// Every pointer addresses n = n_cells + 1 doubles owned by the caller.
struct StepArrays {
    // scaled diagonal state and the lagged nodal time derivatives
    const double* phi1;
    const double* phi2;
    const double* phi3;
    const double* tau1_lag;
    const double* tau2_lag;
    const double* tau3_lag;
    const double* age; ///< t - chi^{-1}(x_j); feeds Z = exp(-kappa age)

    // coefficient-pass outputs
    double* lam;  ///< lambda3 at the node, sqrt(gamma e^{Phi2 + s_i})
    double* b2;   ///< coupling entries of the left eigenvectors
    double* b3;
    double* src;  ///< bracket source shared by families 1 and 3 (unscaled)
    double* s2;   ///< entropy source psi kappa hbar Z / T
    double* nu;   ///< reconstructed specific volume (domain guard)
    double* temp; ///< reconstructed temperature (ignition gate)

    // update-pass outputs
    double* phi1_new;
    double* phi2_new;
    double* phi3_new;
    double* tau1_new;
    double* tau2_new;
    double* tau3_new;

    std::size_t n;
};

/// Constants of the scenario and of the current step.
struct StepConsts {
    double alpha, beta;
    double lambda_b, s_iota, nu_iota;
    double gamma;
    double coef_nu; ///< (gamma+1)/gamma - nu_iota
    double kappa, hbar, t_ignite;
    int reaction_on; ///< scenario-level hot/cold switch
    int arrhenius;   ///< Arrhenius ignition runs on the scalar path only
    double arr_ell, arr_a;
    double chi, chi_prime;
    double dt;
    double inv_dxi;
    int space_order; ///< 1 = first-order upwind, 2 = minmod-limited
};

/// A kernel variant: the per-node coefficient pass and the upwind update
/// pass. Boundary-node closures stay scalar in the simulator; the update
/// fills every node the interior scheme defines and leaves placeholders
/// where a closure will overwrite.
struct Kernels {
    void (*coeffs)(const StepArrays&, const StepConsts&);
    void (*update)(const StepArrays&, const StepConsts&);
    const char* name;
};

bool cpu_has_avx2();

/// pref is one of "auto", "scalar", "avx2", "neon". "auto" picks the widest
/// path this CPU supports. Requesting an unavailable variant throws
/// ConfigError.
const Kernels& select_kernels(std::string_view pref = "auto");

const Kernels& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
#endif
#if defined(__aarch64__)
const Kernels& neon_kernels();
#endif

} // namespace znd::kernels
