#pragma once

// Reference per-node operations for the characteristic stepper. These scalar
// routines define the semantics; the SIMD variants must reproduce them on
// interior spans and reuse them verbatim on stencil-starved edge nodes.

#include <algorithm>
#include <cmath>

#include "znd/kernels.hpp"

namespace znd::kernels::detail {

inline double ignition_psi(const StepConsts& c, double temp) {
    if (!c.reaction_on || !(temp > c.t_ignite))
        return 0.0;
    if (!c.arrhenius)
        return 1.0;
    return std::pow(temp, c.arr_ell) * std::exp(-c.arr_a / (temp - c.t_ignite));
}

inline void coeffs_node(const StepArrays& a, const StepConsts& c, std::size_t j) {
    // Unscale to the plain diagonal coordinates.
    const double p1 = c.alpha * a.phi1[j];
    const double p2 = a.phi2[j] / c.beta;
    const double p3 = a.phi3[j];

    const double nu = -(p1 + p3) / (2.0 * c.lambda_b) + c.coef_nu * p2 + c.nu_iota;
    const double es = std::exp(p2 + c.s_iota);
    const double lam = std::sqrt(c.gamma * es);

    const double b3 = (lam - c.lambda_b) / (lam + c.lambda_b);
    const double b2 = (lam * (p1 + p3) - 2.0 * c.lambda_b * lam * c.coef_nu * p2)
                    / (lam + c.lambda_b);

    // Lower-branch temperature T = e(nu, s).
    const double g = c.gamma;
    const double temp = es * (0.5 * g * nu * nu - (g + 1.0) * nu
                              + (g * g + g) / (2.0 * (g - 1.0)));

    const double z = std::exp(-c.kappa * a.age[j]);
    const double psi = ignition_psi(c, temp);
    const double t_eff = std::max(temp, c.t_ignite + 1e-12);
    const double s2 = psi * c.kappa * c.hbar * z / t_eff;
    const double src = ((1.0 + b3) * c.lambda_b * c.coef_nu + b2) * s2;

    a.lam[j] = lam;
    a.b2[j] = b2;
    a.b3[j] = b3;
    a.src[j] = src;
    a.s2[j] = s2;
    a.nu[j] = nu;
    a.temp[j] = temp;
}

inline double minmod(double x, double y) {
    if (x > 0.0 && y > 0.0)
        return std::min(x, y);
    if (x < 0.0 && y < 0.0)
        return std::max(x, y);
    return 0.0;
}

/// Upwind xi-derivative of field f at node j for a characteristic moving
/// left in the mapped frame (speed < 0: stencil to the right). Second order
/// applies a minmod-limited curvature correction where the wide stencil
/// exists and falls back to first order at the edges.
inline double deriv_right(const double* f, std::size_t j, std::size_t n_last,
                          double inv_dxi, int order) {
    const double d1 = (f[j + 1] - f[j]) * inv_dxi;
    if (order < 2 || j + 2 > n_last || j == 0)
        return d1;
    const double curv_up = f[j + 2] - 2.0 * f[j + 1] + f[j];
    const double curv_ct = f[j + 1] - 2.0 * f[j] + f[j - 1];
    return d1 - 0.5 * minmod(curv_up, curv_ct) * inv_dxi;
}

/// Same for a characteristic moving right (stencil to the left).
inline double deriv_left(const double* f, std::size_t j, std::size_t n_last,
                         double inv_dxi, int order) {
    const double d1 = (f[j] - f[j - 1]) * inv_dxi;
    if (order < 2 || j < 2 || j + 1 > n_last)
        return d1;
    const double curv_up = f[j] - 2.0 * f[j - 1] + f[j - 2];
    const double curv_ct = f[j + 1] - 2.0 * f[j] + f[j - 1];
    return d1 + 0.5 * minmod(curv_up, curv_ct) * inv_dxi;
}

/// One explicit node update. Families 1 and 2 are defined for j < n-1 (the
/// shock node takes its closure), family 3 for j >= 1 (the piston node takes
/// its closure); undefined slots get zero placeholders. Cross-family
/// directional derivatives use the lagged nodal time derivatives.
inline void update_node(const StepArrays& a, const StepConsts& c, std::size_t j) {
    const std::size_t last = a.n - 1;
    const double xi = static_cast<double>(j) / static_cast<double>(last);
    const double inv_chi = 1.0 / c.chi;
    const double a1 = (-a.lam[j] - xi * c.chi_prime) * inv_chi;
    const double a2 = -xi * c.chi_prime * inv_chi;
    const double a3 = (a.lam[j] - xi * c.chi_prime) * inv_chi;

    double tau1 = 0.0, tau2 = 0.0, tau3 = 0.0;

    if (j < last) {
        const double d2 = deriv_right(a.phi2, j, last, c.inv_dxi, c.space_order);
        tau2 = c.beta * a.s2[j] - a2 * d2;

        const double d11 = deriv_right(a.phi1, j, last, c.inv_dxi, c.space_order);
        const double d12 = deriv_right(a.phi2, j, last, c.inv_dxi, c.space_order);
        const double d13 = deriv_right(a.phi3, j, last, c.inv_dxi, c.space_order);
        tau1 = a.src[j] / c.alpha - a1 * d11
             - (a.b2[j] / (c.alpha * c.beta)) * (a.tau2_lag[j] + a1 * d12)
             - (a.b3[j] / c.alpha) * (a.tau3_lag[j] + a1 * d13);
    }
    if (j >= 1) {
        const double d31 = deriv_left(a.phi1, j, last, c.inv_dxi, c.space_order);
        const double d32 = deriv_left(a.phi2, j, last, c.inv_dxi, c.space_order);
        const double d33 = deriv_left(a.phi3, j, last, c.inv_dxi, c.space_order);
        tau3 = a.src[j] - a3 * d33
             - c.alpha * a.b3[j] * (a.tau1_lag[j] + a3 * d31)
             - (a.b2[j] / c.beta) * (a.tau2_lag[j] + a3 * d32);
    }

    a.tau1_new[j] = tau1;
    a.tau2_new[j] = tau2;
    a.tau3_new[j] = tau3;
    a.phi1_new[j] = a.phi1[j] + c.dt * tau1;
    a.phi2_new[j] = a.phi2[j] + c.dt * tau2;
    a.phi3_new[j] = a.phi3[j] + c.dt * tau3;
}

} // namespace znd::kernels::detail
