#include "znd/riemann.hpp"

#include <cmath>

namespace znd::riemann {

ReferenceState make_reference(double gamma, double nu_i, double s_i, double u_i) {
    if (!(gamma > 1.0))
        throw ConfigError("reference: gamma must exceed 1");
    if (!(nu_i > 0.0) || !(nu_i < 1.0))
        throw ConfigError("reference: background nu_i must lie in (0, 1), got "
                          + std::to_string(nu_i));
    return {gamma, nu_i, s_i, u_i, std::sqrt(gamma * std::exp(s_i))};
}

DiagonalState to_diagonal(const ReferenceState& ref, double dnu, double ds, double du) {
    const double q = ref.lambda_b * ((ref.gamma + 1.0) / ref.gamma - ref.nu_i);
    return {-ref.lambda_b * dnu + q * ds - du,
            ds,
            -ref.lambda_b * dnu + q * ds + du};
}

Primitive from_diagonal(const ReferenceState& ref, const DiagonalState& phi) {
    const double nu = -(phi.phi1 + phi.phi3) / (2.0 * ref.lambda_b)
                    + ((ref.gamma + 1.0) / ref.gamma - ref.nu_i) * phi.phi2 + ref.nu_i;
    const double s = phi.phi2 + ref.s_i;
    const double u = 0.5 * (phi.phi3 - phi.phi1) + ref.u_i;
    return {nu, s, u};
}

std::array<double, 3> eigenvalues(const ReferenceState& ref, double phi2) {
    const double lam = std::sqrt(ref.gamma * std::exp(phi2 + ref.s_i));
    return {-lam, 0.0, lam};
}

Coupling coupling_coeffs(const ReferenceState& ref, const DiagonalState& phi) {
    const double g = ref.gamma;
    const double a = std::sqrt(g * std::exp(phi.phi2 + ref.s_i));
    const double b = ref.lambda_b;
    const double b3 = (a - b) / (a + b);
    const double b2 = (a * (phi.phi1 + phi.phi3)
                       - 2.0 * std::sqrt(std::exp(ref.s_i)) * std::sqrt(std::exp(phi.phi2 + ref.s_i))
                             * ((g + 1.0) - g * ref.nu_i) * phi.phi2)
                    / (a + b);
    return {b2, b3};
}

DiagonalState scale(const ScalingParams& sp, const DiagonalState& phi) {
    return {phi.phi1 / sp.alpha, sp.beta * phi.phi2, phi.phi3};
}

DiagonalState unscale(const ScalingParams& sp, const DiagonalState& phi_hat) {
    return {sp.alpha * phi_hat.phi1, phi_hat.phi2 / sp.beta, phi_hat.phi3};
}

ScalingParams choose_scaling(double h10, double h20) {
    const double a10 = std::fabs(h10);
    if (!(a10 < 1.0))
        throw HypothesisError("choose_scaling: |h10| >= 1, no admissible alpha exists");
    constexpr double beta_cap = 1e6;
    ScalingParams sp{};
    sp.alpha = 0.5 * (a10 + 1.0);
    const double a20 = std::fabs(h20);
    if (a20 > 0.5 / beta_cap) {
        sp.beta = 0.5 / a20;
    } else {
        sp.beta = beta_cap;
        sp.beta_capped = true;
    }
    return sp;
}

Mat3 l_matrix(const ReferenceState& ref) {
    const double q = ref.lambda_b * ((ref.gamma + 1.0) / ref.gamma - ref.nu_i);
    return {{{-ref.lambda_b, q, -1.0}, {0.0, 1.0, 0.0}, {-ref.lambda_b, q, 1.0}}};
}

Mat3 l_inverse(const ReferenceState& ref) {
    // Gauss-Jordan on the 3x3; cheap and done once per scenario.
    Mat3 a = l_matrix(ref);
    Mat3 inv{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col]))
                piv = r;
        if (a[piv][col] == 0.0)
            throw NumericalError("l_inverse: singular L matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double d = a[col][col];
        for (int c = 0; c < 3; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col)
                continue;
            const double f = a[r][col];
            for (int c = 0; c < 3; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

Mat3 lambda_bar(const ReferenceState& ref, double dnu, double ds) {
    const double g = ref.gamma;
    const double nu = ref.nu_i + dnu;
    const double es = std::exp(ref.s_i + ds);
    return {{{0.0, 0.0, -1.0},
             {0.0, 0.0, 0.0},
             {-g * es, (g + 1.0) * es - g * es * nu, 0.0}}};
}

Mat3 lambda_matrix(const ReferenceState& ref, const DiagonalState& phi) {
    const Mat3 l = l_matrix(ref);
    const Mat3 linv = l_inverse(ref);
    const Primitive w = from_diagonal(ref, phi);
    const Mat3 lb = lambda_bar(ref, w.nu - ref.nu_i, w.s - ref.s_i);
    Mat3 tmp{}, out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k)
                acc += lb[i][k] * linv[k][j];
            tmp[i][j] = acc;
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k)
                acc += l[i][k] * tmp[k][j];
            out[i][j] = acc;
        }
    return out;
}

} // namespace znd::riemann
