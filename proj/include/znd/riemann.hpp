#pragma once

#include <array>

#include "znd/errors.hpp"

namespace znd::riemann {

/// Background point the diagonalization is anchored at, plus the frozen
/// acoustic speed lambda_b = sqrt(gamma e^{s_i}).
struct ReferenceState {
    double gamma;
    double nu_i; ///< < 1
    double s_i;
    double u_i;
    double lambda_b;
};

ReferenceState make_reference(double gamma, double nu_i, double s_i, double u_i);

/// Perturbation in L-coordinates Phi = L (nu - nu_i, s - s_i, u - u_i)^T.
struct DiagonalState {
    double phi1;
    double phi2;
    double phi3;
};

/// Absolute primitive triple (nu, s, u).
struct Primitive {
    double nu;
    double s;
    double u;
};

/// Phi = L Phibar with L rows
///   (-lambda_b, lambda_b((gamma+1)/gamma - nu_i), -1)
///   ( 0,         1,                                0)
///   (-lambda_b, lambda_b((gamma+1)/gamma - nu_i),  1)
DiagonalState to_diagonal(const ReferenceState& ref, double dnu, double ds, double du);

/// Inverse map, returned as absolute primitives:
///   nu = -(Phi1+Phi3)/(2 lambda_b) + ((gamma+1)/gamma - nu_i) Phi2 + nu_i
///   s  = Phi2 + s_i
///   u  = (Phi3 - Phi1)/2 + u_i
Primitive from_diagonal(const ReferenceState& ref, const DiagonalState& phi);

/// Characteristic speeds (lambda1, 0, lambda3) with
/// lambda_{1,3} = -+ sqrt(gamma e^{Phi2 + s_i}); lambda1 < 0 < lambda3 always.
std::array<double, 3> eigenvalues(const ReferenceState& ref, double phi2);

/// Off-diagonal coupling entries of the left eigenvectors
/// l1 = (1, b2, b3), l3 = (b3, b2, 1); both vanish at Phi = 0.
struct Coupling {
    double b2;
    double b3;
};

Coupling coupling_coeffs(const ReferenceState& ref, const DiagonalState& phi);

/// Scale factors with |h10| < alpha < 1 and 0 < beta < 1/|h20|.
struct ScalingParams {
    double alpha;
    double beta;
    bool beta_capped = false; ///< set when h20 == 0 forced the cap
};

/// Phihat = (Phi1/alpha, beta Phi2, Phi3) and its exact inverse.
DiagonalState scale(const ScalingParams& sp, const DiagonalState& phi);
DiagonalState unscale(const ScalingParams& sp, const DiagonalState& phi_hat);

/// Midpoint choices alpha = (|h10|+1)/2, beta = 1/(2|h20|); beta is capped
/// at 1e6 when h20 vanishes (the theory does not exclude that).
ScalingParams choose_scaling(double h10, double h20);

// --- matrix assembly for validation paths -------------------------------
// The inverse of L is computed numerically (no symbolic manipulation);
// these assemble Lambda(Phi) = L LambdaBar(Phibar) L^{-1} so tests can
// check the diagonalization and the left-eigenvector identities.

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 l_matrix(const ReferenceState& ref);
Mat3 l_inverse(const ReferenceState& ref);

/// Quasilinear coefficient matrix of the primitive perturbation system at
/// the absolute state (nu_i + dnu, s_i + ds): rows for (nu, s, u) transport.
Mat3 lambda_bar(const ReferenceState& ref, double dnu, double ds);

/// L LambdaBar L^{-1} at the state addressed by phi.
Mat3 lambda_matrix(const ReferenceState& ref, const DiagonalState& phi);

} // namespace znd::riemann
