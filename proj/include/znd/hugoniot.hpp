#pragma once

#include "znd/eos.hpp"
#include "znd/errors.hpp"

namespace znd::hugoniot {

/// Quiescent unburnt state ahead of the shock. s0 and c0 are derived from
/// (gamma, nu0, p0) at construction; u0 = 0 and Z0 = 1 are implicit.
struct UpstreamState {
    double gamma;
    double nu0; ///< > (gamma+1)/gamma
    double p0;  ///< > 0
    double s0;  ///< ln(p0 nu0^gamma)
    double c0;  ///< sqrt(-p_nu(nu0, s0))
};

/// Builds and validates an upstream state. Throws ConfigError when the
/// standing hypotheses (gamma > 1, nu0 > (gamma+1)/gamma, p0 > 0) fail.
UpstreamState make_upstream(double gamma, double nu0, double p0);

/// One point of the Hugoniot locus through (nu0, 0, p0): downstream state
/// plus the shock speed sigma = sqrt(-(p - p0)/(nu - nu0)).
struct ShockLocusPoint {
    double nu;
    double u;
    double p;
    double s;
    double sigma;
};

struct RhResiduals {
    double j1; ///< velocity-pressure jump combination; affine in u
    double j2; ///< energy (Hugoniot) condition; affine in e^s
};

/// Jump-condition residuals at a candidate downstream point. Requires
/// 0 < nu < 1 and nu < nu0 (the analysis fixes the lower equation-of-state
/// branch downstream). Throws LocusDomainError when the J1 radicand is
/// negative, i.e. no admissible velocity exists for this (nu, s).
RhResiduals rh_residuals(const UpstreamState& up, double nu, double s, double u);

/// Newton solve for the unique downstream state at a given specific volume
/// nu in (0, 1): J1 = J2 = 0 with u > 0, sigma > 0.
ShockLocusPoint solve_downstream(const UpstreamState& up, double nu);

/// Piston-speed window (u1, u_o): u1 is the locus velocity at nu = 1 and
/// u_o its extrapolated limit as nu -> 0, reported with the extrapolation
/// error estimate (the limit's existence is measured, not assumed).
struct AdmissibleWindow {
    double u1;
    double u_o;
    double u_o_error;
};

AdmissibleWindow admissible_window(const UpstreamState& up);

/// Inverts the locus velocity by bisection on nu in (0, 1); u is strictly
/// decreasing in nu there. Throws AdmissibilityError when u_iota lies
/// outside the open window (u1, u_o).
ShockLocusPoint solve_from_piston_speed(const UpstreamState& up, double u_iota);

/// Lax admissibility: c0 + margin < sigma < sqrt(-p_nu(nu, s)) - margin.
bool lax_check(const UpstreamState& up, const ShockLocusPoint& pt, double margin = 0.0);

/// Shock speed off the locus: sigma(nu, s) = sqrt(-(p(nu,s) - p0)/(nu - nu0)),
/// for nu < nu0 on the lower branch. Used by the shock ODE right-hand side.
double shock_speed_of(const UpstreamState& up, double nu, double s);

/// Linearization of the shock-boundary maps G1, G2 about the background
/// point, in closed form: the four k_ij entries of dK/d(Phi1,Phi2), the
/// modified kt11 of dK1/dPhi3, the determinant, and the slopes
///   h10 = dG1/dPhi3|0 = -(kt11 k22 - k12 k21)/det,
///   h20 = dG2/dPhi3|0 =  k21/det.
struct BoundaryMaps {
    double k11, k12, k21, k22;
    double kt11;
    double det_k;
    double h10;
    double h20;
};

/// Throws HypothesisError when det_k <= 0 or |h10| is not in (0, 1); both
/// are guaranteed by the theory inside its hypotheses, so a violation flags
/// parameters outside them.
BoundaryMaps boundary_maps(const UpstreamState& up, const ShockLocusPoint& bg);

struct GMapOptions {
    double tol = 1e-12;     ///< convergence: residual inf-norm below this
    int max_iter = 50;
    double radius = 0.1;    ///< |phi3| beyond which the solve is refused
};

struct GMapResult {
    double phi1;
    double phi2;
    int iterations;
};

/// Solves K1 = K2 = 0 for (Phi1, Phi2) at a given Phi3 by damped Newton
/// with the analytic Jacobian (step halving on residual increase). The
/// default start is (0, 0); a warm start may be supplied by the caller.
/// Throws NewtonError on divergence -- the simulator surfaces that as a
/// step rejection.
GMapResult g_maps(const UpstreamState& up, const ShockLocusPoint& bg, double phi3,
                  const GMapOptions& opt = {}, const double* warm_start = nullptr);

} // namespace znd::hugoniot
