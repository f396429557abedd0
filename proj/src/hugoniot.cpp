#include "znd/hugoniot.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "znd/riemann.hpp"

namespace znd::hugoniot {

namespace {

// J2 = (1/2) e^s A(nu) + p0 B(nu); both factors reused across the module.
double hugoniot_a(const UpstreamState& up, double nu) {
    const double g = up.gamma;
    return (g + 1.0) * (nu + up.nu0) - (g * g + g) / (g - 1.0) - g * nu * up.nu0;
}

double hugoniot_b(const UpstreamState& up, double nu) {
    const double g = up.gamma;
    return (g + 1.0) * up.nu0 / (2.0 * (g - 1.0)) - 0.5 * nu;
}

// Lower-branch pressure; downstream states live on nu < 1.
double p_lower(double gamma, double nu, double es) {
    return (gamma + 1.0) * es - gamma * es * nu;
}

void check_downstream_nu(const UpstreamState& up, double nu) {
    if (!(nu > 0.0) || !(nu < 1.0))
        throw DomainError("hugoniot: downstream nu must lie in (0, 1), got " + std::to_string(nu));
    if (!(nu < up.nu0))
        throw DomainError("hugoniot: downstream nu must be below nu0 (compressive shock)");
}

} // namespace

UpstreamState make_upstream(double gamma, double nu0, double p0) {
    if (!(gamma > 1.0))
        throw ConfigError("upstream: gamma must exceed 1, got " + std::to_string(gamma));
    const double nu_min = (gamma + 1.0) / gamma;
    if (!(nu0 > nu_min))
        throw ConfigError("upstream: nu0 must exceed (gamma+1)/gamma = " + std::to_string(nu_min)
                          + ", got " + std::to_string(nu0));
    if (!(p0 > 0.0))
        throw ConfigError("upstream: p0 must be positive, got " + std::to_string(p0));
    const eos::EosParams par(gamma);
    const double s0 = eos::entropy_from_pressure(par, nu0, p0);
    const double c0 = eos::sound_speed(par, {nu0, s0});
    return {gamma, nu0, p0, s0, c0};
}

RhResiduals rh_residuals(const UpstreamState& up, double nu, double s, double u) {
    check_downstream_nu(up, nu);
    const double es = std::exp(s);
    const double p = p_lower(up.gamma, nu, es);
    const double rad = -(p - up.p0) * (nu - up.nu0);
    if (!(rad >= 0.0))
        throw LocusDomainError("rh_residuals: negative radicand, no admissible (nu, s) pair");
    const double j1 = u - std::sqrt(rad);
    const double j2 = 0.5 * es * hugoniot_a(up, nu) + up.p0 * hugoniot_b(up, nu);
    return {j1, j2};
}

double shock_speed_of(const UpstreamState& up, double nu, double s) {
    const double p = p_lower(up.gamma, nu, std::exp(s));
    const double q = -(p - up.p0) / (nu - up.nu0);
    if (!(q > 0.0))
        throw LocusDomainError("shock_speed_of: non-positive shock speed squared");
    return std::sqrt(q);
}

ShockLocusPoint solve_downstream(const UpstreamState& up, double nu) {
    check_downstream_nu(up, nu);

    // Damped Newton on (s, u) for (J1, J2) = 0 at fixed nu. J2 depends on s
    // only, J1 is affine in u, so the Jacobian is triangular-ish and the
    // iteration contracts fast once e^s is in range.
    double s = up.s0;
    double u = up.c0 * (up.nu0 - nu);
    const double a = hugoniot_a(up, nu);

    auto residual = [&](double ss, double uu, double& j1, double& j2) -> bool {
        const double es = std::exp(ss);
        const double p = p_lower(up.gamma, nu, es);
        const double rad = -(p - up.p0) * (nu - up.nu0);
        if (!(rad >= 0.0))
            return false;
        j1 = uu - std::sqrt(rad);
        j2 = 0.5 * es * a + up.p0 * hugoniot_b(up, nu);
        return true;
    };

    double j1 = 0.0, j2 = 0.0;
    if (!residual(s, u, j1, j2)) {
        s = up.s0 + 1.0; // one retry from a hotter start before giving up
        if (!residual(s, u, j1, j2))
            throw LocusDomainError("solve_downstream: no admissible start at nu = "
                                   + std::to_string(nu));
    }

    const double scale = std::max({1.0, std::fabs(up.p0), up.c0 * up.nu0});
    bool converged = false;
    for (int it = 0; it < 80; ++it) {
        const double rnorm = std::max(std::fabs(j1), std::fabs(j2));
        if (rnorm < 1e-13 * scale) {
            converged = true;
            break;
        }
        const double es = std::exp(s);
        const double p = p_lower(up.gamma, nu, es);
        const double rad = -(p - up.p0) * (nu - up.nu0);
        const double root = std::sqrt(std::max(rad, 1e-300));
        // dJ1/ds = -(1/(2 sqrt(rad))) * (-p_s (nu - nu0)), p_s = p on this branch
        const double dj1_ds = 0.5 / root * p * (nu - up.nu0);
        const double dj1_du = 1.0;
        const double dj2_ds = 0.5 * es * a;
        // Solve [dj1_ds dj1_du; dj2_ds 0] [ds du] = -[j1 j2]
        const double det = -dj1_du * dj2_ds;
        if (det == 0.0)
            throw LocusDomainError("solve_downstream: singular Jacobian at nu = "
                                   + std::to_string(nu));
        double ds = -j2 / dj2_ds;
        double du = (-j1 - dj1_ds * ds) / dj1_du;

        double lambda = 1.0;
        for (int back = 0; back < 40; ++back) {
            double t1, t2;
            if (residual(s + lambda * ds, u + lambda * du, t1, t2)
                && std::max(std::fabs(t1), std::fabs(t2)) <= rnorm) {
                s += lambda * ds;
                u += lambda * du;
                j1 = t1;
                j2 = t2;
                break;
            }
            lambda *= 0.5;
            if (back == 39)
                throw LocusDomainError("solve_downstream: line search stalled at nu = "
                                       + std::to_string(nu));
        }
    }
    if (!converged)
        throw LocusDomainError("solve_downstream: Newton did not converge at nu = "
                               + std::to_string(nu));
    if (!(std::exp(s) > 0.0) || !(u > 0.0))
        throw LocusDomainError("solve_downstream: no admissible downstream state at nu = "
                               + std::to_string(nu));
    const double p = p_lower(up.gamma, nu, std::exp(s));
    const double sigma = shock_speed_of(up, nu, s);
    return {nu, u, p, s, sigma};
}

AdmissibleWindow admissible_window(const UpstreamState& up) {
    // u1: locus endpoint at nu = 1 (lower branch by the deterministic
    // branch rule; continuity makes the choice unobservable).
    const double u1 = solve_downstream(up, 1.0 - 1e-12).u;

    // u_o: nu -> 0 limit, taken by Neville extrapolation on a geometric
    // grid. The theory asserts the limit without a formula, so the error
    // of the last correction is reported alongside the value.
    const std::array<double, 3> h = {1e-3, 1e-4, 1e-5};
    std::array<double, 3> val{};
    for (std::size_t i = 0; i < h.size(); ++i)
        val[i] = solve_downstream(up, h[i]).u;
    // Neville tableau in the variable h (u is smooth in nu at 0).
    const double v01 = (h[0] * val[1] - h[1] * val[0]) / (h[0] - h[1]);
    const double v12 = (h[1] * val[2] - h[2] * val[1]) / (h[1] - h[2]);
    const double v012 = (h[0] * v12 - h[2] * v01) / (h[0] - h[2]);
    const double u_o = v012;
    const double err = std::fabs(v012 - v12);
    if (!(u1 < u_o))
        throw HypothesisError("admissible_window: endpoints out of order (u1 >= u_o)");
    return {u1, u_o, err};
}

ShockLocusPoint solve_from_piston_speed(const UpstreamState& up, double u_iota) {
    const AdmissibleWindow w = admissible_window(up);
    if (!(u_iota > w.u1) || !(u_iota < w.u_o))
        throw AdmissibilityError("u_iota = " + std::to_string(u_iota)
                                 + " outside the admissible window ("
                                 + std::to_string(w.u1) + ", " + std::to_string(w.u_o) + ")");

    // u is strictly decreasing in nu on (0, 1); bisection cannot miss.
    double lo = 1e-6, hi = 1.0 - 1e-12;
    double u_lo = solve_downstream(up, lo).u;
    double u_hi = solve_downstream(up, hi).u;
    if (!(u_iota <= u_lo) || !(u_iota >= u_hi))
        throw AdmissibilityError("u_iota not bracketed by the resolvable locus range ["
                                 + std::to_string(u_hi) + ", " + std::to_string(u_lo) + "]");
    for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (solve_downstream(up, mid).u > u_iota)
            lo = mid;
        else
            hi = mid;
    }
    ShockLocusPoint pt = solve_downstream(up, 0.5 * (lo + hi));
    pt.u = u_iota; // |pt.u - u_iota| is at bisection tolerance; pin exactly
    if (!(pt.sigma > up.c0))
        throw HypothesisError("solve_from_piston_speed: background shock is not supersonic "
                              "relative to the upstream state");
    return pt;
}

bool lax_check(const UpstreamState& up, const ShockLocusPoint& pt, double margin) {
    const eos::EosParams par(up.gamma);
    const double c_down = eos::sound_speed(par, {pt.nu, pt.s});
    return (pt.sigma > up.c0 + margin) && (pt.sigma + margin < c_down);
}

BoundaryMaps boundary_maps(const UpstreamState& up, const ShockLocusPoint& bg) {
    if (!(bg.nu < 1.0))
        throw DomainError("boundary_maps: background point must have nu < 1");
    const double g = up.gamma;
    const double es = std::exp(bg.s);
    const double lam_b = std::sqrt(g * es);
    const double chi0 = bg.sigma;
    const double x = (g + 1.0 - g * up.nu0) * es - up.p0;

    BoundaryMaps m{};
    m.k11 = -lam_b / (4.0 * chi0) - chi0 / (4.0 * lam_b) - 0.5;
    m.k12 = ((g + 1.0) / (2.0 * g) - 0.5 * bg.nu) * chi0;
    m.k21 = -x / (4.0 * lam_b);
    m.k22 = ((g + 1.0) / (2.0 * g) - 0.5 * bg.nu) * x
          - up.p0 * ((g + 1.0) * up.nu0 - (g - 1.0) * bg.nu) / (2.0 * (g - 1.0));
    m.kt11 = -lam_b / (4.0 * chi0) - chi0 / (4.0 * lam_b) + 0.5;
    m.det_k = m.k11 * m.k22 - m.k12 * m.k21;
    if (!(m.det_k > 0.0))
        throw HypothesisError("boundary_maps: det k <= 0; parameters outside the theory");
    m.h10 = -(m.kt11 * m.k22 - m.k12 * m.k21) / m.det_k;
    m.h20 = m.k21 / m.det_k;
    if (!(std::fabs(m.h10) > 0.0) || !(std::fabs(m.h10) < 1.0))
        throw HypothesisError("boundary_maps: |h10| = " + std::to_string(std::fabs(m.h10))
                              + " not inside (0, 1)");
    return m;
}

GMapResult g_maps(const UpstreamState& up, const ShockLocusPoint& bg, double phi3,
                  const GMapOptions& opt, const double* warm_start) {
    if (!(std::fabs(phi3) <= opt.radius))
        throw NewtonError("g_maps: |phi3| = " + std::to_string(std::fabs(phi3))
                          + " outside the configured convergence radius "
                          + std::to_string(opt.radius));

    const riemann::ReferenceState ref =
        riemann::make_reference(up.gamma, bg.nu, bg.s, bg.u);

    double phi1 = warm_start ? warm_start[0] : 0.0;
    double phi2 = warm_start ? warm_start[1] : 0.0;

    auto eval = [&](double p1, double p2, RhResiduals& r) -> bool {
        const riemann::Primitive w = riemann::from_diagonal(ref, {p1, p2, phi3});
        if (!(w.nu > 0.0) || !(w.nu < 1.0) || !(w.nu < up.nu0))
            return false;
        try {
            r = rh_residuals(up, w.nu, w.s, w.u);
        } catch (const LocusDomainError&) {
            return false;
        }
        return true;
    };

    RhResiduals r{};
    if (!eval(phi1, phi2, r)) {
        phi1 = phi2 = 0.0; // warm start escaped the domain; restart cold
        if (!eval(phi1, phi2, r))
            throw NewtonError("g_maps: residual undefined at the start point");
    }

    const double g = up.gamma;
    for (int it = 0; it < opt.max_iter; ++it) {
        const double rnorm = std::max(std::fabs(r.j1), std::fabs(r.j2));
        if (rnorm < opt.tol)
            return {phi1, phi2, it};

        // Analytic Jacobian dK/d(Phi1, Phi2) away from the base point:
        // chain rule through (b21)-(b23) with the general-point J partials.
        const riemann::Primitive w = riemann::from_diagonal(ref, {phi1, phi2, phi3});
        const double es = std::exp(w.s);
        const double p = p_lower(g, w.nu, es);
        const double rad = -(p - up.p0) * (w.nu - up.nu0);
        const double root = std::sqrt(std::max(rad, 1e-300));
        const double dj1_dnu = -0.5 / root * (g * es * (w.nu - up.nu0) - (p - up.p0));
        const double dj1_ds = 0.5 / root * p * (w.nu - up.nu0);
        const double dj2_dnu = 0.5 * es * ((g + 1.0) - g * up.nu0) - 0.5 * up.p0;
        const double dj2_ds = 0.5 * es * hugoniot_a(up, w.nu);

        const double dnu_d1 = -0.5 / ref.lambda_b;
        const double dnu_d2 = (g + 1.0) / g - ref.nu_i;
        const double du_d1 = -0.5;

        const double a11 = dj1_dnu * dnu_d1 + dj1_ds * 0.0 + 1.0 * du_d1;
        const double a12 = dj1_dnu * dnu_d2 + dj1_ds * 1.0;
        const double a21 = dj2_dnu * dnu_d1;
        const double a22 = dj2_dnu * dnu_d2 + dj2_ds * 1.0;

        const double det = a11 * a22 - a12 * a21;
        if (det == 0.0)
            throw NewtonError("g_maps: singular Jacobian");
        const double d1 = (-r.j1 * a22 + r.j2 * a12) / det;
        const double d2 = (-r.j2 * a11 + r.j1 * a21) / det;

        double lambda = 1.0;
        bool accepted = false;
        for (int back = 0; back < 30; ++back) {
            RhResiduals rt{};
            if (eval(phi1 + lambda * d1, phi2 + lambda * d2, rt)
                && std::max(std::fabs(rt.j1), std::fabs(rt.j2)) <= rnorm) {
                phi1 += lambda * d1;
                phi2 += lambda * d2;
                r = rt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw NewtonError("g_maps: damped step rejected; shock-boundary solve failure");
    }
    throw NewtonError("g_maps: no convergence within " + std::to_string(opt.max_iter)
                      + " iterations at phi3 = " + std::to_string(phi3));
}

} // namespace znd::hugoniot
