#pragma once

#include "znd/errors.hpp"

namespace znd::eos {

/// Adiabatic exponent bundle. gamma > 1 is enforced at construction.
struct EosParams {
    double gamma;

    explicit EosParams(double g) : gamma(g) {
        if (!(g > 1.0))
            throw ConfigError("EosParams: gamma must exceed 1, got " + std::to_string(g));
    }
};

/// Fundamental thermodynamic pair. All other quantities (e, p, T, sound
/// speed) are derived from (nu, s); they are never stored independently.
struct ThermoPoint {
    double nu; ///< specific volume, > 0
    double s;  ///< specific entropy
};

/// Specific internal energy e(nu, s). Piecewise in nu with a C^1 join at
/// nu = 1:
///   nu >= 1 : e^s nu^(1-gamma) / (gamma-1)
///   nu <  1 : (gamma/2) e^s nu^2 - (gamma+1) e^s nu + (gamma^2+gamma) e^s / (2(gamma-1))
double internal_energy(const EosParams& par, const ThermoPoint& pt);

/// Pressure p(nu, s) = -e_nu:
///   nu >= 1 : e^s nu^(-gamma)
///   nu <  1 : (gamma+1) e^s - gamma e^s nu
double pressure(const EosParams& par, const ThermoPoint& pt);

/// Temperature. This gas law fixes T = e.
double temperature(const EosParams& par, const ThermoPoint& pt);

/// p_nu(nu, s), strictly negative on the whole admissible domain
/// (hyperbolicity). Constant -gamma e^s on the lower branch.
double dp_dnu(const EosParams& par, const ThermoPoint& pt);

/// Lagrangian sound speed sqrt(-p_nu).
double sound_speed(const EosParams& par, const ThermoPoint& pt);

/// Inverts pressure(nu, .) = p for the entropy on the branch selected by nu:
///   nu >= 1 : s = ln(p nu^gamma)
///   nu <  1 : s = ln(p / (gamma+1 - gamma nu))
/// Throws DomainError when the log argument is not positive.
double entropy_from_pressure(const EosParams& par, double nu, double p);

} // namespace znd::eos
