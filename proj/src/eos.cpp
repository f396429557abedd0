#include "znd/eos.hpp"

#include <cmath>

namespace znd::eos {

namespace {

void check_nu(double nu) {
    if (!(nu > 0.0))
        throw DomainError("eos: specific volume must be positive, got " + std::to_string(nu));
}

} // namespace

double internal_energy(const EosParams& par, const ThermoPoint& pt) {
    check_nu(pt.nu);
    const double g = par.gamma;
    const double es = std::exp(pt.s);
    if (pt.nu >= 1.0)
        return es * std::pow(pt.nu, 1.0 - g) / (g - 1.0);
    return 0.5 * g * es * pt.nu * pt.nu - (g + 1.0) * es * pt.nu
         + (g * g + g) * es / (2.0 * (g - 1.0));
}

double pressure(const EosParams& par, const ThermoPoint& pt) {
    check_nu(pt.nu);
    const double g = par.gamma;
    const double es = std::exp(pt.s);
    if (pt.nu >= 1.0)
        return es * std::pow(pt.nu, -g);
    return (g + 1.0) * es - g * es * pt.nu;
}

double temperature(const EosParams& par, const ThermoPoint& pt) {
    return internal_energy(par, pt);
}

double dp_dnu(const EosParams& par, const ThermoPoint& pt) {
    check_nu(pt.nu);
    const double g = par.gamma;
    const double es = std::exp(pt.s);
    if (pt.nu >= 1.0)
        return -g * es * std::pow(pt.nu, -g - 1.0);
    return -g * es;
}

double sound_speed(const EosParams& par, const ThermoPoint& pt) {
    return std::sqrt(-dp_dnu(par, pt));
}

double entropy_from_pressure(const EosParams& par, double nu, double p) {
    check_nu(nu);
    const double g = par.gamma;
    if (nu >= 1.0) {
        if (!(p > 0.0))
            throw DomainError("entropy_from_pressure: pressure must be positive, got "
                              + std::to_string(p));
        return std::log(p) + g * std::log(nu);
    }
    const double denom = g + 1.0 - g * nu;
    if (!(p > 0.0) || !(denom > 0.0))
        throw DomainError("entropy_from_pressure: inconsistent (nu, p) pair on the nu < 1 branch");
    return std::log(p / denom);
}

} // namespace znd::eos
