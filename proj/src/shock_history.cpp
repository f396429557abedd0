#include "znd/shock_history.hpp"

#include <algorithm>
#include <cmath>

namespace znd {

namespace {

// Cubic Hermite value and derivative on [0, h] with endpoint values/slopes.
double hermite(double y0, double y1, double m0, double m1, double h, double dt) {
    const double u = dt / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return y0 * (2.0 * u3 - 3.0 * u2 + 1.0) + y1 * (-2.0 * u3 + 3.0 * u2)
         + h * (m0 * (u3 - 2.0 * u2 + u) + m1 * (u3 - u2));
}

double hermite_deriv(double y0, double y1, double m0, double m1, double h, double dt) {
    const double u = dt / h;
    const double u2 = u * u;
    return (y0 * (6.0 * u2 - 6.0 * u) + y1 * (-6.0 * u2 + 6.0 * u)) / h
         + m0 * (3.0 * u2 - 4.0 * u + 1.0) + m1 * (3.0 * u2 - 2.0 * u);
}

} // namespace

void ShockHistory::append(double t, double chi, double chi_prime) {
    if (t_.empty()) {
        if (t != 0.0 || chi != 0.0)
            throw NumericalError("ShockHistory: first sample must be (t, chi) = (0, 0)");
    } else {
        if (!(t > t_.back()))
            throw NumericalError("ShockHistory: time must be strictly increasing");
        if (!(chi > chi_.back()))
            throw NumericalError("ShockHistory: shock position must be strictly increasing");
    }
    if (!(chi_prime > 0.0))
        throw NumericalError("ShockHistory: shock speed must stay positive");
    t_.push_back(t);
    chi_.push_back(chi);
    dchi_.push_back(chi_prime);
}

std::size_t ShockHistory::segment_of_t(double t) const {
    // Index i with t in [t_i, t_{i+1}]; clamped to the covered range.
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin());
    if (i == 0)
        return 0;
    if (i >= t_.size())
        return t_.size() - 2;
    return i - 1;
}

std::size_t ShockHistory::segment_of_x(double x) const {
    const auto it = std::upper_bound(chi_.begin(), chi_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - chi_.begin());
    if (i == 0)
        return 0;
    if (i >= chi_.size())
        return chi_.size() - 2;
    return i - 1;
}

void ShockHistory::segment_slopes(std::size_t i, double& m0, double& m1) const {
    const double sec = (chi_[i + 1] - chi_[i]) / (t_[i + 1] - t_[i]);
    // Fritsch-Carlson: slopes in [0, 3 sec] keep the cubic monotone when the
    // data are. Stored speeds sit near the secant, so the clamp is inactive
    // except under pathological step-size jumps.
    m0 = std::clamp(dchi_[i], 0.0, 3.0 * sec);
    m1 = std::clamp(dchi_[i + 1], 0.0, 3.0 * sec);
}

double ShockHistory::chi(double t) const {
    if (t_.empty())
        throw NumericalError("ShockHistory: empty");
    if (t_.size() == 1 || t <= t_.front())
        return chi_.front();
    if (t >= t_.back())
        return chi_.back();
    const std::size_t i = segment_of_t(t);
    const double h = t_[i + 1] - t_[i];
    if (mode_ == Interp::linear) {
        const double u = (t - t_[i]) / h;
        return chi_[i] * (1.0 - u) + chi_[i + 1] * u;
    }
    double m0, m1;
    segment_slopes(i, m0, m1);
    return hermite(chi_[i], chi_[i + 1], m0, m1, h, t - t_[i]);
}

double ShockHistory::chi_prime(double t) const {
    if (t_.empty())
        throw NumericalError("ShockHistory: empty");
    if (t_.size() == 1 || t <= t_.front())
        return dchi_.front();
    if (t >= t_.back())
        return dchi_.back();
    const std::size_t i = segment_of_t(t);
    const double h = t_[i + 1] - t_[i];
    if (mode_ == Interp::linear)
        return (chi_[i + 1] - chi_[i]) / h;
    double m0, m1;
    segment_slopes(i, m0, m1);
    return hermite_deriv(chi_[i], chi_[i + 1], m0, m1, h, t - t_[i]);
}

double ShockHistory::inverse(double x) const {
    if (t_.empty())
        throw NumericalError("ShockHistory: empty");
    if (x < 0.0 || x > chi_.back() * (1.0 + 1e-14) + 1e-300)
        throw DomainError("ShockHistory::inverse: x outside [0, chi(t)]");
    if (x <= 0.0)
        return t_.front();
    if (x >= chi_.back())
        return t_.back();
    const std::size_t i = segment_of_x(x);
    const double h = t_[i + 1] - t_[i];
    if (mode_ == Interp::linear) {
        const double u = (x - chi_[i]) / (chi_[i + 1] - chi_[i]);
        return t_[i] + u * h;
    }
    double m0, m1;
    segment_slopes(i, m0, m1);
    // Safeguarded Newton on the monotone cubic, bisection fallback.
    double lo = 0.0, hi = h;
    double dt = (x - chi_[i]) / std::max(m0, 1e-300); // linear first guess
    dt = std::clamp(dt, lo, hi);
    for (int it = 0; it < 60; ++it) {
        const double f = hermite(chi_[i], chi_[i + 1], m0, m1, h, dt) - x;
        if (f > 0.0)
            hi = dt;
        else
            lo = dt;
        const double df = hermite_deriv(chi_[i], chi_[i + 1], m0, m1, h, dt);
        double next = (df > 0.0) ? dt - f / df : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi))
            next = 0.5 * (lo + hi);
        if (std::fabs(next - dt) <= 1e-15 * h) {
            dt = next;
            break;
        }
        dt = next;
    }
    return t_[i] + dt;
}

} // namespace znd
