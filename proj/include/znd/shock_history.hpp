#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "znd/errors.hpp"

namespace znd {

/// Monotone record of the tracked front: samples (t, chi, chi') with
/// chi(0) = 0 and chi strictly increasing, plus C^1 interpolation of chi
/// and of its inverse chi^{-1}(x) on [0, chi(t_last)].
///
/// Interpolation is cubic Hermite on the stored slopes (Fritsch-Carlson
/// clamped so the interpolant stays monotone); a linear mode exists as a
/// debugging fallback.
class ShockHistory {
public:
    enum class Interp { cubic, linear };

    explicit ShockHistory(Interp mode = Interp::cubic) : mode_(mode) {}

    /// Appends one sample. Requires t and chi strictly increasing and
    /// chi' > 0; the first sample must be (0, 0, chi'(0)).
    void append(double t, double chi, double chi_prime);

    double chi(double t) const;
    double chi_prime(double t) const;

    /// t = chi^{-1}(x). Requires 0 <= x <= chi(t_last).
    double inverse(double x) const;

    std::size_t size() const { return t_.size(); }
    bool empty() const { return t_.empty(); }
    double t_back() const { return t_.back(); }
    double chi_back() const { return chi_.back(); }
    double chi_prime_back() const { return dchi_.back(); }

    std::span<const double> times() const { return t_; }
    std::span<const double> positions() const { return chi_; }
    std::span<const double> speeds() const { return dchi_; }

    Interp mode() const { return mode_; }

private:
    std::size_t segment_of_t(double t) const;
    std::size_t segment_of_x(double x) const;
    // Monotonicity-safe slopes at the ends of segment i.
    void segment_slopes(std::size_t i, double& m0, double& m1) const;

    Interp mode_;
    std::vector<double> t_;
    std::vector<double> chi_;
    std::vector<double> dchi_;
};

} // namespace znd
