#pragma once

#include <string>
#include <vector>

#include "znd/hugoniot.hpp"
#include "znd/kernels.hpp"
#include "znd/riemann.hpp"
#include "znd/scenario.hpp"
#include "znd/shock_history.hpp"

namespace znd {

/// Physical state at a point. p and T are derived from the fundamental
/// (nu, s) pair; Z carries the burnt fraction.
struct GasState {
    double nu, u, p, s, T, Z;
};

/// Scaled diagonal field at one instant. Derived per-node quantities are
/// reconstructed on demand (see reconstruct_physical).
struct FieldSnapshot {
    double t;
    double chi;
    double chi_prime;
    std::vector<double> phi1, phi2, phi3;
};

struct NormSample {
    double t;
    double phi_c0;  ///< sup over nodes and components of |Phihat|
    double dphi_c0; ///< sup of the finite-difference x-derivative
    double chi;
    double chi_prime;
};

/// Per-step downstream state at the front, for independent jump-condition
/// re-verification.
struct ShockSample {
    double t, chi, chi_prime;
    double nu, s, u, p, e_total;
};

/// Field probe at a fixed physical station (weak-form bookkeeping).
struct StationSample {
    double t;
    double nu, u, p, e_total, pu;
};

/// Everything derived once per scenario: the background constant shock,
/// its boundary linearization, and the chosen scaling.
struct Background {
    hugoniot::UpstreamState up;
    hugoniot::ShockLocusPoint locus;
    hugoniot::BoundaryMaps maps;
    riemann::ReferenceState ref;
    riemann::ScalingParams scaling;
    double chi0;
    bool reaction_on; ///< T(nu_i, s_i) > T_i: detonation regime
};

struct RunProbes {
    std::vector<double> station_x;      ///< fixed stations to sample each step
    double station_t0 = 0.0;
    double station_t1 = 0.0;
    std::vector<double> checkpoints;    ///< times to land on exactly (snapshots forced)
};

struct TimeSeries {
    ScenarioConfig cfg;
    Background bg;
    std::string kernel;
    long steps = 0;
    ShockHistory history;
    std::vector<NormSample> norms;
    std::vector<FieldSnapshot> snapshots;
    std::vector<ShockSample> shock_trace;
    std::vector<double> station_x;
    std::vector<std::vector<StationSample>> stations;
    std::vector<std::string> warnings;
};

/// Burnt fraction behind the front: Z = exp(-kappa (t - chi^{-1}(x))),
/// in (0, 1]. Requires 0 <= x <= chi(t).
double z_field(const ShockHistory& history, double kappa, double t, double x);

/// Unscale, undiagonalize, evaluate the gas law. Throws StateEscapeError
/// when the reconstructed nu leaves (0, 1).
GasState reconstruct_physical(const riemann::ReferenceState& ref,
                              const riemann::ScalingParams& sc,
                              const riemann::DiagonalState& phi_hat, double z,
                              double hbar);

/// Total energy of a gas state: u^2/2 + e + Z hbar (T doubles as e).
inline double total_energy(const GasState& g, double hbar) {
    return 0.5 * g.u * g.u + g.T + g.Z * hbar;
}

/// Front-tracked integrator for the scaled diagonal free-boundary system on
/// xi = x / chi(t) in [0, 1]. One instance is one strictly sequential run;
/// distinct instances are independent.
class Simulator {
public:
    explicit Simulator(const ScenarioConfig& cfg);

    /// One explicit step (the first call consumes the degenerate-domain seed).
    void step();

    double time() const { return t_; }
    double chi() const { return history_.chi_back(); }
    double chi_prime() const { return history_.chi_prime_back(); }
    long steps() const { return steps_; }
    const Background& background() const { return bg_; }
    const ShockHistory& history() const { return history_; }
    const char* kernel_name() const { return kernels_->name; }
    std::size_t nodes() const { return n_; }

    riemann::DiagonalState phi_hat(std::size_t j) const {
        return {phi1_[j], phi2_[j], phi3_[j]};
    }
    GasState gas_at(std::size_t j) const;

    /// Runs a full scenario and collects traces, snapshots and probes.
    static TimeSeries run(const ScenarioConfig& cfg, const RunProbes* probes = nullptr);

private:
    void seed_step();
    void compute_ages();
    void apply_closures(double t_new, double dt);
    kernels::StepConsts consts(double dt) const;
    double shock_speed_now() const; // F-hat at the current shock node

    ScenarioConfig cfg_;
    Background bg_;
    const kernels::Kernels* kernels_;
    std::size_t n_;
    double dxi_;
    double t_ = 0.0;
    long steps_ = 0;
    bool piston_warned_ = false;

    ShockHistory history_;
    std::vector<double> phi1_, phi2_, phi3_;    // current scaled state
    std::vector<double> tau1_, tau2_, tau3_;    // lagged nodal time derivatives
    std::vector<double> phi1n_, phi2n_, phi3n_; // next state
    std::vector<double> tau1n_, tau2n_, tau3n_;
    std::vector<double> age_, lam_, b2_, b3_, src_, s2_, nu_, temp_;

    std::vector<double> pending_checkpoints_;
    std::vector<std::string> warnings_;

    friend struct RunDriver;
};

} // namespace znd
