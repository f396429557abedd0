#pragma once

#include <cstdint>
#include <string>

#include "znd/errors.hpp"

namespace znd {

enum class PistonProfile { constant, tanh_ramp, raised_cosine };
enum class IgnitionModel { step, arrhenius };
enum class ChiInterp { cubic, linear };

/// Full description of one run. Parsed from a JSON scenario file (schema
/// ships in scenarios/scenario.schema.json); every invariant is checked at
/// parse time with a field-level message.
struct ScenarioConfig {
    // upstream gas and background piston speed
    double gamma = 1.4;
    double nu0 = 2.0;
    double p0 = 1.0;
    double u_iota = 2.5;

    // reaction
    double kappa = 1.0;    ///< reaction rate, > 0
    double hbar = 0.0;     ///< binding energy, >= 0
    double t_ignite = 1e6; ///< ignition temperature, > 0
    IgnitionModel ignition = IgnitionModel::step;
    double arr_ell = 0.0;
    double arr_a = 1.0;

    // piston forcing B'(t) = u_iota + epsilon * g(t), g(0) = 0, |g|_C1 <= 1
    double epsilon = 0.0;
    PistonProfile piston = PistonProfile::tanh_ramp;
    double piston_period = 4.0; ///< raised_cosine only; >= pi keeps |g'| <= 1

    // discretization
    int n_cells = 400;
    double cfl = 0.4;
    double t_end = 10.0;
    int space_order = 1;
    double seed_dt = 1e-4;       ///< width of the initial degenerate-domain seed step
    double newton_radius = 0.1;  ///< |phi3| convergence radius for the shock maps
    ChiInterp chi_interp = ChiInterp::cubic;
    int snapshot_stride = 50;    ///< record a field snapshot every this many steps
    std::string kernel = "auto"; ///< auto | scalar | avx2 | neon

    double g_of(double t) const;
    double piston_velocity(double t) const { return u_iota + epsilon * g_of(t); }
};

/// Parses and validates a scenario file. Errors name the offending field
/// and the violated hypothesis.
ScenarioConfig parse_scenario(const std::string& path);

/// Same, from in-memory JSON text.
ScenarioConfig parse_scenario_text(const std::string& text);

void validate_scenario(const ScenarioConfig& cfg);

/// Deterministic serialization of the effective configuration; the basis of
/// the reproducibility hash embedded in every output file.
std::string canonical_text(const ScenarioConfig& cfg);

/// FNV-1a over canonical_text, rendered as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

const char* to_string(PistonProfile p);
const char* to_string(IgnitionModel m);
const char* to_string(ChiInterp c);

} // namespace znd
