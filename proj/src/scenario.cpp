#include "znd/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace znd {

using nlohmann::json;

double ScenarioConfig::g_of(double t) const {
    switch (piston) {
    case PistonProfile::constant:
        return 0.0;
    case PistonProfile::tanh_ramp:
        return std::tanh(t);
    case PistonProfile::raised_cosine:
        if (t >= piston_period)
            return 0.0;
        return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * t / piston_period));
    }
    return 0.0;
}

const char* to_string(PistonProfile p) {
    switch (p) {
    case PistonProfile::constant: return "constant";
    case PistonProfile::tanh_ramp: return "tanh_ramp";
    case PistonProfile::raised_cosine: return "raised_cosine";
    }
    return "?";
}

const char* to_string(IgnitionModel m) {
    return m == IgnitionModel::step ? "step" : "arrhenius";
}

const char* to_string(ChiInterp c) {
    return c == ChiInterp::cubic ? "cubic" : "linear";
}

namespace {

[[noreturn]] void reject(const std::string& field, const std::string& why) {
    throw ConfigError("scenario field '" + field + "': " + why);
}

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field))
        reject(field, "missing");
    if (!j.at(field).is_number())
        reject(field, "must be a number");
    return j.at(field).get<double>();
}

double optional_number(const json& j, const std::string& field, double dflt) {
    if (!j.contains(field))
        return dflt;
    if (!j.at(field).is_number())
        reject(field, "must be a number");
    return j.at(field).get<double>();
}

} // namespace

void validate_scenario(const ScenarioConfig& c) {
    if (!(c.gamma > 1.0))
        reject("gamma", "adiabatic exponent must exceed 1");
    const double nu_min = (c.gamma + 1.0) / c.gamma;
    if (!(c.nu0 > nu_min))
        reject("nu0", "must exceed (gamma+1)/gamma = " + std::to_string(nu_min)
                      + " (quiescent upstream hypothesis)");
    if (!(c.p0 > 0.0))
        reject("p0", "upstream pressure must be positive");
    if (!(c.u_iota > 0.0))
        reject("u_iota", "background piston speed must be positive");
    if (!(c.kappa > 0.0))
        reject("kappa", "reaction rate must be positive");
    if (!(c.hbar >= 0.0))
        reject("hbar", "binding energy must be non-negative");
    if (!(c.t_ignite > 0.0))
        reject("T_i", "ignition temperature must be positive");
    if (!(c.epsilon >= 0.0))
        reject("epsilon", "perturbation amplitude must be >= 0");
    if (c.piston == PistonProfile::raised_cosine && !(c.piston_period >= std::numbers::pi))
        reject("piston.period", "raised cosine needs period >= pi so that |g'| <= 1");
    if (c.n_cells < 8)
        reject("grid.n_cells", "need at least 8 cells");
    if (!(c.cfl > 0.0))
        reject("grid.cfl", "Courant number must be positive");
    if (!(c.t_end > 0.0))
        reject("t_end", "horizon must be positive");
    if (c.space_order != 1 && c.space_order != 2)
        reject("scheme.space_order", "must be 1 or 2");
    if (!(c.seed_dt > 0.0) || !(c.seed_dt < c.t_end))
        reject("scheme.seed_dt", "must lie in (0, t_end)");
    if (!(c.newton_radius > 0.0))
        reject("scheme.newton_radius", "must be positive");
    if (c.snapshot_stride < 1)
        reject("output.snapshot_stride", "must be >= 1");
    if (c.kernel != "auto" && c.kernel != "scalar" && c.kernel != "avx2"
        && c.kernel != "neon")
        reject("kernel", "must be auto, scalar, avx2 or neon");
    if (c.ignition == IgnitionModel::arrhenius && !(c.arr_a > 0.0))
        reject("ignition.A", "Arrhenius activation constant must be positive");
}

ScenarioConfig parse_scenario_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: malformed JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("scenario: top level must be a JSON object");

    ScenarioConfig c;
    c.gamma = require_number(j, "gamma");
    c.nu0 = require_number(j, "nu0");
    c.p0 = require_number(j, "p0");
    c.u_iota = require_number(j, "u_iota");
    c.kappa = optional_number(j, "kappa", c.kappa);
    c.hbar = optional_number(j, "hbar", c.hbar);
    c.t_ignite = optional_number(j, "T_i", c.t_ignite);
    c.epsilon = optional_number(j, "epsilon", c.epsilon);
    c.t_end = optional_number(j, "t_end", c.t_end);

    if (j.contains("piston")) {
        const json& p = j.at("piston");
        if (!p.is_object())
            reject("piston", "must be an object");
        const std::string prof = p.value("profile", "tanh_ramp");
        if (prof == "constant")
            c.piston = PistonProfile::constant;
        else if (prof == "tanh_ramp")
            c.piston = PistonProfile::tanh_ramp;
        else if (prof == "raised_cosine")
            c.piston = PistonProfile::raised_cosine;
        else
            reject("piston.profile", "unknown profile '" + prof + "'");
        c.piston_period = optional_number(p, "period", c.piston_period);
    }
    if (j.contains("ignition")) {
        const json& p = j.at("ignition");
        if (!p.is_object())
            reject("ignition", "must be an object");
        const std::string model = p.value("model", "step");
        if (model == "step")
            c.ignition = IgnitionModel::step;
        else if (model == "arrhenius")
            c.ignition = IgnitionModel::arrhenius;
        else
            reject("ignition.model", "unknown model '" + model + "'");
        c.arr_ell = optional_number(p, "ell", c.arr_ell);
        c.arr_a = optional_number(p, "A", c.arr_a);
    }
    if (j.contains("grid")) {
        const json& p = j.at("grid");
        if (!p.is_object())
            reject("grid", "must be an object");
        c.n_cells = static_cast<int>(optional_number(p, "n_cells", c.n_cells));
        c.cfl = optional_number(p, "cfl", c.cfl);
    }
    if (j.contains("scheme")) {
        const json& p = j.at("scheme");
        if (!p.is_object())
            reject("scheme", "must be an object");
        c.space_order = static_cast<int>(optional_number(p, "space_order", c.space_order));
        c.seed_dt = optional_number(p, "seed_dt", c.seed_dt);
        c.newton_radius = optional_number(p, "newton_radius", c.newton_radius);
        const std::string interp = p.value("chi_inverse_interp", "cubic");
        if (interp == "cubic")
            c.chi_interp = ChiInterp::cubic;
        else if (interp == "linear")
            c.chi_interp = ChiInterp::linear;
        else
            reject("scheme.chi_inverse_interp", "must be cubic or linear");
    }
    if (j.contains("output")) {
        const json& p = j.at("output");
        if (!p.is_object())
            reject("output", "must be an object");
        c.snapshot_stride =
            static_cast<int>(optional_number(p, "snapshot_stride", c.snapshot_stride));
    }
    if (j.contains("kernel")) {
        if (!j.at("kernel").is_string())
            reject("kernel", "must be a string");
        c.kernel = j.at("kernel").get<std::string>();
    }

    validate_scenario(c);
    return c;
}

ScenarioConfig parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("scenario: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string canonical_text(const ScenarioConfig& c) {
    std::ostringstream s;
    s << "gamma=" << num(c.gamma) << ";nu0=" << num(c.nu0) << ";p0=" << num(c.p0)
      << ";u_iota=" << num(c.u_iota) << ";kappa=" << num(c.kappa)
      << ";hbar=" << num(c.hbar) << ";T_i=" << num(c.t_ignite)
      << ";ignition=" << to_string(c.ignition) << ";arr_ell=" << num(c.arr_ell)
      << ";arr_A=" << num(c.arr_a) << ";epsilon=" << num(c.epsilon)
      << ";piston=" << to_string(c.piston) << ";period=" << num(c.piston_period)
      << ";n_cells=" << c.n_cells << ";cfl=" << num(c.cfl) << ";t_end=" << num(c.t_end)
      << ";space_order=" << c.space_order << ";seed_dt=" << num(c.seed_dt)
      << ";newton_radius=" << num(c.newton_radius)
      << ";chi_interp=" << to_string(c.chi_interp)
      << ";snapshot_stride=" << c.snapshot_stride << ";kernel=" << c.kernel;
    return s.str();
}

std::string config_hash(const ScenarioConfig& c) {
    const std::string text = canonical_text(c);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace znd
