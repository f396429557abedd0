#include "znd/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace znd {

namespace {

Background make_background(const ScenarioConfig& cfg) {
    Background bg{};
    bg.up = hugoniot::make_upstream(cfg.gamma, cfg.nu0, cfg.p0);
    bg.locus = hugoniot::solve_from_piston_speed(bg.up, cfg.u_iota);
    bg.maps = hugoniot::boundary_maps(bg.up, bg.locus);
    bg.ref = riemann::make_reference(cfg.gamma, bg.locus.nu, bg.locus.s, bg.locus.u);
    bg.scaling = riemann::choose_scaling(bg.maps.h10, bg.maps.h20);
    // chi0 via the same evaluation path the shock ODE uses, so the exact
    // background run keeps chi' - chi0 at literal zero.
    bg.chi0 = hugoniot::shock_speed_of(bg.up, bg.locus.nu, bg.locus.s);
    const eos::EosParams par(cfg.gamma);
    const double t_down = eos::temperature(par, {bg.locus.nu, bg.locus.s});
    bg.reaction_on = t_down > cfg.t_ignite;
    return bg;
}

std::string diag(const char* what, double t, long step) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s (t = %.9g, step = %ld)", what, t, step);
    return buf;
}

} // namespace

double z_field(const ShockHistory& history, double kappa, double t, double x) {
    if (x < 0.0)
        throw DomainError("z_field: x must be non-negative");
    const double tau = history.inverse(x); // throws when x > chi(t_last)
    if (tau > t * (1.0 + 1e-12) + 1e-300)
        throw DomainError("z_field: x lies ahead of the front at this time");
    return std::exp(-kappa * (t - tau));
}

GasState reconstruct_physical(const riemann::ReferenceState& ref,
                              const riemann::ScalingParams& sc,
                              const riemann::DiagonalState& phi_hat, double z,
                              double /*hbar*/) {
    const riemann::Primitive w = riemann::from_diagonal(ref, riemann::unscale(sc, phi_hat));
    if (!(w.nu > 0.0) || !(w.nu < 1.0))
        throw StateEscapeError("reconstruct_physical: nu = " + std::to_string(w.nu)
                               + " left (0, 1)");
    const eos::EosParams par(ref.gamma);
    const eos::ThermoPoint pt{w.nu, w.s};
    return {w.nu, w.u, eos::pressure(par, pt), w.s, eos::temperature(par, pt), z};
}

Simulator::Simulator(const ScenarioConfig& cfg)
    : cfg_(cfg),
      bg_(make_background(cfg)),
      kernels_(cfg.ignition == IgnitionModel::arrhenius
                   ? &kernels::scalar_kernels()
                   : &kernels::select_kernels(cfg.kernel)),
      n_(static_cast<std::size_t>(cfg.n_cells) + 1),
      dxi_(1.0 / cfg.n_cells),
      history_(cfg.chi_interp == ChiInterp::cubic ? ShockHistory::Interp::cubic
                                                  : ShockHistory::Interp::linear) {
    validate_scenario(cfg_);
    if (cfg_.ignition == IgnitionModel::arrhenius && cfg_.kernel != "auto"
        && cfg_.kernel != "scalar")
        warnings_.push_back("Arrhenius ignition runs on the scalar kernel path");
    const auto zeros = std::vector<double>(n_, 0.0);
    phi1_ = phi2_ = phi3_ = zeros;
    tau1_ = tau2_ = tau3_ = zeros;
    phi1n_ = phi2n_ = phi3n_ = zeros;
    tau1n_ = tau2n_ = tau3n_ = zeros;
    age_ = lam_ = b2_ = b3_ = src_ = s2_ = nu_ = temp_ = zeros;
    history_.append(0.0, 0.0, bg_.chi0);
}

kernels::StepConsts Simulator::consts(double dt) const {
    kernels::StepConsts c{};
    c.alpha = bg_.scaling.alpha;
    c.beta = bg_.scaling.beta;
    c.lambda_b = bg_.ref.lambda_b;
    c.s_iota = bg_.ref.s_i;
    c.nu_iota = bg_.ref.nu_i;
    c.gamma = cfg_.gamma;
    c.coef_nu = (cfg_.gamma + 1.0) / cfg_.gamma - bg_.ref.nu_i;
    c.kappa = cfg_.kappa;
    c.hbar = cfg_.hbar;
    c.t_ignite = cfg_.t_ignite;
    c.reaction_on = bg_.reaction_on ? 1 : 0;
    c.arrhenius = cfg_.ignition == IgnitionModel::arrhenius ? 1 : 0;
    c.arr_ell = cfg_.arr_ell;
    c.arr_a = cfg_.arr_a;
    c.chi = history_.chi_back();
    c.chi_prime = history_.chi_prime_back();
    c.dt = dt;
    c.inv_dxi = 1.0 / dxi_;
    c.space_order = cfg_.space_order;
    return c;
}

void Simulator::compute_ages() {
    const double chi_now = history_.chi_back();
    for (std::size_t j = 0; j < n_; ++j) {
        const double x = (static_cast<double>(j) * dxi_) * chi_now;
        const double tau = (j + 1 == n_) ? t_ : history_.inverse(std::min(x, chi_now));
        age_[j] = std::max(t_ - tau, 0.0);
    }
}

double Simulator::shock_speed_now() const {
    const riemann::Primitive w = riemann::from_diagonal(
        bg_.ref, riemann::unscale(bg_.scaling, {phi1_[n_ - 1], phi2_[n_ - 1], phi3_[n_ - 1]}));
    return hugoniot::shock_speed_of(bg_.up, w.nu, w.s);
}

void Simulator::apply_closures(double t_new, double dt) {
    const std::size_t nn = n_ - 1;
    const double alpha = bg_.scaling.alpha;
    const double beta = bg_.scaling.beta;

    // Piston (b0 cancels analytically: B'(t) - b0 = epsilon g(t)).
    phi3n_[0] = alpha * phi1n_[0] + 2.0 * cfg_.epsilon * cfg_.g_of(t_new);
    tau3n_[0] = (phi3n_[0] - phi3_[0]) / dt;
    if (!piston_warned_ && cfg_.piston_velocity(t_new) <= 0.0) {
        warnings_.push_back(diag("piston velocity crossed zero", t_new, steps_));
        piston_warned_ = true;
    }

    // Shock: families 1 and 2 enter the domain; Newton on the jump maps.
    const double warm[2] = {alpha * phi1_[nn], phi2_[nn] / beta};
    hugoniot::GMapOptions opt;
    opt.radius = cfg_.newton_radius;
    hugoniot::GMapResult gm;
    try {
        gm = hugoniot::g_maps(bg_.up, bg_.locus, phi3n_[nn], opt, warm);
    } catch (const NewtonError& e) {
        throw NewtonError(diag(e.what(), t_new, steps_));
    }
    phi1n_[nn] = gm.phi1 / alpha;
    phi2n_[nn] = beta * gm.phi2;
    tau1n_[nn] = (phi1n_[nn] - phi1_[nn]) / dt;
    tau2n_[nn] = (phi2n_[nn] - phi2_[nn]) / dt;
}

void Simulator::seed_step() {
    // chi(0) = 0 makes the domain a point; open it with one background-state
    // interval of width chi0 * seed_dt before the PDE stepping starts.
    const double dt = cfg_.seed_dt;
    const double t_new = dt;
    phi1n_ = phi1_;
    phi2n_ = phi2_;
    phi3n_ = phi3_;
    std::fill(tau1n_.begin(), tau1n_.end(), 0.0);
    std::fill(tau2n_.begin(), tau2n_.end(), 0.0);
    std::fill(tau3n_.begin(), tau3n_.end(), 0.0);
    apply_closures(t_new, dt);
    phi1_.swap(phi1n_);
    phi2_.swap(phi2n_);
    phi3_.swap(phi3n_);
    tau1_.swap(tau1n_);
    tau2_.swap(tau2n_);
    tau3_.swap(tau3n_);
    t_ = t_new;
    const double sigma = shock_speed_now();
    history_.append(t_new, bg_.chi0 * dt, sigma);
    ++steps_;
}

void Simulator::step() {
    if (steps_ == 0) {
        seed_step();
        return;
    }

    compute_ages();

    kernels::StepConsts c = consts(0.0);
    kernels::StepArrays a{};
    a.phi1 = phi1_.data();
    a.phi2 = phi2_.data();
    a.phi3 = phi3_.data();
    a.tau1_lag = tau1_.data();
    a.tau2_lag = tau2_.data();
    a.tau3_lag = tau3_.data();
    a.age = age_.data();
    a.lam = lam_.data();
    a.b2 = b2_.data();
    a.b3 = b3_.data();
    a.src = src_.data();
    a.s2 = s2_.data();
    a.nu = nu_.data();
    a.temp = temp_.data();
    a.phi1_new = phi1n_.data();
    a.phi2_new = phi2n_.data();
    a.phi3_new = phi3n_.data();
    a.tau1_new = tau1n_.data();
    a.tau2_new = tau2n_.data();
    a.tau3_new = tau3n_.data();
    a.n = n_;

    kernels_->coeffs(a, c);

    for (std::size_t j = 0; j < n_; ++j)
        if (!(nu_[j] > 0.0) || !(nu_[j] < 1.0))
            throw StateEscapeError(diag("downstream nu left (0, 1)", t_, steps_));

    // CFL bound from the mapped characteristic speeds (lam - xi chi')/chi.
    double fastest = 0.0;
    const double chi_p = std::max(c.chi_prime, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        const double xi = static_cast<double>(j) * dxi_;
        fastest = std::max(fastest, lam_[j] + xi * chi_p);
    }
    double dt = cfg_.cfl * dxi_ * c.chi / fastest;

    // Land exactly on pending checkpoint times.
    while (!pending_checkpoints_.empty() && pending_checkpoints_.back() <= t_)
        pending_checkpoints_.pop_back();
    if (!pending_checkpoints_.empty()) {
        const double t_next = pending_checkpoints_.back();
        if (t_ + dt >= t_next)
            dt = t_next - t_;
    }
    if (!(dt > 1e-14 * std::max(1.0, t_)))
        throw CflError(diag("time step underflow", t_, steps_));

    c.dt = dt;
    kernels_->update(a, c);

    const double t_new = t_ + dt;
    apply_closures(t_new, dt);

    phi1_.swap(phi1n_);
    phi2_.swap(phi2n_);
    phi3_.swap(phi3n_);
    tau1_.swap(tau1n_);
    tau2_.swap(tau2n_);
    tau3_.swap(tau3n_);

    // Front advance: Heun on the shock ODE with the updated boundary state.
    const double sigma_new = shock_speed_now();
    {
        const riemann::Primitive w = riemann::from_diagonal(
            bg_.ref,
            riemann::unscale(bg_.scaling, {phi1_[n_ - 1], phi2_[n_ - 1], phi3_[n_ - 1]}));
        const eos::EosParams par(cfg_.gamma);
        const double c_down = eos::sound_speed(par, {w.nu, w.s});
        if (!(sigma_new > bg_.up.c0) || !(sigma_new < c_down))
            throw StateEscapeError(diag("Lax admissibility lost at the front", t_new, steps_));
    }
    const double chi_new =
        history_.chi_back() + 0.5 * dt * (history_.chi_prime_back() + sigma_new);
    history_.append(t_new, chi_new, sigma_new);

    t_ = t_new;
    ++steps_;
}

GasState Simulator::gas_at(std::size_t j) const {
    const double x = static_cast<double>(j) * dxi_ * history_.chi_back();
    const double z = bg_.reaction_on
                         ? z_field(history_, cfg_.kappa, t_, std::min(x, history_.chi_back()))
                         : 1.0;
    return reconstruct_physical(bg_.ref, bg_.scaling, {phi1_[j], phi2_[j], phi3_[j]}, z,
                                cfg_.hbar);
}

// ---------------------------------------------------------------------------
// Run driver: traces, snapshots, probes.
// ---------------------------------------------------------------------------

struct RunDriver {
    static TimeSeries run(const ScenarioConfig& cfg, const RunProbes* probes) {
        Simulator sim(cfg);
        TimeSeries out;
        out.cfg = cfg;
        out.bg = sim.bg_;
        out.kernel = sim.kernels_->name;
        out.warnings = sim.warnings_;

        std::vector<double> cps;
        cps.push_back(cfg.t_end);
        if (probes) {
            for (double t : probes->checkpoints)
                if (t > 0.0 && t <= cfg.t_end)
                    cps.push_back(t);
            if (!probes->station_x.empty()) {
                cps.push_back(probes->station_t0);
                cps.push_back(probes->station_t1);
            }
            out.station_x = probes->station_x;
            out.stations.resize(out.station_x.size());
        }
        std::sort(cps.begin(), cps.end());
        cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
        sim.pending_checkpoints_.assign(cps.rbegin(), cps.rend());

        auto is_checkpoint = [&](double t) {
            for (double v : cps)
                if (std::fabs(v - t) <= 1e-12 * std::max(1.0, v))
                    return true;
            return false;
        };

        while (sim.time() < cfg.t_end - 1e-12 * cfg.t_end) {
            sim.step();
            record_norms(sim, out);
            record_shock(sim, out);
            const bool at_cp = is_checkpoint(sim.time());
            if (sim.steps_ % cfg.snapshot_stride == 0 || at_cp
                || sim.time() >= cfg.t_end - 1e-12 * cfg.t_end)
                record_snapshot(sim, out);
            if (probes && !probes->station_x.empty() && sim.time() >= probes->station_t0
                && sim.time() <= probes->station_t1 * (1.0 + 1e-12))
                record_stations(sim, out);
        }
        out.history = sim.history_;
        out.steps = sim.steps_;
        out.warnings = sim.warnings_;
        return out;
    }

    static void record_norms(const Simulator& s, TimeSeries& out) {
        double c0 = 0.0, d0 = 0.0;
        const double inv_dx = 1.0 / (s.dxi_ * s.history_.chi_back());
        for (std::size_t j = 0; j < s.n_; ++j) {
            c0 = std::max({c0, std::fabs(s.phi1_[j]), std::fabs(s.phi2_[j]),
                           std::fabs(s.phi3_[j])});
            if (j + 1 < s.n_) {
                d0 = std::max({d0, std::fabs(s.phi1_[j + 1] - s.phi1_[j]) * inv_dx,
                               std::fabs(s.phi2_[j + 1] - s.phi2_[j]) * inv_dx,
                               std::fabs(s.phi3_[j + 1] - s.phi3_[j]) * inv_dx});
            }
        }
        out.norms.push_back(
            {s.t_, c0, d0, s.history_.chi_back(), s.history_.chi_prime_back()});
    }

    static void record_shock(const Simulator& s, TimeSeries& out) {
        const std::size_t nn = s.n_ - 1;
        const riemann::Primitive w = riemann::from_diagonal(
            s.bg_.ref,
            riemann::unscale(s.bg_.scaling, {s.phi1_[nn], s.phi2_[nn], s.phi3_[nn]}));
        const eos::EosParams par(s.cfg_.gamma);
        const double p = eos::pressure(par, {w.nu, w.s});
        const double e = eos::internal_energy(par, {w.nu, w.s});
        // Z = 1 exactly at the front.
        const double e_total = 0.5 * w.u * w.u + e + s.cfg_.hbar;
        out.shock_trace.push_back({s.t_, s.history_.chi_back(), s.history_.chi_prime_back(),
                                   w.nu, w.s, w.u, p, e_total});
    }

    static void record_snapshot(const Simulator& s, TimeSeries& out) {
        if (!out.snapshots.empty()
            && out.snapshots.back().t >= s.t_ - 1e-15 * std::max(1.0, s.t_))
            return;
        FieldSnapshot snap;
        snap.t = s.t_;
        snap.chi = s.history_.chi_back();
        snap.chi_prime = s.history_.chi_prime_back();
        snap.phi1 = s.phi1_;
        snap.phi2 = s.phi2_;
        snap.phi3 = s.phi3_;
        out.snapshots.push_back(std::move(snap));
    }

    static void record_stations(const Simulator& s, TimeSeries& out) {
        const double chi_now = s.history_.chi_back();
        for (std::size_t k = 0; k < out.station_x.size(); ++k) {
            const double x = out.station_x[k];
            if (x < 0.0 || x > chi_now)
                continue;
            const double pos = x / chi_now / s.dxi_;
            const std::size_t j0 =
                std::min(static_cast<std::size_t>(pos), s.n_ - 2);
            const double w = pos - static_cast<double>(j0);
            // Cubic interpolation of the diagonal state, then reconstruct.
            auto interp = [&](const std::vector<double>& f) {
                if (j0 == 0 || j0 + 2 >= s.n_) // linear near the boundary
                    return f[j0] * (1.0 - w) + f[j0 + 1] * w;
                const double fm = f[j0 - 1], f0 = f[j0], f1 = f[j0 + 1], f2 = f[j0 + 2];
                return f0
                     + w * (0.5 * (f1 - fm)
                            + w * (fm - 2.5 * f0 + 2.0 * f1 - 0.5 * f2
                                   + w * (0.5 * (f2 - fm) + 1.5 * (f0 - f1))));
            };
            const riemann::DiagonalState ph{interp(s.phi1_), interp(s.phi2_),
                                            interp(s.phi3_)};
            const double z = s.bg_.reaction_on
                                 ? z_field(s.history_, s.cfg_.kappa, s.t_, x)
                                 : 1.0;
            const GasState g =
                reconstruct_physical(s.bg_.ref, s.bg_.scaling, ph, z, s.cfg_.hbar);
            const double e_total = total_energy(g, s.cfg_.hbar);
            out.stations[k].push_back({s.t_, g.nu, g.u, g.p, e_total, g.p * g.u});
        }
    }
};

TimeSeries Simulator::run(const ScenarioConfig& cfg, const RunProbes* probes) {
    return RunDriver::run(cfg, probes);
}

} // namespace znd
