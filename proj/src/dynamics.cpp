#include "dlz/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "dlz/errors.hpp"

namespace dlz {

namespace odeint = boost::numeric::odeint;

namespace {

using BlochVector = std::array<double, 3>;
using Spinor = std::array<double, 4>; // Re psi0, Im psi0, Re psi1, Im psi1

bool finite(const BlochVector& r) {
    return std::isfinite(r[0]) && std::isfinite(r[1]) && std::isfinite(r[2]);
}

// Smallest step accepted before declaring the integration stuck.
double step_floor(double t) {
    return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
}

// Instantaneous ground state of -(eps/2) sigma_z - (Delta/2) sigma_x; Bloch direction (Delta, 0, eps)/E.
Spinor lab_ground_state(double eps) {
    const double theta = std::atan2(kGap, eps);
    return {std::cos(0.5 * theta), 0.0, std::sin(0.5 * theta), 0.0};
}

} // namespace

double BlochState::norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw ValidationError("rel_tol must be > 0, got " + std::to_string(rel_tol));
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
        throw ValidationError("abs_tol must be > 0, got " + std::to_string(abs_tol));
    if (max_step && (!(*max_step > 0.0) || !std::isfinite(*max_step)))
        throw ValidationError("max_step must be > 0, got " + std::to_string(*max_step));
    if (samples < 2) throw ValidationError("at least two output samples are required");
}

double IntegratorConfig::resolved_max_step(double max_splitting) const {
    return max_step.value_or(kMaxStepFactor / max_splitting);
}

IntegratorConfig IntegratorConfig::halved() const {
    IntegratorConfig out = *this;
    out.rel_tol *= 0.5;
    out.abs_tol *= 0.5;
    return out;
}

IntegratorConfig IntegratorConfig::lab_frame_oracle() {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    return cfg;
}

BlochState initial_state(const FrameQuantities& fq) noexcept {
    const double n = std::hypot(fq.splitting, fq.phi_dot);
    return {fq.splitting / n, -fq.phi_dot / n, 0.0};
}

BlochState initial_state(const SweepProtocol& p) noexcept { return initial_state(frame_at(p, p.t_begin())); }

BlochState bloch_derivative(const BlochState& s, const RateSet& k) noexcept {
    const double dx = s.x - k.r_bar_x;
    return {
        (k.phi_dot - k.gamma_xz) * s.z - k.gamma_r * dx,
        k.splitting * s.z - (k.gamma_d + k.gamma_r) * s.y,
        -k.phi_dot * s.x - k.splitting * s.y - k.gamma_d * s.z - k.gamma_zx * dx,
    };
}

Trajectory integrate(const RateFunction& rates, const BlochState& initial, double t_begin, double t_end,
                     double max_splitting, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(t_end > t_begin)) throw ValidationError("integration window must have t_end > t_begin");
    if (!(max_splitting > 0.0)) throw ValidationError("max_splitting must be > 0");

    const double max_step = cfg.resolved_max_step(max_splitting);
    auto rhs = [&rates](const BlochVector& r, BlochVector& drdt, double t) {
        const BlochState d = bloch_derivative({r[0], r[1], r[2]}, rates(t));
        drdt = {d.x, d.y, d.z};
    };

    auto stepper = odeint::make_dense_output(cfg.abs_tol, cfg.rel_tol, max_step,
                                             odeint::runge_kutta_dopri5<BlochVector>());

    Trajectory traj;
    traj.stats.rel_tol = cfg.rel_tol;
    traj.stats.abs_tol = cfg.abs_tol;
    traj.stats.max_step = max_step;
    traj.samples.reserve(cfg.samples);

    auto record = [&](double t, const BlochVector& r) {
        TrajectorySample s{t, {r[0], r[1], r[2]}, std::nullopt};
        if (cfg.record_rates) s.rates = rates(t);
        traj.samples.push_back(s);
    };
    auto track_norm = [&](const BlochVector& r) {
        const double excess = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]) - 1.0;
        if (excess > traj.stats.max_norm_excess) traj.stats.max_norm_excess = excess;
    };

    const BlochVector x0{initial.x, initial.y, initial.z};
    track_norm(x0);
    record(t_begin, x0);
    stepper.initialize(x0, t_begin, 0.1 * max_step);

    const double span = t_end - t_begin;
    const auto last = cfg.samples - 1;
    BlochVector r{};
    for (std::size_t k = 1; k <= last; ++k) {
        const double t_k = k == last ? t_end : t_begin + span * static_cast<double>(k) / static_cast<double>(last);
        while (stepper.current_time() < t_k) {
            try {
                stepper.do_step(rhs);
            } catch (const odeint::odeint_error& e) {
                throw IntegrationError(std::string("step size control failed: ") + e.what(), stepper.current_time());
            }
            ++traj.stats.steps;
            const BlochVector& cur = stepper.current_state();
            if (!finite(cur)) throw IntegrationError("non-finite Bloch vector", stepper.current_time());
            if (stepper.current_time_step() < step_floor(stepper.current_time()))
                throw IntegrationError("step size underflow", stepper.current_time());
            track_norm(cur);
        }
        stepper.calc_state(t_k, r);
        track_norm(r);
        record(t_k, r);
    }
    traj.stats.norm_warning = traj.stats.max_norm_excess > IntegratorConfig::kNormWarning;
    return traj;
}

Trajectory integrate(const SweepProtocol& p, const Environment& env, const IntegratorConfig& cfg) {
    env.validate();
    auto rates = [&p, &env](double t) { return rates_at(env, frame_at(p, t)); };
    return integrate(rates, initial_state(p), p.t_begin(), p.t_end(), p.max_splitting(), cfg);
}

double coherent_lab_frame_oracle(const SweepProtocol& p, const IntegratorConfig& cfg) {
    cfg.validate();
    auto rhs = [&p](const Spinor& psi, Spinor& dpsi, double t) {
        const double h00 = -0.5 * evaluate_drive(p, t);
        const double h01 = -0.5 * kGap;
        // (H psi) with H real symmetric [[h00, h01], [h01, -h00]]
        const double a0 = h00 * psi[0] + h01 * psi[2], b0 = h00 * psi[1] + h01 * psi[3];
        const double a1 = h01 * psi[0] - h00 * psi[2], b1 = h01 * psi[1] - h00 * psi[3];
        // dpsi/dt = -i H psi
        dpsi = {b0, -a0, b1, -a1};
    };

    const double max_step = cfg.max_step.value_or(p.t_end() - p.t_begin());
    auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, max_step,
                                           odeint::runge_kutta_fehlberg78<Spinor>());
    Spinor psi = lab_ground_state(evaluate_drive(p, p.t_begin()));
    double t = p.t_begin();
    try {
        odeint::integrate_adaptive(stepper, rhs, psi, t, p.t_end(), 0.1 / p.max_splitting(),
                                   [&t](const Spinor& s, double now) {
                                       t = now;
                                       if (!std::isfinite(s[0] + s[1] + s[2] + s[3]))
                                           throw IntegrationError("non-finite spinor", now);
                                   });
    } catch (const odeint::odeint_error& e) {
        throw IntegrationError(std::string("step size control failed: ") + e.what(), t);
    }

    const Spinor g = lab_ground_state(evaluate_drive(p, p.t_end()));
    const double re = g[0] * psi[0] + g[2] * psi[2];
    const double im = g[0] * psi[1] + g[2] * psi[3];
    return re * re + im * im;
}

} // namespace dlz
