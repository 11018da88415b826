// dynamics.hpp - Bloch master equations in the adiabatic frame and a coherent lab-frame oracle

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "dlz/bath.hpp"
#include "dlz/core_model.hpp"

namespace dlz {

// Bloch vector of rho = (1 + r . sigma) / 2 in the rotated frame.
struct BlochState {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm() const noexcept;
    friend bool operator==(const BlochState&, const BlochState&) = default;
};

struct IntegratorConfig {
    static constexpr double kMaxStepFactor = 1.0;      // max_step = factor / E_max: one radian of the fastest precession
    static constexpr double kNormTolerance = 1e-6;     // monitored excess of |r| over 1
    static constexpr double kNormWarning = 1e-3;       // excess flagged as a pathology

    double rel_tol{1e-9};
    double abs_tol{1e-11};
    std::optional<double> max_step; // unset: kMaxStepFactor / E_max
    std::size_t samples{2000};      // uniform output points including both ends
    bool record_rates{false};

    void validate() const;
    double resolved_max_step(double max_splitting) const;
    // Same config with both tolerances divided by two.
    IntegratorConfig halved() const;

    // Tight tolerances for coherent_lab_frame_oracle. Lab-frame amplitudes rotate at the full
    // splitting, so the default tolerances leave ~1e-4 of accumulated error there.
    static IntegratorConfig lab_frame_oracle();

    friend bool operator==(const IntegratorConfig&, const IntegratorConfig&) = default;
};

struct TrajectorySample {
    double t{0.0};
    BlochState state;
    std::optional<RateSet> rates;
};

struct IntegrationStats {
    std::size_t steps{0};
    double max_norm_excess{0.0}; // max over accepted steps of |r| - 1, floored at 0
    bool norm_warning{false};    // max_norm_excess > IntegratorConfig::kNormWarning
    double rel_tol{0.0};
    double abs_tol{0.0};
    double max_step{0.0};
};

struct Trajectory {
    std::vector<TrajectorySample> samples; // strictly increasing t, first/last at the window ends
    IntegrationStats stats;

    const BlochState& final_state() const { return samples.back().state; }
};

// Rates (including splitting and phi_dot) as a function of time.
using RateFunction = std::function<RateSet(double)>;

// Ground state of -(E/2) sigma_x + (phi_dot/2) sigma_y: r = (E, -phi_dot, 0) / |(E, phi_dot)|.
BlochState initial_state(const FrameQuantities& fq) noexcept;
BlochState initial_state(const SweepProtocol& p) noexcept;

BlochState bloch_derivative(const BlochState& s, const RateSet& rates) noexcept;

// Adaptive Dormand-Prince 5(4) integration with dense output, resampled uniformly on [t_begin, t_end].
// Throws IntegrationError on step-size underflow or a non-finite state.
Trajectory integrate(const RateFunction& rates, const BlochState& initial, double t_begin, double t_end,
                     double max_splitting, const IntegratorConfig& cfg);

// Full sweep starting in the exact ground state of the rotated-frame Hamiltonian at -t0.
Trajectory integrate(const SweepProtocol& p, const Environment& env, const IntegratorConfig& cfg);

// Closed-system Schroedinger evolution under -(eps/2) sigma_z - (Delta/2) sigma_x in the lab
// frame with a Fehlberg 7(8) pair. Starts in the instantaneous ground state at -t0 and returns
// the final overlap squared with the instantaneous ground state at +t0. Only cfg.rel_tol,
// cfg.abs_tol and an explicitly set cfg.max_step are used.
double coherent_lab_frame_oracle(const SweepProtocol& p, const IntegratorConfig& cfg);

} // namespace dlz
