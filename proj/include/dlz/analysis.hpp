// analysis.hpp - ground-state population, Landau-Zener reference and 1-D optimum finders

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dlz/bath.hpp"
#include "dlz/core_model.hpp"
#include "dlz/dynamics.hpp"

namespace dlz {

// Overlap with the +x eigenstate of -(E/2) sigma_x, i.e. the adiabatic ground state.
constexpr double ground_population(const BlochState& s) noexcept { return 0.5 * (1.0 + s.x); }

// 1 - exp(-pi Delta^2 / (2 v)). Throws DomainError for v <= 0.
double lz_asymptote(double velocity, double delta = kGap);

// (p_xz - p_z) / p_z. Throws DomainError for p_z <= 0.
double relative_gain(double p_xz, double p_z);

struct PopulationPoint {
    double t{0.0};
    double p_ground{0.0};
};
using PopulationTrace = std::vector<PopulationPoint>;

PopulationTrace population_trace(const Trajectory& traj);

// Integrates one sweep and returns the final ground-state population.
double final_ground_population(const SweepProtocol& p, const Environment& env, const IntegratorConfig& cfg);

struct Interval {
    double lo{0.0};
    double hi{0.0};
};

// Scan-then-refine settings shared by both finders.
struct ScanConfig {
    std::size_t grid_points{12};      // log-spaced coarse grid over the interval
    double refine_tol{1e-3};          // final bracket width in ln(parameter)
    std::size_t max_refine_steps{60};
    std::size_t workers{1};
    double offset{0.0};
    double span_product{SweepProtocol::kDefaultSpan};
    IntegratorConfig integrator;

    void validate() const;
};

struct OptimumResult {
    double argument{0.0};
    double value{0.0};
    std::vector<std::pair<double, double>> scan; // coarse grid (parameter, p_G)
};

// n points log-spaced over [lo, hi]; the ends are reproduced exactly.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

// Golden-section search in ln(x) on [lo, hi] for the maximum (maximize = true) or minimum of f.
// Returns the best evaluated point; ties favour the smaller argument.
template <class F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, bool maximize, double tol,
                                         std::size_t max_steps);

// Maximizer of the final p_G over the sweep velocity.
OptimumResult find_optimal_velocity(const Environment& env, Interval v_range, const ScanConfig& cfg);

// Minimizer of the final p_G over alpha_z with alpha_x = 0 in the template environment.
OptimumResult find_alpha_z_minimum(const Environment& env_template, double velocity, Interval alpha_range,
                                   const ScanConfig& cfg);
OptimumResult find_alpha_z_minimum(const Environment& env_template, double velocity,
                                   std::span<const double> alpha_grid, const ScanConfig& cfg);

} // namespace dlz

#include "dlz/analysis_impl.hpp"
