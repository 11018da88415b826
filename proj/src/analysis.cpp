#include "dlz/analysis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dlz/errors.hpp"
#include "dlz/parallel.hpp"

namespace dlz {

namespace {

enum class Goal { maximize, minimize };

bool improves(Goal goal, double candidate, double incumbent) {
    return goal == Goal::maximize ? candidate > incumbent : candidate < incumbent;
}

// Coarse scan over `grid` (ascending), then golden-section refinement between the neighbours
// of the best grid point.
template <class Objective>
OptimumResult scan_then_refine(std::span<const double> grid, Objective&& objective, Goal goal,
                               const ScanConfig& cfg) {
    const std::vector<double> values =
        parallel_map(grid.size(), cfg.workers, [&](std::size_t i) { return objective(grid[i]); });

    OptimumResult out;
    out.scan.reserve(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.scan.emplace_back(grid[i], values[i]);
        if (improves(goal, values[i], values[best])) best = i;
    }
    out.argument = grid[best];
    out.value = values[best];
    if (grid.size() < 2) return out;

    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[best + 1 == grid.size() ? best : best + 1];
    const auto [x, fx] = golden_section(objective, lo, hi, goal == Goal::maximize, cfg.refine_tol,
                                        cfg.max_refine_steps);
    if (improves(goal, fx, out.value) || (fx == out.value && x < out.argument)) {
        out.argument = x;
        out.value = fx;
    }
    return out;
}

void check_interval(Interval r, const char* what) {
    if (!(r.lo > 0.0) || !std::isfinite(r.hi) || !(r.hi >= r.lo))
        throw ValidationError(std::string(what) + " range must satisfy 0 < lo <= hi");
}

} // namespace

double lz_asymptote(double velocity, double delta) {
    if (!(velocity > 0.0)) throw DomainError("Landau-Zener formula requires v > 0");
    return -std::expm1(-std::numbers::pi * delta * delta / (2.0 * velocity));
}

double relative_gain(double p_xz, double p_z) {
    if (!(p_z > 0.0)) throw DomainError("relative gain requires a positive reference population");
    return (p_xz - p_z) / p_z;
}

PopulationTrace population_trace(const Trajectory& traj) {
    PopulationTrace out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) out.push_back({s.t, ground_population(s.state)});
    return out;
}

double final_ground_population(const SweepProtocol& p, const Environment& env, const IntegratorConfig& cfg) {
    IntegratorConfig lean = cfg;
    lean.samples = 2;
    lean.record_rates = false;
    return ground_population(integrate(p, env, lean).final_state());
}

void ScanConfig::validate() const {
    if (grid_points < 1) throw ValidationError("scan needs at least one grid point");
    if (!(refine_tol > 0.0)) throw ValidationError("refine_tol must be > 0");
    if (!(span_product > 0.0)) throw ValidationError("span product must be > 0");
    integrator.validate();
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi >= lo)) throw ValidationError("log grid needs 0 < lo <= hi");
    if (n == 0) throw ValidationError("log grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

OptimumResult find_optimal_velocity(const Environment& env, Interval v_range, const ScanConfig& cfg) {
    env.validate();
    cfg.validate();
    check_interval(v_range, "velocity");
    const auto grid = log_grid(v_range.lo, v_range.hi, v_range.lo == v_range.hi ? 1 : cfg.grid_points);
    auto objective = [&](double v) {
        return final_ground_population(SweepProtocol(v, cfg.offset, cfg.span_product), env, cfg.integrator);
    };
    return scan_then_refine(grid, objective, Goal::maximize, cfg);
}

OptimumResult find_alpha_z_minimum(const Environment& env_template, double velocity, Interval alpha_range,
                                   const ScanConfig& cfg) {
    check_interval(alpha_range, "alpha_z");
    const auto grid =
        log_grid(alpha_range.lo, alpha_range.hi, alpha_range.lo == alpha_range.hi ? 1 : cfg.grid_points);
    return find_alpha_z_minimum(env_template, velocity, grid, cfg);
}

OptimumResult find_alpha_z_minimum(const Environment& env_template, double velocity,
                                   std::span<const double> alpha_grid, const ScanConfig& cfg) {
    env_template.validate();
    cfg.validate();
    if (env_template.bath_x.alpha != 0.0)
        throw ValidationError("alpha_z minimum search requires alpha_x = 0");
    if (alpha_grid.empty()) throw ValidationError("alpha_z grid is empty");
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        if (!(alpha_grid[i] > 0.0)) throw ValidationError("alpha_z grid must be positive for a log scan");
        if (i > 0 && !(alpha_grid[i] > alpha_grid[i - 1]))
            throw ValidationError("alpha_z grid must be strictly increasing");
    }
    const SweepProtocol protocol(velocity, cfg.offset, cfg.span_product);
    auto objective = [&](double alpha_z) {
        Environment env = env_template;
        env.bath_z.alpha = alpha_z;
        return final_ground_population(protocol, env, cfg.integrator);
    };
    return scan_then_refine(alpha_grid, objective, Goal::minimize, cfg);
}

} // namespace dlz
