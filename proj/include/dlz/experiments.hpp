// experiments.hpp - orchestration of the sweep, grid, curve, trace and optimization runs

#pragma once

#include "dlz/analysis.hpp"
#include "dlz/config.hpp"
#include "dlz/table.hpp"

namespace dlz {

// Columns: temperature, velocity, then p_G_z and/or p_G_xz, and gain when both are computed.
// Rows are ordered with temperature outer and velocity inner.
Table run_velocity_sweep(const ExperimentConfig& cfg);

// Matrix of final p_G: one row per alpha_x, one column per alpha_z.
Table run_coupling_grid(const ExperimentConfig& cfg);

struct AlphaZCurve {
    Table table; // alpha_z, p_G
    OptimumResult minimum;
};
AlphaZCurve run_alpha_z_curve(const ExperimentConfig& cfg);

// Columns: t, p_G, r_x, r_y, r_z sampled uniformly over the sweep window.
Table run_time_trace(const ExperimentConfig& cfg);

struct OptimizationRun {
    Table table; // coarse scan: parameter, p_G
    OptimumResult optimum;
};
OptimizationRun run_optimize(const ExperimentConfig& cfg);

ScanConfig scan_config(const ExperimentConfig& cfg);

} // namespace dlz
