#include "dlz/experiments.hpp"

#include <string>

#include "dlz/errors.hpp"
#include "dlz/parallel.hpp"

namespace dlz {

namespace {

// Final p_G for one grid point; integration failures are re-thrown with the parameters attached.
double grid_point(const ExperimentConfig& cfg, double v, double temperature, double ax, double az) {
    const SweepProtocol protocol(v, cfg.offset, cfg.span_product);
    const Environment env = cfg.environment(temperature, ax, az);
    try {
        return final_ground_population(protocol, env, cfg.integrator);
    } catch (const IntegrationError& e) {
        throw IntegrationError("trajectory failed for v=" + format_number(v) + " T=" + format_number(temperature) +
                                   " alpha_x=" + format_number(ax) + " alpha_z=" + format_number(az) + ": " +
                                   e.what(),
                               e.time());
    }
}

} // namespace

ScanConfig scan_config(const ExperimentConfig& cfg) {
    ScanConfig s;
    s.grid_points = cfg.scan_points;
    s.refine_tol = cfg.refine_tol;
    s.workers = cfg.workers;
    s.offset = cfg.offset;
    s.span_product = cfg.span_product;
    s.integrator = cfg.integrator;
    return s;
}

Table run_velocity_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const bool with_z = cfg.mode != SweepMode::xz;
    const bool with_xz = cfg.mode != SweepMode::z_only;
    const double ax = cfg.alpha_x.front(), az = cfg.alpha_z.front();
    const std::size_t nv = cfg.velocities.size();
    const std::size_t points = cfg.temperatures.size() * nv;

    // Jobs are laid out as [z runs | xz runs], each ordered temperature-major.
    const std::size_t per_point = (with_z ? 1 : 0) + (with_xz ? 1 : 0);
    const auto values = parallel_map(points * per_point, cfg.workers, [&](std::size_t job) {
        const std::size_t idx = job % points;
        const bool xz_job = with_xz && (!with_z || job >= points);
        const double t = cfg.temperatures[idx / nv];
        const double v = cfg.velocities[idx % nv];
        return grid_point(cfg, v, t, xz_job ? ax : 0.0, az);
    });

    Table table;
    table.columns = {"temperature", "velocity"};
    if (with_z) table.columns.push_back("p_G_z");
    if (with_xz) table.columns.push_back("p_G_xz");
    if (with_z && with_xz) table.columns.push_back("gain");

    for (std::size_t i = 0; i < points; ++i) {
        std::vector<double> row{cfg.temperatures[i / nv], cfg.velocities[i % nv]};
        const double pz = with_z ? values[i] : 0.0;
        const double pxz = with_xz ? values[with_z ? points + i : i] : 0.0;
        if (with_z) row.push_back(pz);
        if (with_xz) row.push_back(pxz);
        if (with_z && with_xz) row.push_back(relative_gain(pxz, pz));
        table.rows.push_back(std::move(row));
    }

    table.plot.kind = PlotKind::line;
    table.plot.x_column = 1;
    table.plot.series_column = 0;
    table.plot.log_x = true;
    table.plot.y_columns = {with_z && with_xz ? table.columns.size() - 1 : 2};
    table.plot.title = with_z && with_xz ? "relative gain vs sweep velocity" : "final p_G vs sweep velocity";
    return table;
}

Table run_coupling_grid(const ExperimentConfig& cfg) {
    cfg.validate();
    const double v = cfg.velocities.front(), temperature = cfg.temperatures.front();
    const std::size_t nx = cfg.alpha_x.size(), nz = cfg.alpha_z.size();
    const auto values = parallel_map(nx * nz, cfg.workers, [&](std::size_t i) {
        return grid_point(cfg, v, temperature, cfg.alpha_x[i / nz], cfg.alpha_z[i % nz]);
    });

    Table table;
    table.columns.push_back("alpha_x/alpha_z");
    for (double az : cfg.alpha_z) table.columns.push_back(format_number(az));
    for (std::size_t ix = 0; ix < nx; ++ix) {
        std::vector<double> row{cfg.alpha_x[ix]};
        for (std::size_t iz = 0; iz < nz; ++iz) row.push_back(values[ix * nz + iz]);
        table.rows.push_back(std::move(row));
    }
    table.plot.kind = PlotKind::heatmap;
    table.plot.log_x = true;
    table.plot.log_y = true;
    table.plot.title = "final p_G over (alpha_z, alpha_x)";
    return table;
}

AlphaZCurve run_alpha_z_curve(const ExperimentConfig& cfg) {
    cfg.validate();
    const Environment env = cfg.environment(cfg.temperatures.front(), 0.0, cfg.alpha_z.front());
    AlphaZCurve out;
    try {
        out.minimum = find_alpha_z_minimum(env, cfg.velocities.front(), cfg.alpha_z, scan_config(cfg));
    } catch (const IntegrationError& e) {
        throw IntegrationError(std::string("alpha_z curve failed: ") + e.what(), e.time());
    }
    out.table.columns = {"alpha_z", "p_G"};
    for (const auto& [az, pg] : out.minimum.scan) out.table.rows.push_back({az, pg});
    out.table.plot.kind = PlotKind::line;
    out.table.plot.x_column = 0;
    out.table.plot.y_columns = {1};
    out.table.plot.log_x = true;
    out.table.plot.title = "final p_G vs alpha_z (alpha_x = 0)";
    return out;
}

Table run_time_trace(const ExperimentConfig& cfg) {
    cfg.validate();
    const SweepProtocol protocol(cfg.velocities.front(), cfg.offset, cfg.span_product);
    const Environment env = cfg.environment(cfg.temperatures.front(), cfg.alpha_x.front(), cfg.alpha_z.front());
    const Trajectory traj = integrate(protocol, env, cfg.integrator);

    Table table;
    table.columns = {"t", "p_G", "r_x", "r_y", "r_z"};
    table.rows.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
        table.rows.push_back({s.t, ground_population(s.state), s.state.x, s.state.y, s.state.z});
    table.plot.kind = PlotKind::line;
    table.plot.x_column = 0;
    table.plot.y_columns = {1};
    table.plot.title = "ground-state population vs time";
    return table;
}

OptimizationRun run_optimize(const ExperimentConfig& cfg) {
    cfg.validate();
    const ScanConfig scan = scan_config(cfg);
    const Interval range{cfg.range_min, cfg.range_max};
    OptimizationRun out;
    if (cfg.target == OptimizeTarget::velocity) {
        const Environment env = cfg.environment(cfg.temperatures.front(), cfg.alpha_x.front(), cfg.alpha_z.front());
        out.optimum = find_optimal_velocity(env, range, scan);
        out.table.columns = {"velocity", "p_G"};
    } else {
        const Environment env = cfg.environment(cfg.temperatures.front(), 0.0, range.lo);
        out.optimum = find_alpha_z_minimum(env, cfg.velocities.front(), range, scan);
        out.table.columns = {"alpha_z", "p_G"};
    }
    for (const auto& [x, pg] : out.optimum.scan) out.table.rows.push_back({x, pg});
    out.table.plot.kind = PlotKind::line;
    out.table.plot.x_column = 0;
    out.table.plot.y_columns = {1};
    out.table.plot.log_x = true;
    out.table.plot.title = "coarse scan";
    return out;
}

} // namespace dlz
