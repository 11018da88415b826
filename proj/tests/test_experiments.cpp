#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dlz/analysis.hpp"
#include "dlz/errors.hpp"
#include "dlz/experiments.hpp"

using namespace dlz;
using doctest::Approx;

namespace {

std::size_t count_substr(const std::string& s, std::string_view needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + needle.size())) ++n;
    return n;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("velocity sweep table") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::velocity_sweep);
    cfg.velocities = {0.5, 2.0, 10.0};
    cfg.temperatures = {5.0};
    const auto t = run_velocity_sweep(cfg);
    CHECK(t.columns == std::vector<std::string>{"temperature", "velocity", "p_G_z", "p_G_xz", "gain"});
    REQUIRE(t.rows.size() == 3);
    for (const auto& r : t.rows) {
        CHECK(r[0] == 5.0);
        CHECK(r[4] > 0.0);
        CHECK(r[4] == Approx(relative_gain(r[3], r[2])).epsilon(1e-15));
    }
    CHECK(t.plot.series_column == 0);

    const auto csv = to_csv(t);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.rfind("temperature,velocity,p_G_z,p_G_xz,gain\n", 0) == 0);
    CHECK(to_csv(run_velocity_sweep(cfg)) == csv);

    // temperature outer, velocity inner
    cfg.temperatures = {1.0, 5.0};
    cfg.velocities = {2.0, 10.0};
    cfg.mode = SweepMode::z_only;
    const auto two = run_velocity_sweep(cfg);
    REQUIRE(two.rows.size() == 4);
    CHECK(two.columns.size() == 3);
    CHECK(two.rows[1] == std::vector<double>{1.0, 10.0, two.rows[1][2]});
    CHECK(two.rows[2][0] == 5.0);
    CHECK(two.rows[2][1] == 2.0);
}

TEST_CASE("uncoupled velocity sweep reproduces Landau-Zener") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::velocity_sweep);
    cfg.velocities = {10.0};
    cfg.temperatures = {5.0};
    cfg.alpha_x = {0.0};
    cfg.alpha_z = {0.0};
    cfg.mode = SweepMode::xz;
    const auto t = run_velocity_sweep(cfg);
    CHECK(t.rows[0][2] == Approx(0.145364000846766571).epsilon(1e-3));
}

TEST_CASE("parallel runs match serial runs exactly") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::velocity_sweep);
    cfg.velocities = {0.5, 1.0, 3.0};
    cfg.temperatures = {2.5, 5.0};
    const auto serial = run_velocity_sweep(cfg);
    cfg.workers = 3;
    const auto parallel = run_velocity_sweep(cfg);
    CHECK(serial.rows == parallel.rows);
}

TEST_CASE("coupling grid") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::coupling_grid);
    cfg.alpha_x = {1e-4, 5e-3};
    cfg.alpha_z = {1e-4, 0.1};
    const auto t = run_coupling_grid(cfg);
    REQUIRE(t.rows.size() == 2);
    REQUIRE(t.columns.size() == 3);
    CHECK(t.plot.kind == PlotKind::heatmap);
    CHECK(t.rows[0][0] == 1e-4);
    CHECK(t.rows[0][1] < t.rows[1][1]);
    CHECK(t.rows[0][1] > 0.5);
    CHECK(t.rows[1][1] >= 0.9);
    CHECK(t.rows[1][2] >= 0.9);
    const auto svg = to_svg(t);
    CHECK(count_substr(svg, "class=\"cell\"") == 4);
    CHECK(svg.rfind("<?xml", 0) == 0);
}

TEST_CASE("alpha_z curve") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::alpha_z_curve);
    cfg.alpha_z = {0.011};
    const auto run = run_alpha_z_curve(cfg);
    REQUIRE(run.table.rows.size() == 1);
    CHECK(run.table.columns == std::vector<std::string>{"alpha_z", "p_G"});
    CHECK(run.minimum.argument == 0.011);
    CHECK(run.minimum.value == run.table.rows[0][1]);
}

TEST_CASE("time trace") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::time_trace);
    cfg.integrator.samples = 400;
    const auto with_x = run_time_trace(cfg);
    CHECK(with_x.columns == std::vector<std::string>{"t", "p_G", "r_x", "r_y", "r_z"});
    REQUIRE(with_x.rows.size() == 400);
    cfg.alpha_x = {0.0};
    const auto without_x = run_time_trace(cfg);
    CHECK(with_x.rows.back()[1] - without_x.rows.back()[1] > 0.05);

    cfg.alpha_z = {0.0};
    const auto coherent = run_time_trace(cfg);
    CHECK(coherent.rows.back()[1] == Approx(lz_asymptote(0.3)).epsilon(1e-2));
    for (const auto& r : coherent.rows) CHECK(r[1] == Approx(0.5 * (1 + r[2])).epsilon(1e-15));
}

TEST_CASE("optimize run") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::optimize);
    cfg.range_min = 0.2;
    cfg.range_max = 2.0;
    cfg.scan_points = 6;
    const auto run = run_optimize(cfg);
    CHECK(run.table.rows.size() == 6);
    CHECK(run.optimum.argument >= 0.2);
    CHECK(run.optimum.argument <= 2.0);
    for (const auto& r : run.table.rows) CHECK(r[1] <= run.optimum.value);
}

TEST_CASE("output errors") {
    CHECK_THROWS_AS(to_csv(Table{}), ValidationError);
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 0.1}, {2.0, 0.2}};
    t.plot.y_columns = {1};
    CHECK(to_csv(t) == "a,b\n1,0.1\n2,0.2\n");
    CHECK_THROWS_AS(emit_csv(t, "/nonexistent/dir/out.csv"), IoError);
    CHECK_THROWS_AS(emit_svg(t, "/nonexistent/dir/out.svg"), IoError);

    const auto path = std::filesystem::temp_directory_path() / "dlz_test_out.csv";
    emit_csv(t, path);
    CHECK(slurp(path) == to_csv(t));
    std::filesystem::remove(path);

    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("integration failures name the parameters") {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::velocity_sweep);
    cfg.velocities = {0.7};
    cfg.temperatures = {2.5};
    cfg.integrator.rel_tol = 1e-300;
    cfg.integrator.abs_tol = 1e-300;
    try {
        run_velocity_sweep(cfg);
        FAIL("expected an IntegrationError");
    } catch (const IntegrationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("v=0.7") != std::string::npos);
        CHECK(msg.find("T=2.5") != std::string::npos);
    }
}
