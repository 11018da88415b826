#include <cmath>
#include <random>

#include "doctest.h"
#include "dlz/analysis.hpp"
#include "dlz/config.hpp"
#include "dlz/errors.hpp"

using namespace dlz;

namespace {

constexpr ExperimentKind kKinds[] = {ExperimentKind::time_trace, ExperimentKind::velocity_sweep,
                                     ExperimentKind::coupling_grid, ExperimentKind::alpha_z_curve,
                                     ExperimentKind::optimize};

ExperimentConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 4);
    auto c = ExperimentConfig::defaults(kKinds[pick(rng)]);
    auto grid = [&](std::size_t n, double scale) {
        std::vector<double> g;
        double x = scale * u(rng) + 1e-9;
        for (std::size_t i = 0; i < n; ++i, x += scale * u(rng) + 1e-12) g.push_back(x);
        return g;
    };
    c.velocities = grid(1 + rng() % 4, 3.0);
    c.temperatures = grid(1 + rng() % 3, 7.0);
    c.alpha_x = grid(1 + rng() % 3, 0.1);
    c.alpha_z = grid(1 + rng() % 3, 0.1);
    c.cutoff_x = 1 + 20 * u(rng);
    c.cutoff_z = 1 + 20 * u(rng);
    c.offset = 10 * (u(rng) - 0.5);
    c.span_product = 40 + 400 * u(rng);
    c.integrator.rel_tol = std::pow(10.0, -6 - 6 * u(rng));
    c.integrator.abs_tol = std::pow(10.0, -8 - 6 * u(rng));
    if (rng() % 2) c.integrator.max_step = u(rng);
    c.integrator.samples = 2 + rng() % 5000;
    c.mode = static_cast<SweepMode>(rng() % 3);
    c.target = static_cast<OptimizeTarget>(rng() % 2);
    c.range_min = u(rng);
    c.range_max = c.range_min + u(rng);
    c.scan_points = 1 + rng() % 30;
    c.refine_tol = 1e-4 + u(rng) * 1e-2;
    c.workers = 1 + rng() % 8;
    c.out = rng() % 2 ? "" : "results/run_" + std::to_string(rng() % 1000);
    c.format = static_cast<OutputFormat>(rng() % 3);
    return c;
}

} // namespace

TEST_CASE("defaults follow the figure grids") {
    const auto vs = ExperimentConfig::defaults(ExperimentKind::velocity_sweep);
    CHECK(vs.velocities == log_grid(0.02, 10.0, 30));
    CHECK(vs.temperatures == std::vector<double>{1.0, 2.5, 5.0});
    CHECK(vs.alpha_x == std::vector<double>{5e-3});
    CHECK(vs.alpha_z == std::vector<double>{5e-3});

    const auto grid = ExperimentConfig::defaults(ExperimentKind::coupling_grid);
    CHECK(grid.alpha_x == log_grid(1e-4, 1.0, 25));
    CHECK(grid.alpha_z == log_grid(1e-4, 1.0, 25));
    CHECK(grid.velocities == std::vector<double>{0.5});

    const auto az = ExperimentConfig::defaults(ExperimentKind::alpha_z_curve);
    CHECK(az.alpha_x == std::vector<double>{0.0});
    CHECK(az.temperatures == std::vector<double>{5.0});

    const auto tr = ExperimentConfig::defaults(ExperimentKind::time_trace);
    CHECK(tr.velocities == std::vector<double>{0.3});

    for (auto k : kKinds) {
        CHECK(ExperimentConfig::defaults(k).kind == k);
        CHECK_NOTHROW(ExperimentConfig::defaults(k).validate());
    }
}

TEST_CASE("serialization round trip") {
    for (auto k : kKinds) {
        const auto c = ExperimentConfig::defaults(k);
        CHECK(parse_config(serialize_config(c)) == c);
    }
    std::mt19937_64 rng(424242);
    for (int i = 0; i < 200; ++i) {
        const auto c = random_config(rng);
        const auto text = serialize_config(c);
        CHECK_MESSAGE(parse_config(text) == c, text);
        CHECK(serialize_config(parse_config(text)) == text);
    }
}

TEST_CASE("number lists") {
    CHECK(parse_number_list("1, 2.5,5") == std::vector<double>{1.0, 2.5, 5.0});
    CHECK(parse_number_list("logspace:0.02:10:30") == log_grid(0.02, 10.0, 30));
    CHECK(parse_number_list("0.7") == std::vector<double>{0.7});
    CHECK_THROWS_AS(parse_number_list("1,,2"), ValidationError);
    CHECK_THROWS_AS(parse_number_list("1,abc"), ValidationError);
    CHECK_THROWS_AS(parse_number_list("logspace:1:2"), ValidationError);
    CHECK_THROWS_AS(parse_number_list("logspace:0:2:5"), ValidationError);
}

TEST_CASE("config text parsing") {
    const auto c = parse_config("# sweep settings\n"
                                "experiment = vsweep\n"
                                "\n"
                                "velocity = 0.1, 1   # two points\n"
                                "temperature = 2\n"
                                "mode = xz\n"
                                "cutoff = 4\n");
    CHECK(c.kind == ExperimentKind::velocity_sweep);
    CHECK(c.velocities == std::vector<double>{0.1, 1.0});
    CHECK(c.temperatures == std::vector<double>{2.0});
    CHECK(c.mode == SweepMode::xz);
    CHECK(c.cutoff_x == 4.0);
    CHECK(c.cutoff_z == 4.0);
    CHECK(c.alpha_z == std::vector<double>{5e-3});

    CHECK(parse_config("velocity = 0.2\n", ExperimentKind::time_trace).velocities == std::vector<double>{0.2});
    CHECK_THROWS_AS(parse_config("velocity = 0.2\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("experiment = grid\n", ExperimentKind::time_trace), ValidationError);
    CHECK_THROWS_AS(parse_config("experiment = nonsense\n"), ValidationError);

    try {
        parse_config("experiment = trace\nvelocity = 0.3\nspeed = 2\n");
        FAIL("unknown key accepted");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("speed") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("experiment = trace\nrtol = 1e-8x\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("experiment = trace\nsamples = -3\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("experiment = trace\njust some words\n"), ValidationError);
    CHECK_THROWS_AS(load_config("/nonexistent/dir/run.cfg"), IoError);
}

TEST_CASE("validation rules") {
    auto expect_invalid = [](ExperimentKind k, std::string_view key, std::string_view value) {
        auto c = ExperimentConfig::defaults(k);
        apply_setting(c, key, value);
        CHECK_THROWS_AS(c.validate(), ValidationError);
    };
    expect_invalid(ExperimentKind::velocity_sweep, "velocity", "1, 0.5");
    expect_invalid(ExperimentKind::velocity_sweep, "velocity", "0.5, 0.5");
    expect_invalid(ExperimentKind::velocity_sweep, "velocity", "0, 1");
    expect_invalid(ExperimentKind::velocity_sweep, "alpha-z", "0.1, 0.2");
    expect_invalid(ExperimentKind::time_trace, "temperature", "1, 2");
    expect_invalid(ExperimentKind::time_trace, "temperature", "-1");
    expect_invalid(ExperimentKind::time_trace, "alpha-x", "-1e-3");
    expect_invalid(ExperimentKind::coupling_grid, "velocity", "0.5, 1");
    expect_invalid(ExperimentKind::alpha_z_curve, "alpha-x", "1e-3");
    expect_invalid(ExperimentKind::alpha_z_curve, "alpha-z", "0, 0.1");
    expect_invalid(ExperimentKind::optimize, "range-min", "0");
    expect_invalid(ExperimentKind::optimize, "range-max", "0.01");
    expect_invalid(ExperimentKind::optimize, "scan-points", "0");
    expect_invalid(ExperimentKind::time_trace, "rtol", "0");
    expect_invalid(ExperimentKind::time_trace, "samples", "1");
    expect_invalid(ExperimentKind::time_trace, "span-product", "-5");
    expect_invalid(ExperimentKind::time_trace, "workers", "0");
    expect_invalid(ExperimentKind::time_trace, "cutoff", "0");

    auto c = ExperimentConfig::defaults(ExperimentKind::optimize);
    apply_setting(c, "target", "alpha-z");
    apply_setting(c, "alpha-z", "1e-4, 1e-2");
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(apply_setting(c, "mode", "sideways"), ValidationError);
    CHECK_THROWS_AS(apply_setting(c, "format", "png"), ValidationError);
}
