// config.hpp - experiment configuration: flat key=value files plus command-line overrides
//
// Recognised keys (list-valued keys take comma-separated numbers or logspace:lo:hi:n):
//   experiment    trace | vsweep | grid | azcurve | optimize
//   velocity      list, Delta^2          temperature  list, Delta
//   alpha-x       list                   alpha-z      list
//   cutoff        sets cutoff-x and cutoff-z (Delta)
//   offset, span-product                 drive offset and v*t0 (Delta)
//   rtol, atol, max-step, samples        integrator settings
//   mode          z | xz | both          (vsweep)
//   target        velocity | alpha-z     (optimize)
//   range-min, range-max, scan-points, refine-tol   (optimize)
//   workers, out, format (csv | svg | both)

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlz/bath.hpp"
#include "dlz/core_model.hpp"
#include "dlz/dynamics.hpp"

namespace dlz {

enum class ExperimentKind { time_trace, velocity_sweep, coupling_grid, alpha_z_curve, optimize };
enum class SweepMode { z_only, xz, both };
enum class OutputFormat { csv, svg, both };
enum class OptimizeTarget { velocity, alpha_z };

std::string_view to_string(ExperimentKind k);
std::string_view to_string(SweepMode m);
std::string_view to_string(OutputFormat f);
std::string_view to_string(OptimizeTarget t);
ExperimentKind parse_experiment_kind(std::string_view s);

struct ExperimentConfig {
    ExperimentKind kind{ExperimentKind::time_trace};

    std::vector<double> velocities;
    std::vector<double> temperatures;
    std::vector<double> alpha_x;
    std::vector<double> alpha_z;
    double cutoff_x{BathSpec::kDefaultCutoff};
    double cutoff_z{BathSpec::kDefaultCutoff};
    double offset{0.0};
    double span_product{SweepProtocol::kDefaultSpan};

    IntegratorConfig integrator;

    SweepMode mode{SweepMode::both};
    OptimizeTarget target{OptimizeTarget::velocity};
    double range_min{0.0};
    double range_max{0.0};
    std::size_t scan_points{12};
    double refine_tol{1e-3};

    std::size_t workers{1};
    std::string out;
    OutputFormat format{OutputFormat::csv};

    // Parameter values of the corresponding figure for each experiment.
    static ExperimentConfig defaults(ExperimentKind kind);

    // Throws ValidationError naming the first offending key.
    void validate() const;

    Environment environment(double temperature, double alpha_x, double alpha_z) const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Applies one key=value setting. Throws ValidationError for unknown keys or malformed values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Parses a config text on top of the defaults of its `experiment` key (or `fallback` if absent).
// Lines are key = value; '#' starts a comment.
ExperimentConfig parse_config(std::string_view text, std::optional<ExperimentKind> fallback = std::nullopt);

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<ExperimentKind> fallback = std::nullopt);

// Writes every field; numbers use the shortest exact form so parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

std::vector<double> parse_number_list(std::string_view text);

} // namespace dlz
