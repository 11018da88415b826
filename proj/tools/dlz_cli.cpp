// dlz - command-line driver for the dissipative Landau-Zener experiments
//
//   dlz trace|vsweep|grid|azcurve|optimize [--config FILE] [--key value ...]
//
// Exit codes: 0 success, 1 validation error, 2 integration failure, 3 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dlz/config.hpp"
#include "dlz/errors.hpp"
#include "dlz/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kIntegration = 2, kIo = 3 };

struct Subcommand {
    const char* name;
    dlz::ExperimentKind kind;
    const char* help;
};

constexpr Subcommand kSubcommands[] = {
    {"trace", dlz::ExperimentKind::time_trace, "Bloch vector and p_G over one sweep"},
    {"vsweep", dlz::ExperimentKind::velocity_sweep, "final p_G and relative gain vs sweep velocity"},
    {"grid", dlz::ExperimentKind::coupling_grid, "final p_G over an (alpha_x, alpha_z) grid"},
    {"azcurve", dlz::ExperimentKind::alpha_z_curve, "final p_G vs alpha_z at alpha_x = 0 and its minimum"},
    {"optimize", dlz::ExperimentKind::optimize, "locate the optimal velocity or the alpha_z minimum"},
};

// Flags mirror the config keys one to one.
constexpr const char* kKeys[] = {"velocity", "temperature", "alpha-x",   "alpha-z",    "cutoff",      "cutoff-x",
                                 "cutoff-z", "offset",      "span-product", "rtol",    "atol",        "max-step",
                                 "samples",  "mode",        "target",    "range-min",  "range-max",   "scan-points",
                                 "refine-tol", "workers",   "out",       "format"};

void write_outputs(const dlz::Table& table, const dlz::ExperimentConfig& cfg) {
    namespace fs = std::filesystem;
    switch (cfg.format) {
    case dlz::OutputFormat::csv:
        if (cfg.out.empty()) std::cout << dlz::to_csv(table);
        else dlz::emit_csv(table, cfg.out);
        break;
    case dlz::OutputFormat::svg:
        if (cfg.out.empty()) std::cout << dlz::to_svg(table);
        else dlz::emit_svg(table, cfg.out);
        break;
    case dlz::OutputFormat::both: {
        if (cfg.out.empty()) throw dlz::ValidationError("format 'both' needs --out");
        fs::path stem(cfg.out);
        dlz::emit_csv(table, fs::path(stem).replace_extension(".csv"));
        dlz::emit_svg(table, fs::path(stem).replace_extension(".svg"));
        break;
    }
    }
}

int run(const dlz::ExperimentConfig& cfg) {
    switch (cfg.kind) {
    case dlz::ExperimentKind::time_trace:
        write_outputs(dlz::run_time_trace(cfg), cfg);
        break;
    case dlz::ExperimentKind::velocity_sweep:
        write_outputs(dlz::run_velocity_sweep(cfg), cfg);
        break;
    case dlz::ExperimentKind::coupling_grid:
        write_outputs(dlz::run_coupling_grid(cfg), cfg);
        break;
    case dlz::ExperimentKind::alpha_z_curve: {
        const auto curve = dlz::run_alpha_z_curve(cfg);
        write_outputs(curve.table, cfg);
        std::cerr << "minimum: alpha_z = " << dlz::format_number(curve.minimum.argument)
                  << ", p_G = " << dlz::format_number(curve.minimum.value) << '\n';
        break;
    }
    case dlz::ExperimentKind::optimize: {
        const auto opt = dlz::run_optimize(cfg);
        write_outputs(opt.table, cfg);
        std::cerr << (cfg.target == dlz::OptimizeTarget::velocity ? "optimal velocity = " : "minimizing alpha_z = ")
                  << dlz::format_number(opt.optimum.argument) << ", p_G = " << dlz::format_number(opt.optimum.value)
                  << '\n';
        break;
    }
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dissipative Landau-Zener sweeps with longitudinal and transverse ohmic baths"};
    app.require_subcommand(1);

    std::string config_path;
    bool dump_config = false;
    std::map<std::string, std::string> overrides;
    std::optional<dlz::ExperimentKind> chosen;

    for (const auto& sc : kSubcommands) {
        CLI::App* sub = app.add_subcommand(sc.name, sc.help);
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_flag("--dump-config", dump_config, "print the resolved config and exit");
        for (const char* key : kKeys) sub->add_option(std::string("--") + key, overrides[key], key);
        sub->callback([&chosen, kind = sc.kind] { chosen = kind; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        dlz::ExperimentConfig cfg = config_path.empty() ? dlz::ExperimentConfig::defaults(*chosen)
                                                        : dlz::load_config(config_path, chosen);
        for (const auto& [key, value] : overrides)
            if (!value.empty()) dlz::apply_setting(cfg, key, value);
        cfg.validate();
        if (dump_config) {
            std::cout << dlz::serialize_config(cfg);
            return kOk;
        }
        return run(cfg);
    } catch (const dlz::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const dlz::DomainError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kValidation;
    } catch (const dlz::IntegrationError& e) {
        std::cerr << "integration failure: " << e.what() << '\n';
        return kIntegration;
    } catch (const dlz::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    }
}
