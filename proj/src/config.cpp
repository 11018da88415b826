#include "dlz/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dlz/analysis.hpp"
#include "dlz/errors.hpp"

namespace dlz {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, std::string_view key) {
    s = trim(s);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty())
        throw ValidationError("key '" + std::string(key) + "': '" + std::string(s) + "' is not a number");
    return v;
}

std::size_t parse_count(std::string_view s, std::string_view key) {
    s = trim(s);
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty())
        throw ValidationError("key '" + std::string(key) + "': '" + std::string(s) +
                              "' is not a non-negative integer");
    return v;
}

std::string format_exact(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v); // shortest exact round trip
    return std::string(buf, end);
}

std::string format_list(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += format_exact(xs[i]);
    }
    return out;
}

void require_grid(const std::vector<double>& g, std::string_view key) {
    if (g.empty()) throw ValidationError("key '" + std::string(key) + "': grid is empty");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) throw ValidationError("key '" + std::string(key) + "': non-finite value");
        if (i > 0 && !(g[i] > g[i - 1]))
            throw ValidationError("key '" + std::string(key) + "': grid must be strictly increasing");
    }
}

void require_single(const std::vector<double>& g, std::string_view key, ExperimentKind kind) {
    if (g.size() != 1)
        throw ValidationError("key '" + std::string(key) + "': experiment '" + std::string(to_string(kind)) +
                              "' takes exactly one value");
}

template <class Enum, std::size_t N>
Enum parse_enum(std::string_view s, std::string_view key, const std::pair<std::string_view, Enum> (&table)[N]) {
    s = trim(s);
    for (const auto& [name, value] : table)
        if (name == s) return value;
    throw ValidationError("key '" + std::string(key) + "': unknown value '" + std::string(s) + "'");
}

constexpr std::pair<std::string_view, ExperimentKind> kKinds[] = {
    {"trace", ExperimentKind::time_trace},        {"vsweep", ExperimentKind::velocity_sweep},
    {"grid", ExperimentKind::coupling_grid},      {"azcurve", ExperimentKind::alpha_z_curve},
    {"optimize", ExperimentKind::optimize},
};
constexpr std::pair<std::string_view, SweepMode> kModes[] = {
    {"z", SweepMode::z_only}, {"xz", SweepMode::xz}, {"both", SweepMode::both}};
constexpr std::pair<std::string_view, OutputFormat> kFormats[] = {
    {"csv", OutputFormat::csv}, {"svg", OutputFormat::svg}, {"both", OutputFormat::both}};
constexpr std::pair<std::string_view, OptimizeTarget> kTargets[] = {
    {"velocity", OptimizeTarget::velocity}, {"alpha-z", OptimizeTarget::alpha_z}};

template <class Enum, std::size_t N>
std::string_view name_of(Enum e, const std::pair<std::string_view, Enum> (&table)[N]) {
    for (const auto& [name, value] : table)
        if (value == e) return name;
    return "?";
}

} // namespace

std::string_view to_string(ExperimentKind k) { return name_of(k, kKinds); }
std::string_view to_string(SweepMode m) { return name_of(m, kModes); }
std::string_view to_string(OutputFormat f) { return name_of(f, kFormats); }
std::string_view to_string(OptimizeTarget t) { return name_of(t, kTargets); }

ExperimentKind parse_experiment_kind(std::string_view s) { return parse_enum(s, "experiment", kKinds); }

std::vector<double> parse_number_list(std::string_view text) {
    text = trim(text);
    constexpr std::string_view log_prefix = "logspace:";
    if (text.starts_with(log_prefix)) {
        std::vector<std::string_view> parts;
        std::string_view rest = text.substr(log_prefix.size());
        for (std::size_t pos; (pos = rest.find(':')) != std::string_view::npos; rest.remove_prefix(pos + 1))
            parts.push_back(rest.substr(0, pos));
        parts.push_back(rest);
        if (parts.size() != 3) throw ValidationError("logspace needs the form logspace:lo:hi:n");
        return log_grid(parse_number(parts[0], "logspace"), parse_number(parts[1], "logspace"),
                        parse_count(parts[2], "logspace"));
    }
    std::vector<double> out;
    std::string_view rest = text;
    while (true) {
        const auto pos = rest.find(',');
        out.push_back(parse_number(rest.substr(0, pos), "list"));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return out;
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
    ExperimentConfig c;
    c.kind = kind;
    switch (kind) {
    case ExperimentKind::time_trace:
        c.velocities = {0.3};
        c.temperatures = {5.0};
        c.alpha_x = {5e-3};
        c.alpha_z = {5e-3};
        break;
    case ExperimentKind::velocity_sweep:
        c.velocities = log_grid(0.02, 10.0, 30);
        c.temperatures = {1.0, 2.5, 5.0};
        c.alpha_x = {5e-3};
        c.alpha_z = {5e-3};
        break;
    case ExperimentKind::coupling_grid:
        c.velocities = {0.5};
        c.temperatures = {5.0};
        c.alpha_x = log_grid(1e-4, 1.0, 25);
        c.alpha_z = log_grid(1e-4, 1.0, 25);
        break;
    case ExperimentKind::alpha_z_curve:
        c.velocities = {0.5};
        c.temperatures = {5.0};
        c.alpha_x = {0.0};
        c.alpha_z = log_grid(1e-4, 1.0, 25);
        break;
    case ExperimentKind::optimize:
        c.velocities = {0.5};
        c.temperatures = {5.0};
        c.alpha_x = {0.0};
        c.alpha_z = {5e-3};
        c.range_min = 0.05;
        c.range_max = 5.0;
        break;
    }
    return c;
}

void ExperimentConfig::validate() const {
    require_grid(velocities, "velocity");
    require_grid(temperatures, "temperature");
    require_grid(alpha_x, "alpha-x");
    require_grid(alpha_z, "alpha-z");
    for (double v : velocities)
        if (!(v > 0.0)) throw ValidationError("key 'velocity': values must be > 0");
    for (double t : temperatures)
        if (!(t >= 0.0)) throw ValidationError("key 'temperature': values must be >= 0");
    for (double a : alpha_x)
        if (!(a >= 0.0)) throw ValidationError("key 'alpha-x': values must be >= 0");
    for (double a : alpha_z)
        if (!(a >= 0.0)) throw ValidationError("key 'alpha-z': values must be >= 0");
    if (!(cutoff_x > 0.0) || !std::isfinite(cutoff_x)) throw ValidationError("key 'cutoff-x': must be > 0");
    if (!(cutoff_z > 0.0) || !std::isfinite(cutoff_z)) throw ValidationError("key 'cutoff-z': must be > 0");
    if (!std::isfinite(offset)) throw ValidationError("key 'offset': must be finite");
    if (!(span_product > 0.0) || !std::isfinite(span_product))
        throw ValidationError("key 'span-product': must be > 0");
    integrator.validate();
    if (workers < 1) throw ValidationError("key 'workers': must be >= 1");

    switch (kind) {
    case ExperimentKind::time_trace:
        require_single(velocities, "velocity", kind);
        require_single(temperatures, "temperature", kind);
        require_single(alpha_x, "alpha-x", kind);
        require_single(alpha_z, "alpha-z", kind);
        break;
    case ExperimentKind::velocity_sweep:
        require_single(alpha_x, "alpha-x", kind);
        require_single(alpha_z, "alpha-z", kind);
        break;
    case ExperimentKind::coupling_grid:
        require_single(velocities, "velocity", kind);
        require_single(temperatures, "temperature", kind);
        break;
    case ExperimentKind::alpha_z_curve:
        require_single(velocities, "velocity", kind);
        require_single(temperatures, "temperature", kind);
        require_single(alpha_x, "alpha-x", kind);
        if (alpha_x.front() != 0.0) throw ValidationError("key 'alpha-x': azcurve requires alpha-x = 0");
        for (double a : alpha_z)
            if (!(a > 0.0)) throw ValidationError("key 'alpha-z': azcurve needs positive values for a log scan");
        break;
    case ExperimentKind::optimize:
        require_single(temperatures, "temperature", kind);
        require_single(alpha_x, "alpha-x", kind);
        if (target == OptimizeTarget::velocity) {
            require_single(alpha_z, "alpha-z", kind);
        } else {
            require_single(velocities, "velocity", kind);
            if (alpha_x.front() != 0.0)
                throw ValidationError("key 'alpha-x': alpha-z optimization requires alpha-x = 0");
        }
        if (!(range_min > 0.0) || !(range_max >= range_min) || !std::isfinite(range_max))
            throw ValidationError("keys 'range-min'/'range-max': need 0 < range-min <= range-max");
        if (scan_points < 1) throw ValidationError("key 'scan-points': must be >= 1");
        if (!(refine_tol > 0.0)) throw ValidationError("key 'refine-tol': must be > 0");
        break;
    }
}

Environment ExperimentConfig::environment(double temperature, double ax, double az) const {
    Environment env;
    env.temperature = temperature;
    env.bath_x = {Axis::transverse_x, ax, cutoff_x};
    env.bath_z = {Axis::longitudinal_z, az, cutoff_z};
    env.validate();
    return env;
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (key == "experiment") c.kind = parse_experiment_kind(value);
    else if (key == "velocity") c.velocities = parse_number_list(value);
    else if (key == "temperature") c.temperatures = parse_number_list(value);
    else if (key == "alpha-x") c.alpha_x = parse_number_list(value);
    else if (key == "alpha-z") c.alpha_z = parse_number_list(value);
    else if (key == "cutoff") c.cutoff_x = c.cutoff_z = parse_number(value, key);
    else if (key == "cutoff-x") c.cutoff_x = parse_number(value, key);
    else if (key == "cutoff-z") c.cutoff_z = parse_number(value, key);
    else if (key == "offset") c.offset = parse_number(value, key);
    else if (key == "span-product") c.span_product = parse_number(value, key);
    else if (key == "rtol") c.integrator.rel_tol = parse_number(value, key);
    else if (key == "atol") c.integrator.abs_tol = parse_number(value, key);
    else if (key == "max-step") c.integrator.max_step = parse_number(value, key);
    else if (key == "samples") c.integrator.samples = parse_count(value, key);
    else if (key == "mode") c.mode = parse_enum(value, key, kModes);
    else if (key == "target") c.target = parse_enum(value, key, kTargets);
    else if (key == "range-min") c.range_min = parse_number(value, key);
    else if (key == "range-max") c.range_max = parse_number(value, key);
    else if (key == "scan-points") c.scan_points = parse_count(value, key);
    else if (key == "refine-tol") c.refine_tol = parse_number(value, key);
    else if (key == "workers") c.workers = parse_count(value, key);
    else if (key == "out") c.out = std::string(value);
    else if (key == "format") c.format = parse_enum(value, key, kFormats);
    else throw ValidationError("unknown config key '" + std::string(key) + "'");
}

ExperimentConfig parse_config(std::string_view text, std::optional<ExperimentKind> fallback) {
    struct Entry {
        std::size_t line;
        std::string key, value;
    };
    std::vector<Entry> entries;
    std::optional<ExperimentKind> declared;

    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        std::string_view sv = line;
        if (const auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        sv = trim(sv);
        if (sv.empty()) continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
        Entry e{line_no, std::string(trim(sv.substr(0, eq))), std::string(trim(sv.substr(eq + 1)))};
        if (e.key == "experiment") declared = parse_experiment_kind(e.value);
        entries.push_back(std::move(e));
    }

    if (declared && fallback && *declared != *fallback)
        throw ValidationError("config declares experiment '" + std::string(to_string(*declared)) +
                              "' but '" + std::string(to_string(*fallback)) + "' was requested");
    const auto kind = declared ? *declared : fallback;
    if (!kind) throw ValidationError("config does not name an experiment");

    ExperimentConfig c = ExperimentConfig::defaults(*kind);
    for (const auto& e : entries) {
        try {
            apply_setting(c, e.key, e.value);
        } catch (const ValidationError& err) {
            throw ValidationError("config line " + std::to_string(e.line) + ": " + err.what());
        }
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<ExperimentKind> fallback) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), fallback);
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "experiment = " << to_string(c.kind) << '\n'
        << "velocity = " << format_list(c.velocities) << '\n'
        << "temperature = " << format_list(c.temperatures) << '\n'
        << "alpha-x = " << format_list(c.alpha_x) << '\n'
        << "alpha-z = " << format_list(c.alpha_z) << '\n'
        << "cutoff-x = " << format_exact(c.cutoff_x) << '\n'
        << "cutoff-z = " << format_exact(c.cutoff_z) << '\n'
        << "offset = " << format_exact(c.offset) << '\n'
        << "span-product = " << format_exact(c.span_product) << '\n'
        << "rtol = " << format_exact(c.integrator.rel_tol) << '\n'
        << "atol = " << format_exact(c.integrator.abs_tol) << '\n';
    if (c.integrator.max_step) out << "max-step = " << format_exact(*c.integrator.max_step) << '\n';
    out << "samples = " << c.integrator.samples << '\n'
        << "mode = " << to_string(c.mode) << '\n'
        << "target = " << to_string(c.target) << '\n'
        << "range-min = " << format_exact(c.range_min) << '\n'
        << "range-max = " << format_exact(c.range_max) << '\n'
        << "scan-points = " << c.scan_points << '\n'
        << "refine-tol = " << format_exact(c.refine_tol) << '\n'
        << "workers = " << c.workers << '\n';
    if (!c.out.empty()) out << "out = " << c.out << '\n';
    out << "format = " << to_string(c.format) << '\n';
    return out.str();
}

} // namespace dlz
