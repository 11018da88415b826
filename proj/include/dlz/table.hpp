// table.hpp - numeric result tables and their CSV / SVG renderings

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dlz {

enum class PlotKind { line, heatmap };

// How emit_svg should draw a table.
struct PlotHint {
    PlotKind kind{PlotKind::line};
    std::size_t x_column{0};
    std::vector<std::size_t> y_columns;       // line plots
    std::optional<std::size_t> series_column; // one polyline per distinct value (line plots)
    bool log_x{false};
    bool log_y{false};
    std::string title;
};

// For heatmaps, column 0 holds the row parameter and the remaining column names are the
// column parameter values; every other cell is a value.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    PlotHint plot;
};

// Locale-independent shortest form with 12 significant digits (printf %.12g).
std::string format_number(double v);

// Header row plus one record per row, '\n' terminated. Throws ValidationError for an empty table.
std::string to_csv(const Table& table);
std::string to_svg(const Table& table);

// Throw IoError carrying the path on failure.
void emit_csv(const Table& table, const std::filesystem::path& path);
void emit_svg(const Table& table, const std::filesystem::path& path);

} // namespace dlz
