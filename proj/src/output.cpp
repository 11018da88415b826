#include "dlz/table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "dlz/errors.hpp"

namespace dlz {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0, kRight = 140.0, kTop = 40.0, kBottom = 60.0;

std::string fixed(double v, int digits = 2) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, end);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

void write_file(const std::string& content, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void require_rows(const Table& t) {
    if (t.rows.empty() || t.columns.empty()) throw ValidationError("cannot emit an empty table");
}

// Maps a data coordinate onto [0, 1] along one axis.
struct Axis1D {
    double lo{0.0}, hi{1.0};
    bool log{false};

    double transform(double v) const { return log ? std::log10(v) : v; }
    double unit(double v) const { return hi == lo ? 0.5 : (transform(v) - lo) / (hi - lo); }

    static Axis1D fit(const std::vector<double>& values, bool log) {
        Axis1D a;
        a.log = log;
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (double v : values) {
            if (!std::isfinite(v) || (log && v <= 0.0)) continue;
            lo = std::min(lo, a.transform(v));
            hi = std::max(hi, a.transform(v));
        }
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi == lo) lo -= 0.5, hi += 0.5;
        a.lo = lo;
        a.hi = hi;
        return a;
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
            if (out.empty()) out = {std::pow(10.0, lo), std::pow(10.0, hi)};
        } else {
            for (int i = 0; i <= 4; ++i) out.push_back(lo + (hi - lo) * i / 4.0);
        }
        return out;
    }
};

std::string tick_label(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 3);
    return std::string(buf, end);
}

void frame(std::ostringstream& svg, const std::string& title, const Axis1D& ax, const Axis1D& ay,
           const std::string& xlabel, const std::string& ylabel) {
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    svg << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw) << "\" height=\""
        << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = kLeft + ax.unit(t) * pw;
        svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(kTop + ph) << "\" x2=\"" << fixed(x) << "\" y2=\""
            << fixed(kTop + ph + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(kTop + ph + 20)
            << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = kTop + (1.0 - ay.unit(t)) * ph;
        svg << "<line x1=\"" << fixed(kLeft - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(kLeft) << "\" y2=\""
            << fixed(y) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fixed(kLeft - 8) << "\" y=\"" << fixed(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(t) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 15)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(xlabel) << (ax.log ? " (log)" : "") << "</text>\n"
        << "<text x=\"20\" y=\"" << fixed(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
        << fixed(kTop + ph / 2) << ")\">" << escape(ylabel) << (ay.log ? " (log)" : "") << "</text>\n"
        << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";
}

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string line_svg(const Table& t) {
    const PlotHint& h = t.plot;
    std::vector<std::size_t> ycols = h.y_columns;
    if (ycols.empty())
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            if (c != h.x_column && (!h.series_column || c != *h.series_column)) ycols.push_back(c);

    std::vector<double> xs, ys;
    for (const auto& r : t.rows) {
        xs.push_back(r.at(h.x_column));
        for (std::size_t c : ycols) ys.push_back(r.at(c));
    }
    const Axis1D ax = Axis1D::fit(xs, h.log_x), ay = Axis1D::fit(ys, h.log_y);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;

    // Series keyed by the value of the series column, in order of first appearance.
    std::vector<double> keys;
    for (const auto& r : t.rows) {
        const double k = h.series_column ? r.at(*h.series_column) : 0.0;
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    }

    std::ostringstream svg;
    std::string ylabel;
    for (std::size_t c : ycols) ylabel += (ylabel.empty() ? "" : ", ") + t.columns.at(c);
    frame(svg, h.title, ax, ay, t.columns.at(h.x_column), ylabel);

    std::size_t colour = 0;
    double legend_y = kTop + 10;
    for (double key : keys) {
        for (std::size_t c : ycols) {
            const char* stroke = kPalette[colour++ % kPalette.size()];
            svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (const auto& r : t.rows) {
                if (h.series_column && r.at(*h.series_column) != key) continue;
                const double x = r.at(h.x_column), y = r.at(c);
                if (!std::isfinite(x) || !std::isfinite(y) || (ax.log && x <= 0) || (ay.log && y <= 0)) continue;
                svg << (first ? "" : " ") << fixed(kLeft + ax.unit(x) * pw) << ','
                    << fixed(kTop + (1.0 - ay.unit(y)) * ph);
                first = false;
            }
            svg << "\"/>\n";
            std::string label = t.columns.at(c);
            if (h.series_column) label = t.columns.at(*h.series_column) + "=" + format_number(key) + " " + label;
            svg << "<text x=\"" << fixed(kWidth - kRight + 10) << "\" y=\"" << fixed(legend_y)
                << "\" font-size=\"11\" fill=\"" << stroke << "\">" << escape(label) << "</text>\n";
            legend_y += 15;
        }
    }
    return svg.str();
}

// Cell boundaries in transformed coordinates: midpoints between neighbours, half a spacing beyond the ends.
std::vector<double> cell_edges(const std::vector<double>& centres, const Axis1D& axis) {
    std::vector<double> u;
    for (double c : centres) u.push_back(axis.transform(c));
    std::vector<double> edges(u.size() + 1);
    if (u.size() == 1) return {u[0] - 0.5, u[0] + 0.5};
    for (std::size_t i = 1; i < u.size(); ++i) edges[i] = 0.5 * (u[i - 1] + u[i]);
    edges.front() = u.front() - 0.5 * (u[1] - u[0]);
    edges.back() = u.back() + 0.5 * (u[u.size() - 1] - u[u.size() - 2]);
    return edges;
}

std::string colour_of(double unit) {
    // Blue to yellow ramp.
    unit = std::clamp(unit, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(68 + unit * (253 - 68)));
    const int g = static_cast<int>(std::lround(1 + unit * (231 - 1)));
    const int b = static_cast<int>(std::lround(84 + unit * (37 - 84)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string heatmap_svg(const Table& t) {
    const PlotHint& h = t.plot;
    std::vector<double> col_params;
    for (std::size_t c = 1; c < t.columns.size(); ++c) {
        const std::string& s = t.columns[c];
        double v = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), v);
        col_params.push_back(v);
    }
    std::vector<double> row_params;
    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (const auto& r : t.rows) {
        row_params.push_back(r.at(0));
        for (std::size_t c = 1; c < r.size(); ++c) {
            vmin = std::min(vmin, r[c]);
            vmax = std::max(vmax, r[c]);
        }
    }

    Axis1D ax = Axis1D::fit(col_params, h.log_x), ay = Axis1D::fit(row_params, h.log_y);
    const auto xe = cell_edges(col_params, ax), ye = cell_edges(row_params, ay);
    ax.lo = xe.front(), ax.hi = xe.back();
    ay.lo = ye.front(), ay.hi = ye.back();
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double u) { return kLeft + (u - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double u) { return kTop + (1.0 - (u - ay.lo) / (ay.hi - ay.lo)) * ph; };

    std::ostringstream svg;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 1; j < t.rows[i].size(); ++j) {
            const double value = t.rows[i][j];
            const double unit = vmax > vmin ? (value - vmin) / (vmax - vmin) : 0.5;
            const double x0 = px(xe[j - 1]), x1 = px(xe[j]);
            const double y0 = py(ye[i + 1]), y1 = py(ye[i]);
            svg << "<rect class=\"cell\" x=\"" << fixed(x0) << "\" y=\"" << fixed(y0) << "\" width=\"" << fixed(x1 - x0)
                << "\" height=\"" << fixed(y1 - y0) << "\" fill=\"" << colour_of(unit) << "\"><title>"
                << format_number(value) << "</title></rect>\n";
        }
    }
    const auto axis_names = t.columns.front();
    const auto slash = axis_names.find('/');
    const std::string ylabel = axis_names.substr(0, slash);
    const std::string xlabel = slash == std::string::npos ? "column" : axis_names.substr(slash + 1);
    frame(svg, h.title, ax, ay, xlabel, ylabel);

    // Colour bar.
    const double bx = kWidth - kRight + 30;
    for (int k = 0; k < 20; ++k) {
        const double y = kTop + ph * (1.0 - (k + 1) / 20.0);
        svg << "<rect x=\"" << fixed(bx) << "\" y=\"" << fixed(y) << "\" width=\"20\" height=\"" << fixed(ph / 20.0)
            << "\" fill=\"" << colour_of(k / 19.0) << "\"/>\n";
    }
    svg << "<text x=\"" << fixed(bx + 25) << "\" y=\"" << fixed(kTop + 10) << "\" font-size=\"11\">"
        << format_number(vmax) << "</text>\n"
        << "<text x=\"" << fixed(bx + 25) << "\" y=\"" << fixed(kTop + ph) << "\" font-size=\"11\">"
        << format_number(vmin) << "</text>\n";
    return svg.str();
}

} // namespace

std::string format_number(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, end);
}

std::string to_csv(const Table& table) {
    require_rows(table);
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_svg(const Table& table) {
    require_rows(table);
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(kWidth, 0) << "\" height=\""
        << fixed(kHeight, 0) << "\" viewBox=\"0 0 " << fixed(kWidth, 0) << ' ' << fixed(kHeight, 0) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << (table.plot.kind == PlotKind::heatmap ? heatmap_svg(table) : line_svg(table)) << "</svg>\n";
    return svg.str();
}

void emit_csv(const Table& table, const std::filesystem::path& path) { write_file(to_csv(table), path); }

void emit_svg(const Table& table, const std::filesystem::path& path) { write_file(to_svg(table), path); }

} // namespace dlz
