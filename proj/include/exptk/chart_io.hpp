#pragma once

// Flat-file formats (charts, group data) and static SVG rendering of Ext charts.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "exptk/bounds.hpp"
#include "exptk/resolution.hpp"

namespace exptk {

class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

inline constexpr int kChartFormatVersion = 1;

namespace detail {

// Non-blank, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<int, std::string>> content_lines(std::istream& in)
{
    std::vector<std::pair<int, std::string>> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        out.emplace_back(number, line);
    }
    return out;
}

inline std::vector<std::string> split_fields(const std::string& line)
{
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string f;
    while (ss >> f)
        out.push_back(f);
    return out;
}

inline long long parse_integer(const std::string& text, int line)
{
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &used);
    }
    catch (const std::exception&) {
        throw FormatError("expected an integer, got '" + text + "'", line);
    }
    if (used != text.size())
        throw FormatError("expected an integer, got '" + text + "'", line);
    return v;
}

inline std::string fixed(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Chart files
//
//   version 1
//   prime 2
//   module sphere
//   window <s_max> <t_max>
//   <s> <t> <dim>        one line per nonzero entry, sorted by (s, t)

inline void write_chart(std::ostream& out, const ExtChart& chart)
{
    out << "# Ext chart: dimensions of Ext^{s,t}, one line per nonzero bidegree\n";
    out << "version " << kChartFormatVersion << "\n";
    out << "prime " << chart.prime.value() << "\n";
    out << "module " << chart.module << "\n";
    out << "window " << chart.s_max << " " << chart.t_max << "\n";
    for (const auto& [st, d] : chart.dims)
        if (d > 0)
            out << st.first << " " << st.second << " " << d << "\n";
}

inline std::string chart_to_string(const ExtChart& chart)
{
    std::ostringstream ss;
    write_chart(ss, chart);
    return ss.str();
}

inline ExtChart read_chart(std::istream& in)
{
    auto lines = detail::content_lines(in);
    auto expect_key = [&](std::size_t idx, const std::string& key, std::size_t arity) {
        if (idx >= lines.size())
            throw FormatError("missing '" + key + "' header", lines.empty() ? 0 : lines.back().first);
        auto fields = detail::split_fields(lines[idx].second);
        if (fields.empty() || fields[0] != key || fields.size() != arity + 1)
            throw FormatError("expected '" + key + "' header with " + std::to_string(arity) + " value(s)", lines[idx].first);
        return fields;
    };

    auto version = expect_key(0, "version", 1);
    if (detail::parse_integer(version[1], lines[0].first) != kChartFormatVersion)
        throw FormatError("unsupported chart format version " + version[1], lines[0].first);

    auto prime_fields = expect_key(1, "prime", 1);
    ExtChart chart;
    try {
        chart.prime = Prime(static_cast<int>(detail::parse_integer(prime_fields[1], lines[1].first)));
    }
    catch (const std::invalid_argument& e) {
        throw FormatError(e.what(), lines[1].first);
    }
    chart.module = expect_key(2, "module", 1)[1];
    auto window = expect_key(3, "window", 2);
    chart.s_max = static_cast<int>(detail::parse_integer(window[1], lines[3].first));
    chart.t_max = static_cast<int>(detail::parse_integer(window[2], lines[3].first));
    if (chart.s_max < 0 || chart.t_max < 0)
        throw FormatError("window must be nonnegative", lines[3].first);

    std::optional<std::pair<int, int>> previous;
    for (std::size_t i = 4; i < lines.size(); ++i) {
        const int ln = lines[i].first;
        auto fields = detail::split_fields(lines[i].second);
        if (fields.size() != 3)
            throw FormatError("expected 's t dim'", ln);
        int s = static_cast<int>(detail::parse_integer(fields[0], ln));
        int t = static_cast<int>(detail::parse_integer(fields[1], ln));
        int d = static_cast<int>(detail::parse_integer(fields[2], ln));
        if (!chart.in_window(s, t))
            throw FormatError("entry outside the chart window", ln);
        if (d <= 0)
            throw FormatError("dimensions must be positive", ln);
        std::pair<int, int> key{s, t};
        if (previous && !(*previous < key))
            throw FormatError("entries must be strictly sorted by (s, t)", ln);
        previous = key;
        chart.dims[key] = d;
    }
    return chart;
}

inline ExtChart chart_from_string(const std::string& text)
{
    std::istringstream ss(text);
    return read_chart(ss);
}

// ---------------------------------------------------------------------------
// Group data files
//
//   group <label>
//   <subgroup label> <weyl order> <fixed dim>     one line per conjugacy class

inline GroupFixedPointData read_group_data(std::istream& in)
{
    auto lines = detail::content_lines(in);
    if (lines.empty())
        throw FormatError("empty group data file", 0);
    auto header = detail::split_fields(lines[0].second);
    if (header.size() != 2 || header[0] != "group")
        throw FormatError("expected 'group <label>' header", lines[0].first);
    GroupFixedPointData g;
    g.group = header[1];
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int ln = lines[i].first;
        auto fields = detail::split_fields(lines[i].second);
        if (fields.size() != 3)
            throw FormatError("expected 'label weyl_order fixed_dim'", ln);
        SubgroupRecord r{fields[0], detail::parse_integer(fields[1], ln),
                         static_cast<int>(detail::parse_integer(fields[2], ln))};
        if (r.weyl_order < 1)
            throw FormatError("weyl_order must be at least 1", ln);
        if (r.fixed_dim < 0)
            throw FormatError("fixed_dim must be nonnegative", ln);
        g.records.push_back(std::move(r));
    }
    if (g.records.empty())
        throw FormatError("group data has no subgroup records", lines[0].first);
    return g;
}

inline void write_group_data(std::ostream& out, const GroupFixedPointData& g)
{
    out << "group " << g.group << "\n";
    for (const auto& r : g.records)
        out << r.label << " " << r.weyl_order << " " << r.fixed_dim << "\n";
}

// ---------------------------------------------------------------------------
// SVG rendering, Adams indexing: stem t - s across, filtration s up.

struct SvgStyle {
    double cell = 28.0;
    double margin = 40.0;
    double dot_radius = 3.5;
    double dot_spacing = 7.0;
};

inline std::string render_svg(const ExtChart& chart, const SvgStyle& style = {})
{
    using detail::fixed;
    const int x_max = std::max(chart.t_max, 1);
    const int y_max = std::max(chart.s_max, 1);
    const double width = 2 * style.margin + style.cell * x_max;
    const double height = 2 * style.margin + style.cell * y_max;
    auto px = [&](double stem) { return style.margin + style.cell * stem; };
    auto py = [&](double s) { return height - style.margin - style.cell * s; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width) << "\" height=\"" << fixed(height)
        << "\" viewBox=\"0 0 " << fixed(width) << " " << fixed(height) << "\">\n";
    out << "<title>Ext chart: " << chart.module << ", p = " << chart.prime.value() << "</title>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fixed(width) << "\" height=\"" << fixed(height) << "\" fill=\"white\"/>\n";

    out << "<g id=\"grid\" stroke=\"#e0e0e0\" stroke-width=\"1\">\n";
    for (int x = 0; x <= x_max; ++x)
        out << "<line x1=\"" << fixed(px(x)) << "\" y1=\"" << fixed(py(0)) << "\" x2=\"" << fixed(px(x)) << "\" y2=\""
            << fixed(py(y_max)) << "\"/>\n";
    for (int y = 0; y <= y_max; ++y)
        out << "<line x1=\"" << fixed(px(0)) << "\" y1=\"" << fixed(py(y)) << "\" x2=\"" << fixed(px(x_max))
            << "\" y2=\"" << fixed(py(y)) << "\"/>\n";
    out << "</g>\n";

    out << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1.5\">\n";
    out << "<line x1=\"" << fixed(px(0)) << "\" y1=\"" << fixed(py(0)) << "\" x2=\"" << fixed(px(x_max)) << "\" y2=\""
        << fixed(py(0)) << "\"/>\n";
    out << "<line x1=\"" << fixed(px(0)) << "\" y1=\"" << fixed(py(0)) << "\" x2=\"" << fixed(px(0)) << "\" y2=\""
        << fixed(py(y_max)) << "\"/>\n";
    out << "</g>\n";

    out << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n";
    for (int x = 0; x <= x_max; x += (x_max > 40 ? 4 : 2))
        out << "<text x=\"" << fixed(px(x)) << "\" y=\"" << fixed(py(0) + 16) << "\">" << x << "</text>\n";
    for (int y = 0; y <= y_max; ++y)
        out << "<text x=\"" << fixed(px(0) - 14) << "\" y=\"" << fixed(py(y) + 4) << "\">" << y << "</text>\n";
    out << "<text x=\"" << fixed(px(x_max / 2.0)) << "\" y=\"" << fixed(height - 6) << "\">t - s</text>\n";
    out << "<text x=\"12\" y=\"" << fixed(py(y_max / 2.0)) << "\">s</text>\n";
    out << "</g>\n";

    if (chart.module == "sphere") {
        // boundary of the vanishing region: stem = 2s - 3 (p = 2), stem = (2p-2)s - 2 (odd p)
        const int p = chart.prime.value();
        const double slope = p == 2 ? 2.0 : 2.0 * (p - 1);
        const double offset = p == 2 ? 3.0 : 2.0;
        double s0 = offset / slope;
        double s1 = std::min(static_cast<double>(y_max), (x_max + offset) / slope);
        out << "<line id=\"vanishing-line\" x1=\"" << fixed(px(0)) << "\" y1=\"" << fixed(py(s0)) << "\" x2=\""
            << fixed(px(slope * s1 - offset)) << "\" y2=\"" << fixed(py(s1))
            << "\" stroke=\"#c03030\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    }

    out << "<g id=\"classes\" fill=\"black\">\n";
    for (const auto& [st, d] : chart.dims) {
        auto [s, t] = st;
        const int stem = t - s;
        if (stem < 0 || stem > x_max)
            continue;
        for (int i = 0; i < d; ++i) {
            double dx = (i - (d - 1) / 2.0) * style.dot_spacing;
            out << "<circle data-s=\"" << s << "\" data-t=\"" << t << "\" cx=\"" << fixed(px(stem) + dx) << "\" cy=\""
                << fixed(py(s)) << "\" r=\"" << fixed(style.dot_radius) << "\"/>\n";
        }
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

/// Writes `content` to `path` via a sibling temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out)
            throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace exptk
