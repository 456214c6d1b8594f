#include "cesaro/table.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cesaro {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    // Keep a decimal marker so the value reads back as a double.
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

bool parses_as_number(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    std::string tmp(s);
    char* end = nullptr;
    errno = 0;
    std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size();
}

bool needs_quotes(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos || parses_as_number(s) ||
           (!s.empty() && (s.front() == ' ' || s.back() == ' ' || s.front() == '#'));
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
    return out;
}

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto* d = std::get_if<double>(&cell)) {
        return format_double(*d);
    }
    const auto& s = std::get<std::string>(cell);
    return needs_quotes(s) ? quote(s) : s;
}

Cell parse_unquoted(const std::string& field) {
    if (field.empty()) {
        return std::string{};
    }
    const bool integral = std::all_of(field.begin() + ((field[0] == '-' || field[0] == '+') ? 1 : 0), field.end(),
                                      [](char ch) { return ch >= '0' && ch <= '9'; }) &&
                          field.find_first_of("0123456789") != std::string::npos;
    if (integral) {
        return static_cast<std::int64_t>(std::strtoll(field.c_str(), nullptr, 10));
    }
    if (parses_as_number(field)) {
        return std::strtod(field.c_str(), nullptr);
    }
    return field;
}

// One CSV record starting at pos; returns fields and whether each was quoted.
std::vector<std::pair<std::string, bool>> read_record(std::string_view text, std::size_t& pos) {
    std::vector<std::pair<std::string, bool>> fields;
    std::string field;
    bool quoted = false;
    bool in_quotes = false;
    while (pos < text.size()) {
        const char ch = text[pos];
        if (in_quotes) {
            if (ch == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
            ++pos;
            continue;
        }
        if (ch == '"') {
            in_quotes = true;
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back(std::move(field), quoted);
            field.clear();
            quoted = false;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') {
                ++pos;
            }
            ++pos;
            break;
        } else {
            field += ch;
        }
        ++pos;
    }
    if (in_quotes) {
        throw std::invalid_argument("CSV: unterminated quoted field");
    }
    fields.emplace_back(std::move(field), quoted);
    return fields;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (const char ch : s) {
        switch (ch) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

std::string cell_label(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::get<double>(cell));
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << text;
    out.flush();
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

} // namespace

ExperimentTable::ExperimentTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void ExperimentTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("ExperimentTable: row has " + std::to_string(row.size()) + " cells, expected " +
                                    std::to_string(columns_.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (const auto* d = std::get_if<double>(&row[i]); d && !std::isfinite(*d)) {
            throw std::domain_error("ExperimentTable: non-finite value in column '" + columns_[i] + "'");
        }
    }
    rows_.push_back(std::move(row));
}

void ExperimentTable::add_metadata(std::string line) {
    metadata_.push_back(std::move(line));
}

std::size_t ExperimentTable::column_index(std::string_view name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) {
        throw std::out_of_range("ExperimentTable: no column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - columns_.begin());
}

double ExperimentTable::number(std::size_t row, std::string_view column) const {
    const auto& cell = rows_.at(row).at(column_index(column));
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        return static_cast<double>(*i);
    }
    if (const auto* d = std::get_if<double>(&cell)) {
        return *d;
    }
    throw std::invalid_argument("ExperimentTable: column '" + std::string(column) + "' is not numeric");
}

std::string to_csv(const ExperimentTable& table) {
    std::string out;
    for (const auto& line : table.metadata()) {
        out += "# " + line + "\n";
    }
    for (std::size_t i = 0; i < table.columns().size(); ++i) {
        out += (i ? "," : "") + format_cell(Cell{table.columns()[i]});
    }
    out += "\n";
    for (const auto& row : table.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + format_cell(row[i]);
        }
        out += "\n";
    }
    return out;
}

ExperimentTable parse_csv(std::string_view text) {
    std::size_t pos = 0;
    std::vector<std::string> metadata;
    while (pos < text.size() && text[pos] == '#') {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(pos + 1, end - pos - 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty() && line.front() == ' ') {
            line.remove_prefix(1);
        }
        metadata.emplace_back(line);
        pos = end + 1;
    }
    if (pos >= text.size()) {
        throw std::invalid_argument("CSV: missing header row");
    }
    std::vector<std::string> columns;
    for (auto& [name, quoted] : read_record(text, pos)) {
        columns.push_back(std::move(name));
    }
    ExperimentTable table(std::move(columns));
    for (auto& line : metadata) {
        table.add_metadata(std::move(line));
    }
    while (pos < text.size()) {
        auto fields = read_record(text, pos);
        if (fields.size() == 1 && fields[0].first.empty() && !fields[0].second) {
            continue;
        }
        std::vector<Cell> row;
        for (auto& [field, quoted] : fields) {
            row.push_back(quoted ? Cell{std::move(field)} : parse_unquoted(field));
        }
        table.add_row(std::move(row));
    }
    return table;
}

void emit_csv(const ExperimentTable& table, const std::filesystem::path& path) {
    write_text(path, to_csv(table));
}

std::string to_svg(const ExperimentTable& table, const PlotSpec& spec) {
    constexpr double width = 820.0;
    constexpr double height = 520.0;
    constexpr double left = 80.0;
    constexpr double right = 240.0;
    constexpr double top = 50.0;
    constexpr double bottom = 60.0;
    static constexpr std::array<const char*, 10> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    struct Series {
        std::string label;
        std::vector<std::pair<double, double>> points;
    };
    std::map<std::string, std::size_t> index;
    std::vector<Series> series;
    const auto x_col = table.column_index(spec.x_column);
    for (const auto& y_name : spec.y_columns) {
        const auto y_col = table.column_index(y_name);
        for (std::size_t r = 0; r < table.rows().size(); ++r) {
            std::string key = y_name;
            for (const auto& g : spec.group_by) {
                key += " " + g + "=" + cell_label(table.rows()[r][table.column_index(g)]);
            }
            auto [it, inserted] = index.try_emplace(key, series.size());
            if (inserted) {
                series.push_back({key, {}});
            }
            const double x = table.number(r, table.columns()[x_col]);
            const double y = table.number(r, table.columns()[y_col]);
            if (x > 0.0 && (!spec.log_y || y > 0.0)) {
                series[it->second].points.emplace_back(x, y);
            }
        }
    }

    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            const double ty = spec.log_y ? std::log10(y) : y;
            x_lo = std::min(x_lo, std::log2(x));
            x_hi = std::max(x_hi, std::log2(x));
            y_lo = std::min(y_lo, ty);
            y_hi = std::max(y_hi, ty);
        }
    }
    if (!(x_lo <= x_hi)) {
        x_lo = 0.0;
        x_hi = 1.0;
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (x_hi - x_lo < 1e-12) {
        x_hi = x_lo + 1.0;
    }
    if (y_hi - y_lo < 1e-12) {
        y_hi = y_lo + 1.0;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto px = [&](double x) { return left + (std::log2(x) - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) {
        const double ty = spec.log_y ? std::log10(y) : y;
        return top + (1.0 - (ty - y_lo) / (y_hi - y_lo)) * plot_h;
    };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"" << top - 20 << "\" font-size=\"15\">" << xml_escape(spec.title)
        << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    // x ticks at powers of two
    const int step = std::max(1, static_cast<int>(std::ceil((x_hi - x_lo) / 12.0)));
    for (int e = static_cast<int>(std::ceil(x_lo)); e <= static_cast<int>(std::floor(x_hi)); e += step) {
        const double x = px(std::ldexp(1.0, e));
        svg << "<line x1=\"" << x << "\" y1=\"" << top + plot_h << "\" x2=\"" << x << "\" y2=\"" << top + plot_h + 5
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">2^" << e
            << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double ty = y_lo + (y_hi - y_lo) * i / 5.0;
        const double y = top + (1.0 - i / 5.0) * plot_h;
        char label[32];
        std::snprintf(label, sizeof label, spec.log_y ? "1e%.2g" : "%.4g", ty);
        svg << "<line x1=\"" << left - 5 << "\" y1=\"" << y << "\" x2=\"" << left << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << label << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
        << xml_escape(spec.x_column) << " (log scale)</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % palette.size()];
        auto points = series[s].points;
        std::sort(points.begin(), points.end());
        if (!points.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : points) {
                svg << px(x) << ',' << py(y) << ' ';
            }
            svg << "\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(s);
        svg << "<line x1=\"" << width - right + 15 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 40
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << width - right + 45 << "\" y=\"" << ly + 4 << "\">" << xml_escape(series[s].label)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const ExperimentTable& table, const std::filesystem::path& path, const PlotSpec& spec) {
    write_text(path, to_svg(table, spec));
}

} // namespace cesaro
