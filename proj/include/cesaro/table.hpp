#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cesaro {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rectangular table of experiment output plus '#'-prefixed metadata lines.
class ExperimentTable {
public:
    ExperimentTable() = default;
    explicit ExperimentTable(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const std::vector<std::string>& metadata() const noexcept { return metadata_; }

    /// Throws std::invalid_argument on width mismatch and std::domain_error on NaN/inf.
    void add_row(std::vector<Cell> row);
    void add_metadata(std::string line);

    std::size_t column_index(std::string_view name) const;
    /// Numeric value of a cell (integers widen to double).
    double number(std::size_t row, std::string_view column) const;

    friend bool operator==(const ExperimentTable&, const ExperimentTable&) = default;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::string> metadata_;
};

/// Metadata as "# ..." lines, header, then rows. RFC 4180 quoting, 17 significant digits.
std::string to_csv(const ExperimentTable& table);
ExperimentTable parse_csv(std::string_view text);

void emit_csv(const ExperimentTable& table, const std::filesystem::path& path);

struct PlotSpec {
    std::string x_column = "n";
    std::vector<std::string> y_columns;
    std::vector<std::string> group_by;  // one polyline per distinct combination
    std::string title;
    bool log_y = false;
};

/// Single-panel line chart, log-scaled x axis, self-contained SVG.
std::string to_svg(const ExperimentTable& table, const PlotSpec& spec);
void emit_svg(const ExperimentTable& table, const std::filesystem::path& path, const PlotSpec& spec);

} // namespace cesaro
