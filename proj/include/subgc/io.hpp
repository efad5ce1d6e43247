#pragma once

#include <string>
#include <vector>

namespace subgc {

/// Shortest round-trip decimal for a double; "inf"/"-inf"/"nan" for
/// non-finite values. Used everywhere bytes must be reproducible.
std::string format_double(double x);

/// Minimal comma-separated table (no quoting; our writers never emit
/// commas inside fields).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvTable parse(const std::string& text);
    /// Column index by name; throws UserError when absent.
    std::size_t column(const std::string& name) const;
};

struct PlotSpec {
    std::string x_col;
    std::string y_col;
    bool logx = false;
    bool logy = false;
    std::string title;
};

/// Self-contained SVG 1.1 line/scatter chart; deterministic bytes for a
/// fixed table and spec. Non-finite points are skipped. Throws UserError
/// on an empty body, a missing column, or nonpositive values on a log axis.
std::string render_svg_chart(const CsvTable& table, const PlotSpec& spec);

}  // namespace subgc
