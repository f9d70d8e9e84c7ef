// Command-line front end: CSV interchange, SVG rendering and the subcommand driver.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "loschmidt/analysis.hpp"
#include "loschmidt/core.hpp"

namespace loschmidt::cli {

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
/// Accepts plain reals, "a/b" fractions and inf.
double parse_real(std::string_view text);
/// "inf" (any case) or a positive real.
SystemSize parse_size(std::string_view text);
std::string format_size(const SystemSize& size);

inline constexpr std::string_view kTraceHeader = "model,size,delta_lambda,g,gamma,t,L";
inline constexpr std::string_view kMinimaHeader =
    "model,size,delta_lambda,g,gamma,scaling_variable,t_min,l_min,refined";
inline constexpr std::string_view kCollapseHeader = "b,t_rescaled,L";

void write_trace_csv(std::ostream& os, const EchoTrace& trace);
void write_minima_csv(std::ostream& os, const std::vector<analysis::SweepRecord>& records);
/// Per-member rows, then a "# key=value" summary block.
void write_collapse_csv(std::ostream& os, const std::vector<EchoTrace>& members, const std::vector<double>& b_list,
                        const CriticalExponents& exponents, const analysis::CollapseReport& report);

/// Comma-separated table; lines starting with '#' and blank lines are skipped.
class CsvTable {
  public:
    static CsvTable parse(std::istream& is);
    static CsvTable read_file(const std::string& path);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }
    bool has(std::string_view column) const;
    const std::string& cell(std::size_t row, std::string_view column) const;
    std::vector<double> numbers(std::string_view column) const;
    std::vector<std::string> strings(std::string_view column) const;

  private:
    std::size_t index(std::string_view column) const;

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

struct PlotStyle {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool loglog = false;
    bool scatter = false;
};

/// SVG 1.1 document; identical inputs give identical bytes.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotStyle& style);

struct OracleRow {
    std::string model;
    int size;
    double max_dev;
    double bound;
    bool pass() const { return max_dev <= bound; }
};

/// Engine vs independent reference for each model at the given size (QRM uses its own
/// fixed large-eta point).
std::vector<OracleRow> run_oracles(const std::vector<ModelId>& models, int size);

/// Entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loschmidt::cli
