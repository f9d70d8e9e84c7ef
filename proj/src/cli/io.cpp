#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "loschmidt/cli.hpp"

namespace loschmidt::cli {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_plain(std::string_view text) {
    const std::string l = lower(text);
    if (l == "inf" || l == "+inf" || l == "infinity") return std::numeric_limits<double>::infinity();
    if (l == "-inf") return -std::numeric_limits<double>::infinity();
    if (l == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) throw DomainError("not a number: '" + std::string(text) + "'");
    return v;
}

}  // namespace

double parse_real(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw DomainError("empty number");
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_plain(text);
    const double num = parse_plain(trim(text.substr(0, slash)));
    const double den = parse_plain(trim(text.substr(slash + 1)));
    if (den == 0.0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

SystemSize parse_size(std::string_view text) {
    const double v = parse_real(text);
    if (std::isinf(v) && v > 0) return SystemSize::infinite();
    return SystemSize::finite(v);
}

std::string format_size(const SystemSize& size) {
    return size.is_infinite() ? "inf" : format_double(size.value());
}

namespace {

void spec_prefix(std::ostream& os, const QuenchSpec& s) {
    os << model_name(s.model) << ',' << format_size(s.size) << ',' << format_double(s.delta_lambda) << ','
       << format_double(s.g) << ',' << format_double(s.gamma) << ',';
}

}  // namespace

void write_trace_csv(std::ostream& os, const EchoTrace& trace) {
    os << kTraceHeader << '\n';
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        spec_prefix(os, trace.spec);
        os << format_double(trace.times[i]) << ',' << format_double(trace.values[i]) << '\n';
    }
}

void write_minima_csv(std::ostream& os, const std::vector<analysis::SweepRecord>& records) {
    os << kMinimaHeader << '\n';
    for (const auto& r : records) {
        spec_prefix(os, r.minimum.spec);
        os << format_double(r.scaling_variable) << ',' << format_double(r.minimum.t_min) << ','
           << format_double(r.minimum.l_min) << ',' << (r.minimum.refined ? "true" : "false") << '\n';
    }
}

void write_collapse_csv(std::ostream& os, const std::vector<EchoTrace>& members, const std::vector<double>& b_list,
                        const CriticalExponents& exponents, const analysis::CollapseReport& report) {
    os << kCollapseHeader << '\n';
    for (std::size_t j = 0; j < members.size(); ++j) {
        const double scale = std::pow(b_list[j], exponents.z);
        for (std::size_t i = 0; i < members[j].times.size(); ++i) {
            os << format_double(b_list[j]) << ',' << format_double(members[j].times[i] * scale) << ','
               << format_double(members[j].values[i]) << '\n';
        }
    }
    os << "# metric=" << format_double(report.metric) << '\n';
    os << "# sup_dev=" << format_double(report.sup_dev) << '\n';
    os << "# nu=" << format_double(exponents.nu) << '\n';
    os << "# z=" << format_double(exponents.z) << '\n';
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) cells.emplace_back(trim(cur));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

CsvTable CsvTable::parse(std::istream& is) {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') continue;
        auto cells = split_line(std::string(content));
        if (t.header_.empty()) {
            t.header_ = std::move(cells);
            continue;
        }
        if (cells.size() != t.header_.size()) {
            throw DomainError("malformed CSV: line " + std::to_string(line_no) + " has " +
                              std::to_string(cells.size()) + " fields, header has " +
                              std::to_string(t.header_.size()));
        }
        t.rows_.push_back(std::move(cells));
    }
    if (t.header_.empty()) throw DomainError("empty CSV");
    return t;
}

CsvTable CsvTable::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    return parse(in);
}

bool CsvTable::has(std::string_view column) const {
    return std::find(header_.begin(), header_.end(), column) != header_.end();
}

std::size_t CsvTable::index(std::string_view column) const {
    const auto it = std::find(header_.begin(), header_.end(), column);
    if (it == header_.end()) throw DomainError("CSV has no column '" + std::string(column) + "'");
    return static_cast<std::size_t>(it - header_.begin());
}

const std::string& CsvTable::cell(std::size_t row, std::string_view column) const {
    return rows_.at(row)[index(column)];
}

std::vector<double> CsvTable::numbers(std::string_view column) const {
    const auto k = index(column);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
        try {
            out.push_back(parse_real(r[k]));
        } catch (const DomainError&) {
            throw DomainError("malformed CSV: column '" + std::string(column) + "' holds '" + r[k] + "'");
        }
    }
    return out;
}

std::vector<std::string> CsvTable::strings(std::string_view column) const {
    const auto k = index(column);
    std::vector<std::string> out;
    for (const auto& r : rows_) out.push_back(r[k]);
    return out;
}

}  // namespace loschmidt::cli
