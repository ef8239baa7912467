#include "mfspec/sample_io.hpp"

#include "mfspec/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>
#include <vector>

namespace mfspec {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool is_missing(std::string_view field) {
    if (field.empty()) return true;
    const std::string l = lower(field);
    return l == "na" || l == "nan" || l == "null" || l == ".";
}

double parse_value(std::string_view field, std::size_t line, const char* column) {
    if (is_missing(field)) {
        throw MissingValue(std::string("missing ") + column + " (line " + std::to_string(line) + ")");
    }
    if (field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw ParseError("cannot parse " + std::string(column) + " value '" + std::string(field) + "'",
                         line);
    }
    return v;
}

std::optional<long long> as_integer(std::string_view s) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

/// Reads header-checked rows; each row is (line number, fields).
struct Table {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

Table read_table(std::istream& in, const std::vector<std::string>& header, const char* name) {
    Table table;
    std::string line;
    std::size_t number = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++number;
        std::string_view view(line);
        if (number == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
        if (trim(view).empty()) continue;
        const auto fields = split(view);
        if (!seen_header) {
            bool ok = fields.size() == header.size();
            for (std::size_t i = 0; ok && i < header.size(); ++i) ok = lower(fields[i]) == header[i];
            if (!ok) {
                std::string expected;
                for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
                throw ParseError(std::string(name) + " header must be '" + expected + "'", number);
            }
            seen_header = true;
            continue;
        }
        if (fields.size() != header.size()) {
            throw ParseError(std::string(name) + " row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(header.size()),
                             number);
        }
        table.rows.emplace_back(number, std::vector<std::string>(fields.begin(), fields.end()));
    }
    if (!seen_header) throw ParseError(std::string(name) + " file is empty", 0);
    return table;
}

}  // namespace

MixedSample read_sample(std::istream& low, std::istream& high, std::optional<Eigen::Index> m) {
    if (m && *m < 1) throw InvalidParameter("m must be >= 1");
    const Table low_rows = read_table(low, {"period_id", "y"}, "low-frequency");
    const Table high_rows = read_table(high, {"period_id", "lag_index", "x"}, "high-frequency");

    std::map<std::string, double> y_by_period;
    for (const auto& [line, f] : low_rows.rows) {
        if (f[0].empty()) throw MissingValue("missing period_id (line " + std::to_string(line) + ")");
        const double y = parse_value(f[1], line, "y");
        if (!y_by_period.emplace(f[0], y).second) {
            throw ParseError("duplicate period_id '" + f[0] + "'", line);
        }
    }

    struct HighRow {
        long long lag;
        double x;
        std::size_t line;
    };
    std::map<std::string, std::vector<HighRow>> x_by_period;
    long long max_lag = -1;
    for (const auto& [line, f] : high_rows.rows) {
        if (f[0].empty()) throw MissingValue("missing period_id (line " + std::to_string(line) + ")");
        if (is_missing(f[1])) throw MissingValue("missing lag_index (line " + std::to_string(line) + ")");
        const auto lag = as_integer(f[1]);
        if (!lag || *lag < 0) {
            throw ParseError("lag_index '" + f[1] + "' out of range", line);
        }
        x_by_period[f[0]].push_back({*lag, parse_value(f[2], line, "x"), line});
        max_lag = std::max(max_lag, *lag);
    }
    const Eigen::Index cols = m ? *m : static_cast<Eigen::Index>(max_lag + 1);
    if (cols < 1) throw ParseError("high-frequency file has no rows", 0);

    for (const auto& [period, rows] : x_by_period) {
        if (!y_by_period.count(period)) {
            throw MissingValue("period '" + period + "' has regressors but no y (line " +
                               std::to_string(rows.front().line) + ")");
        }
    }

    std::vector<std::string> periods;
    periods.reserve(y_by_period.size());
    bool all_integer = true;
    for (const auto& [period, y] : y_by_period) {
        periods.push_back(period);
        all_integer = all_integer && as_integer(period).has_value();
    }
    if (all_integer) {
        std::sort(periods.begin(), periods.end(),
                  [](const std::string& a, const std::string& b) { return *as_integer(a) < *as_integer(b); });
    }

    const auto T = static_cast<Eigen::Index>(periods.size());
    Eigen::VectorXd y(T);
    Eigen::MatrixXd x_high(T, cols);
    for (Eigen::Index t = 0; t < T; ++t) {
        const std::string& period = periods[static_cast<std::size_t>(t)];
        y[t] = y_by_period.at(period);
        const auto it = x_by_period.find(period);
        if (it == x_by_period.end()) {
            throw MissingValue("period '" + period + "' has y but no high-frequency rows");
        }
        const std::size_t count = it->second.size();
        if (count != static_cast<std::size_t>(cols)) {
            throw RaggedPeriod("period '" + period + "' has " + std::to_string(count) +
                                   " high-frequency rows, expected " + std::to_string(cols),
                               period);
        }
        std::vector<bool> seen(static_cast<std::size_t>(cols), false);
        for (const HighRow& row : it->second) {
            if (row.lag >= cols) {
                throw ParseError("lag_index " + std::to_string(row.lag) + " out of range for m=" +
                                     std::to_string(cols),
                                 row.line);
            }
            if (seen[static_cast<std::size_t>(row.lag)]) {
                throw ParseError("duplicate lag_index " + std::to_string(row.lag) + " in period '" +
                                     period + "'",
                                 row.line);
            }
            seen[static_cast<std::size_t>(row.lag)] = true;
            x_high(t, row.lag) = row.x;
        }
    }
    return MixedSample(std::move(y), std::move(x_high));
}

MixedSample load_sample(const DataFileLayout& layout) {
    std::ifstream low(layout.low_path);
    if (!low) throw ParseError("cannot open " + layout.low_path.string(), 0);
    std::ifstream high(layout.high_path);
    if (!high) throw ParseError("cannot open " + layout.high_path.string(), 0);
    return read_sample(low, high, layout.m);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_sample(const MixedSample& sample, std::ostream& low, std::ostream& high) {
    low << "period_id,y\n";
    high << "period_id,lag_index,x\n";
    for (Eigen::Index t = 0; t < sample.T(); ++t) {
        low << t + 1 << ',' << format_double(sample.y()[t]) << '\n';
        for (Eigen::Index j = 0; j < sample.m(); ++j) {
            high << t + 1 << ',' << j << ',' << format_double(sample.x_high()(t, j)) << '\n';
        }
    }
}

void save_sample(const MixedSample& sample, const std::filesystem::path& low_path,
                 const std::filesystem::path& high_path) {
    std::ofstream low(low_path);
    if (!low) throw Error("cannot write " + low_path.string());
    std::ofstream high(high_path);
    if (!high) throw Error("cannot write " + high_path.string());
    write_sample(sample, low, high);
    if (!low || !high) throw Error("write failed");
}

}  // namespace mfspec
