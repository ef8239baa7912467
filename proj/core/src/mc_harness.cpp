#include "mfspec/mc_harness.hpp"

#include "mfspec/dgp.hpp"
#include "mfspec/errors.hpp"
#include "mfspec/rng.hpp"
#include "mfspec/spec_tests.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cctype>
#include <cmath>
#include <set>
#include <thread>

namespace mfspec {

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::Miller: return "Miller";
        case Method::AGK: return "AGK";
        case Method::New: return "New";
        case Method::LambdaT: return "LambdaT";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "miller") return Method::Miller;
    if (lower == "agk") return Method::AGK;
    if (lower == "new") return Method::New;
    if (lower == "lambda" || lower == "lambdat") return Method::LambdaT;
    return std::nullopt;
}

void GridConfig::validate() const {
    if (replications < 1) throw InvalidParameter("replications must be >= 1");
    if (!(nominal_level > 0.0 && nominal_level < 1.0)) {
        throw InvalidParameter("nominal level must lie in (0, 1)");
    }
    if (methods.empty()) throw InvalidParameter("no methods requested");
    if (T_values.empty() || m_values.empty() || c_values.empty() || d_values.empty() ||
        k_values.empty()) {
        throw InvalidParameter("every grid dimension needs at least one value");
    }
    for (auto m : m_values) {
        if (m < 2) throw InvalidParameter("grid m values must be >= 2");
    }
    for (auto T : T_values) {
        if (T < 5) throw InvalidParameter("grid T values must be >= 5");
    }
    for (double c : c_values) {
        if (!(std::abs(c) < 1.0)) throw InvalidParameter("grid c values must satisfy |c| < 1");
    }
    for (double d : d_values) {
        if (!(std::abs(d) < 1.0)) throw InvalidParameter("grid d values must satisfy |d| < 1");
    }
    if (burn_in < 0) throw InvalidParameter("burn_in must be >= 0");
}

std::vector<double> standard_k_values() {
    std::vector<double> k;
    for (int i = 0; i <= 20; ++i) k.push_back(static_cast<double>(i) / 10.0);
    return k;
}

GridConfig desk_preset() {
    GridConfig g;
    g.methods = {Method::Miller, Method::AGK, Method::New};
    g.T_values = {125, 512};
    g.m_values = {4, 150, 365};
    g.c_values = {0.0, 0.8};
    g.d_values = {0.0};
    g.k_values = standard_k_values();
    g.replications = 500;
    return g;
}

GridConfig full_preset() {
    GridConfig g = desk_preset();
    g.c_values = {-0.5, 0.0, 0.3, 0.5, 0.8};
    g.d_values = {-0.5, 0.0, 0.5};
    g.replications = 2000;
    return g;
}

std::uint64_t scenario_id(Eigen::Index T, Eigen::Index m, double c, double d, double k) noexcept {
    // Parameters enter at 1e-9 resolution so that 0.1 and 0.1000000000001 share seeds.
    auto q = [](double v) { return static_cast<std::uint64_t>(std::llround(v * 1e9)); };
    std::uint64_t h = 0x5ca1ab1e0ddba11ULL;
    for (std::uint64_t part : {static_cast<std::uint64_t>(T), static_cast<std::uint64_t>(m), q(c),
                               q(d), q(k)}) {
        h = mix64(h ^ part) + 0x9e3779b97f4a7c15ULL;
    }
    return h;
}

namespace {

struct Scenario {
    Eigen::Index T;
    Eigen::Index m;
    double c;
    double d;
    double k;
    std::uint64_t id;
};

TestOutcome run_method(Method method, const TestInputs& inputs) {
    switch (method) {
        case Method::Miller: return miller_vat_test(inputs);
        case Method::AGK: return agk_test(inputs);
        case Method::New: return dwh_new_test(inputs);
        case Method::LambdaT: return lambda_t_test(inputs);
    }
    throw InvalidParameter("unknown method");
}

}  // namespace

RejectionTable run_grid(const GridConfig& config) {
    config.validate();

    std::vector<Scenario> scenarios;
    for (auto T : config.T_values)
        for (auto m : config.m_values)
            for (double c : config.c_values)
                for (double d : config.d_values)
                    for (double k : config.k_values)
                        scenarios.push_back({T, m, c, d, k, scenario_id(T, m, c, d, k)});

    const std::size_t n_methods = config.methods.size();
    const std::size_t reps = config.replications;
    const std::size_t n_tasks = scenarios.size() * reps;
    constexpr std::size_t kChunk = 16;

    using Tallies = std::vector<CellTally>;  // scenario-major, method-minor
    auto worker = [&](std::atomic<std::size_t>& next, Tallies& local) {
        local.assign(scenarios.size() * n_methods, CellTally{});
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= n_tasks) break;
            const std::size_t end = std::min(n_tasks, begin + kChunk);
            for (std::size_t task = begin; task < end; ++task) {
                const std::size_t si = task / reps;
                const std::size_t rep = task % reps;
                const Scenario& sc = scenarios[si];
                DgpSpec spec;
                spec.T = sc.T;
                spec.m = sc.m;
                spec.c = sc.c;
                spec.d = sc.d;
                spec.beta = config.beta;
                spec.theta = sc.k;
                spec.burn_in = config.burn_in;
                spec.seed = derive_replication_seed(config.base_seed, sc.id, rep);
                const TestInputs inputs{simulate(spec), flat_weights(sc.m),
                                        HacOptions{HacKernel::Bartlett, config.hac_bandwidth},
                                        config.instrument_intercept};
                for (std::size_t mi = 0; mi < n_methods; ++mi) {
                    CellTally& tally = local[si * n_methods + mi];
                    ++tally.replications;
                    try {
                        const TestOutcome out = run_method(config.methods[mi], inputs);
                        if (out.diagnostics.contains(Diagnostic::NonPositiveHausmanVariance) ||
                            std::isnan(out.p_value)) {
                            ++tally.failures;
                        } else if (out.rejects_at(config.nominal_level)) {
                            ++tally.rejections;
                        }
                    } catch (const Error&) {
                        ++tally.failures;
                    }
                }
            }
        }
    };

    const unsigned n_workers = std::max(1u, config.workers);
    std::vector<Tallies> partial(n_workers);
    std::atomic<std::size_t> next{0};
    if (n_workers == 1) {
        worker(next, partial[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) {
            threads.emplace_back(worker, std::ref(next), std::ref(partial[w]));
        }
        for (auto& th : threads) th.join();
    }

    RejectionTable table;
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
        const Scenario& sc = scenarios[si];
        for (std::size_t mi = 0; mi < n_methods; ++mi) {
            CellTally total;
            for (const Tallies& part : partial) {
                if (part.empty()) continue;
                total.replications += part[si * n_methods + mi].replications;
                total.rejections += part[si * n_methods + mi].rejections;
                total.failures += part[si * n_methods + mi].failures;
            }
            table.cells[CellKey{sc.T, sc.m, sc.d, sc.c, config.methods[mi], sc.k}] = total;
        }
    }
    return table;
}

namespace {

std::string format_fixed(double v, int precision) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

std::string format_general(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_k(double k) {
    const double tenths = k * 10.0;
    if (std::abs(tenths - std::round(tenths)) < 1e-9) return format_fixed(std::round(tenths) / 10.0, 1);
    return format_general(k);
}

// Percent with one decimal, rounded half away from zero on the per-mille count.
std::string format_rate(const CellTally& tally) {
    if (tally.replications == 0) return "";
    const long long permille = std::llround(1000.0 * static_cast<double>(tally.rejections) /
                                            static_cast<double>(tally.replications));
    return std::to_string(permille / 10) + "." + std::to_string(permille % 10);
}

struct RowKey {
    Eigen::Index T;
    Eigen::Index m;
    double d;
    double c;
    Method method;
    auto operator<=>(const RowKey&) const = default;
};

}  // namespace

std::string render_table(const RejectionTable& table, TableFormat format) {
    std::set<double> ks;
    std::map<RowKey, std::map<double, CellTally>> rows;
    for (const auto& [key, tally] : table.cells) {
        ks.insert(key.k);
        rows[RowKey{key.T, key.m, key.d, key.c, key.method}][key.k] = tally;
    }

    std::vector<std::string> header{"T", "m", "d", "c", "method"};
    for (double k : ks) header.push_back(format == TableFormat::Csv ? "k=" + format_k(k) : format_k(k));
    header.push_back("failures");

    std::vector<std::vector<std::string>> body;
    for (const auto& [row, by_k] : rows) {
        std::vector<std::string> line{std::to_string(row.T), std::to_string(row.m),
                                      format_general(row.d), format_general(row.c),
                                      std::string(method_name(row.method))};
        std::size_t failures = 0;
        for (double k : ks) {
            const auto it = by_k.find(k);
            line.push_back(it == by_k.end() ? "" : format_rate(it->second));
            if (it != by_k.end()) failures += it->second.failures;
        }
        line.push_back(std::to_string(failures));
        body.push_back(std::move(line));
    }

    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
        if (format == TableFormat::Csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) out += ',';
                out += cells[i];
            }
        } else {
            out += '|';
            for (const auto& cell : cells) out += ' ' + cell + " |";
        }
        out += '\n';
    };
    emit(header);
    if (format == TableFormat::Markdown) {
        out += '|';
        for (std::size_t i = 0; i < header.size(); ++i) out += "---|";
        out += '\n';
    }
    for (const auto& line : body) emit(line);
    return out;
}

}  // namespace mfspec
