#include "cli.hpp"

#include "mfspec/dgp.hpp"
#include "mfspec/errors.hpp"
#include "mfspec/mc_harness.hpp"
#include "mfspec/sample_io.hpp"
#include "mfspec/spec_tests.hpp"
#include "mfspec/validity_oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mfspec::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_doubles(std::string_view text, const char* what) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        double v = 0.0;
        const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
        if (piece.empty() || res.ec != std::errc() || res.ptr != piece.data() + piece.size()) {
            throw UsageError(std::string("cannot parse ") + what + " '" + std::string(text) + "'");
        }
        values.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

/// "flat" or "eop:w1,w2,...".
WeightVector parse_null(const std::string& spec, Eigen::Index m) {
    if (spec == "flat") return flat_weights(m);
    if (spec.rfind("eop:", 0) == 0) {
        const auto leading = parse_doubles(std::string_view(spec).substr(4), "--null weights");
        return end_of_period_weights(m, leading);
    }
    throw UsageError("--null must be 'flat' or 'eop:w1,w2,...', got '" + spec + "'");
}

std::uint64_t default_seed() {
    const char* env = std::getenv("MIDAS_SPECD_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t seed = 0;
    const std::string_view text(env);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw UsageError("MIDAS_SPECD_SEED must be an unsigned integer, got '" + std::string(text) + "'");
    }
    return seed;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    return format_double(v);
}

std::string fmt_short(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// Writes to --out when given, otherwise to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path);
    file << text;
    if (!file) throw Error("write to " + path + " failed");
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<Method> methods;
    for (const auto& name : names) {
        if (name == "all") {
            for (Method m : {Method::Miller, Method::AGK, Method::New, Method::LambdaT}) {
                if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
            }
            continue;
        }
        const auto m = parse_method(name);
        if (!m) throw UsageError("unknown method '" + name + "' (new, agk, miller, lambda, all)");
        if (std::find(methods.begin(), methods.end(), *m) == methods.end()) methods.push_back(*m);
    }
    return methods;
}

TestOutcome run_method(Method method, const TestInputs& inputs) {
    switch (method) {
        case Method::Miller: return miller_vat_test(inputs);
        case Method::AGK: return agk_test(inputs);
        case Method::New: return dwh_new_test(inputs);
        case Method::LambdaT: return lambda_t_test(inputs);
    }
    throw InvalidParameter("unknown method");
}

// ---- test -------------------------------------------------------------------

struct TestArgs {
    std::string low, high, null_spec = "flat", out;
    std::optional<Eigen::Index> m;
    std::vector<std::string> methods{"all"};
    std::optional<std::size_t> bandwidth;
    double level = 0.05;
    bool no_intercept = false;
};

void add_test(CLI::App& app, TestArgs& a) {
    app.add_option("--low", a.low, "CSV with columns period_id,y")->required();
    app.add_option("--high", a.high, "CSV with columns period_id,lag_index,x")->required();
    app.add_option("--m", a.m, "high-frequency lags per period (inferred when absent)");
    app.add_option("--null", a.null_spec, "null weights: flat or eop:w1,w2,...");
    app.add_option("--method", a.methods, "new, agk, miller, lambda or all")->delimiter(',');
    app.add_option("--hac-bandwidth", a.bandwidth, "Bartlett bandwidth (default floor(4(T/100)^(2/9)))");
    app.add_option("--level", a.level, "nominal level")->check(CLI::Range(0.0, 1.0));
    app.add_option("--out", a.out, "write machine-readable CSV here");
    app.add_flag("--no-instrument-intercept", a.no_intercept, "leave the constant out of the instrument set");
}

int run_test(const TestArgs& a, std::ostream& out) {
    const auto methods = parse_methods(a.methods);
    const MixedSample sample = load_sample({a.low, a.high, a.m});
    const TestInputs inputs{sample, parse_null(a.null_spec, sample.m()),
                            HacOptions{HacKernel::Bartlett, a.bandwidth}, !a.no_intercept};

    std::ostringstream table;
    std::ostringstream csv;
    csv << "method,statistic,df,p_value,reject,diagnostics\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %12s %3s %12s %7s  %s\n", "method", "statistic", "df",
                  "p_value", "reject", "diagnostics");
    table << "T=" << sample.T() << " m=" << sample.m() << " level=" << fmt(a.level) << '\n' << line;
    int status = 0;
    for (Method method : methods) {
        TestOutcome o;
        std::string diag;
        try {
            o = run_method(method, inputs);
            diag = o.diagnostics.to_string();
        } catch (const Error& e) {
            o.statistic = o.p_value = std::numeric_limits<double>::quiet_NaN();
            diag = std::string("error: ") + e.what();
            std::replace(diag.begin(), diag.end(), ',', ';');
            status = 1;
        }
        const bool reject = o.rejects_at(a.level);
        std::snprintf(line, sizeof line, "%-8s %12s %3d %12s %7s  %s\n",
                      std::string(method_name(method)).c_str(), fmt_short(o.statistic).c_str(), o.df,
                      fmt_short(o.p_value).c_str(), reject ? "yes" : "no", diag.c_str());
        table << line;
        csv << method_name(method) << ',' << fmt(o.statistic) << ',' << o.df << ',' << fmt(o.p_value)
            << ',' << (reject ? 1 : 0) << ',' << diag << '\n';
    }
    out << table.str();
    if (!a.out.empty()) emit(csv.str(), a.out, out);
    return status;
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    DgpSpec spec;
    std::optional<std::uint64_t> seed;
    std::string low, high;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
    app.add_option("--T", a.spec.T, "low-frequency periods");
    app.add_option("--m", a.spec.m, "high-frequency lags per period");
    app.add_option("--c", a.spec.c, "error AR(1) parameter");
    app.add_option("--d", a.spec.d, "regressor AR(1) parameter");
    app.add_option("--beta", a.spec.beta, "slope");
    app.add_option("--theta", a.spec.theta, "true weighting parameter (0 = flat)");
    app.add_option("--burn-in", a.spec.burn_in, "discarded high-frequency steps");
    app.add_option("--seed", a.seed, "RNG seed (default: MIDAS_SPECD_SEED or 0)");
    app.add_option("--low", a.low, "output CSV for y")->required();
    app.add_option("--high", a.high, "output CSV for x")->required();
}

int run_simulate(SimulateArgs a) {
    a.spec.seed = a.seed ? *a.seed : default_seed();
    try {
        a.spec.validate();
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }
    save_sample(simulate(a.spec), a.low, a.high);
    return 0;
}

// ---- mc ---------------------------------------------------------------------

struct McArgs {
    std::string preset, format = "csv", out;
    std::vector<Eigen::Index> T, m;
    std::vector<double> c, d, k;
    std::vector<std::string> methods;
    std::optional<std::size_t> reps, bandwidth;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    double level = 0.05;
    bool no_intercept = false;
};

void add_mc(CLI::App& app, McArgs& a) {
    app.add_option("--preset", a.preset, "desk or full")->check(CLI::IsMember({"desk", "full"}));
    app.add_option("--T", a.T, "comma-separated T values")->delimiter(',');
    app.add_option("--m", a.m, "comma-separated m values")->delimiter(',');
    app.add_option("--c", a.c, "comma-separated error AR values")->delimiter(',');
    app.add_option("--d", a.d, "comma-separated regressor AR values")->delimiter(',');
    app.add_option("--k", a.k, "comma-separated theta values")->delimiter(',');
    app.add_option("--methods,--method", a.methods, "new, agk, miller, lambda or all")->delimiter(',');
    app.add_option("--reps", a.reps, "replications per cell");
    app.add_option("--seed", a.seed, "base seed (default: MIDAS_SPECD_SEED or 0)");
    app.add_option("--workers", a.workers, "threads")->check(CLI::PositiveNumber);
    app.add_option("--format", a.format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
    app.add_option("--out", a.out, "output file (default stdout)");
    app.add_option("--hac-bandwidth", a.bandwidth, "fixed Bartlett bandwidth");
    app.add_option("--level", a.level, "nominal level")->check(CLI::Range(0.0, 1.0));
    app.add_flag("--no-instrument-intercept", a.no_intercept, "leave the constant out of the instrument set");
}

int run_mc(const McArgs& a, std::ostream& out) {
    GridConfig g;
    if (a.preset == "desk") {
        g = desk_preset();
    } else if (a.preset == "full") {
        g = full_preset();
    } else {
        if (a.T.empty() || a.m.empty()) throw UsageError("mc needs --preset or both --T and --m");
        g.k_values = standard_k_values();
    }
    if (!a.T.empty()) g.T_values = a.T;
    if (!a.m.empty()) g.m_values = a.m;
    if (!a.c.empty()) g.c_values = a.c;
    if (!a.d.empty()) g.d_values = a.d;
    if (!a.k.empty()) g.k_values = a.k;
    if (!a.methods.empty()) g.methods = parse_methods(a.methods);
    if (a.reps) g.replications = *a.reps;
    g.base_seed = a.seed ? *a.seed : default_seed();
    g.workers = a.workers;
    g.hac_bandwidth = a.bandwidth;
    g.nominal_level = a.level;
    g.instrument_intercept = !a.no_intercept;
    try {
        g.validate();
    } catch (const InvalidParameter& e) {
        throw UsageError(e.what());
    }
    const auto table = run_grid(g);
    emit(render_table(table, a.format == "md" ? TableFormat::Markdown : TableFormat::Csv), a.out, out);
    return 0;
}

// ---- oracle -----------------------------------------------------------------

struct OracleArgs {
    double theta = 0.5, d = 0.0, beta1 = 10.0, c = 0.0;
    std::string null_spec = "flat", out;
    std::vector<Eigen::Index> m_list{8, 16, 32, 64, 128, 256};
    std::size_t mc_reps = 0;
    Eigen::Index T = 200;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
};

void add_oracle(CLI::App& app, OracleArgs& a) {
    app.add_option("--theta", a.theta, "true weighting parameter");
    app.add_option("--d", a.d, "regressor AR(1) parameter")->check(CLI::Range(-0.999999, 0.999999));
    app.add_option("--beta1", a.beta1, "slope");
    app.add_option("--null", a.null_spec, "null weights: flat or eop:w1,w2,...");
    app.add_option("--m-list", a.m_list, "comma-separated m values")->delimiter(',');
    app.add_option("--mc-reps", a.mc_reps, "Monte Carlo replications per m (0 skips the simulation)");
    app.add_option("--T", a.T, "periods per Monte Carlo sample");
    app.add_option("--c", a.c, "error AR(1) parameter for the simulation");
    app.add_option("--seed", a.seed, "base seed (default: MIDAS_SPECD_SEED or 0)");
    app.add_option("--workers", a.workers, "threads")->check(CLI::PositiveNumber);
    app.add_option("--out", a.out, "output file (default stdout)");
}

int run_oracle(const OracleArgs& a, std::ostream& out) {
    if (a.mc_reps == 1) throw UsageError("--mc-reps must be 0 or at least 2");
    const std::uint64_t seed = a.seed ? *a.seed : default_seed();
    std::ostringstream csv;
    csv << "m,r,analytic,mc_mean,mc_se,analytic_times_m\n";
    for (Eigen::Index m : a.m_list) {
        if (m < 2) throw UsageError("--m-list values must be >= 2");
        const WeightVector pi0 = parse_null(a.null_spec, m);
        const auto cov = RegressorCovariance::stationary_ar1(a.d, m);
        const auto [u1, u2] = instrument_weights(m);
        int r = 1;
        for (const WeightVector* ups : {&u1, &u2}) {
            const double value = expected_instrument_score(a.beta1, a.theta, pi0, *ups, cov);
            csv << m << ',' << r << ',' << fmt(value) << ',';
            if (a.mc_reps >= 2) {
                DgpSpec spec;
                spec.T = a.T;
                spec.m = m;
                spec.c = a.c;
                spec.d = a.d;
                spec.beta = a.beta1;
                spec.theta = a.theta;
                spec.seed = derive_replication_seed(seed, static_cast<std::uint64_t>(m), 0);
                const McEstimate est = monte_carlo_instrument_score(spec, pi0, *ups, a.mc_reps, a.workers);
                csv << fmt(est.mean) << ',' << fmt(est.std_error);
            } else {
                csv << ',';
            }
            csv << ',' << fmt(value * static_cast<double>(m)) << '\n';
            ++r;
        }
    }
    emit(csv.str(), a.out, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mixed-frequency Durbin-Wu-Hausman specification tests"};
    app.name(args.empty() ? "mfspec" : args.front());
    app.require_subcommand(1);

    TestArgs test_args;
    SimulateArgs sim_args;
    McArgs mc_args;
    OracleArgs oracle_args;
    auto* test_cmd = app.add_subcommand("test", "run the specification tests on a CSV dataset");
    auto* sim_cmd = app.add_subcommand("simulate", "write a simulated sample as CSV");
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo rejection-rate table");
    auto* oracle_cmd = app.add_subcommand("oracle", "analytic instrument-validity values by m");
    add_test(*test_cmd, test_args);
    add_simulate(*sim_cmd, sim_args);
    add_mc(*mc_cmd, mc_args);
    add_oracle(*oracle_cmd, oracle_args);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (test_cmd->parsed()) return run_test(test_args, out);
        if (sim_cmd->parsed()) return run_simulate(sim_args);
        if (mc_cmd->parsed()) return run_mc(mc_args, out);
        if (oracle_cmd->parsed()) return run_oracle(oracle_args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace mfspec::cli
