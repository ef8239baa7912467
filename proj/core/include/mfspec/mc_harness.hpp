#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mfspec {

/// Row order in rendered tables follows declaration order.
enum class Method { Miller, AGK, New, LambdaT };

std::string_view method_name(Method method) noexcept;
/// Accepts "miller", "agk", "new", "lambda" (case-insensitive) plus the display names.
std::optional<Method> parse_method(std::string_view name);

struct GridConfig {
    std::vector<Method> methods{Method::Miller, Method::AGK, Method::New};
    std::vector<Eigen::Index> T_values;
    std::vector<Eigen::Index> m_values;
    std::vector<double> c_values{0.0};
    std::vector<double> d_values{0.0};
    std::vector<double> k_values{0.0};  ///< theta = k; k = 0 is the null
    std::size_t replications = 2000;
    double nominal_level = 0.05;
    std::uint64_t base_seed = 0;
    std::optional<std::size_t> hac_bandwidth;
    double beta = 10.0;
    Eigen::Index burn_in = 1000;
    bool instrument_intercept = true;
    /// Thread count; never changes the numbers, only wall time.
    unsigned workers = 1;

    void validate() const;
};

/// R = 500 over the T in {125, 512}, m in {4, 150, 365}, c in {0, 0.8}, d = 0 subgrid.
GridConfig desk_preset();
/// R = 2000 over c in {-0.5, 0, 0.3, 0.5, 0.8} and d in {-0.5, 0, 0.5}.
GridConfig full_preset();
/// 0.0, 0.1, ..., 2.0.
std::vector<double> standard_k_values();

struct CellKey {
    Eigen::Index T = 0;
    Eigen::Index m = 0;
    double d = 0.0;
    double c = 0.0;
    Method method = Method::New;
    double k = 0.0;

    auto operator<=>(const CellKey&) const = default;
};

struct CellTally {
    std::size_t replications = 0;
    std::size_t rejections = 0;
    std::size_t failures = 0;  ///< errors and NonPositiveHausmanVariance; never rejections

    std::size_t non_rejections() const noexcept { return replications - rejections - failures; }
    double rate() const noexcept {
        return replications == 0 ? 0.0
                                 : static_cast<double>(rejections) / static_cast<double>(replications);
    }
};

struct RejectionTable {
    std::map<CellKey, CellTally> cells;
};

/// Seed-derivation id of a data-generating scenario. Every method in a
/// scenario sees the same simulated samples.
std::uint64_t scenario_id(Eigen::Index T, Eigen::Index m, double c, double d, double k) noexcept;

RejectionTable run_grid(const GridConfig& config);

enum class TableFormat { Csv, Markdown };

/// Rows T x m x d x c x method, one column per k (percent, one decimal), plus
/// a trailing column with the row's failure count.
std::string render_table(const RejectionTable& table, TableFormat format);

}  // namespace mfspec
