#pragma once

#include "mfspec/weights.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace mfspec {

/// Two CSV files describing one mixed-frequency sample.
///
///   low:  period_id,y
///   high: period_id,lag_index,x    (lag_index 0..m-1, 0 = most recent)
///
/// A header row is required. When `m` is empty it is inferred as the largest
/// lag_index plus one.
struct DataFileLayout {
    std::filesystem::path low_path;
    std::filesystem::path high_path;
    std::optional<Eigen::Index> m;
};

/// Rows come out ordered by period_id (numerically when every id is an
/// integer, lexicographically otherwise), columns by lag_index.
///
/// Throws ParseError (with the offending line), RaggedPeriod, or MissingValue
/// for empty / NA fields and periods present in only one file.
MixedSample load_sample(const DataFileLayout& layout);
MixedSample read_sample(std::istream& low, std::istream& high,
                        std::optional<Eigen::Index> m = std::nullopt);

/// Period ids are 1..T. Values use the shortest representation that parses
/// back to the same double.
void save_sample(const MixedSample& sample, const std::filesystem::path& low_path,
                 const std::filesystem::path& high_path);
void write_sample(const MixedSample& sample, std::ostream& low, std::ostream& high);

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

}  // namespace mfspec
