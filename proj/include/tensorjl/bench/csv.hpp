#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tensorjl::bench {

inline constexpr int kSchemaVersion = 1;

/// Column order of every CSV written by the experiment runner.
inline constexpr const char* kCsvHeader =
    "schema_version,experiment,regime,family,rank,k,trial,seed,metric,value,wall_time_s,rng,threads";

/// One measured value. Unset optionals are written as empty cells
/// (rank for the dense baselines, trial for per-configuration aggregates).
struct ResultRecord {
    std::string experiment;
    std::string regime;
    std::string family;
    std::optional<std::size_t> rank;
    std::optional<std::size_t> k;
    std::optional<std::size_t> trial;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
    std::optional<double> wall_time_s;
    std::string rng;
    std::size_t threads = 1;
};

void write_csv(std::ostream& os, const std::vector<ResultRecord>& records);
void write_csv_file(const std::string& path, const std::vector<ResultRecord>& records);

/// Formats a value with enough digits to round-trip a double.
[[nodiscard]] std::string format_double(double v);

}  // namespace tensorjl::bench
