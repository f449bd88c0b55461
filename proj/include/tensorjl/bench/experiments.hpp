#pragma once

#include "tensorjl/bench/config.hpp"
#include "tensorjl/bench/csv.hpp"
#include "tensorjl/tensor.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tensorjl::bench {

/// Outcome of one pass/fail check (verification runs only).
struct CheckOutcome {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct RunResult {
    std::vector<ResultRecord> records;
    std::vector<CheckOutcome> checks;

    [[nodiscard]] bool passed() const noexcept;
};

/// Distortion of fresh projections on fresh unit-norm low-rank inputs, per
/// (family, rank, k); per-trial rows plus distortion_mean / distortion_stderr.
[[nodiscard]] RunResult run_distortion(const ExperimentConfig& config);

/// Median wall time of project() over the timing repeats after warm-ups, per
/// (order, input format, family, rank, k). The time goes to wall_time_s; the
/// value column holds the repeat count so output stays reproducible.
[[nodiscard]] RunResult run_timing(const ExperimentConfig& config);

/// Mean pairwise distance ratio over CIFAR-10 images (or synthetic unit tensors
/// when no dataset is configured), per trial plus mean and standard deviation.
[[nodiscard]] RunResult run_pairwise(const ExperimentConfig& config);

/// Isometry, variance-bound, tail, Isserlis, Wishart and exact order-2 checks.
[[nodiscard]] RunResult run_verify(const ExperimentConfig& config);

/// Validates the config and dispatches on config.experiment.
[[nodiscard]] RunResult run_experiment(const ExperimentConfig& config);

/// (1 / (n(n-1))) sum over i != j of ‖f(x_i) - f(x_j)‖ / ‖x_i - x_j‖.
[[nodiscard]] double pairwise_mean_ratio(std::span<const DenseTensor> points,
                                         std::span<const std::vector<double>> images);

struct PairwiseStats {
    std::size_t points = 0;
    std::size_t trials = 0;
    double mean_ratio = 0.0;
    double stddev = 0.0;
};

[[nodiscard]] PairwiseStats pairwise_stats(std::size_t points, std::span<const double> per_trial_ratios);

/// Least-squares slope of log(time) against log(k).
[[nodiscard]] double loglog_slope(std::span<const std::size_t> ks, std::span<const double> times);

/// First record matching the given coordinates, if any.
[[nodiscard]] const ResultRecord* find_record(const std::vector<ResultRecord>& records, const std::string& family,
                                              std::optional<std::size_t> rank, std::optional<std::size_t> k,
                                              const std::string& metric, const std::string& regime = {});

}  // namespace tensorjl::bench
