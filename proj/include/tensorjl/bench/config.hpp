#pragma once

#include "tensorjl/sampling.hpp"
#include "tensorjl/tensor_ops.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tensorjl::bench {

enum class Experiment { Distortion, Timing, Pairwise, Verify };
enum class Regime { Small, Medium, High, Custom };

/// Declarative description of one experiment run.
struct ExperimentConfig {
    Experiment experiment = Experiment::Distortion;
    Regime regime = Regime::Small;
    std::size_t d = 15;
    /// Tensor orders; timing runs sweep all of them, other experiments need exactly one.
    std::vector<std::size_t> orders{3};
    std::vector<InputFormat> input_formats{InputFormat::TT};
    std::size_t input_rank = 10;
    /// Any of tt, cp, gaussian, very_sparse; the last two are the dense baselines.
    std::vector<FamilyKind> families{FamilyKind::TT, FamilyKind::CP, FamilyKind::Gaussian};
    std::vector<std::size_t> tt_ranks{2, 5, 10};
    std::vector<std::size_t> cp_ranks{4, 25, 100};
    std::vector<std::size_t> k_grid{5, 10, 25, 50, 100, 200};
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::string out;
    /// Very sparse parameter s; 0 means sqrt(D).
    double sparsity = 0.0;
    std::string dataset;
    bool fixed_input = false;
    std::size_t oracle_cap = kDefaultOracleCap;
    /// Worker threads for trial execution (0 = hardware concurrency).
    std::size_t threads = 0;

    // timing protocol
    std::size_t timing_repeats = 20;
    std::size_t timing_warmups = 3;

    // pairwise study
    std::size_t pairwise_points = 50;

    /// Multiplies the interior TT core variance; 1 is the correct schedule.
    /// Values other than 1 exist to check that verification detects a broken sampler.
    double tt_interior_variance_scale = 1.0;
};

/// Defaults for a regime: small (15, 3), medium (3, 12), high (3, 25), with the
/// matching baseline families. Custom starts from (3, 4) with no baselines.
[[nodiscard]] ExperimentConfig preset(Experiment experiment, Regime regime);

/// Throws ConfigError describing the first problem found.
void validate(const ExperimentConfig& config);

[[nodiscard]] Experiment parse_experiment(std::string_view s);
[[nodiscard]] Regime parse_regime(std::string_view s);
[[nodiscard]] std::vector<InputFormat> parse_input_formats(std::string_view s);
[[nodiscard]] std::vector<FamilyKind> parse_families(std::string_view s);
[[nodiscard]] std::vector<std::size_t> parse_size_list(std::string_view s);

[[nodiscard]] const char* experiment_name(Experiment e) noexcept;
[[nodiscard]] const char* regime_name(Regime r) noexcept;

}  // namespace tensorjl::bench
