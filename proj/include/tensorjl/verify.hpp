#pragma once

#include "tensorjl/matrix.hpp"
#include "tensorjl/projection.hpp"
#include "tensorjl/rng.hpp"
#include "tensorjl/sampling.hpp"
#include "tensorjl/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tensorjl {

/// Sample mean/variance of a Monte-Carlo statistic.
///   mean_stderr     = sqrt(variance / trials)
///   variance_stderr = delete-a-block jackknife over (up to) 100 contiguous blocks
/// variance is the unbiased (n - 1) estimator.
struct MomentReport {
    std::size_t trials = 0;
    double mean = 0.0;
    double variance = 0.0;
    double mean_stderr = 0.0;
    double variance_stderr = 0.0;
};

inline constexpr std::size_t kJackknifeBlocks = 100;

[[nodiscard]] MomentReport summarize(std::span<const double> samples, std::size_t blocks = kJackknifeBlocks);

/// |‖e‖² / ‖x‖² - 1|. Throws DegenerateInput when x is zero.
[[nodiscard]] double distortion(const Embedding& e, const AnyTensor& x);
[[nodiscard]] double distortion(double embedding_sq_norm, double input_sq_norm);

/// Draws a fresh projection from a seed.
using ProjectionSampler = std::function<Projection(Seed)>;

[[nodiscard]] ProjectionSampler make_sampler(const FamilySpec& family, const Shape& shape, std::size_t k);

/// Moments of ‖f(x)‖² over `trials` projections, trial t seeded with
/// derive_seed(seed, {t}). Results do not depend on `threads`.
[[nodiscard]] MomentReport estimate_projection_moments(const ProjectionSampler& sampler, const AnyTensor& x,
                                                       std::size_t trials, Seed seed, std::size_t threads = 0);

/// Per-trial ‖f(x)‖² values behind estimate_projection_moments.
[[nodiscard]] std::vector<double> projected_sq_norms(const ProjectionSampler& sampler, const AnyTensor& x,
                                                     std::size_t trials, Seed seed, std::size_t threads = 0);

/// Upper bounds on Var‖f(x)‖² per unit ‖x‖⁴:
///   TT: (3 (1 + 2/R)^(N-1) - 1) / k
///   CP: (3^(N-1) (1 + 2/R) - 1) / k
[[nodiscard]] double variance_bound_tt(std::size_t order, std::size_t rank, std::size_t k);
[[nodiscard]] double variance_bound_cp(std::size_t order, std::size_t rank, std::size_t k);

/// Exact Var‖f_TT(X)‖² for a matrix input: (2‖X‖⁴ + (6/R) tr((XᵀX)²)) / k.
[[nodiscard]] double tt_variance_exact_order2(const DenseTensor& x, std::size_t rank, std::size_t k);

struct BoundParams {
    std::size_t order = 1;
    std::size_t rank = 1;
    double epsilon = 0.1;
    double points = 1.0;  // m, number of tensors embedded simultaneously
    double delta = 0.01;
    double constant = 1.0;  // the unspecified constant hidden in "k >~ ..."
};

/// c eps^-2 (1+2/R)^N log^{2N}(m/delta) for TT, c eps^-2 3^(N-1) (1+2/R) log^{2N}(m/delta) for CP.
[[nodiscard]] double min_k_bound_unrounded(const BoundParams& p, FamilyKind format);
/// Ceiling of min_k_bound_unrounded, saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t min_k_bound(const BoundParams& p, FamilyKind format);

/// Monte-Carlo estimate of E<A,B>^4 with A i.i.d. N(0, sigma^2) of B's shape.
[[nodiscard]] MomentReport isserlis_check(double sigma, const Matrix& b, std::size_t trials, Seed seed,
                                          std::size_t threads = 0);
[[nodiscard]] double isserlis_closed_form(double sigma, const Matrix& b);

/// Monte-Carlo estimate of E‖BA‖_F^4 with A (m x n) i.i.d. N(0, sigma^2), B (p x m).
[[nodiscard]] MomentReport wishart_check(double sigma, const Matrix& b, std::size_t n, std::size_t trials, Seed seed,
                                         std::size_t threads = 0);
[[nodiscard]] double wishart_closed_form(double sigma, const Matrix& b, std::size_t n);

struct TailReport {
    std::size_t trials = 0;
    std::size_t exceedances = 0;
    double probability = 0.0;
    double standard_error = 0.0;  // binomial, of `probability`
};

/// Fraction of trials whose distortion is at least epsilon.
[[nodiscard]] TailReport tail_check(const ProjectionSampler& sampler, const AnyTensor& x, double epsilon,
                                    std::size_t trials, Seed seed, std::size_t threads = 0);

struct TailGridReport {
    std::vector<std::size_t> ks;
    std::vector<TailReport> reports;
    /// Each exceedance is at most the previous one plus 2 combined binomial stderrs.
    bool non_increasing = true;
};

/// tail_check across a k grid with the same seed, so the k-row projection is a
/// prefix of the larger ones (common random numbers).
[[nodiscard]] TailGridReport tail_check_grid(const FamilySpec& family, const AnyTensor& x,
                                             std::span<const std::size_t> ks, double epsilon, std::size_t trials,
                                             Seed seed, std::size_t threads = 0);

}  // namespace tensorjl
