#pragma once

#include "tensorjl/rng.hpp"
#include "tensorjl/tensor.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace tensorjl {

/// Per-core Gaussian variances of a TT projection row.
struct TTVarianceSchedule {
    double end_variance = 1.0;       // cores 1 and N
    double interior_variance = 1.0;  // cores 1 < n < N

    /// 1/sqrt(R) on the two end cores, 1/R inside; variance 1 for N = 1.
    static TTVarianceSchedule standard(std::size_t order, std::size_t rank);
};

/// k independent rank-R TT rows, each scaled by 1/sqrt(k) when applied.
struct TTProjection {
    Shape shape;
    std::size_t rank = 1;
    std::vector<TTTensor> rows;

    [[nodiscard]] std::size_t k() const noexcept { return rows.size(); }
};

/// k independent rank-R CP rows with N(0, (1/R)^(1/N)) factor entries.
struct CPProjection {
    Shape shape;
    std::size_t rank = 1;
    std::vector<CPTensor> rows;

    [[nodiscard]] std::size_t k() const noexcept { return rows.size(); }
};

/// Dense k x D matrix of N(0,1) entries, stored row by row.
struct DenseGaussianProjection {
    Shape shape;
    std::size_t k = 0;
    std::vector<double> entries;

    [[nodiscard]] std::size_t input_size() const noexcept { return shape.total_size(); }
};

/// Very sparse k x D matrix in CSR layout; entries are +-sqrt(s).
struct VerySparseProjection {
    Shape shape;
    std::size_t k = 0;
    double sparsity = 1.0;
    std::vector<std::size_t> row_offsets;  // k + 1 entries
    std::vector<std::size_t> columns;
    std::vector<double> values;

    [[nodiscard]] std::size_t input_size() const noexcept { return shape.total_size(); }
    [[nodiscard]] std::size_t nonzeros() const noexcept { return columns.size(); }
};

using Projection = std::variant<TTProjection, CPProjection, DenseGaussianProjection, VerySparseProjection>;

[[nodiscard]] std::size_t projection_k(const Projection& p) noexcept;

// Row i, core/factor n draws from derive_seed(seed, {i, n}). Gaussian and very
// sparse rows use derive_seed(seed, {i, 0}); with N = 1 and R = 1 the TT, CP
// and Gaussian samplers therefore produce bit-identical matrices.

[[nodiscard]] TTProjection sample_tt_projection(const Shape& shape, std::size_t rank, std::size_t k, Seed seed);
[[nodiscard]] TTProjection sample_tt_projection(const Shape& shape, std::size_t rank, std::size_t k, Seed seed,
                                                const TTVarianceSchedule& schedule);
[[nodiscard]] CPProjection sample_cp_projection(const Shape& shape, std::size_t rank, std::size_t k, Seed seed);
[[nodiscard]] DenseGaussianProjection sample_gaussian_rp(const Shape& shape, std::size_t k, Seed seed);
[[nodiscard]] DenseGaussianProjection sample_gaussian_rp(std::size_t input_size, std::size_t k, Seed seed);
[[nodiscard]] VerySparseProjection sample_very_sparse_rp(const Shape& shape, std::size_t k, double sparsity,
                                                         Seed seed);
[[nodiscard]] VerySparseProjection sample_very_sparse_rp(std::size_t input_size, std::size_t k, double sparsity,
                                                         Seed seed);

enum class InputFormat { TT, CP };

struct InputSpec {
    Shape shape;
    InputFormat format = InputFormat::TT;
    std::size_t rank = 1;
    bool unit_norm = true;
};

/// Random low-rank tensor with i.i.d. N(0,1) cores or factors, optionally
/// rescaled (first core/factor) to unit Frobenius norm.
[[nodiscard]] AnyTensor random_input(const InputSpec& spec, Seed seed);

/// Dense tensor of i.i.d. N(0,1) entries, optionally normalized.
[[nodiscard]] DenseTensor random_dense(const Shape& shape, Seed seed, bool unit_norm);

}  // namespace tensorjl

namespace tensorjl {

enum class FamilyKind { TT, CP, Gaussian, VerySparse };

/// A projection family up to the choice of k and seed.
struct FamilySpec {
    FamilyKind kind = FamilyKind::TT;
    std::size_t rank = 1;
    /// Very sparse only; 0 selects s = sqrt(D).
    double sparsity = 0.0;
};

[[nodiscard]] Projection sample_projection(const FamilySpec& family, const Shape& shape, std::size_t k, Seed seed);

[[nodiscard]] const char* family_name(FamilyKind kind) noexcept;

}  // namespace tensorjl
