#pragma once

#include "tensorjl/sampling.hpp"
#include "tensorjl/tensor.hpp"
#include "tensorjl/tensor_ops.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tensorjl {

/// Output of a projection; one value per projection row.
struct Embedding {
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double squared_norm() const noexcept;
};

struct ProjectOptions {
    /// Cap used when a dense or sparse projection must vectorize a TT/CP input.
    std::size_t oracle_cap = kDefaultOracleCap;
};

/// Component i is inner(row_i, x) / sqrt(k), computed with the contraction
/// matching the (row format, input format) pair. Dense and very sparse
/// projections vectorize low-rank inputs first (subject to the oracle cap).
[[nodiscard]] Embedding project(const Projection& p, const AnyTensor& x, const ProjectOptions& options = {});

[[nodiscard]] Embedding project(const TTProjection& p, const AnyTensor& x);
[[nodiscard]] Embedding project(const CPProjection& p, const AnyTensor& x);
[[nodiscard]] Embedding project(const DenseGaussianProjection& p, const AnyTensor& x,
                                const ProjectOptions& options = {});
[[nodiscard]] Embedding project(const VerySparseProjection& p, const AnyTensor& x,
                                const ProjectOptions& options = {});

/// Tensor random projection (A^1 kr ... kr A^N)^T vec(x) / sqrt(k). Each factor
/// is d_n x k. The Khatri-Rao product is formed in reverse mode order so that
/// its columns are vec(a^1_j o ... o a^N_j) in the first-mode-fastest layout.
[[nodiscard]] Embedding trp_project(std::span<const Matrix> factors, const DenseTensor& x);

/// Sum of T embeddings scaled by 1/sqrt(T).
[[nodiscard]] Embedding averaged_trp_project(std::span<const Embedding> outputs);

}  // namespace tensorjl
