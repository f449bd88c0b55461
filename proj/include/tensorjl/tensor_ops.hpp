#pragma once

#include "tensorjl/tensor.hpp"

#include <cstddef>

namespace tensorjl {

/// Largest element count the densification routines will materialize.
inline constexpr std::size_t kDefaultOracleCap = 10'000'000;

[[nodiscard]] DenseTensor tt_to_dense(const TTTensor& t, std::size_t cap = kDefaultOracleCap);
[[nodiscard]] DenseTensor cp_to_dense(const CPTensor& t, std::size_t cap = kDefaultOracleCap);
[[nodiscard]] DenseTensor to_dense(const AnyTensor& t, std::size_t cap = kDefaultOracleCap);

[[nodiscard]] double dense_inner(const DenseTensor& a, const DenseTensor& b);

/// Left-to-right sweep keeping a (rank_a x rank_b) boundary matrix;
/// O(N d max(R_a, R_b)^3), never densifies.
[[nodiscard]] double tt_inner_tt(const TTTensor& a, const TTTensor& b);

/// Sweep keeping an (R_tt x R_cp) matrix; O(N d R_tt^2 R_cp).
[[nodiscard]] double tt_inner_cp(const TTTensor& a, const CPTensor& b);

/// Sum of the Hadamard product of the N per-mode Gram matrices; O(N d R_a R_b).
[[nodiscard]] double cp_inner_cp(const CPTensor& a, const CPTensor& b);

/// Contract a TT tensor against a dense one mode by mode without densifying the TT.
[[nodiscard]] double tt_inner_dense(const TTTensor& a, const DenseTensor& x);
[[nodiscard]] double cp_inner_dense(const CPTensor& a, const DenseTensor& x);

/// Inner product for any pair of formats, dispatching to the cheapest routine.
[[nodiscard]] double inner(const AnyTensor& a, const AnyTensor& b);

[[nodiscard]] double frobenius_norm(const DenseTensor& t);
[[nodiscard]] double frobenius_norm(const TTTensor& t);
[[nodiscard]] double frobenius_norm(const CPTensor& t);
[[nodiscard]] double frobenius_norm(const AnyTensor& t);

/// Multiplies the tensor by c through its first core / first factor only.
void scale_in_place(TTTensor& t, double c);
void scale_in_place(CPTensor& t, double c);

/// Column-wise Kronecker product. Column j of the result is a_j (x) b_j with
/// the index of a varying slowest: row (p * b.rows() + q) holds a(p, j) * b(q, j).
[[nodiscard]] Matrix khatri_rao(const Matrix& a, const Matrix& b);

}  // namespace tensorjl
