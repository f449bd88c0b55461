#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tensorjl {

/// Dense column-major matrix of doubles. Column-major storage matches the
/// first-index-fastest linearization used for tensors.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + rows_ * j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i + rows_ * j]; }

    [[nodiscard]] std::span<const double> col(std::size_t j) const noexcept {
        return {data_.data() + rows_ * j, rows_};
    }
    [[nodiscard]] std::span<double> col(std::size_t j) noexcept { return {data_.data() + rows_ * j, rows_}; }

    [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }
    [[nodiscard]] std::vector<double>& data() noexcept { return data_; }

    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] double frobenius_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

namespace detail {

// Raw column-major kernels shared by the contraction routines.
// C (m x n) = A (m x p) * B (p x n)
void gemm_nn(std::size_t m, std::size_t n, std::size_t p, const double* a, const double* b, double* c);
// C (m x n) = A^T * B with A stored (p x m) and B stored (p x n)
void gemm_tn(std::size_t m, std::size_t n, std::size_t p, const double* a, const double* b, double* c);

}  // namespace detail

}  // namespace tensorjl
