#pragma once

#include "tensorjl/matrix.hpp"
#include "tensorjl/shape.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

namespace tensorjl {

/// Full N-way array. Values are stored with the first mode varying fastest,
/// i.e. flat index = i_1 + d_1 * (i_2 + d_2 * (i_3 + ...)), which is vec(.)
/// formed by concatenating mode-1 fibers.
class DenseTensor {
public:
    explicit DenseTensor(Shape shape);
    DenseTensor(Shape shape, std::vector<double> values);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }

    [[nodiscard]] std::size_t flat_index(std::span<const std::size_t> index) const;
    double& operator()(std::span<const std::size_t> index) { return values_[flat_index(index)]; }
    double operator()(std::span<const std::size_t> index) const { return values_[flat_index(index)]; }

private:
    Shape shape_;
    std::vector<double> values_;
};

/// One order-3 TT core of shape (left_rank x dim x right_rank), stored with
/// the left rank index fastest: offset = a + left * (i + dim * b).
class TTCore {
public:
    TTCore(std::size_t left, std::size_t dim, std::size_t right)
        : left_(left), dim_(dim), right_(right), data_(left * dim * right, 0.0) {}

    [[nodiscard]] std::size_t left_rank() const noexcept { return left_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t right_rank() const noexcept { return right_; }

    double& operator()(std::size_t a, std::size_t i, std::size_t b) noexcept {
        return data_[a + left_ * (i + dim_ * b)];
    }
    double operator()(std::size_t a, std::size_t i, std::size_t b) const noexcept {
        return data_[a + left_ * (i + dim_ * b)];
    }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }

private:
    std::size_t left_, dim_, right_;
    std::vector<double> data_;
};

/// Tensor-train with uniform interior rank: boundary ranks are 1, every other
/// bond has the same rank R. Cores start zero-filled.
class TTTensor {
public:
    TTTensor(Shape shape, std::size_t rank);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t order() const noexcept { return shape_.order(); }
    [[nodiscard]] std::size_t rank() const noexcept { return rank_; }

    [[nodiscard]] const TTCore& core(std::size_t n) const { return cores_.at(n); }
    [[nodiscard]] TTCore& core(std::size_t n) { return cores_.at(n); }
    [[nodiscard]] const std::vector<TTCore>& cores() const noexcept { return cores_; }

private:
    Shape shape_;
    std::size_t rank_;
    std::vector<TTCore> cores_;
};

/// CP tensor: sum of R rank-one terms; factor n is a (d_n x R) matrix.
class CPTensor {
public:
    CPTensor(Shape shape, std::size_t rank);
    CPTensor(Shape shape, std::vector<Matrix> factors);

    [[nodiscard]] const Shape& shape() const noexcept { return shape_; }
    [[nodiscard]] std::size_t order() const noexcept { return shape_.order(); }
    [[nodiscard]] std::size_t rank() const noexcept { return rank_; }

    [[nodiscard]] const Matrix& factor(std::size_t n) const { return factors_.at(n); }
    [[nodiscard]] Matrix& factor(std::size_t n) { return factors_.at(n); }
    [[nodiscard]] const std::vector<Matrix>& factors() const noexcept { return factors_; }

private:
    Shape shape_;
    std::size_t rank_;
    std::vector<Matrix> factors_;
};

using AnyTensor = std::variant<DenseTensor, TTTensor, CPTensor>;

[[nodiscard]] const Shape& shape_of(const AnyTensor& t) noexcept;

/// Human-readable summary of format, shape and rank; diagnostics only.
std::ostream& operator<<(std::ostream& os, const DenseTensor& t);
std::ostream& operator<<(std::ostream& os, const TTTensor& t);
std::ostream& operator<<(std::ostream& os, const CPTensor& t);

}  // namespace tensorjl
