#include "tensorjl/tensor.hpp"

#include "tensorjl/error.hpp"

#include <ostream>

namespace tensorjl {

DenseTensor::DenseTensor(Shape shape) : shape_(std::move(shape)), values_(shape_.total_size(), 0.0) {}

DenseTensor::DenseTensor(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != shape_.total_size())
        throw ShapeMismatch("dense tensor: value count does not match shape");
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> index) const {
    if (index.size() != shape_.order()) throw ShapeMismatch("dense tensor: index order mismatch");
    std::size_t flat = 0;
    for (std::size_t n = index.size(); n-- > 0;) {
        if (index[n] >= shape_.dim(n)) throw InvalidParameter("dense tensor: index out of range");
        flat = flat * shape_.dim(n) + index[n];
    }
    return flat;
}

TTTensor::TTTensor(Shape shape, std::size_t rank) : shape_(std::move(shape)), rank_(rank) {
    if (rank_ == 0) throw InvalidParameter("TT rank must be positive");
    const std::size_t n_modes = shape_.order();
    cores_.reserve(n_modes);
    for (std::size_t n = 0; n < n_modes; ++n) {
        const std::size_t left = n == 0 ? 1 : rank_;
        const std::size_t right = n + 1 == n_modes ? 1 : rank_;
        cores_.emplace_back(left, shape_.dim(n), right);
    }
}

CPTensor::CPTensor(Shape shape, std::size_t rank) : shape_(std::move(shape)), rank_(rank) {
    if (rank_ == 0) throw InvalidParameter("CP rank must be positive");
    factors_.reserve(shape_.order());
    for (std::size_t d : shape_.dims()) factors_.emplace_back(d, rank_);
}

CPTensor::CPTensor(Shape shape, std::vector<Matrix> factors)
    : shape_(std::move(shape)), rank_(factors.empty() ? 0 : factors.front().cols()), factors_(std::move(factors)) {
    if (factors_.size() != shape_.order()) throw ShapeMismatch("CP tensor: one factor per mode required");
    if (rank_ == 0) throw InvalidParameter("CP rank must be positive");
    for (std::size_t n = 0; n < factors_.size(); ++n) {
        if (factors_[n].rows() != shape_.dim(n)) throw ShapeMismatch("CP tensor: factor rows must equal mode size");
        if (factors_[n].cols() != rank_) throw ShapeMismatch("CP tensor: factors must share the same rank");
    }
}

const Shape& shape_of(const AnyTensor& t) noexcept {
    return std::visit([](const auto& x) -> const Shape& { return x.shape(); }, t);
}

std::ostream& operator<<(std::ostream& os, const DenseTensor& t) { return os << "Dense" << t.shape(); }

std::ostream& operator<<(std::ostream& os, const TTTensor& t) {
    return os << "TT" << t.shape() << " rank " << t.rank();
}

std::ostream& operator<<(std::ostream& os, const CPTensor& t) {
    return os << "CP" << t.shape() << " rank " << t.rank();
}

}  // namespace tensorjl
