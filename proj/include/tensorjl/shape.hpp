#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace tensorjl {

/// Mode sizes d_1..d_N of an N-way tensor. Always N >= 1 and every d_n >= 1;
/// the total element count is checked against size_t overflow on construction.
class Shape {
public:
    Shape(std::initializer_list<std::size_t> dims);
    explicit Shape(std::vector<std::size_t> dims);

    /// N copies of the same mode size.
    static Shape uniform(std::size_t d, std::size_t order);

    [[nodiscard]] std::size_t order() const noexcept { return dims_.size(); }
    [[nodiscard]] std::size_t dim(std::size_t n) const { return dims_.at(n); }
    [[nodiscard]] const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    [[nodiscard]] std::size_t total_size() const noexcept { return total_; }

    friend bool operator==(const Shape& a, const Shape& b) noexcept { return a.dims_ == b.dims_; }

private:
    void validate();

    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Shape& s);

/// Throws ShapeMismatch with `context` in the message when shapes differ.
void require_same_shape(const Shape& a, const Shape& b, const char* context);

}  // namespace tensorjl
