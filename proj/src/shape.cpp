#include "tensorjl/shape.hpp"

#include "tensorjl/error.hpp"

#include <limits>
#include <ostream>
#include <sstream>

namespace tensorjl {

Shape::Shape(std::initializer_list<std::size_t> dims) : dims_(dims) { validate(); }

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) { validate(); }

Shape Shape::uniform(std::size_t d, std::size_t order) {
    return Shape(std::vector<std::size_t>(order, d));
}

void Shape::validate() {
    if (dims_.empty()) throw InvalidParameter("shape must have at least one mode");
    total_ = 1;
    for (std::size_t d : dims_) {
        if (d == 0) throw InvalidParameter("mode sizes must be positive");
        if (total_ > std::numeric_limits<std::size_t>::max() / d)
            throw InvalidParameter("total tensor size overflows size_t");
        total_ *= d;
    }
}

std::ostream& operator<<(std::ostream& os, const Shape& s) {
    os << '(';
    for (std::size_t n = 0; n < s.order(); ++n) os << (n ? "x" : "") << s.dim(n);
    return os << ')';
}

void require_same_shape(const Shape& a, const Shape& b, const char* context) {
    if (a == b) return;
    std::ostringstream msg;
    msg << context << ": shape mismatch " << a << " vs " << b;
    throw ShapeMismatch(msg.str());
}

}  // namespace tensorjl
