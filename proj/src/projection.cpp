#include "tensorjl/projection.hpp"

#include "tensorjl/error.hpp"

#include <cmath>

namespace tensorjl {

namespace {

void check_input_shape(const Shape& projection_shape, const AnyTensor& x, const char* context) {
    require_same_shape(projection_shape, shape_of(x), context);
}

double row_inner(const TTTensor& row, const AnyTensor& x) {
    struct Visitor {
        const TTTensor& row;
        double operator()(const DenseTensor& y) const { return tt_inner_dense(row, y); }
        double operator()(const TTTensor& y) const { return tt_inner_tt(row, y); }
        double operator()(const CPTensor& y) const { return tt_inner_cp(row, y); }
    };
    return std::visit(Visitor{row}, x);
}

double row_inner(const CPTensor& row, const AnyTensor& x) {
    struct Visitor {
        const CPTensor& row;
        double operator()(const DenseTensor& y) const { return cp_inner_dense(row, y); }
        double operator()(const TTTensor& y) const { return tt_inner_cp(y, row); }
        double operator()(const CPTensor& y) const { return cp_inner_cp(row, y); }
    };
    return std::visit(Visitor{row}, x);
}

const DenseTensor& vectorized(const AnyTensor& x, std::size_t cap, DenseTensor& storage) {
    if (const auto* dense = std::get_if<DenseTensor>(&x)) return *dense;
    storage = to_dense(x, cap);
    return storage;
}

}  // namespace

double Embedding::squared_norm() const noexcept {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
}

Embedding project(const TTProjection& p, const AnyTensor& x) {
    check_input_shape(p.shape, x, "project (TT)");
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.k()));
    Embedding e{std::vector<double>(p.k())};
    for (std::size_t i = 0; i < p.k(); ++i) e.values[i] = scale * row_inner(p.rows[i], x);
    return e;
}

Embedding project(const CPProjection& p, const AnyTensor& x) {
    check_input_shape(p.shape, x, "project (CP)");
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.k()));
    Embedding e{std::vector<double>(p.k())};
    for (std::size_t i = 0; i < p.k(); ++i) e.values[i] = scale * row_inner(p.rows[i], x);
    return e;
}

Embedding project(const DenseGaussianProjection& p, const AnyTensor& x, const ProjectOptions& options) {
    check_input_shape(p.shape, x, "project (Gaussian)");
    DenseTensor storage(Shape{1});
    const auto v = vectorized(x, options.oracle_cap, storage).values();
    const std::size_t dim = p.input_size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.k));
    Embedding e{std::vector<double>(p.k)};
    for (std::size_t i = 0; i < p.k; ++i) {
        const double* row = p.entries.data() + i * dim;
        double s = 0.0;
        for (std::size_t j = 0; j < dim; ++j) s += row[j] * v[j];
        e.values[i] = scale * s;
    }
    return e;
}

Embedding project(const VerySparseProjection& p, const AnyTensor& x, const ProjectOptions& options) {
    check_input_shape(p.shape, x, "project (very sparse)");
    DenseTensor storage(Shape{1});
    const auto v = vectorized(x, options.oracle_cap, storage).values();
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.k));
    Embedding e{std::vector<double>(p.k)};
    for (std::size_t i = 0; i < p.k; ++i) {
        double s = 0.0;
        for (std::size_t nz = p.row_offsets[i]; nz < p.row_offsets[i + 1]; ++nz) s += p.values[nz] * v[p.columns[nz]];
        e.values[i] = scale * s;
    }
    return e;
}

Embedding project(const Projection& p, const AnyTensor& x, const ProjectOptions& options) {
    struct Visitor {
        const AnyTensor& x;
        const ProjectOptions& options;
        Embedding operator()(const TTProjection& q) const { return project(q, x); }
        Embedding operator()(const CPProjection& q) const { return project(q, x); }
        Embedding operator()(const DenseGaussianProjection& q) const { return project(q, x, options); }
        Embedding operator()(const VerySparseProjection& q) const { return project(q, x, options); }
    };
    return std::visit(Visitor{x, options}, p);
}

Embedding trp_project(std::span<const Matrix> factors, const DenseTensor& x) {
    const Shape& shape = x.shape();
    if (factors.size() != shape.order()) throw ShapeMismatch("trp_project: one factor per mode required");
    const std::size_t k = factors.front().cols();
    if (k == 0) throw InvalidParameter("trp_project: factors need at least one column");
    for (std::size_t n = 0; n < factors.size(); ++n) {
        if (factors[n].cols() != k) throw ShapeMismatch("trp_project: factors must share the column count k");
        if (factors[n].rows() != shape.dim(n)) throw ShapeMismatch("trp_project: factor rows must equal mode size");
    }
    Matrix kr = factors.back();
    for (std::size_t n = factors.size() - 1; n-- > 0;) kr = khatri_rao(kr, factors[n]);

    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    const auto v = x.values();
    Embedding e{std::vector<double>(k)};
    for (std::size_t j = 0; j < k; ++j) {
        const auto column = kr.col(j);
        double s = 0.0;
        for (std::size_t idx = 0; idx < column.size(); ++idx) s += column[idx] * v[idx];
        e.values[j] = scale * s;
    }
    return e;
}

Embedding averaged_trp_project(std::span<const Embedding> outputs) {
    if (outputs.empty()) throw InvalidParameter("averaged_trp_project: need at least one embedding");
    const std::size_t k = outputs.front().size();
    Embedding sum{std::vector<double>(k, 0.0)};
    for (const Embedding& e : outputs) {
        if (e.size() != k) throw ShapeMismatch("averaged_trp_project: embedding lengths differ");
        for (std::size_t i = 0; i < k; ++i) sum.values[i] += e.values[i];
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(outputs.size()));
    for (double& v : sum.values) v *= scale;
    return sum;
}

}  // namespace tensorjl
