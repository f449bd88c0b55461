#include "tensorjl/tensor_ops.hpp"

#include "tensorjl/error.hpp"

#include <cmath>
#include <sstream>

namespace tensorjl {

namespace {

void check_cap(const Shape& shape, std::size_t cap) {
    if (shape.total_size() <= cap) return;
    std::ostringstream msg;
    msg << "densification of " << shape << " (" << shape.total_size() << " elements) exceeds the oracle cap of "
        << cap;
    throw OracleCapExceeded(msg.str());
}

}  // namespace

DenseTensor tt_to_dense(const TTTensor& t, std::size_t cap) {
    check_cap(t.shape(), cap);
    // Row block grows as d_1, d_1 d_2, ...; columns are the current right bond.
    const auto& first = t.core(0);
    std::vector<double> partial(first.data().begin(), first.data().end());
    std::size_t rows = first.dim();
    std::vector<double> next;
    for (std::size_t n = 1; n < t.order(); ++n) {
        const auto& g = t.core(n);
        next.assign(rows * g.dim() * g.right_rank(), 0.0);
        detail::gemm_nn(rows, g.dim() * g.right_rank(), g.left_rank(), partial.data(), g.data().data(),
                        next.data());
        rows *= g.dim();
        partial.swap(next);
    }
    return DenseTensor(t.shape(), std::move(partial));
}

DenseTensor cp_to_dense(const CPTensor& t, std::size_t cap) {
    check_cap(t.shape(), cap);
    const Shape& shape = t.shape();
    std::vector<double> out(shape.total_size(), 0.0);
    std::vector<double> term(shape.total_size());
    for (std::size_t r = 0; r < t.rank(); ++r) {
        auto col0 = t.factor(0).col(r);
        std::copy(col0.begin(), col0.end(), term.begin());
        std::size_t len = col0.size();
        for (std::size_t n = 1; n < t.order(); ++n) {
            auto col = t.factor(n).col(r);
            // Expand in place from the back so earlier blocks are not overwritten.
            for (std::size_t i = col.size(); i-- > 0;)
                for (std::size_t idx = 0; idx < len; ++idx) term[idx + len * i] = term[idx] * col[i];
            len *= col.size();
        }
        for (std::size_t idx = 0; idx < len; ++idx) out[idx] += term[idx];
    }
    return DenseTensor(shape, std::move(out));
}

DenseTensor to_dense(const AnyTensor& t, std::size_t cap) {
    struct Visitor {
        std::size_t cap;
        DenseTensor operator()(const DenseTensor& x) const {
            check_cap(x.shape(), cap);
            return x;
        }
        DenseTensor operator()(const TTTensor& x) const { return tt_to_dense(x, cap); }
        DenseTensor operator()(const CPTensor& x) const { return cp_to_dense(x, cap); }
    };
    return std::visit(Visitor{cap}, t);
}

double dense_inner(const DenseTensor& a, const DenseTensor& b) {
    require_same_shape(a.shape(), b.shape(), "dense_inner");
    auto av = a.values();
    auto bv = b.values();
    double s = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
    return s;
}

double tt_inner_tt(const TTTensor& a, const TTTensor& b) {
    require_same_shape(a.shape(), b.shape(), "tt_inner_tt");
    std::vector<double> boundary{1.0};  // (rank_a x rank_b), column-major
    std::vector<double> tmp;
    for (std::size_t n = 0; n < a.order(); ++n) {
        const auto& ga = a.core(n);
        const auto& gb = b.core(n);
        const std::size_t d = ga.dim();
        // tmp = boundary * Gb, viewed as (ra*d) x rb'
        tmp.resize(ga.left_rank() * d * gb.right_rank());
        detail::gemm_nn(ga.left_rank(), d * gb.right_rank(), gb.left_rank(), boundary.data(), gb.data().data(),
                        tmp.data());
        // boundary' = Ga^T * tmp, (ra' x rb')
        boundary.resize(ga.right_rank() * gb.right_rank());
        detail::gemm_tn(ga.right_rank(), gb.right_rank(), ga.left_rank() * d, ga.data().data(), tmp.data(),
                        boundary.data());
    }
    return boundary[0];
}

double tt_inner_cp(const TTTensor& a, const CPTensor& b) {
    require_same_shape(a.shape(), b.shape(), "tt_inner_cp");
    const std::size_t rc = b.rank();
    std::vector<double> state(rc, 1.0);  // (rank_tt x rc)
    std::vector<double> tmp;
    for (std::size_t n = 0; n < a.order(); ++n) {
        const auto& g = a.core(n);
        const Matrix& f = b.factor(n);
        const std::size_t ra = g.left_rank();
        const std::size_t d = g.dim();
        tmp.resize(ra * d * rc);
        for (std::size_t r = 0; r < rc; ++r) {
            const double* s = state.data() + ra * r;
            double* t = tmp.data() + ra * d * r;
            for (std::size_t i = 0; i < d; ++i) {
                const double fir = f(i, r);
                for (std::size_t q = 0; q < ra; ++q) t[q + ra * i] = s[q] * fir;
            }
        }
        state.resize(g.right_rank() * rc);
        detail::gemm_tn(g.right_rank(), rc, ra * d, g.data().data(), tmp.data(), state.data());
    }
    double s = 0.0;
    for (double v : state) s += v;
    return s;
}

double cp_inner_cp(const CPTensor& a, const CPTensor& b) {
    require_same_shape(a.shape(), b.shape(), "cp_inner_cp");
    const std::size_t ra = a.rank();
    const std::size_t rb = b.rank();
    std::vector<double> hadamard(ra * rb, 1.0);
    std::vector<double> gram(ra * rb);
    for (std::size_t n = 0; n < a.order(); ++n) {
        const Matrix& fa = a.factor(n);
        const Matrix& fb = b.factor(n);
        detail::gemm_tn(ra, rb, fa.rows(), fa.data().data(), fb.data().data(), gram.data());
        for (std::size_t i = 0; i < gram.size(); ++i) hadamard[i] *= gram[i];
    }
    double s = 0.0;
    for (double v : hadamard) s += v;
    return s;
}

double tt_inner_dense(const TTTensor& a, const DenseTensor& x) {
    require_same_shape(a.shape(), x.shape(), "tt_inner_dense");
    std::vector<double> work(x.values().begin(), x.values().end());
    std::vector<double> next;
    for (std::size_t n = 0; n < a.order(); ++n) {
        const auto& g = a.core(n);
        const std::size_t p = g.left_rank() * g.dim();
        const std::size_t rest = work.size() / p;
        next.resize(g.right_rank() * rest);
        detail::gemm_tn(g.right_rank(), rest, p, g.data().data(), work.data(), next.data());
        work.swap(next);
    }
    return work[0];
}

double cp_inner_dense(const CPTensor& a, const DenseTensor& x) {
    require_same_shape(a.shape(), x.shape(), "cp_inner_dense");
    const std::size_t rank = a.rank();
    const Matrix& f0 = a.factor(0);
    std::size_t rest = x.size() / f0.rows();
    std::vector<double> work(rank * rest);
    detail::gemm_tn(rank, rest, f0.rows(), f0.data().data(), x.values().data(), work.data());
    std::vector<double> next;
    for (std::size_t n = 1; n < a.order(); ++n) {
        const Matrix& f = a.factor(n);
        const std::size_t d = f.rows();
        rest /= d;
        next.assign(rank * rest, 0.0);
        for (std::size_t c = 0; c < rest; ++c)
            for (std::size_t i = 0; i < d; ++i) {
                const double* w = work.data() + rank * (i + d * c);
                double* out = next.data() + rank * c;
                for (std::size_t r = 0; r < rank; ++r) out[r] += w[r] * f(i, r);
            }
        work.swap(next);
    }
    double s = 0.0;
    for (double v : work) s += v;
    return s;
}

double inner(const AnyTensor& a, const AnyTensor& b) {
    struct Visitor {
        double operator()(const DenseTensor& x, const DenseTensor& y) const { return dense_inner(x, y); }
        double operator()(const TTTensor& x, const TTTensor& y) const { return tt_inner_tt(x, y); }
        double operator()(const TTTensor& x, const CPTensor& y) const { return tt_inner_cp(x, y); }
        double operator()(const CPTensor& x, const TTTensor& y) const { return tt_inner_cp(y, x); }
        double operator()(const CPTensor& x, const CPTensor& y) const { return cp_inner_cp(x, y); }
        double operator()(const TTTensor& x, const DenseTensor& y) const { return tt_inner_dense(x, y); }
        double operator()(const DenseTensor& x, const TTTensor& y) const { return tt_inner_dense(y, x); }
        double operator()(const CPTensor& x, const DenseTensor& y) const { return cp_inner_dense(x, y); }
        double operator()(const DenseTensor& x, const CPTensor& y) const { return cp_inner_dense(y, x); }
    };
    return std::visit(Visitor{}, a, b);
}

// Rounding can push a self-inner product of a zero tensor marginally negative.
double frobenius_norm(const DenseTensor& t) { return std::sqrt(std::max(0.0, dense_inner(t, t))); }
double frobenius_norm(const TTTensor& t) { return std::sqrt(std::max(0.0, tt_inner_tt(t, t))); }
double frobenius_norm(const CPTensor& t) { return std::sqrt(std::max(0.0, cp_inner_cp(t, t))); }

double frobenius_norm(const AnyTensor& t) {
    return std::visit([](const auto& x) { return frobenius_norm(x); }, t);
}

void scale_in_place(TTTensor& t, double c) {
    for (double& v : t.core(0).data()) v *= c;
}

void scale_in_place(CPTensor& t, double c) {
    for (double& v : t.factor(0).data()) v *= c;
}

Matrix khatri_rao(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw ShapeMismatch("khatri_rao: column counts differ");
    Matrix out(a.rows() * b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t p = 0; p < a.rows(); ++p)
            for (std::size_t q = 0; q < b.rows(); ++q) out(p * b.rows() + q, j) = a(p, j) * b(q, j);
    return out;
}

}  // namespace tensorjl
