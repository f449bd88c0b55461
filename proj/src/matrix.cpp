#include "tensorjl/matrix.hpp"

#include "tensorjl/error.hpp"

#include <algorithm>
#include <cmath>

namespace tensorjl {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InvalidParameter("matrix data size does not match rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    detail::gemm_nn(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(), c.data().data());
    return c;
}

namespace detail {

void gemm_nn(std::size_t m, std::size_t n, std::size_t p, const double* a, const double* b, double* c) {
    std::fill(c, c + m * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double* cj = c + m * j;
        const double* bj = b + p * j;
        for (std::size_t l = 0; l < p; ++l) {
            const double blj = bj[l];
            const double* al = a + m * l;
            for (std::size_t i = 0; i < m; ++i) cj[i] += al[i] * blj;
        }
    }
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t p, const double* a, const double* b, double* c) {
    for (std::size_t j = 0; j < n; ++j) {
        const double* bj = b + p * j;
        for (std::size_t i = 0; i < m; ++i) {
            const double* ai = a + p * i;
            double s = 0.0;
            for (std::size_t l = 0; l < p; ++l) s += ai[l] * bj[l];
            c[i + m * j] = s;
        }
    }
}

}  // namespace detail

}  // namespace tensorjl
