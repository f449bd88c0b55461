#include "tensorjl/sampling.hpp"

#include "tensorjl/error.hpp"
#include "tensorjl/tensor_ops.hpp"

#include <cmath>
#include <random>
#include <span>

namespace tensorjl {

namespace {

void fill_gaussian(std::span<double> out, Seed seed, double stddev) {
    Xoshiro256 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : out) v = stddev * normal(gen);
}

void require_positive(std::size_t value, const char* what) {
    if (value < 1) throw InvalidParameter(std::string(what) + " must be at least 1");
}

}  // namespace

TTVarianceSchedule TTVarianceSchedule::standard(std::size_t order, std::size_t rank) {
    if (order == 1) return {1.0, 1.0};
    const double r = static_cast<double>(rank);
    return {1.0 / std::sqrt(r), 1.0 / r};
}

std::size_t projection_k(const Projection& p) noexcept {
    struct Visitor {
        std::size_t operator()(const TTProjection& q) const { return q.k(); }
        std::size_t operator()(const CPProjection& q) const { return q.k(); }
        std::size_t operator()(const DenseGaussianProjection& q) const { return q.k; }
        std::size_t operator()(const VerySparseProjection& q) const { return q.k; }
    };
    return std::visit(Visitor{}, p);
}

TTProjection sample_tt_projection(const Shape& shape, std::size_t rank, std::size_t k, Seed seed) {
    return sample_tt_projection(shape, rank, k, seed, TTVarianceSchedule::standard(shape.order(), rank));
}

TTProjection sample_tt_projection(const Shape& shape, std::size_t rank, std::size_t k, Seed seed,
                                  const TTVarianceSchedule& schedule) {
    require_positive(rank, "TT projection rank");
    require_positive(k, "embedding dimension k");
    const std::size_t order = shape.order();
    if (order == 1 && rank != 1) throw InvalidParameter("TT projection of an order-1 input requires rank 1");
    if (!(schedule.end_variance > 0.0) || !(schedule.interior_variance > 0.0))
        throw InvalidParameter("TT variance schedule must be positive");
    const double end_sd = std::sqrt(schedule.end_variance);
    const double interior_sd = std::sqrt(schedule.interior_variance);

    TTProjection p{shape, rank, {}};
    p.rows.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        TTTensor row(shape, rank);
        for (std::size_t n = 0; n < order; ++n) {
            const bool end = n == 0 || n + 1 == order;
            fill_gaussian(row.core(n).data(), derive_seed(seed, {i, n}), end ? end_sd : interior_sd);
        }
        p.rows.push_back(std::move(row));
    }
    return p;
}

CPProjection sample_cp_projection(const Shape& shape, std::size_t rank, std::size_t k, Seed seed) {
    require_positive(rank, "CP projection rank");
    require_positive(k, "embedding dimension k");
    const std::size_t order = shape.order();
    const double variance = std::pow(1.0 / static_cast<double>(rank), 1.0 / static_cast<double>(order));
    const double sd = std::sqrt(variance);

    CPProjection p{shape, rank, {}};
    p.rows.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        CPTensor row(shape, rank);
        for (std::size_t n = 0; n < order; ++n) fill_gaussian(row.factor(n).data(), derive_seed(seed, {i, n}), sd);
        p.rows.push_back(std::move(row));
    }
    return p;
}

DenseGaussianProjection sample_gaussian_rp(const Shape& shape, std::size_t k, Seed seed) {
    require_positive(k, "embedding dimension k");
    const std::size_t dim = shape.total_size();
    DenseGaussianProjection p{shape, k, std::vector<double>(k * dim)};
    for (std::size_t i = 0; i < k; ++i)
        fill_gaussian(std::span<double>(p.entries).subspan(i * dim, dim), derive_seed(seed, {i, 0}), 1.0);
    return p;
}

DenseGaussianProjection sample_gaussian_rp(std::size_t input_size, std::size_t k, Seed seed) {
    require_positive(input_size, "input dimension D");
    return sample_gaussian_rp(Shape{input_size}, k, seed);
}

VerySparseProjection sample_very_sparse_rp(const Shape& shape, std::size_t k, double sparsity, Seed seed) {
    require_positive(k, "embedding dimension k");
    if (!(sparsity >= 1.0)) throw InvalidParameter("very sparse projection requires s >= 1");
    const std::size_t dim = shape.total_size();
    const double magnitude = std::sqrt(sparsity);
    const double keep = 1.0 / sparsity;

    VerySparseProjection p{shape, k, sparsity, {}, {}, {}};
    p.row_offsets.reserve(k + 1);
    p.row_offsets.push_back(0);
    for (std::size_t i = 0; i < k; ++i) {
        Xoshiro256 gen(derive_seed(seed, {i, 0}));
        // Positions of nonzeros are a Bernoulli(1/s) process; jump between them
        // with geometric gaps instead of drawing every entry.
        std::size_t pos = 0;
        while (true) {
            if (keep < 1.0) {
                const double u = gen.uniform();
                const double gap = std::floor(std::log1p(-u) / std::log1p(-keep));
                if (gap >= static_cast<double>(dim - pos)) break;
                pos += static_cast<std::size_t>(gap);
            }
            if (pos >= dim) break;
            p.columns.push_back(pos);
            p.values.push_back((gen() >> 63) != 0 ? magnitude : -magnitude);
            ++pos;
        }
        p.row_offsets.push_back(p.columns.size());
    }
    return p;
}

VerySparseProjection sample_very_sparse_rp(std::size_t input_size, std::size_t k, double sparsity, Seed seed) {
    require_positive(input_size, "input dimension D");
    return sample_very_sparse_rp(Shape{input_size}, k, sparsity, seed);
}

AnyTensor random_input(const InputSpec& spec, Seed seed) {
    require_positive(spec.rank, "input rank");
    for (int attempt = 0; attempt < 2; ++attempt) {
        const Seed s = derive_seed(seed, {static_cast<std::uint64_t>(attempt)});
        AnyTensor t = [&]() -> AnyTensor {
            if (spec.format == InputFormat::TT) {
                TTTensor x(spec.shape, spec.rank);
                for (std::size_t n = 0; n < x.order(); ++n)
                    fill_gaussian(x.core(n).data(), derive_seed(s, {n}), 1.0);
                return x;
            }
            CPTensor x(spec.shape, spec.rank);
            for (std::size_t n = 0; n < x.order(); ++n) fill_gaussian(x.factor(n).data(), derive_seed(s, {n}), 1.0);
            return x;
        }();
        if (!spec.unit_norm) return t;
        const double norm = frobenius_norm(t);
        if (!std::isfinite(norm)) throw DegenerateInput("random input norm is not finite");
        if (norm == 0.0) continue;
        std::visit(
            [norm](auto& x) {
                if constexpr (!std::is_same_v<std::decay_t<decltype(x)>, DenseTensor>) scale_in_place(x, 1.0 / norm);
            },
            t);
        return t;
    }
    throw DegenerateInput("random input has zero norm after resampling");
}

DenseTensor random_dense(const Shape& shape, Seed seed, bool unit_norm) {
    DenseTensor x(shape);
    fill_gaussian(x.values(), seed, 1.0);
    if (unit_norm) {
        const double norm = frobenius_norm(x);
        if (norm == 0.0) throw DegenerateInput("random dense tensor has zero norm");
        for (double& v : x.values()) v /= norm;
    }
    return x;
}

}  // namespace tensorjl

namespace tensorjl {

Projection sample_projection(const FamilySpec& family, const Shape& shape, std::size_t k, Seed seed) {
    switch (family.kind) {
        case FamilyKind::TT: return sample_tt_projection(shape, family.rank, k, seed);
        case FamilyKind::CP: return sample_cp_projection(shape, family.rank, k, seed);
        case FamilyKind::Gaussian: return sample_gaussian_rp(shape, k, seed);
        case FamilyKind::VerySparse: {
            const double s = family.sparsity > 0.0 ? family.sparsity
                                                   : std::sqrt(static_cast<double>(shape.total_size()));
            return sample_very_sparse_rp(shape, k, s, seed);
        }
    }
    throw InvalidParameter("unknown projection family");
}

const char* family_name(FamilyKind kind) noexcept {
    switch (kind) {
        case FamilyKind::TT: return "tt";
        case FamilyKind::CP: return "cp";
        case FamilyKind::Gaussian: return "gaussian";
        case FamilyKind::VerySparse: return "very_sparse";
    }
    return "unknown";
}

}  // namespace tensorjl
