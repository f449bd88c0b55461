#include "tensorjl/error.hpp"
#include "tensorjl/tensor_ops.hpp"
#include "tensorjl/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace tensorjl {
namespace {

AnyTensor unit_tt(const Shape& s, std::size_t rank, std::uint64_t seed) {
    return random_input({s, InputFormat::TT, rank, true}, Seed{seed});
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Matrix m(rows, cols);
    for (double& v : m.data()) v = normal(gen);
    return m;
}

// ---------------------------------------------------------------------------
// summarize

TEST(Summarize, MatchesTwoPassAndDeleteBlockJackknife) {
    std::mt19937_64 gen(3);
    std::exponential_distribution<double> expo;
    std::vector<double> xs(1000);
    for (double& v : xs) v = expo(gen);
    const MomentReport r = summarize(xs, 10);

    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= 1000.0;
    double var = 0.0;
    for (double v : xs) var += (v - mean) * (v - mean);
    var /= 999.0;
    EXPECT_NEAR(r.mean, mean, 1e-12);
    EXPECT_NEAR(r.variance, var, 1e-12);
    EXPECT_NEAR(r.mean_stderr, std::sqrt(var / 1000.0), 1e-12);

    std::vector<double> loo;
    for (std::size_t b = 0; b < 10; ++b) {
        std::vector<double> rest;
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (i / 100 != b) rest.push_back(xs[i]);
        double m = 0.0;
        for (double v : rest) m += v;
        m /= static_cast<double>(rest.size());
        double s = 0.0;
        for (double v : rest) s += (v - m) * (v - m);
        loo.push_back(s / static_cast<double>(rest.size() - 1));
    }
    double lm = 0.0;
    for (double v : loo) lm += v;
    lm /= 10.0;
    double spread = 0.0;
    for (double v : loo) spread += (v - lm) * (v - lm);
    EXPECT_NEAR(r.variance_stderr, std::sqrt(0.9 * spread), 1e-10);
}

TEST(Summarize, NeedsTwoSamples) {
    const std::vector<double> one{1.0};
    EXPECT_THROW((void)summarize(one), InvalidParameter);
}

// ---------------------------------------------------------------------------
// distortion

TEST(Distortion, Examples) {
    EXPECT_EQ(distortion(3.0, 3.0), 0.0);
    EXPECT_EQ(distortion(4.0, 2.0), 1.0);
    EXPECT_EQ(distortion(0.5, 1.0), 0.5);
    EXPECT_THROW((void)distortion(1.0, 0.0), DegenerateInput);
    EXPECT_THROW((void)distortion(Embedding{{1.0}}, AnyTensor(DenseTensor(Shape{2}))), DegenerateInput);
}

TEST(Distortion, MatchesDensificationOracle) {
    const Shape s = Shape::uniform(3, 5);
    const AnyTensor x = unit_tt(s, 3, 4);
    const auto p = sample_tt_projection(s, 2, 100, Seed{5});
    const Embedding e = project(p, x);
    const DenseTensor xd = to_dense(x);
    double sq = 0.0;
    for (const auto& row : p.rows) {
        const double v = dense_inner(tt_to_dense(row), xd) / 10.0;
        sq += v * v;
    }
    EXPECT_NEAR(distortion(e, x), std::abs(sq - 1.0), 1e-10);
}

// ---------------------------------------------------------------------------
// projection moments

TEST(Moments, ZeroInput) {
    const Shape s = Shape::uniform(3, 3);
    for (FamilyKind kind : {FamilyKind::TT, FamilyKind::CP, FamilyKind::Gaussian, FamilyKind::VerySparse}) {
        const auto r = estimate_projection_moments(make_sampler({kind, 2, 0.0}, s, 5), AnyTensor(TTTensor(s, 2)), 100,
                                                   Seed{1});
        EXPECT_EQ(r.mean, 0.0);
        EXPECT_EQ(r.variance, 0.0);
    }
}

TEST(Moments, IsometryTTAndCP) {
    const Shape s = Shape::uniform(3, 4);
    const AnyTensor x = unit_tt(s, 3, 2);
    for (FamilyKind kind : {FamilyKind::TT, FamilyKind::CP}) {
        const auto r = estimate_projection_moments(make_sampler({kind, 2, 0.0}, s, 20), x, 10000, Seed{3});
        EXPECT_LE(std::abs(r.mean - 1.0), 3.0 * r.mean_stderr) << family_name(kind);
    }
}

TEST(Moments, RequiresHundredTrials) {
    const Shape s{3};
    EXPECT_THROW((void)estimate_projection_moments(make_sampler({FamilyKind::Gaussian, 1, 0.0}, s, 2),
                                                   AnyTensor(DenseTensor(s)), 99, Seed{1}),
                 InvalidParameter);
}

TEST(Moments, ThreadCountDoesNotChangeResults) {
    const Shape s = Shape::uniform(3, 4);
    const AnyTensor x = unit_tt(s, 2, 8);
    const auto sampler = make_sampler({FamilyKind::TT, 2, 0.0}, s, 10);
    const auto a = projected_sq_norms(sampler, x, 200, Seed{9}, 1);
    const auto b = projected_sq_norms(sampler, x, 200, Seed{9}, 4);
    EXPECT_EQ(a, b);
}

// ---------------------------------------------------------------------------
// bound calculators

TEST(VarianceBounds, Values) {
    EXPECT_DOUBLE_EQ(variance_bound_tt(1, 1, 1), 2.0);
    EXPECT_DOUBLE_EQ(variance_bound_tt(2, 2, 1), 5.0);
    EXPECT_DOUBLE_EQ(variance_bound_tt(2, 2, 10), 0.5);
    EXPECT_DOUBLE_EQ(variance_bound_cp(1, 1, 1), 2.0);
    EXPECT_DOUBLE_EQ(variance_bound_cp(3, 2, 1), 17.0);
    EXPECT_DOUBLE_EQ(variance_bound_cp(3, 2, 10), 1.7);
    EXPECT_THROW((void)variance_bound_tt(0, 1, 1), InvalidParameter);
}

TEST(VarianceBounds, CPDominatesTTFromOrderThree) {
    for (std::size_t n = 3; n <= 25; ++n)
        for (std::size_t r = 1; r <= 100; ++r)
            ASSERT_GE(variance_bound_cp(n, r, 1), variance_bound_tt(n, r, 1)) << "N=" << n << " R=" << r;
}

TEST(ExactOrder2, Values) {
    DenseTensor e11(Shape{2, 2});
    e11.values()[0] = 1.0;
    EXPECT_DOUBLE_EQ(tt_variance_exact_order2(e11, 1, 1), 8.0);
    DenseTensor half_identity(Shape{2, 2}, {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)});
    EXPECT_NEAR(tt_variance_exact_order2(half_identity, 3, 1), 3.0, 1e-14);
    EXPECT_NEAR(tt_variance_exact_order2(half_identity, 3, 10), 0.3, 1e-14);
    EXPECT_THROW((void)tt_variance_exact_order2(DenseTensor(Shape{2, 2, 2}), 1, 1), ShapeMismatch);
}

TEST(ExactOrder2, TraceTermMatchesEntrySum) {
    // tr((X^T X)^2) = sum_{j,l} (sum_i X_ij X_il)^2
    DenseTensor x = random_dense(Shape{3, 4}, Seed{2}, false);
    const auto v = x.values();
    double fro = 0.0, trace = 0.0;
    for (double a : v) fro += a * a;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t l = 0; l < 4; ++l) {
            double g = 0.0;
            for (std::size_t i = 0; i < 3; ++i) g += v[i + 3 * j] * v[i + 3 * l];
            trace += g * g;
        }
    EXPECT_NEAR(tt_variance_exact_order2(x, 2, 5), (2.0 * fro * fro + 3.0 * trace) / 5.0, 1e-10);
}

TEST(ExactOrder2, MonteCarlo) {
    const DenseTensor x = random_dense(Shape{6, 6}, Seed{12}, true);
    const auto r = estimate_projection_moments(make_sampler({FamilyKind::TT, 3, 0.0}, x.shape(), 10), AnyTensor(x),
                                               200000, Seed{13});
    const double want = tt_variance_exact_order2(x, 3, 10);
    EXPECT_LE(std::abs(r.variance - want), 0.05 * want);
}

TEST(MinK, Examples) {
    BoundParams p{1, 1, 0.5, std::numbers::e * 0.5, 0.5, 1.0};
    EXPECT_NEAR(min_k_bound_unrounded(p, FamilyKind::TT), 12.0, 1e-12);
    EXPECT_EQ(min_k_bound(p, FamilyKind::TT), static_cast<std::uint64_t>(std::ceil(min_k_bound_unrounded(p, FamilyKind::TT))));

    BoundParams q{5, 2, 0.1, 10.0, 0.01, 1.0};
    EXPECT_NEAR(min_k_bound_unrounded(q, FamilyKind::CP) / min_k_bound_unrounded(q, FamilyKind::TT), 5.0625, 1e-12);

    BoundParams doubled = q;
    doubled.epsilon = 0.2;
    EXPECT_NEAR(min_k_bound_unrounded(q, FamilyKind::TT) / min_k_bound_unrounded(doubled, FamilyKind::TT), 4.0,
                1e-12);
}

TEST(MinK, Monotonicity) {
    for (FamilyKind f : {FamilyKind::TT, FamilyKind::CP}) {
        BoundParams base{3, 2, 0.1, 5.0, 0.05, 1.0};
        BoundParams more_rank = base, more_order = base, smaller_delta = base;
        more_rank.rank = 5;
        more_order.order = 4;
        smaller_delta.delta = 0.01;
        EXPECT_LT(min_k_bound_unrounded(more_rank, f), min_k_bound_unrounded(base, f));
        EXPECT_GT(min_k_bound_unrounded(more_order, f), min_k_bound_unrounded(base, f));
        EXPECT_GT(min_k_bound_unrounded(smaller_delta, f), min_k_bound_unrounded(base, f));
    }
}

TEST(MinK, Validation) {
    EXPECT_THROW((void)min_k_bound({1, 1, 1.5, 1.0, 0.1, 1.0}, FamilyKind::TT), InvalidParameter);
    EXPECT_THROW((void)min_k_bound({1, 1, 0.1, 1.0, 0.0, 1.0}, FamilyKind::TT), InvalidParameter);
    EXPECT_THROW((void)min_k_bound({1, 1, 0.1, 1.0, 0.1, 1.0}, FamilyKind::Gaussian), InvalidParameter);
}

// ---------------------------------------------------------------------------
// lemma checks

TEST(Isserlis, ZeroMatrix) {
    const auto r = isserlis_check(1.0, Matrix(3, 4), 10000, Seed{1});
    EXPECT_EQ(r.mean, 0.0);
}

TEST(Isserlis, UnitEntry) {
    Matrix b(2, 2);
    b(0, 0) = 1.0;
    const auto r = isserlis_check(1.0, b, 100000, Seed{2});
    EXPECT_LE(std::abs(r.mean - 3.0), 4.0 * r.mean_stderr);
}

TEST(Isserlis, RandomMatrix) {
    const Matrix b = random_matrix(3, 4, 5);
    double fro = 0.0;
    for (double v : b.data()) fro += v * v;
    const double want = 3.0 * std::pow(0.5, 4) * fro * fro;
    EXPECT_NEAR(isserlis_closed_form(0.5, b), want, 1e-12 * want);
    const auto r = isserlis_check(0.5, b, 100000, Seed{6});
    EXPECT_LE(std::abs(r.mean - want), 4.0 * r.mean_stderr);
}

TEST(Isserlis, TrialFloor) { EXPECT_THROW((void)isserlis_check(1.0, Matrix(1, 1), 9999, Seed{1}), InvalidParameter); }

TEST(Wishart, ZeroMatrix) { EXPECT_EQ(wishart_check(1.0, Matrix(2, 3), 4, 10000, Seed{1}).mean, 0.0); }

TEST(Wishart, ScalarFourthMoment) {
    EXPECT_DOUBLE_EQ(wishart_closed_form(1.0, Matrix::identity(1), 1), 3.0);
    const auto r = wishart_check(1.0, Matrix::identity(1), 1, 100000, Seed{3});
    EXPECT_LE(std::abs(r.mean - 3.0), 4.0 * r.mean_stderr);
}

TEST(Wishart, RandomMatrix) {
    const Matrix b = random_matrix(2, 3, 7);
    double fro = 0.0, trace = 0.0;
    for (double v : b.data()) fro += v * v;
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t l = 0; l < 3; ++l) {
            double g = 0.0;
            for (std::size_t i = 0; i < 2; ++i) g += b(i, j) * b(i, l);
            trace += g * g;
        }
    const double want = 4.0 * (4.0 * fro * fro + 2.0 * trace);
    EXPECT_NEAR(wishart_closed_form(1.0, b, 4), want, 1e-12 * want);
    const auto r = wishart_check(1.0, b, 4, 100000, Seed{8});
    EXPECT_LE(std::abs(r.mean - want), 4.0 * r.mean_stderr);
}

// ---------------------------------------------------------------------------
// tails

TEST(Tail, ZeroEpsilonAlwaysExceeds) {
    const Shape s = Shape::uniform(3, 3);
    const auto r = tail_check(make_sampler({FamilyKind::TT, 2, 0.0}, s, 5), unit_tt(s, 2, 1), 0.0, 1000, Seed{2});
    EXPECT_EQ(r.exceedances, 1000u);
    EXPECT_EQ(r.probability, 1.0);
}

TEST(Tail, NonIncreasingInKAndChebyshev) {
    const Shape s = Shape::uniform(3, 4);
    const AnyTensor x = unit_tt(s, 2, 3);
    const std::vector<std::size_t> ks{5, 10, 20, 40};
    for (FamilyKind kind : {FamilyKind::TT, FamilyKind::CP}) {
        const auto g = tail_check_grid({kind, 2, 0.0}, x, ks, 0.5, 2000, Seed{4});
        EXPECT_TRUE(g.non_increasing) << family_name(kind);
        for (std::size_t j = 0; j < ks.size(); ++j) {
            const double bound = kind == FamilyKind::TT ? variance_bound_tt(4, 2, ks[j]) : variance_bound_cp(4, 2, ks[j]);
            EXPECT_LE(g.reports[j].probability, bound / 0.25 + 3.0 * g.reports[j].standard_error);
        }
    }
}

TEST(Tail, TrialFloor) {
    const Shape s{3};
    EXPECT_THROW((void)tail_check(make_sampler({FamilyKind::Gaussian, 1, 0.0}, s, 2), unit_tt(s, 1, 1), 0.1, 999,
                                  Seed{1}),
                 InvalidParameter);
}

}  // namespace
}  // namespace tensorjl
