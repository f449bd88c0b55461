#include "oracles.hpp"
#include "tensorjl/error.hpp"
#include "tensorjl/sampling.hpp"
#include "tensorjl/tensor_ops.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace tensorjl {
namespace {

TTTensor random_tt(const Shape& shape, std::size_t rank, std::uint64_t seed) {
    return std::get<TTTensor>(random_input({shape, InputFormat::TT, rank, false}, Seed{seed}));
}

CPTensor random_cp(const Shape& shape, std::size_t rank, std::uint64_t seed) {
    return std::get<CPTensor>(random_input({shape, InputFormat::CP, rank, false}, Seed{seed}));
}

DenseTensor unit_corner(const Shape& shape) {
    DenseTensor t(shape);
    t.values()[0] = 1.0;
    return t;
}

// ---------------------------------------------------------------------------
// Shape / containers

TEST(Shape, RejectsEmptyAndZeroModes) {
    EXPECT_THROW(Shape(std::vector<std::size_t>{}), InvalidParameter);
    EXPECT_THROW((Shape{3, 0, 2}), InvalidParameter);
}

TEST(Shape, RejectsOverflowingTotalSize) {
    EXPECT_THROW(Shape::uniform(1u << 16, 5), InvalidParameter);
}

TEST(Shape, DebugDump) {
    std::ostringstream os;
    os << TTTensor(Shape{2, 3}, 4) << "; " << CPTensor(Shape{5}, 2);
    EXPECT_EQ(os.str(), "TT(2x3) rank 4; CP(5) rank 2");
}

TEST(DenseTensor, FirstModeFastestLinearization) {
    DenseTensor t(Shape{2, 3, 4});
    const std::size_t idx[] = {1, 2, 3};
    EXPECT_EQ(t.flat_index(idx), 1u + 2u * (2u + 3u * 3u));
}

TEST(TTTensor, BoundaryRanksAreOne) {
    TTTensor t(Shape{2, 3, 4}, 5);
    EXPECT_EQ(t.core(0).left_rank(), 1u);
    EXPECT_EQ(t.core(0).right_rank(), 5u);
    EXPECT_EQ(t.core(1).left_rank(), 5u);
    EXPECT_EQ(t.core(2).right_rank(), 1u);
    TTTensor single(Shape{7}, 3);
    EXPECT_EQ(single.core(0).left_rank(), 1u);
    EXPECT_EQ(single.core(0).right_rank(), 1u);
}

TEST(CPTensor, FactorsMustShareRank) {
    std::vector<Matrix> factors{Matrix(2, 3), Matrix(2, 2)};
    EXPECT_THROW(CPTensor(Shape{2, 2}, factors), ShapeMismatch);
}

// ---------------------------------------------------------------------------
// tt_to_dense

TEST(TTToDense, SingleCoreIsTheCore) {
    TTTensor t(Shape{2}, 1);
    t.core(0)(0, 0, 0) = 2.0;
    t.core(0)(0, 1, 0) = 3.0;
    const DenseTensor d = tt_to_dense(t);
    EXPECT_EQ(d.values()[0], 2.0);
    EXPECT_EQ(d.values()[1], 3.0);
}

TEST(TTToDense, RankOneOuterProduct) {
    TTTensor t(Shape{2, 2}, 1);
    t.core(0)(0, 0, 0) = 1.0;
    t.core(0)(0, 1, 0) = 2.0;
    t.core(1)(0, 0, 0) = 3.0;
    t.core(1)(0, 1, 0) = 4.0;
    const DenseTensor d = tt_to_dense(t);
    // [[3,4],[6,8]] with the first index fastest: (0,0),(1,0),(0,1),(1,1)
    const std::size_t i00[] = {0, 0}, i10[] = {1, 0}, i01[] = {0, 1}, i11[] = {1, 1};
    EXPECT_EQ(d(i00), 3.0);
    EXPECT_EQ(d(i01), 4.0);
    EXPECT_EQ(d(i10), 6.0);
    EXPECT_EQ(d(i11), 8.0);
}

TEST(TTToDense, MatchesChainProductOracle) {
    const TTTensor t = random_tt(Shape::uniform(3, 4), 2, 7);
    const DenseTensor d = tt_to_dense(t);
    const auto expected = oracle::tt_elements(t);
    ASSERT_EQ(expected.size(), d.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(d.values()[i], expected[i], 1e-12 * (1 + std::abs(expected[i])));
}

TEST(TTToDense, RefusesAboveCap) {
    EXPECT_THROW((void)tt_to_dense(TTTensor(Shape::uniform(3, 12), 2), 1000), OracleCapExceeded);
}

// ---------------------------------------------------------------------------
// cp_to_dense

TEST(CPToDense, RankOneOuterProduct) {
    CPTensor t(Shape{2, 2}, 1);
    t.factor(0)(0, 0) = 1.0;  // u = [1, 0]
    t.factor(1)(1, 0) = 1.0;  // v = [0, 1]
    const DenseTensor d = cp_to_dense(t);
    const std::size_t i01[] = {0, 1};
    EXPECT_EQ(d(i01), 1.0);
    double total = 0.0;
    for (double v : d.values()) total += std::abs(v);
    EXPECT_EQ(total, 1.0);
}

TEST(CPToDense, ZeroComponentAddsNothing) {
    CPTensor one(Shape{3, 2}, 1);
    CPTensor two(Shape{3, 2}, 2);
    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t i = 0; i < one.shape().dim(n); ++i) {
            one.factor(n)(i, 0) = 1.0 + i + n;
            two.factor(n)(i, 0) = 1.0 + i + n;
        }
    const DenseTensor a_tensor = cp_to_dense(one);
    const auto a = a_tensor.values();
    const DenseTensor b_tensor = cp_to_dense(two);
    const auto b = b_tensor.values();
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(CPToDense, MatchesSumOfProductsOracle) {
    const CPTensor t = random_cp(Shape::uniform(4, 3), 3, 11);
    const DenseTensor d = cp_to_dense(t);
    const auto expected = oracle::cp_elements(t);
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(d.values()[i], expected[i], 1e-12 * (1 + std::abs(expected[i])));
}

TEST(CPToDense, RefusesAboveCap) {
    EXPECT_THROW((void)cp_to_dense(CPTensor(Shape::uniform(10, 8), 1)), OracleCapExceeded);
}

// ---------------------------------------------------------------------------
// inner products

TEST(DenseInner, UnitAndZero) {
    const Shape s{2, 3, 2};
    EXPECT_EQ(dense_inner(unit_corner(s), unit_corner(s)), 1.0);
    DenseTensor a = random_dense(s, Seed{1}, false);
    EXPECT_EQ(dense_inner(a, DenseTensor(s)), 0.0);
}

TEST(DenseInner, MatchesReversedOrderSum) {
    const Shape s = Shape::uniform(2, 3);
    const DenseTensor a = random_dense(s, Seed{5}, false);
    const DenseTensor b = random_dense(s, derive_seed(Seed{5}, {1}), false);
    const double want = oracle::reversed_dot({a.values().begin(), a.values().end()},
                                             {b.values().begin(), b.values().end()});
    EXPECT_LE(oracle::rel_err(dense_inner(a, b), want), 1e-12);
}

TEST(DenseInner, ShapeMismatch) {
    EXPECT_THROW((void)dense_inner(DenseTensor(Shape{2, 3}), DenseTensor(Shape{3, 2})), ShapeMismatch);
}

TEST(TTInnerTT, AllOnesNormSquared) {
    TTTensor ones(Shape::uniform(2, 3), 1);
    for (std::size_t n = 0; n < 3; ++n)
        for (double& v : ones.core(n).data()) v = 1.0;
    EXPECT_DOUBLE_EQ(tt_inner_tt(ones, ones), 8.0);
    EXPECT_EQ(tt_inner_tt(ones, TTTensor(ones.shape(), 3)), 0.0);
}

TEST(TTInnerTT, MatchesDensificationOracle) {
    const Shape s = Shape::uniform(3, 5);
    const TTTensor a = random_tt(s, 3, 13);
    const TTTensor b = random_tt(s, 2, 113);
    const double want = dense_inner(tt_to_dense(a), tt_to_dense(b));
    EXPECT_LE(oracle::rel_err(tt_inner_tt(a, b), want), 1e-10);
}

TEST(TTInnerTT, ShapeMismatch) {
    EXPECT_THROW((void)tt_inner_tt(TTTensor(Shape{2, 2}, 1), TTTensor(Shape{2, 3}, 1)), ShapeMismatch);
}

TEST(TTInnerCP, UnitCornerAgainstOnes) {
    const Shape s = Shape::uniform(3, 4);
    TTTensor corner(s, 2);
    for (std::size_t n = 0; n < 4; ++n) corner.core(n)(0, 0, 0) = 1.0;
    CPTensor ones(s, 1);
    for (std::size_t n = 0; n < 4; ++n)
        for (double& v : ones.factor(n).data()) v = 1.0;
    EXPECT_DOUBLE_EQ(tt_inner_cp(corner, ones), 1.0);
    EXPECT_EQ(tt_inner_cp(corner, CPTensor(s, 3)), 0.0);
}

TEST(TTInnerCP, MatchesDensificationOracle) {
    const Shape s = Shape::uniform(3, 4);
    const TTTensor a = random_tt(s, 2, 3);
    const CPTensor b = random_cp(s, 4, 103);
    const double want = dense_inner(tt_to_dense(a), cp_to_dense(b));
    EXPECT_LE(oracle::rel_err(tt_inner_cp(a, b), want), 1e-10);
}

TEST(CPInnerCP, UnitAndOrthogonal) {
    const Shape s{2, 2};
    CPTensor e00(s, 1), e11(s, 1);
    e00.factor(0)(0, 0) = e00.factor(1)(0, 0) = 1.0;
    e11.factor(0)(1, 0) = e11.factor(1)(1, 0) = 1.0;
    EXPECT_EQ(cp_inner_cp(e00, e00), 1.0);
    EXPECT_EQ(cp_inner_cp(e00, e11), 0.0);
}

TEST(CPInnerCP, MatchesDensificationOracle) {
    const Shape s = Shape::uniform(4, 3);
    const CPTensor a = random_cp(s, 3, 21);
    const CPTensor b = random_cp(s, 5, 121);
    const double want = dense_inner(cp_to_dense(a), cp_to_dense(b));
    EXPECT_LE(oracle::rel_err(cp_inner_cp(a, b), want), 1e-10);
}

TEST(LowRankInnerDense, MatchesDensificationOracle) {
    const Shape s{3, 2, 4, 2};
    const DenseTensor x = random_dense(s, Seed{31}, false);
    const TTTensor a = random_tt(s, 3, 32);
    const CPTensor b = random_cp(s, 4, 33);
    EXPECT_LE(oracle::rel_err(tt_inner_dense(a, x), dense_inner(tt_to_dense(a), x)), 1e-10);
    EXPECT_LE(oracle::rel_err(cp_inner_dense(b, x), dense_inner(cp_to_dense(b), x)), 1e-10);
}

// Every format pair against the oracle, plus norm consistency, over random small cases.
TEST(InnerProperties, OracleEquivalenceAllFormatPairs) {
    std::mt19937_64 gen(2024);
    for (int c = 0; c < 60; ++c) {
        const std::size_t d = 1 + gen() % 4;
        const std::size_t order = 1 + gen() % 5;
        const Shape s = Shape::uniform(d, order);
        const std::uint64_t base = gen();
        const std::vector<AnyTensor> xs{random_dense(s, Seed{base}, false), random_tt(s, 1 + gen() % 5, base + 1),
                                        random_cp(s, 1 + gen() % 5, base + 2)};
        std::vector<DenseTensor> dense;
        for (const auto& x : xs) dense.push_back(to_dense(x));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            for (std::size_t j = 0; j < xs.size(); ++j) {
                const double want = dense_inner(dense[i], dense[j]);
                EXPECT_LE(std::abs(inner(xs[i], xs[j]) - want), 1e-10 * std::max(1.0, std::abs(want)))
                    << "case " << c << " pair " << i << "," << j;
            }
            const double norm = frobenius_norm(xs[i]);
            EXPECT_LE(oracle::rel_err(norm * norm, inner(xs[i], xs[i])), 1e-12);
        }
    }
}

TEST(InnerProperties, BilinearityOnDense) {
    const Shape s{3, 3, 2};
    const DenseTensor a = random_dense(s, Seed{1}, false);
    const DenseTensor b = random_dense(s, Seed{2}, false);
    const DenseTensor c = random_dense(s, Seed{3}, false);
    const double alpha = 0.7, beta = -1.3;
    DenseTensor combo(s);
    for (std::size_t i = 0; i < combo.size(); ++i) combo.values()[i] = alpha * a.values()[i] + beta * b.values()[i];
    const double lhs = dense_inner(combo, c);
    const double rhs = alpha * dense_inner(a, c) + beta * dense_inner(b, c);
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1 + std::abs(rhs)));
}

// ---------------------------------------------------------------------------
// norms and scaling

TEST(FrobeniusNorm, ZeroAndOnes) {
    EXPECT_EQ(frobenius_norm(DenseTensor(Shape{2, 2})), 0.0);
    EXPECT_EQ(frobenius_norm(TTTensor(Shape{2, 2}, 3)), 0.0);
    EXPECT_EQ(frobenius_norm(CPTensor(Shape{2, 2}, 3)), 0.0);
    DenseTensor ones(Shape{2, 2}, std::vector<double>(4, 1.0));
    EXPECT_DOUBLE_EQ(frobenius_norm(ones), 2.0);
}

TEST(FrobeniusNorm, TTMatchesDenseOracle) {
    const TTTensor t = random_tt(Shape::uniform(3, 6), 4, 9);
    EXPECT_LE(oracle::rel_err(frobenius_norm(t), frobenius_norm(tt_to_dense(t))), 1e-10);
}

TEST(ScaleInPlace, IdentityZeroAndDoubling) {
    TTTensor t = random_tt(Shape::uniform(3, 4), 3, 17);
    const double norm = frobenius_norm(t);
    TTTensor same = t;
    scale_in_place(same, 1.0);
    EXPECT_EQ(frobenius_norm(same), norm);
    TTTensor doubled = t;
    scale_in_place(doubled, 2.0);
    EXPECT_LE(oracle::rel_err(frobenius_norm(doubled), 2.0 * norm), 1e-12);
    scale_in_place(t, 0.0);
    EXPECT_EQ(frobenius_norm(t), 0.0);

    CPTensor c = random_cp(Shape::uniform(3, 4), 2, 18);
    const auto before = cp_to_dense(c);
    scale_in_place(c, -3.0);
    const auto after = cp_to_dense(c);
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(after.values()[i], -3.0 * before.values()[i], 1e-12);
}

// ---------------------------------------------------------------------------
// Khatri-Rao

TEST(KhatriRao, ScalarAndIdentity) {
    const Matrix two(1, 1, 2.0);
    EXPECT_EQ(khatri_rao(two, two)(0, 0), 4.0);
    const Matrix kr = khatri_rao(Matrix::identity(2), Matrix::identity(2));
    ASSERT_EQ(kr.rows(), 4u);
    const std::vector<double> col0{1, 0, 0, 0}, col1{0, 0, 0, 1};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(kr(i, 0), col0[i]);
        EXPECT_EQ(kr(i, 1), col1[i]);
    }
}

TEST(KhatriRao, MatchesKroneckerOracle) {
    std::mt19937_64 gen(2);
    std::normal_distribution<double> normal;
    Matrix a(3, 2), b(4, 2);
    for (double& v : a.data()) v = normal(gen);
    for (double& v : b.data()) v = normal(gen);
    const Matrix kr = khatri_rao(a, b);
    for (std::size_t j = 0; j < 2; ++j) {
        const auto want = oracle::kron({a.col(j).begin(), a.col(j).end()}, {b.col(j).begin(), b.col(j).end()});
        for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(kr(i, j), want[i]);
    }
}

TEST(KhatriRao, ColumnCountMismatch) { EXPECT_THROW((void)khatri_rao(Matrix(2, 2), Matrix(2, 3)), ShapeMismatch); }

// vec(a^1 o ... o a^N) = a^N (x) ... (x) a^1 under the first-mode-fastest layout.
TEST(KhatriRao, RankOneVectorizationIdentity) {
    const CPTensor t = random_cp(Shape{2, 3, 2}, 1, 77);
    std::vector<double> v{t.factor(2).col(0).begin(), t.factor(2).col(0).end()};
    for (std::size_t n = 2; n-- > 0;) v = oracle::kron(v, {t.factor(n).col(0).begin(), t.factor(n).col(0).end()});
    const DenseTensor dense_tensor = cp_to_dense(t);
    const auto dense = dense_tensor.values();
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(dense[i], v[i], 1e-15);
}

TEST(Linearization, TTAndCPShareEnumerationOrder) {
    const Shape s{2, 3, 2};
    const auto tt = random_tt(s, 2, 5);
    const auto cp = random_cp(s, 2, 6);
    const DenseTensor tt_dense_tensor = tt_to_dense(tt);
    const auto tt_dense = tt_dense_tensor.values();
    const DenseTensor cp_dense_tensor = cp_to_dense(cp);
    const auto cp_dense = cp_dense_tensor.values();
    const auto tt_enum = oracle::tt_elements(tt);
    const auto cp_enum = oracle::cp_elements(cp);
    for (std::size_t i = 0; i < tt_enum.size(); ++i) {
        EXPECT_NEAR(tt_dense[i], tt_enum[i], 1e-13);
        EXPECT_NEAR(cp_dense[i], cp_enum[i], 1e-13);
    }
}

}  // namespace
}  // namespace tensorjl
