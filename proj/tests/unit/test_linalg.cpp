#include "ftap/errors.hpp"
#include "ftap/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ftap {
namespace {

Vector v(std::initializer_list<long> xs) {
    Vector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

TEST(SpanBasis, CollinearPointsCollapse) {
    const auto basis = span_basis({v({1, 0}), v({2, 0})});
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(basis[0], v({1, 0}));
}

TEST(SpanBasis, ZeroVectorSpansNothing) {
    EXPECT_TRUE(span_basis({v({0, 0})}).empty());
    EXPECT_TRUE(span_basis({}).empty());
}

TEST(SpanBasis, IndependentPairHasRankTwo) {
    const auto basis = span_basis({v({1, 1}), v({1, -1})});
    EXPECT_EQ(basis.size(), 2u);
    EXPECT_EQ(basis[0], v({1, 0}));
    EXPECT_EQ(basis[1], v({0, 1}));
}

TEST(SpanBasis, MixedDimensionsAreRejected) {
    EXPECT_THROW(span_basis({v({1}), v({1, 2})}), InputError);
}

TEST(InSpan, Membership) {
    EXPECT_TRUE(in_span(v({3, 0}), {v({1, 0})}));
    EXPECT_FALSE(in_span(v({0, 1}), {v({1, 0})}));
    EXPECT_TRUE(in_span(v({0, 0}), {}));
    EXPECT_FALSE(in_span(v({0, 1}), {}));
}

TEST(SpanBasis, RandomBasisSpansInputAndIsIndependent) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t dim = 1 + rng() % 4;
        const std::size_t count = rng() % 6;
        std::vector<Vector> points;
        for (std::size_t i = 0; i < count; ++i) {
            Vector x(dim);
            // Sparse integer entries so dependent sets occur often.
            for (auto& c : x) c = rng() % 3 == 0 ? static_cast<long>(rng() % 5) - 2 : 0;
            points.push_back(x);
        }
        const auto basis = span_basis(points);
        EXPECT_EQ(rank(basis), basis.size());
        for (const auto& p : points) EXPECT_TRUE(in_span(p, basis));
        for (const auto& b : basis) EXPECT_TRUE(in_span(b, points.empty() ? basis : points));
        EXPECT_EQ(span_basis(points), basis);
    }
}

TEST(Vectors, BasicOperations) {
    EXPECT_EQ(dot(v({1, 2}), v({3, -1})), 1);
    EXPECT_EQ(max_norm(v({-3, 2})), 3);
    EXPECT_EQ(combine({v({1, 0}), v({0, 1})}, v({2, 5}), 2), v({2, 5}));
    EXPECT_THROW(dot(v({1}), v({1, 2})), InputError);
}

TEST(Matrix, AppendRowChecksWidth) {
    Matrix m;
    m.append_row(v({1, 2, 3}));
    EXPECT_EQ(m.cols(), 3u);
    EXPECT_THROW(m.append_row(v({1})), InputError);
    EXPECT_EQ(m(0, 2), 3);
}

}  // namespace
}  // namespace ftap
