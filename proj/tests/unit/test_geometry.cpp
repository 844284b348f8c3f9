#include "ftap/errors.hpp"
#include "ftap/geometry.hpp"

#include "../support/oracles.hpp"
#include "../support/trees.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ftap {
namespace {

std::vector<Vector> points(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vector> out;
    for (const auto& row : rows) {
        Vector v;
        for (long x : row) v.emplace_back(x);
        out.push_back(std::move(v));
    }
    return out;
}

Vector weights_of(const RiCertificate& cert) { return std::get<InRi>(cert).weights; }

TEST(RelativeInterior, SymmetricPair) {
    const auto cert = ri_conv_contains_origin(points({{1}, {-1}}));
    ASSERT_TRUE(contains_origin(cert));
    EXPECT_EQ(weights_of(cert), (Vector{Rational(1, 2), Rational(1, 2)}));
}

TEST(RelativeInterior, AllPositive) {
    const auto cert = ri_conv_contains_origin(points({{1}, {2}}));
    ASSERT_FALSE(contains_origin(cert));
    EXPECT_EQ(std::get<NotInRi>(cert).direction, Vector{Rational(1)});
}

TEST(RelativeInterior, SingletonOrigin) {
    const auto cert = ri_conv_contains_origin(points({{0}}));
    ASSERT_TRUE(contains_origin(cert));
    EXPECT_EQ(weights_of(cert), Vector{Rational(1)});
}

TEST(RelativeInterior, RelativeToTheSpan) {
    const auto cert = ri_conv_contains_origin(points({{1, 0}, {-1, 0}}));
    ASSERT_TRUE(contains_origin(cert));
    EXPECT_EQ(weights_of(cert), (Vector{Rational(1, 2), Rational(1, 2)}));
}

TEST(RelativeInterior, BoundaryPointIsNotInterior) {
    // 0 is a vertex of conv{0, 1}.
    const auto cert = ri_conv_contains_origin(points({{0}, {1}}));
    ASSERT_FALSE(contains_origin(cert));
    EXPECT_EQ(std::get<NotInRi>(cert).direction, Vector{Rational(1)});
}

TEST(RelativeInterior, EmptyInputIsAnError) {
    EXPECT_THROW(ri_conv_contains_origin({}), InputError);
    EXPECT_THROW(arbitrage_direction({}), InputError);
}

TEST(ArbitrageDirection, Examples) {
    EXPECT_EQ(arbitrage_direction(points({{1}, {2}})), Vector{Rational(1)});
    EXPECT_EQ(arbitrage_direction(points({{1, 0}, {0, 1}})), (Vector{Rational(1), Rational(1)}));
    EXPECT_FALSE(arbitrage_direction(points({{1}, {-1}})).has_value());
}

TEST(ArbitrageDirection, StaysInTheSpan) {
    const auto atoms = points({{1, 1}, {2, 2}});
    const auto h = arbitrage_direction(atoms);
    ASSERT_TRUE(h.has_value());
    EXPECT_TRUE(in_span(*h, span_basis(atoms)));
    EXPECT_EQ(max_norm(*h), 1);
}

TEST(Certificates, TamperedCertificatesAreRejected) {
    const auto atoms = points({{1}, {-1}});
    EXPECT_EQ(check_certificate(atoms, InRi{{Rational(1, 2), Rational(1, 2)}}), "");
    EXPECT_NE(check_certificate(atoms, InRi{{Rational(1, 3), Rational(2, 3)}}), "");
    EXPECT_NE(check_certificate(atoms, InRi{{Rational(1), Rational(0)}}), "");
    EXPECT_NE(check_certificate(atoms, NotInRi{{Rational(1)}}), "");
    EXPECT_NE(check_certificate(points({{1}, {2}}), NotInRi{{Rational(0)}}), "");
}

TEST(Certificates, RandomDichotomy) {
    std::mt19937_64 rng(7);
    std::size_t inside = 0;
    for (int i = 0; i < 1500; ++i) {
        const auto atoms = testing::random_atoms(rng, 1 + rng() % 5, 1 + rng() % 3, 2);
        const auto cert = ri_conv_contains_origin(atoms);
        const auto h = arbitrage_direction(atoms);
        ASSERT_NE(contains_origin(cert), h.has_value()) << "set " << i;
        ASSERT_EQ(check_certificate(atoms, cert), "") << "set " << i;
        if (h) {
            ASSERT_EQ(check_certificate(atoms, NotInRi{*h}), "") << "set " << i;
        } else {
            ++inside;
            const auto lp = solve_direction_lp(atoms);
            EXPECT_EQ(lp.optimum, 0);
            EXPECT_TRUE(is_zero(lp.direction));
        }
    }
    EXPECT_GT(inside, 100u);
}

TEST(Certificates, VerdictIsScaleInvariant) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto atoms = testing::random_atoms(rng, 1 + rng() % 4, 1 + rng() % 3, 2);
        const Rational c = testing::small_rational(rng, 3, 4);
        if (sgn(c) <= 0) continue;
        std::vector<Vector> stretched;
        for (const auto& x : atoms) stretched.push_back(scaled(x, c));
        EXPECT_EQ(contains_origin(ri_conv_contains_origin(atoms)), contains_origin(ri_conv_contains_origin(stretched)));
    }
}

TEST(OneStepStrategy, TradesOnlyAtTheNode) {
    const auto tree = testing::two_step_tree(Rational(1, 2));
    const auto s = one_step_strategy(tree, 1, {Rational(1)});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.at(0), Vector{Rational(0)});
    EXPECT_EQ(s.at(1), Vector{Rational(1)});
    EXPECT_EQ(s.at(2), Vector{Rational(0)});
}

TEST(GeometryError, CarriesNodeAndDirection) {
    const auto support = testing::atoms_1d({{1, Rational(1, 2)}, {2, Rational(1, 2)}});
    try {
        throw_geometry_error(support, "test");
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.node(), support.node);
        EXPECT_EQ(e.certificate().direction, Vector{Rational(1)});
    }
}

}  // namespace
}  // namespace ftap
