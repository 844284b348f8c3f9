#include "ftap/emm.hpp"
#include "ftap/errors.hpp"
#include "ftap/geometry.hpp"
#include "ftap/verify.hpp"

#include "../support/oracles.hpp"
#include "../support/trees.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ftap {
namespace {

using testing::atoms_1d;

ConditionalSupport symmetric() { return atoms_1d({{1, Rational(1, 2)}, {-1, Rational(1, 2)}}); }
ConditionalSupport skewed() { return atoms_1d({{1, Rational(3, 4)}, {-1, Rational(1, 4)}}); }
ConditionalSupport deterministic() { return atoms_1d({{0, Rational(1)}}); }

// Random supports with the origin in the relative interior.
std::vector<ConditionalSupport> random_na_supports(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ConditionalSupport> out;
    while (out.size() < count) {
        const auto points = testing::random_atoms(rng, 1 + rng() % 5, 1 + rng() % 3, 3);
        if (!contains_origin(ri_conv_contains_origin(points))) continue;
        std::vector<Atom> atoms;
        Rational total = 0;
        for (const auto& x : points) {
            atoms.push_back({x, Rational(static_cast<long>(1 + rng() % 4))});
            total += atoms.back().prob;
        }
        for (auto& a : atoms) a.prob /= total;
        out.push_back(ConditionalSupport::from_atoms(std::move(atoms)));
    }
    return out;
}

TEST(Psi, Examples) {
    EXPECT_EQ(psi(symmetric(), {Rational(1)}), Rational(1, 2));
    EXPECT_EQ(psi(skewed(), {Rational(0)}), 0);
    EXPECT_EQ(psi(skewed(), {Rational(2)}), Rational(1, 2));
}

TEST(Psi, PositivelyHomogeneousAndConvex) {
    std::mt19937_64 rng(3);
    for (const auto& support : random_na_supports(100, 5)) {
        Vector h(support.dimension());
        Vector k(support.dimension());
        for (auto& v : h) v = testing::small_rational(rng, 3, 4);
        for (auto& v : k) v = testing::small_rational(rng, 3, 4);
        const Rational c = Rational(static_cast<long>(rng() % 5)) / 3;
        EXPECT_EQ(psi(support, scaled(h, c)), c * psi(support, h));
        EXPECT_LE(psi(support, add(h, k)), psi(support, h) + psi(support, k));
        EXPECT_GE(psi(support, h), 0);
    }
}

TEST(SupportFunction, Examples) {
    EXPECT_EQ(support_function_T(symmetric(), {Rational(0)}), 0);
    EXPECT_EQ(support_function_T(skewed(), {Rational(1, 2)}), 2);
    EXPECT_EQ(support_function_T(deterministic(), {Rational(0)}), 0);
}

TEST(SupportFunction, Preconditions) {
    EXPECT_THROW(support_function_T(deterministic(), {Rational(1)}), InputError);
    EXPECT_THROW(support_function_T(atoms_1d({{1, Rational(1, 2)}, {2, Rational(1, 2)}}), {Rational(1)}),
                 GeometryError);
}

TEST(OneStepScale, Examples) {
    EXPECT_EQ(one_step_scale(symmetric()), 1);
    EXPECT_EQ(one_step_scale(skewed()), Rational(1, 3));
    EXPECT_EQ(one_step_scale(deterministic()), 1);
}

TEST(OneStepDensity, Examples) {
    const auto sym = one_step_density(symmetric());
    EXPECT_EQ(sym.scale, 1);
    EXPECT_EQ(sym.g, (Vector{Rational(1), Rational(1)}));
    EXPECT_EQ(sym.g_hat, (Vector{Rational(1), Rational(1)}));

    const auto sk = one_step_density(skewed());
    EXPECT_EQ(sk.scale, Rational(1, 3));
    EXPECT_EQ(sk.g, (Vector{Rational(1, 3), Rational(1)}));
    EXPECT_EQ(sk.g_hat, (Vector{Rational(2, 3), Rational(2)}));

    const auto det = one_step_density(deterministic());
    EXPECT_EQ(det.g, Vector{Rational(1)});
    EXPECT_EQ(det.g_hat, Vector{Rational(1)});
}

TEST(OneStepDensity, FailsWithoutInteriorPoint) {
    EXPECT_THROW(one_step_density(atoms_1d({{1, Rational(1, 2)}, {2, Rational(1, 2)}})), GeometryError);
}

TEST(OneStepDensity, RandomInvariants) {
    for (const auto& support : random_na_supports(300, 17)) {
        const auto density = one_step_density(support);
        ASSERT_EQ(check_one_step_density(support, density), "");
        EXPECT_GT(density.scale, 0);
        EXPECT_LE(density.scale, 1);
        Rational mass = 0;
        Vector drift(support.dimension());
        for (std::size_t c = 0; c < density.children.size(); ++c) {
            EXPECT_GE(density.g[c], density.scale);
            EXPECT_GT(density.g_hat[c], 0);
            const auto& x = support.atoms[support.child_atom[c]].value;
            mass += support.child_probs[c] * density.g_hat[c];
            drift = add(drift, scaled(x, support.child_probs[c] * density.g_hat[c]));
        }
        EXPECT_EQ(mass, 1);
        EXPECT_TRUE(is_zero(drift));
    }
}

TEST(OneStepDensity, CheckerRejectsTampering) {
    auto density = one_step_density(skewed());
    density.g_hat[0] = 1;
    EXPECT_NE(check_one_step_density(skewed(), density), "");
}

TEST(BuildEmm, SymmetricBinomialIsAlreadyMartingale) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto emm = build_emm(testing::symmetric_binomial(n));
        for (const auto& [leaf, z] : emm.density.values) EXPECT_EQ(z, 1);
        EXPECT_EQ(emm.bound, 1);
    }
}

TEST(BuildEmm, OneStep) {
    const auto emm = build_emm(testing::one_step_tree({{1, Rational(3, 4)}, {-1, Rational(1, 4)}}));
    EXPECT_EQ(emm.density.values.at(1), Rational(2, 3));
    EXPECT_EQ(emm.density.values.at(2), 2);
    EXPECT_EQ(emm.bound, 2);
    ASSERT_EQ(emm.per_node.size(), 1u);
    EXPECT_EQ(emm.per_node[0].children, (std::vector<NodeId>{1, 2}));
}

TEST(BuildEmm, TwoStepMultipliesAlongPaths) {
    const auto tree = testing::two_step_tree(Rational(3, 4));
    const auto emm = build_emm(tree);
    EXPECT_EQ(emm.density.values.at(3), Rational(4, 9));
    EXPECT_EQ(emm.density.values.at(4), Rational(4, 3));
    EXPECT_EQ(emm.density.values.at(5), Rational(4, 3));
    EXPECT_EQ(emm.density.values.at(6), 4);
    EXPECT_EQ(emm.bound, 4);
    EXPECT_TRUE(verify_martingale(tree, emm.density).holds);
}

TEST(BuildEmm, ReportsFirstFailingNode) {
    const ScenarioTree tree(1, 2,
                            {{0, std::nullopt, Rational(1), {Rational(0)}},
                             {1, NodeId{0}, Rational(1, 2), {Rational(1)}},
                             {2, NodeId{0}, Rational(1, 2), {Rational(-1)}},
                             {3, NodeId{1}, Rational(1, 2), {Rational(2)}},
                             {4, NodeId{1}, Rational(1, 2), {Rational(3)}},
                             {5, NodeId{2}, Rational(1, 2), {Rational(0)}},
                             {6, NodeId{2}, Rational(1, 2), {Rational(-2)}}});
    try {
        build_emm(tree);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.node(), NodeId{1});
        EXPECT_EQ(e.certificate().direction, Vector{Rational(1)});
    }
}

TEST(VerifyMartingale, Examples) {
    const auto skewed_tree = testing::one_step_tree({{1, Rational(3, 4)}, {-1, Rational(1, 4)}});
    const LeafDensity ones{{{1, Rational(1)}, {2, Rational(1)}}};
    const auto check = verify_martingale(skewed_tree, ones);
    EXPECT_FALSE(check.holds);
    EXPECT_EQ(check.residuals.at(0), Vector{Rational(1, 2)});

    const auto sym = testing::symmetric_binomial(2);
    LeafDensity unit;
    for (NodeId leaf : sym.leaves()) unit.values.emplace(leaf, 1);
    EXPECT_TRUE(verify_martingale(sym, unit).holds);
}

TEST(BuildEmm, RandomArbitrageFreeTrees) {
    GeneratorParams params;
    params.mode = GeneratorMode::MartingalePerturbed;
    params.min_branching = 1;
    params.max_branching = 3;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        params.assets = 1 + seed % 2;
        params.horizon = 1 + seed % 3;
        const auto tree = random_tree(params, seed);
        const auto emm = build_emm(tree);
        Rational mass = 0;
        for (const auto& [leaf, z] : emm.density.values) {
            EXPECT_GT(z, 0);
            EXPECT_LE(z, emm.bound);
            mass += tree.path_probability(leaf) * z;
        }
        EXPECT_EQ(mass, 1) << "seed " << seed;
        EXPECT_TRUE(verify_martingale(tree, emm.density).holds) << "seed " << seed;
    }
}

}  // namespace
}  // namespace ftap
