#pragma once

// Test-only reference implementations. Nothing here calls the simplex solver
// or the library's elimination routines.

#include "ftap/lp.hpp"
#include "ftap/market.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace ftap::testing {

/// Solves the square system M x = rhs by Gauss-Jordan elimination; nothing
/// when M is singular.
inline std::optional<Vector> solve_square(std::vector<Vector> m, Vector rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p][col] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[col]);
        std::swap(rhs[p], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

/// Maximum of the objective over all vertices of {A x ≤ b (= for Equal rows),
/// x_j ≥ lower_j}: every choice of n tight constraints (rows or bounds) with a
/// nonsingular system is solved and kept if feasible. Nothing when no vertex
/// is feasible. Only meaningful for pointed, bounded feasible sets.
inline std::optional<Rational> vertex_enumeration_max(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    struct Face {
        Vector a;
        Rational b;
    };
    std::vector<Face> faces;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        auto row = lp.constraints.row(i);
        faces.push_back({Vector(row.begin(), row.end()), lp.rhs[i]});
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!lp.lower_bounds[j]) continue;
        Vector a(n);
        a[j] = 1;
        faces.push_back({a, *lp.lower_bounds[j]});
    }

    std::optional<Rational> best;
    std::vector<std::size_t> pick(n);
    // Enumerate n-subsets of faces in lexicographic order.
    auto visit = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == n) {
            std::vector<Vector> m;
            Vector rhs;
            for (std::size_t k : pick) {
                m.push_back(faces[k].a);
                rhs.push_back(faces[k].b);
            }
            auto x = solve_square(m, rhs);
            if (!x || !is_feasible_point(lp, *x)) return;
            Rational v = 0;
            for (std::size_t j = 0; j < n; ++j) v += lp.objective[j] * (*x)[j];
            if (!best || v > *best) best = v;
            return;
        }
        for (std::size_t k = start; k < faces.size(); ++k) {
            pick[depth] = k;
            self(self, k + 1, depth + 1);
        }
    };
    visit(visit, 0, 0);
    return best;
}

/// Random strictly positive normalized leaf density with integer weights 1..16.
inline LeafDensity random_density(const ScenarioTree& tree, std::mt19937_64& rng) {
    LeafDensity density;
    Rational mass = 0;
    for (NodeId leaf : tree.leaves()) {
        Rational w(static_cast<long>(1 + rng() % 16));
        mass += tree.path_probability(leaf) * w;
        density.values.emplace(leaf, w);
    }
    for (auto& [leaf, z] : density.values) z /= mass;
    return density;
}

inline Rational small_rational(std::mt19937_64& rng, long range, unsigned long max_den) {
    const unsigned long den = 1 + rng() % max_den;
    const long num = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range * static_cast<long>(den) + 1)) -
                     range * static_cast<long>(den);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Distinct random points with integer coordinates in [−range, range]; the
/// count is capped at the number of lattice points available.
inline std::vector<Vector> random_atoms(std::mt19937_64& rng, std::size_t count, std::size_t dim, long range) {
    std::size_t available = 1;
    for (std::size_t k = 0; k < dim && available < count; ++k) available *= static_cast<std::size_t>(2 * range + 1);
    count = std::min(count, available);
    std::vector<Vector> atoms;
    while (atoms.size() < count) {
        Vector x(dim);
        for (auto& c : x) c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range;
        bool fresh = true;
        for (const auto& a : atoms) fresh = fresh && a != x;
        if (fresh) atoms.push_back(std::move(x));
    }
    return atoms;
}

}  // namespace ftap::testing
