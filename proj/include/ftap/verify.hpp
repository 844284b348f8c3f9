#pragma once

#include "ftap/emm.hpp"
#include "ftap/geometry.hpp"
#include "ftap/market.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftap {

/// maximize Σ_l p_l G_N(l) over predictable γ with |γ_j| ≤ 1 and G_N ≥ 0 on
/// every leaf; returns the optimal strategy iff the optimum is positive.
std::optional<Strategy> oracle_arbitrage_lp(const ScenarioTree& tree);

/// maximize t s.t. z_l ≥ t, Σ p_l z_l = 1 and the per-node martingale
/// equations for ΔS under z; returns z iff the optimum is positive.
std::optional<LeafDensity> oracle_emm_lp(const ScenarioTree& tree);

/// Exact optimum of the gain functional weighted by the per-node scale f over
/// strategies in the span of each node's support, subject to a unit budget on
/// the expected one-step losses. Bounded above by 1 on arbitrage-free trees.
/// Throws GeometryError when some node fails the relative-interior condition.
Rational beta_exact(const ScenarioTree& tree);

/// G_N ≥ 0 on every leaf and > 0 on at least one.
bool is_arbitrage(const ScenarioTree& tree, const Strategy& strategy);

enum class GeneratorMode { Generic, MartingalePerturbed };

struct GeneratorParams {
    std::size_t assets = 1;          ///< d, 1..4
    std::size_t horizon = 1;         ///< N, 1..5
    std::size_t min_branching = 2;   ///< 1..max_branching
    std::size_t max_branching = 2;   ///< 1..5
    std::int64_t value_range = 4;    ///< increments / leaf offsets in [−range, range], 1..1000
    GeneratorMode mode = GeneratorMode::Generic;
};

void check_params(const GeneratorParams& params);

/// Deterministic random scenario tree. Randomness comes from std::mt19937_64
/// seeded with `seed`; a draw from {0..n−1} is `engine() % n`. Node ids are
/// assigned breadth-first from 0 at the root. Grid values are k/den with den
/// in {1, 2, 4, 8, 16}; probabilities are integer weights normalized by a sum
/// of at most 16.
///
/// Generic: prices follow free grid increments, so arbitrage is common.
/// MartingalePerturbed: leaf prices are drawn, inner prices are averages of
/// their children under a drawn measure Q, then P is drawn independently;
/// Q is an equivalent martingale measure by construction.
ScenarioTree random_tree(const GeneratorParams& params, std::uint64_t seed);

struct NodeCertificate {
    NodeId node = 0;
    RiCertificate certificate;
};

struct EquivalenceReport {
    bool verdict_na_strategy = false;  ///< strategy LP finds no arbitrage
    bool verdict_geometry = false;     ///< every node has the origin in ri conv(support)
    bool verdict_emm = false;          ///< build_emm succeeded and verified
    bool verdict_emm_oracle = false;   ///< independent EMM LP found a density
    bool consistent = false;           ///< the three verdicts agree

    std::optional<Strategy> arbitrage;       ///< from the strategy LP
    std::optional<Strategy> local_arbitrage; ///< one-step trade at the first failing node
    std::optional<NodeId> failing_node;
    std::optional<EmmResult> emm;
    std::optional<LeafDensity> oracle_density;
    std::vector<NodeCertificate> certificates;  ///< one per non-leaf node, id order
};

/// Consistency alarm: the routes disagree or a witness failed its
/// exact re-check. Carries everything that was computed.
class InconsistencyError : public std::runtime_error {
public:
    InconsistencyError(EquivalenceReport report, const std::string& what)
        : std::runtime_error(what), report_(std::move(report)) {}
    const EquivalenceReport& report() const { return report_; }

private:
    EquivalenceReport report_;
};

/// Runs all routes, re-verifies every witness, and throws InconsistencyError
/// when anything disagrees.
EquivalenceReport equivalence_report(const ScenarioTree& tree);

}  // namespace ftap
