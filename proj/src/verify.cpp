#include "ftap/verify.hpp"

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"

#include <array>
#include <deque>
#include <random>

namespace ftap {

namespace {

std::map<NodeId, std::size_t> positions(const std::vector<NodeId>& ids) {
    std::map<NodeId, std::size_t> out;
    for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], i);
    return out;
}

}  // namespace

std::optional<Strategy> oracle_arbitrage_lp(const ScenarioTree& tree) {
    tree.require_valid();
    const std::size_t d = tree.assets();
    const auto& internal = tree.internal_nodes();
    const auto pos = positions(internal);
    const std::size_t n = internal.size() * d;

    // G_N(l) as a linear form in the stacked γ.
    std::vector<Vector> leaf_gain;
    Vector objective(n);
    for (NodeId leaf : tree.leaves()) {
        Vector row(n);
        for (NodeId id : tree.path(leaf)) {
            const auto& parent = tree.node(id).parent;
            if (!parent) continue;
            const Vector x = tree.increment(id);
            const std::size_t base = pos.at(*parent) * d;
            for (std::size_t k = 0; k < d; ++k) row[base + k] += x[k];
        }
        const Rational& p = tree.path_probability(leaf);
        for (std::size_t v = 0; v < n; ++v) {
            if (sgn(row[v]) != 0) objective[v] += p * row[v];
        }
        leaf_gain.push_back(std::move(row));
    }

    auto lp = LinearProgram::maximize(objective);
    for (const auto& row : leaf_gain) {
        if (!is_zero(row)) lp.add_less_equal(scaled(row, -1), 0);
    }
    for (std::size_t v = 0; v < n; ++v) {
        lp.set_lower_bound(v, -1);
        Vector row(n);
        row[v] = 1;
        lp.add_less_equal(row, 1);
    }

    const auto outcome = solve_lp(lp);
    const auto* opt = std::get_if<Optimal>(&outcome);
    if (!opt) throw std::logic_error("arbitrage LP is feasible and bounded but the solver disagreed");
    if (sgn(opt->value) <= 0) return std::nullopt;

    Strategy strategy;
    for (std::size_t i = 0; i < internal.size(); ++i) {
        strategy.emplace(internal[i], Vector(opt->point.begin() + static_cast<std::ptrdiff_t>(i * d),
                                             opt->point.begin() + static_cast<std::ptrdiff_t>((i + 1) * d)));
    }
    return strategy;
}

std::optional<LeafDensity> oracle_emm_lp(const ScenarioTree& tree) {
    tree.require_valid();
    const std::size_t d = tree.assets();
    const auto& leaves = tree.leaves();
    const auto& internal = tree.internal_nodes();

    // One column per non-root node holding its Q-mass, plus t. A leaf column
    // holds the excess w_l = Q(l) - t P(l) >= 0; interior columns hold Q(n).
    std::map<NodeId, std::size_t> column;
    for (NodeId leaf : leaves) column.emplace(leaf, column.size());
    for (NodeId id : internal) {
        if (tree.node(id).parent) column.emplace(id, column.size());
    }
    const std::size_t t = column.size();
    const std::size_t n = t + 1;

    Vector objective(n);
    objective[t] = 1;
    auto lp = LinearProgram::maximize(objective);
    for (std::size_t v = 0; v < n; ++v) lp.set_lower_bound(v, 0);

    auto add_mass = [&](Vector& row, NodeId id, const Rational& coefficient) {
        if (sgn(coefficient) == 0) return;
        row[column.at(id)] += coefficient;
        if (tree.children(id).empty()) row[t] += coefficient * tree.path_probability(id);
    };
    for (NodeId id : internal) {
        Vector balance(n);
        std::vector<Vector> drift(d, Vector(n));
        for (NodeId child : tree.children(id)) {
            add_mass(balance, child, 1);
            const Vector x = tree.increment(child);
            for (std::size_t k = 0; k < d; ++k) add_mass(drift[k], child, x[k]);
        }
        if (tree.node(id).parent) {
            balance[column.at(id)] -= 1;
            lp.add_equal(balance, 0);
        } else {
            lp.add_equal(balance, 1);
        }
        for (const auto& row : drift) {
            if (!is_zero(row)) lp.add_equal(row, 0);
        }
    }

    const auto outcome = solve_lp(lp);
    const auto* opt = std::get_if<Optimal>(&outcome);
    if (!opt || sgn(opt->value) <= 0) return std::nullopt;
    LeafDensity density;
    for (NodeId leaf : leaves) {
        density.values.emplace(leaf, opt->value + opt->point[column.at(leaf)] / tree.path_probability(leaf));
    }
    return density;
}

Rational beta_exact(const ScenarioTree& tree) {
    tree.require_valid();

    struct NodeBlock {
        ConditionalSupport support;
        std::vector<Vector> basis;
        Rational weight;  // P(node) · f
        Vector mean;
        std::size_t offset = 0;
    };
    std::vector<NodeBlock> blocks;
    std::size_t n = 0;
    for (NodeId id : tree.internal_nodes()) {
        NodeBlock block;
        block.support = conditional_support(tree, id);
        if (!contains_origin(ri_conv_contains_origin(block.support.points()))) {
            throw_geometry_error(block.support, "scaled gain bound undefined");
        }
        block.basis = span_basis(block.support.points());
        block.weight = tree.path_probability(id) * one_step_scale(block.support);
        block.mean = conditional_mean(block.support);
        block.offset = n;
        n += block.basis.size() + block.support.atoms.size();
        blocks.push_back(std::move(block));
    }

    // Per node: μ (span coordinates, free) then t_i ≥ 0 ≥ −(γ, x_i).
    Vector objective(n);
    for (const auto& b : blocks) {
        for (std::size_t j = 0; j < b.basis.size(); ++j) objective[b.offset + j] = b.weight * dot(b.mean, b.basis[j]);
    }
    auto lp = LinearProgram::maximize(objective);
    Vector budget(n);
    for (const auto& b : blocks) {
        const std::size_t r = b.basis.size();
        const Rational& p = tree.path_probability(b.support.node);
        for (std::size_t i = 0; i < b.support.atoms.size(); ++i) {
            const std::size_t t = b.offset + r + i;
            lp.set_lower_bound(t, 0);
            Vector row(n);
            for (std::size_t j = 0; j < r; ++j) row[b.offset + j] = -dot(b.basis[j], b.support.atoms[i].value);
            row[t] = -1;
            lp.add_less_equal(row, 0);
            budget[t] = p * b.support.atoms[i].prob;
        }
    }
    lp.add_less_equal(budget, 1);

    const auto outcome = solve_lp(lp);
    const auto* opt = std::get_if<Optimal>(&outcome);
    if (!opt) throw std::logic_error("scaled gain LP is unbounded although every node passed the geometric test");
    return opt->value;
}

bool is_arbitrage(const ScenarioTree& tree, const Strategy& strategy) {
    bool strict = false;
    for (const auto& [leaf, g] : gains(tree, strategy)) {
        if (sgn(g) < 0) return false;
        strict = strict || sgn(g) > 0;
    }
    return strict;
}

void check_params(const GeneratorParams& params) {
    if (params.assets < 1 || params.assets > 4) throw InputError("generator: d must be in 1..4");
    if (params.horizon < 1 || params.horizon > 5) throw InputError("generator: N must be in 1..5");
    if (params.max_branching < 1 || params.max_branching > 5) throw InputError("generator: max branching must be in 1..5");
    if (params.min_branching < 1 || params.min_branching > params.max_branching)
        throw InputError("generator: min branching must be in 1..max branching");
    if (params.value_range < 1 || params.value_range > 1000) throw InputError("generator: value range must be in 1..1000");
}

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    Rational grid(std::int64_t range) {
        static constexpr std::array<std::int64_t, 5> kDenominators{1, 2, 4, 8, 16};
        const std::int64_t den = kDenominators[below(kDenominators.size())];
        const std::int64_t num = between(-range * den, range * den);
        Rational value(static_cast<long>(num), static_cast<unsigned long>(den));
        value.canonicalize();
        return value;
    }

    std::vector<Rational> probabilities(std::size_t k) {
        const std::int64_t cap = std::max<std::int64_t>(1, 16 / static_cast<std::int64_t>(k));
        std::vector<std::int64_t> weights(k);
        std::int64_t total = 0;
        for (auto& w : weights) {
            w = between(1, cap);
            total += w;
        }
        std::vector<Rational> out;
        for (auto w : weights) {
            Rational q(static_cast<long>(w), static_cast<unsigned long>(total));
            q.canonicalize();
            out.push_back(q);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

ScenarioTree random_tree(const GeneratorParams& params, std::uint64_t seed) {
    check_params(params);
    Draw draw(seed);
    const std::size_t d = params.assets;
    const Rational base(10 * params.value_range);

    std::vector<NodeSpec> nodes;
    std::vector<std::size_t> depth;
    nodes.push_back({0, std::nullopt, Rational(1), Vector(d)});
    depth.push_back(0);
    std::vector<std::vector<NodeId>> children(1);

    // Shape and P, breadth first.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (depth[i] == params.horizon) continue;
        const auto k = static_cast<std::size_t>(draw.between(static_cast<std::int64_t>(params.min_branching),
                                                             static_cast<std::int64_t>(params.max_branching)));
        const auto probs = draw.probabilities(k);
        for (std::size_t c = 0; c < k; ++c) {
            const NodeId id = nodes.size();
            nodes.push_back({id, i, probs[c], Vector(d)});
            depth.push_back(depth[i] + 1);
            children.emplace_back();
            children[i].push_back(id);
        }
    }

    if (params.mode == GeneratorMode::Generic) {
        for (std::size_t j = 0; j < d; ++j) nodes[0].price[j] = base + draw.grid(params.value_range);
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            const auto& parent = nodes[*nodes[i].parent].price;
            for (std::size_t j = 0; j < d; ++j) nodes[i].price[j] = parent[j] + draw.grid(params.value_range);
        }
    } else {
        std::vector<std::vector<Rational>> q(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!children[i].empty()) q[i] = draw.probabilities(children[i].size());
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!children[i].empty()) continue;
            for (std::size_t j = 0; j < d; ++j) nodes[i].price[j] = base + draw.grid(params.value_range);
        }
        // Children always have larger ids, so a reverse sweep sees them first.
        for (std::size_t i = nodes.size(); i-- > 0;) {
            if (children[i].empty()) continue;
            Vector avg(d);
            for (std::size_t c = 0; c < children[i].size(); ++c) {
                for (std::size_t j = 0; j < d; ++j) avg[j] += q[i][c] * nodes[children[i][c]].price[j];
            }
            nodes[i].price = std::move(avg);
        }
    }
    return ScenarioTree(d, params.horizon, std::move(nodes));
}

EquivalenceReport equivalence_report(const ScenarioTree& tree) {
    tree.require_valid();
    EquivalenceReport report;
    std::vector<std::string> alarms;

    report.arbitrage = oracle_arbitrage_lp(tree);
    report.verdict_na_strategy = !report.arbitrage;
    if (report.arbitrage && !is_arbitrage(tree, *report.arbitrage)) alarms.push_back("strategy-LP witness is not an arbitrage");

    report.verdict_geometry = true;
    for (NodeId id : tree.internal_nodes()) {
        const auto support = conditional_support(tree, id);
        auto cert = ri_conv_contains_origin(support.points());
        if (const auto problem = check_certificate(support.points(), cert); !problem.empty()) {
            alarms.push_back("certificate at node " + std::to_string(id) + ": " + problem);
        }
        if (const auto* out = std::get_if<NotInRi>(&cert); out && report.verdict_geometry) {
            report.verdict_geometry = false;
            report.failing_node = id;
            report.local_arbitrage = one_step_strategy(tree, id, out->direction);
            if (!is_arbitrage(tree, *report.local_arbitrage)) {
                alarms.push_back("one-step trade at node " + std::to_string(id) + " is not an arbitrage");
            }
        }
        report.certificates.push_back({id, std::move(cert)});
    }

    try {
        auto emm = build_emm(tree);
        for (const auto& step : emm.per_node) {
            if (auto problem = check_one_step_density(conditional_support(tree, step.node), step); !problem.empty())
                alarms.push_back("one-step density at node " + std::to_string(step.node) + ": " + problem);
        }
        report.verdict_emm = verify_martingale(tree, emm.density).holds;
        if (!report.verdict_emm) alarms.push_back("constructed density is not a martingale measure");
        report.emm = std::move(emm);
    } catch (const GeometryError&) {
        report.verdict_emm = false;
    } catch (const InputError& e) {
        alarms.push_back(std::string("constructed density is invalid: ") + e.what());
    }

    report.oracle_density = oracle_emm_lp(tree);
    report.verdict_emm_oracle = report.oracle_density.has_value();
    if (report.oracle_density && !verify_martingale(tree, *report.oracle_density).holds)
        alarms.push_back("oracle density is not a martingale measure");

    report.consistent =
        report.verdict_na_strategy == report.verdict_geometry && report.verdict_geometry == report.verdict_emm;
    if (!report.consistent) alarms.push_back("no-arbitrage, geometric and martingale-measure verdicts disagree");
    if (report.verdict_emm_oracle != report.verdict_emm) alarms.push_back("EMM oracle disagrees with the construction");

    if (!alarms.empty()) {
        std::string msg = "consistency alarm:";
        for (const auto& a : alarms) msg += "\n  " + a;
        throw InconsistencyError(std::move(report), msg);
    }
    return report;
}

}  // namespace ftap
