#include "ftap/market.hpp"

#include "ftap/errors.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace ftap {

namespace {

constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);

}  // namespace

ScenarioTree::ScenarioTree(std::size_t assets, std::size_t horizon, std::vector<NodeSpec> nodes)
    : assets_(assets), horizon_(horizon), nodes_(std::move(nodes)) {
    analyse();
}

void ScenarioTree::analyse() {
    auto report = [this](std::optional<NodeId> node, std::string rule, std::string message) {
        violations_.push_back({node, std::move(rule), std::move(message)});
    };

    if (assets_ == 0) report(std::nullopt, "asset_count", "asset count d must be at least 1");

    std::stable_sort(nodes_.begin(), nodes_.end(), [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i].id, i).second) report(nodes_[i].id, "duplicate_id", "node id appears more than once");
    }

    const std::size_t n = nodes_.size();
    children_.assign(n, {});
    depth_.assign(n, kUnreached);
    path_prob_.assign(n, Rational(0));

    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& node = nodes_[i];
        if (index_.at(node.id) != i) continue;
        if (!node.parent) {
            roots.push_back(i);
            continue;
        }
        const auto parent = index_.find(*node.parent);
        if (parent == index_.end()) {
            report(node.id, "parent_exists", "parent " + std::to_string(*node.parent) + " does not exist");
            continue;
        }
        children_[parent->second].push_back(node.id);
    }
    if (roots.size() != 1) {
        report(std::nullopt, "single_root",
               "expected exactly one root (parent null), found " + std::to_string(roots.size()));
    }
    if (roots.empty()) return;
    root_ = nodes_[roots.front()].id;

    std::deque<std::size_t> queue{roots.front()};
    depth_[roots.front()] = 0;
    path_prob_[roots.front()] = 1;
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        for (NodeId child : children_[i]) {
            const std::size_t c = index_.at(child);
            if (depth_[c] != kUnreached) continue;
            depth_[c] = depth_[i] + 1;
            path_prob_[c] = path_prob_[i] * nodes_[c].prob;
            queue.push_back(c);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const auto& node = nodes_[i];
        if (index_.at(node.id) != i) continue;
        if (depth_[i] == kUnreached) {
            if (node.parent && index_.count(*node.parent))
                report(node.id, "reachable", "node is not reachable from the root");
            continue;
        }
        if (node.price.size() != assets_) {
            report(node.id, "price_dimension",
                   "price has " + std::to_string(node.price.size()) + " entries, expected " + std::to_string(assets_));
        }
        if (!node.parent) {
            if (node.prob != 1) report(node.id, "root_prob", "root probability is " + to_string(node.prob) + ", expected 1");
        } else if (sgn(node.prob) <= 0) {
            report(node.id, "prob_positive", "non-positive transition probability " + to_string(node.prob));
        }
        if (children_[i].empty()) {
            if (depth_[i] != horizon_) {
                report(node.id, "leaf_depth",
                       "leaf at depth " + std::to_string(depth_[i]) + ", horizon is " + std::to_string(horizon_));
            }
            leaves_.push_back(node.id);
        } else {
            Rational sum = 0;
            for (NodeId child : children_[i]) sum += nodes_[index_.at(child)].prob;
            if (sum != 1) report(node.id, "prob_sum", "probabilities sum to " + to_string(sum) + " ≠ 1");
            internal_.push_back(node.id);
        }
    }
}

std::size_t ScenarioTree::index_of(NodeId id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw InputError("unknown node id " + std::to_string(id));
    return it->second;
}

const NodeSpec& ScenarioTree::node(NodeId id) const { return nodes_[index_of(id)]; }
const std::vector<NodeId>& ScenarioTree::children(NodeId id) const { return children_[index_of(id)]; }
std::size_t ScenarioTree::depth(NodeId id) const { return depth_[index_of(id)]; }
const Rational& ScenarioTree::path_probability(NodeId id) const { return path_prob_[index_of(id)]; }

std::vector<NodeId> ScenarioTree::path(NodeId id) const {
    std::vector<NodeId> out;
    std::optional<NodeId> cur = id;
    while (cur) {
        out.push_back(*cur);
        cur = node(*cur).parent;
        if (out.size() > nodes_.size()) throw InputError("cycle in parent links");
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Vector ScenarioTree::increment(NodeId child) const {
    const auto& c = node(child);
    if (!c.parent) throw InputError("root has no price increment");
    return subtract(c.price, node(*c.parent).price);
}

void ScenarioTree::require_valid() const {
    if (is_valid()) return;
    std::ostringstream msg;
    msg << "invalid scenario tree:";
    for (const auto& v : violations_) {
        msg << "\n  ";
        if (v.node) msg << "node " << *v.node << ": ";
        msg << "[" << v.rule << "] " << v.message;
    }
    throw InputError(msg.str());
}

ScenarioTree ScenarioTree::with_probabilities(const std::map<NodeId, Rational>& probs) const {
    std::vector<NodeSpec> nodes = nodes_;
    for (auto& node : nodes) {
        if (!node.parent) continue;
        const auto it = probs.find(node.id);
        if (it == probs.end()) throw InputError("no probability for node " + std::to_string(node.id));
        node.prob = it->second;
    }
    return ScenarioTree(assets_, horizon_, std::move(nodes));
}

std::vector<Violation> validate(const ScenarioTree& tree) { return tree.violations(); }

ConditionalSupport ConditionalSupport::from_atoms(std::vector<Atom> atoms, NodeId node) {
    ConditionalSupport support;
    support.node = node;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        support.children.push_back(i);
        support.child_probs.push_back(atoms[i].prob);
        support.child_atom.push_back(i);
    }
    support.atoms = std::move(atoms);
    return support;
}

std::vector<Vector> ConditionalSupport::points() const {
    std::vector<Vector> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(a.value);
    return out;
}

ConditionalSupport conditional_support(const ScenarioTree& tree, NodeId node) {
    tree.require_valid();
    const auto& kids = tree.children(node);
    if (kids.empty()) throw InputError("node " + std::to_string(node) + " is a leaf and has no conditional law");

    ConditionalSupport support;
    support.node = node;
    for (NodeId child : kids) {
        Vector x = tree.increment(child);
        const Rational& q = tree.node(child).prob;
        auto it = std::find_if(support.atoms.begin(), support.atoms.end(), [&](const Atom& a) { return a.value == x; });
        if (it == support.atoms.end()) {
            support.atoms.push_back({std::move(x), q});
            it = support.atoms.end() - 1;
        } else {
            it->prob += q;
        }
        support.children.push_back(child);
        support.child_probs.push_back(q);
        support.child_atom.push_back(static_cast<std::size_t>(it - support.atoms.begin()));
    }
    return support;
}

Vector conditional_mean(const ConditionalSupport& support) {
    Vector mean(support.dimension());
    for (const auto& atom : support.atoms) {
        for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += atom.prob * atom.value[k];
    }
    return mean;
}

std::map<NodeId, Rational> gains(const ScenarioTree& tree, const Strategy& strategy) {
    tree.require_valid();
    for (NodeId id : tree.internal_nodes()) {
        const auto it = strategy.find(id);
        if (it == strategy.end()) throw InputError("strategy has no entry for node " + std::to_string(id));
        if (it->second.size() != tree.assets()) throw InputError("strategy entry for node " + std::to_string(id) + " has wrong dimension");
    }
    std::map<NodeId, Rational> out;
    for (NodeId leaf : tree.leaves()) {
        Rational g = 0;
        for (NodeId id : tree.path(leaf)) {
            const auto& parent = tree.node(id).parent;
            if (parent) g += dot(strategy.at(*parent), tree.increment(id));
        }
        out.emplace(leaf, std::move(g));
    }
    return out;
}

void check_density(const ScenarioTree& tree, const LeafDensity& density) {
    tree.require_valid();
    Rational mass = 0;
    for (NodeId leaf : tree.leaves()) {
        const auto it = density.values.find(leaf);
        if (it == density.values.end()) throw InputError("density has no value for leaf " + std::to_string(leaf));
        if (sgn(it->second) <= 0) throw InputError("density is not strictly positive at leaf " + std::to_string(leaf));
        mass += tree.path_probability(leaf) * it->second;
    }
    if (density.values.size() != tree.leaves().size()) throw InputError("density has entries for non-leaf ids");
    if (mass != 1) throw InputError("density is not normalized: E z = " + to_string(mass));
}

std::map<NodeId, Rational> density_process(const ScenarioTree& tree, const LeafDensity& density) {
    check_density(tree, density);
    // Z_node · p_node = Σ over leaves below of p_l z_l.
    std::map<NodeId, Rational> mass;
    for (NodeId leaf : tree.leaves()) {
        const Rational weighted = tree.path_probability(leaf) * density.values.at(leaf);
        for (NodeId id : tree.path(leaf)) mass[id] += weighted;
    }
    for (auto& [id, m] : mass) m /= tree.path_probability(id);
    return mass;
}

ScenarioTree reweight(const ScenarioTree& tree, const LeafDensity& density) {
    const auto z = density_process(tree, density);
    std::map<NodeId, Rational> probs;
    for (const auto& node : tree.nodes()) {
        if (node.parent) probs.emplace(node.id, node.prob * z.at(node.id) / z.at(*node.parent));
    }
    return tree.with_probabilities(probs);
}

}  // namespace ftap
