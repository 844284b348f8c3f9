#pragma once

#include "ftap/linalg.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ftap {

using NodeId = std::size_t;

struct NodeSpec {
    NodeId id = 0;
    std::optional<NodeId> parent;
    Rational prob;  ///< transition probability from the parent ("1" at the root)
    Vector price;
};

struct Violation {
    std::optional<NodeId> node;
    std::string rule;
    std::string message;
};

/// Finite filtered probability space with an adapted price process. Depth-n
/// nodes are the atoms of F_n, leaves are the elementary outcomes, and P is
/// carried as transition probabilities.
///
/// Construction never throws on semantic problems: they are recorded and
/// reported by violations(). Operations that need a well-formed tree call
/// require_valid().
class ScenarioTree {
public:
    ScenarioTree() = default;
    ScenarioTree(std::size_t assets, std::size_t horizon, std::vector<NodeSpec> nodes);

    std::size_t assets() const { return assets_; }
    std::size_t horizon() const { return horizon_; }

    /// Nodes sorted by id.
    const std::vector<NodeSpec>& nodes() const { return nodes_; }
    const NodeSpec& node(NodeId id) const;
    bool contains(NodeId id) const { return index_.count(id) != 0; }

    NodeId root() const { return root_; }
    const std::vector<NodeId>& children(NodeId id) const;
    bool is_leaf(NodeId id) const { return children(id).empty(); }
    std::size_t depth(NodeId id) const;
    /// Product of transition probabilities from the root.
    const Rational& path_probability(NodeId id) const;
    /// Root-to-node path, root first.
    std::vector<NodeId> path(NodeId id) const;

    /// Leaves and non-leaf nodes, each in id order.
    const std::vector<NodeId>& leaves() const { return leaves_; }
    const std::vector<NodeId>& internal_nodes() const { return internal_; }

    /// Price increment S_child − S_parent.
    Vector increment(NodeId child) const;

    const std::vector<Violation>& violations() const { return violations_; }
    bool is_valid() const { return violations_.empty(); }
    /// Throws InputError listing the violations.
    void require_valid() const;

    /// Same shape and prices, new transition probabilities (keyed by node id;
    /// the root keeps probability 1).
    ScenarioTree with_probabilities(const std::map<NodeId, Rational>& probs) const;

private:
    std::size_t index_of(NodeId id) const;
    void analyse();

    std::size_t assets_ = 0;
    std::size_t horizon_ = 0;
    std::vector<NodeSpec> nodes_;
    std::map<NodeId, std::size_t> index_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<std::size_t> depth_;
    std::vector<Rational> path_prob_;
    std::vector<NodeId> leaves_;
    std::vector<NodeId> internal_;
    NodeId root_ = 0;
    std::vector<Violation> violations_;
};

std::vector<Violation> validate(const ScenarioTree& tree);

struct Atom {
    Vector value;
    Rational prob;
};

/// Atoms of the one-step conditional law of ΔS at a node, with the mapping
/// from children to the atom their increment equals.
struct ConditionalSupport {
    NodeId node = 0;
    std::vector<Atom> atoms;
    std::vector<NodeId> children;
    std::vector<Rational> child_probs;
    std::vector<std::size_t> child_atom;

    /// Support not tied to a tree: one synthetic child per atom.
    static ConditionalSupport from_atoms(std::vector<Atom> atoms, NodeId node = 0);

    std::size_t dimension() const { return atoms.empty() ? 0 : atoms.front().value.size(); }
    std::vector<Vector> points() const;
};

/// Atoms in order of first appearance among the children (id order); equal
/// increments are merged and their probabilities summed.
ConditionalSupport conditional_support(const ScenarioTree& tree, NodeId node);

Vector conditional_mean(const ConditionalSupport& support);

/// γ_n per non-leaf node, chosen at that node for the following step.
using Strategy = std::map<NodeId, Vector>;

/// Terminal gain G_N per leaf.
std::map<NodeId, Rational> gains(const ScenarioTree& tree, const Strategy& strategy);

/// Leaf density z = dQ/dP, keyed by leaf id.
struct LeafDensity {
    std::map<NodeId, Rational> values;
};

/// Throws InputError unless every leaf has z > 0 and Σ p_l z_l = 1.
void check_density(const ScenarioTree& tree, const LeafDensity& density);

/// Z at every node: conditional expectation of z given the node.
std::map<NodeId, Rational> density_process(const ScenarioTree& tree, const LeafDensity& density);

/// Bayes reweighting q'_c = q_c · Z_child / Z_parent.
ScenarioTree reweight(const ScenarioTree& tree, const LeafDensity& density);

}  // namespace ftap
