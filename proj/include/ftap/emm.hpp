#pragma once

#include "ftap/geometry.hpp"
#include "ftap/market.hpp"

#include <map>
#include <string>
#include <vector>

namespace ftap {

/// ψ(h) = Σ_i q_i · max(−(h, x_i), 0), the expected loss of holding h for one step.
Rational psi(const ConditionalSupport& support, const Vector& h);

/// s(a | T) with T = {h ∈ span(atoms) : ψ(h) ≤ 1}, solved as an LP.
/// Requires a ∈ span(atoms) (InputError otherwise). T is compact exactly when
/// the origin is in the relative interior; an unbounded LP raises GeometryError.
Rational support_function_T(const ConditionalSupport& support, const Vector& a);

/// f = 1 / (1 + s(E ΔS | T)), in (0, 1].
Rational one_step_scale(const ConditionalSupport& support);

/// Density of a one-step martingale measure at one node. Vectors are indexed
/// like support.children.
struct OneStepDensity {
    NodeId node = 0;
    Rational scale;
    std::vector<NodeId> children;
    Vector g;
    Vector g_hat;
};

/// Min-max density: minimize max_c g_c s.t. g_c ≥ f and Σ_c q_c g_c x_c = 0;
/// g_hat = g / Σ_c q_c g_c.
OneStepDensity one_step_density(const ConditionalSupport& support);

/// Exact check of the three OneStepDensity invariants; empty string when valid.
std::string check_one_step_density(const ConditionalSupport& support, const OneStepDensity& density);

struct EmmResult {
    LeafDensity density;
    Rational bound;  ///< max_l z_l
    std::vector<OneStepDensity> per_node;  ///< node-id order
};

/// Pastes the normalized one-step densities along every root-to-leaf path.
/// Throws GeometryError at the first node (id order) violating the
/// relative-interior condition.
EmmResult build_emm(const ScenarioTree& tree);

struct MartingaleCheck {
    bool holds = false;
    /// Σ_c q'_c (S_c − S_node) under the reweighted transitions, per non-leaf node.
    std::map<NodeId, Vector> residuals;
};

MartingaleCheck verify_martingale(const ScenarioTree& tree, const LeafDensity& density);

}  // namespace ftap
