#include "ftap/emm.hpp"

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"

namespace ftap {

Rational psi(const ConditionalSupport& support, const Vector& h) {
    if (h.size() != support.dimension()) throw InputError("psi: direction has wrong dimension");
    Rational total = 0;
    for (const auto& atom : support.atoms) {
        const Rational gain = dot(h, atom.value);
        if (sgn(gain) < 0) total -= atom.prob * gain;
    }
    return total;
}

Rational support_function_T(const ConditionalSupport& support, const Vector& a) {
    const auto points = support.points();
    if (points.empty()) throw InputError("support has no atoms");
    const auto basis = span_basis(points);
    if (a.size() != support.dimension()) throw InputError("support function: argument has wrong dimension");
    if (!in_span(a, basis)) throw InputError("support function: argument is not in the span of the atoms");

    // Variables: μ (span coordinates, free) then t_i ≥ 0 bounding the negative parts.
    const std::size_t r = basis.size();
    const std::size_t k = points.size();
    Vector objective(r + k);
    for (std::size_t j = 0; j < r; ++j) objective[j] = dot(a, basis[j]);
    auto lp = LinearProgram::maximize(objective);
    for (std::size_t i = 0; i < k; ++i) lp.set_lower_bound(r + i, 0);

    Vector budget(r + k);
    for (std::size_t i = 0; i < k; ++i) {
        Vector row(r + k);
        for (std::size_t j = 0; j < r; ++j) row[j] = -dot(basis[j], points[i]);
        row[r + i] = -1;
        lp.add_less_equal(row, 0);
        budget[r + i] = support.atoms[i].prob;
    }
    lp.add_less_equal(budget, 1);

    const auto outcome = solve_lp(lp);
    if (const auto* opt = std::get_if<Optimal>(&outcome)) return opt->value;
    throw_geometry_error(support, "support function is unbounded");
}

Rational one_step_scale(const ConditionalSupport& support) {
    return 1 / (1 + support_function_T(support, conditional_mean(support)));
}

OneStepDensity one_step_density(const ConditionalSupport& support) {
    const Rational f = one_step_scale(support);
    const std::size_t k = support.atoms.size();
    const std::size_t d = support.dimension();

    // Variables g_1..g_k ≥ f per atom, u free; maximize −u.
    Vector objective(k + 1);
    objective[k] = -1;
    auto lp = LinearProgram::maximize(objective);
    for (std::size_t i = 0; i < k; ++i) {
        lp.set_lower_bound(i, f);
        Vector row(k + 1);
        row[i] = 1;
        row[k] = -1;
        lp.add_less_equal(row, 0);
    }
    for (std::size_t j = 0; j < d; ++j) {
        Vector row(k + 1);
        for (std::size_t i = 0; i < k; ++i) row[i] = support.atoms[i].prob * support.atoms[i].value[j];
        if (!is_zero(row)) lp.add_equal(row, 0);
    }

    const auto outcome = solve_lp(lp);
    const auto* opt = std::get_if<Optimal>(&outcome);
    if (!opt) throw_geometry_error(support, "one-step density LP has no solution");

    OneStepDensity density;
    density.node = support.node;
    density.scale = f;
    density.children = support.children;
    Rational mass = 0;
    for (std::size_t c = 0; c < support.children.size(); ++c) {
        density.g.push_back(opt->point[support.child_atom[c]]);
        mass += support.child_probs[c] * density.g.back();
    }
    for (const auto& g : density.g) density.g_hat.push_back(g / mass);
    return density;
}

std::string check_one_step_density(const ConditionalSupport& support, const OneStepDensity& density) {
    const std::size_t n = support.children.size();
    if (density.g.size() != n || density.g_hat.size() != n) return "density length differs from child count";
    if (sgn(density.scale) <= 0) return "scale is not strictly positive";
    Vector drift(support.dimension());
    Rational mass = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (density.g[c] < density.scale) return "raw density falls below the scale";
        const auto& x = support.atoms[support.child_atom[c]].value;
        for (std::size_t j = 0; j < drift.size(); ++j) drift[j] += support.child_probs[c] * density.g[c] * x[j];
        mass += support.child_probs[c] * density.g_hat[c];
    }
    if (!is_zero(drift)) return "density does not remove the conditional drift";
    if (mass != 1) return "normalized density does not integrate to 1";
    return {};
}

EmmResult build_emm(const ScenarioTree& tree) {
    tree.require_valid();
    EmmResult result;
    // ĝ attached to each child edge.
    std::map<NodeId, Rational> edge_factor;
    for (NodeId id : tree.internal_nodes()) {
        const auto support = conditional_support(tree, id);
        if (!contains_origin(ri_conv_contains_origin(support.points()))) {
            throw_geometry_error(support, "no equivalent martingale measure");
        }
        auto density = one_step_density(support);
        for (std::size_t c = 0; c < density.children.size(); ++c) edge_factor.emplace(density.children[c], density.g_hat[c]);
        result.per_node.push_back(std::move(density));
    }

    result.bound = 0;
    for (NodeId leaf : tree.leaves()) {
        Rational z = 1;
        for (NodeId id : tree.path(leaf)) {
            if (tree.node(id).parent) z *= edge_factor.at(id);
        }
        if (z > result.bound) result.bound = z;
        result.density.values.emplace(leaf, std::move(z));
    }
    return result;
}

MartingaleCheck verify_martingale(const ScenarioTree& tree, const LeafDensity& density) {
    const ScenarioTree q = reweight(tree, density);
    MartingaleCheck check;
    check.holds = true;
    for (NodeId id : q.internal_nodes()) {
        Vector residual(q.assets());
        for (NodeId child : q.children(id)) {
            const Vector x = q.increment(child);
            const Rational& p = q.node(child).prob;
            for (std::size_t j = 0; j < residual.size(); ++j) residual[j] += p * x[j];
        }
        if (!is_zero(residual)) check.holds = false;
        check.residuals.emplace(id, std::move(residual));
    }
    return check;
}

}  // namespace ftap
