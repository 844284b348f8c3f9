#include "ftap/geometry.hpp"

#include "ftap/errors.hpp"
#include "ftap/lp.hpp"

#include <algorithm>

namespace ftap {

namespace {

void require_atoms(const std::vector<Vector>& atoms) {
    if (atoms.empty()) throw InputError("atom list is empty");
    const std::size_t d = atoms.front().size();
    for (const auto& x : atoms) {
        if (x.size() != d) throw InputError("atoms do not share a dimension");
    }
}

}  // namespace

DirectionLp solve_direction_lp(const std::vector<Vector>& atoms) {
    require_atoms(atoms);
    const std::size_t d = atoms.front().size();
    const auto basis = span_basis(atoms);
    const std::size_t r = basis.size();

    // Inner products of basis vectors with the atoms; h = Σ μ_k b_k.
    Vector objective(r);
    std::vector<Vector> atom_rows;
    for (const auto& x : atoms) {
        Vector row(r);
        for (std::size_t k = 0; k < r; ++k) {
            row[k] = dot(basis[k], x);
            objective[k] += row[k];
        }
        atom_rows.push_back(std::move(row));
    }

    auto lp = LinearProgram::maximize(objective);
    for (const auto& row : atom_rows) lp.add_less_equal(scaled(row, -1), 0);
    for (std::size_t j = 0; j < d; ++j) {
        Vector comp(r);
        for (std::size_t k = 0; k < r; ++k) comp[k] = basis[k][j];
        if (is_zero(comp)) continue;
        lp.add_less_equal(comp, 1);
        lp.add_less_equal(scaled(comp, -1), 1);
    }

    const auto outcome = solve_lp(lp);
    const auto* opt = std::get_if<Optimal>(&outcome);
    if (!opt) throw std::logic_error("direction LP is feasible and bounded but the solver disagreed");
    return {opt->value, combine(basis, opt->point, d)};
}

std::optional<Vector> arbitrage_direction(const std::vector<Vector>& atoms) {
    auto lp = solve_direction_lp(atoms);
    if (sgn(lp.optimum) <= 0) return std::nullopt;
    const Rational norm = max_norm(lp.direction);
    return scaled(lp.direction, 1 / norm);
}

RiCertificate ri_conv_contains_origin(const std::vector<Vector>& atoms) {
    require_atoms(atoms);
    const std::size_t k = atoms.size();
    const std::size_t d = atoms.front().size();

    // Variables λ_1..λ_k, t; maximize t s.t. t ≤ λ_i, Σλ = 1, Σ λ_i x_i = 0.
    Vector objective(k + 1);
    objective[k] = 1;
    auto lp = LinearProgram::maximize(objective);
    for (std::size_t i = 0; i < k; ++i) {
        Vector row(k + 1);
        row[i] = -1;
        row[k] = 1;
        lp.add_less_equal(row, 0);
    }
    Vector total(k + 1);
    for (std::size_t i = 0; i < k; ++i) total[i] = 1;
    lp.add_equal(total, 1);
    for (std::size_t j = 0; j < d; ++j) {
        Vector row(k + 1);
        for (std::size_t i = 0; i < k; ++i) row[i] = atoms[i][j];
        if (!is_zero(row)) lp.add_equal(row, 0);
    }

    const auto outcome = solve_lp(lp);
    if (const auto* opt = std::get_if<Optimal>(&outcome); opt && sgn(opt->value) > 0) {
        return InRi{Vector(opt->point.begin(), opt->point.begin() + static_cast<std::ptrdiff_t>(k))};
    }
    auto h = arbitrage_direction(atoms);
    if (!h) throw std::logic_error("relative-interior LP and direction LP disagree");
    return NotInRi{std::move(*h)};
}

std::string check_certificate(const std::vector<Vector>& atoms, const RiCertificate& cert) {
    require_atoms(atoms);
    const std::size_t d = atoms.front().size();
    if (const auto* in = std::get_if<InRi>(&cert)) {
        if (in->weights.size() != atoms.size()) return "weight count differs from atom count";
        Rational total = 0;
        Vector combo(d);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (sgn(in->weights[i]) <= 0) return "weight is not strictly positive";
            total += in->weights[i];
            for (std::size_t j = 0; j < d; ++j) combo[j] += in->weights[i] * atoms[i][j];
        }
        if (total != 1) return "weights do not sum to 1";
        if (!is_zero(combo)) return "weighted atoms do not average to the origin";
        return {};
    }
    const auto& h = std::get<NotInRi>(cert).direction;
    if (h.size() != d) return "direction has wrong dimension";
    if (max_norm(h) != 1) return "direction is not max-norm normalized";
    if (!in_span(h, span_basis(atoms))) return "direction leaves the span of the atoms";
    bool strict = false;
    for (const auto& x : atoms) {
        const int s = sgn(dot(h, x));
        if (s < 0) return "direction has a negative inner product with an atom";
        strict = strict || s > 0;
    }
    if (!strict) return "direction is orthogonal to every atom";
    return {};
}

void throw_geometry_error(const ConditionalSupport& support, const std::string& context) {
    auto h = arbitrage_direction(support.points());
    if (!h) throw std::logic_error("geometry error raised at node " + std::to_string(support.node) + " whose origin is in the relative interior");
    throw GeometryError(support.node, NotInRi{std::move(*h)},
                        context + ": origin is not in the relative interior of the conditional support at node " +
                            std::to_string(support.node));
}

Strategy one_step_strategy(const ScenarioTree& tree, NodeId node, const Vector& direction) {
    Strategy strategy;
    for (NodeId id : tree.internal_nodes()) {
        strategy.emplace(id, id == node ? direction : Vector(tree.assets()));
    }
    return strategy;
}

}  // namespace ftap
