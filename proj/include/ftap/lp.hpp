#pragma once

#include "ftap/linalg.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ftap {

enum class RowKind { LessEqual, Equal };

/// maximize objective·x  s.t.  A_i·x ≤ b_i (or = b_i for Equal rows),
/// x_j ≥ lower_j where a lower bound is set, otherwise x_j free.
struct LinearProgram {
    Vector objective;
    Matrix constraints;
    Vector rhs;
    std::vector<RowKind> kinds;
    std::vector<std::optional<Rational>> lower_bounds;

    /// All variables free, no rows.
    static LinearProgram maximize(Vector objective);

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return rhs.size(); }

    void add_row(const Vector& coefficients, RowKind kind, Rational bound);
    void add_less_equal(const Vector& coefficients, Rational bound) {
        add_row(coefficients, RowKind::LessEqual, std::move(bound));
    }
    void add_equal(const Vector& coefficients, Rational bound) {
        add_row(coefficients, RowKind::Equal, std::move(bound));
    }
    void set_lower_bound(std::size_t var, Rational bound) { lower_bounds.at(var) = std::move(bound); }

    /// Throws InputError when row/column metadata disagree.
    void check_dimensions() const;
};

struct Optimal {
    Vector point;
    Rational value;
};

/// Farkas vector y over the rows: y_i ≥ 0 on LessEqual rows, (yᵀA)_j = 0 for
/// free variables, (yᵀA)_j ≥ 0 for lower-bounded ones, and
/// yᵀb − Σ_j (yᵀA)_j·lower_j < 0. With all variables free this is yᵀA = 0, yᵀb < 0.
struct Infeasible {
    Vector certificate;
};

/// `point` is feasible; `ray` is a recession direction with objective·ray > 0.
struct Unbounded {
    Vector point;
    Vector ray;
};

using LpOutcome = std::variant<Optimal, Infeasible, Unbounded>;

/// Exact two-phase primal simplex with Bland's rule. Deterministic.
LpOutcome solve_lp(const LinearProgram& lp);

/// Re-checks an outcome's certificate with exact arithmetic. Returns an empty
/// string on success, otherwise the first violated condition.
std::string check_outcome(const LinearProgram& lp, const LpOutcome& outcome);

bool is_feasible_point(const LinearProgram& lp, const Vector& x);

}  // namespace ftap
