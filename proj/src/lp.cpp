#include "ftap/lp.hpp"

#include "ftap/errors.hpp"

#include <optional>

namespace ftap {

LinearProgram LinearProgram::maximize(Vector objective) {
    LinearProgram lp;
    lp.lower_bounds.assign(objective.size(), std::nullopt);
    lp.objective = std::move(objective);
    lp.constraints = Matrix(0, lp.objective.size());
    return lp;
}

void LinearProgram::add_row(const Vector& coefficients, RowKind kind, Rational bound) {
    if (coefficients.size() != num_vars()) throw InputError("constraint row has wrong number of coefficients");
    constraints.append_row(coefficients);
    kinds.push_back(kind);
    rhs.push_back(std::move(bound));
}

void LinearProgram::check_dimensions() const {
    const std::size_t n = objective.size();
    if (lower_bounds.size() != n) throw InputError("lower bound count differs from variable count");
    if (constraints.rows() != rhs.size() || kinds.size() != rhs.size())
        throw InputError("row metadata differs from constraint row count");
    if (constraints.rows() > 0 && constraints.cols() != n)
        throw InputError("constraint column count differs from variable count");
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dense simplex tableau B⁻¹[M | r] with a reduced-cost row whose last entry
// holds the negated objective value.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), cells_(rows * (cols + 1)), reduced_(cols + 1), basis_(rows, kNone) {}

    Rational& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
    Rational& rhs(std::size_t r) { return at(r, cols_); }
    const Rational& rhs(std::size_t r) const { return at(r, cols_); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Rational& reduced(std::size_t c) const { return reduced_[c]; }
    Rational value() const { return -reduced_[cols_]; }

    void set_costs(const Vector& costs) {
        for (std::size_t c = 0; c <= cols_; ++c) reduced_[c] = c < cols_ ? costs[c] : Rational(0);
        for (std::size_t r = 0; r < rows_; ++r) {
            const Rational& cb = costs[basis_[r]];
            if (sgn(cb) == 0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) {
                if (sgn(at(r, c)) != 0) reduced_[c] -= cb * at(r, c);
            }
        }
    }

    void pivot(std::size_t p, std::size_t q) {
        const Rational inv = 1 / at(p, q);
        nonzero_.clear();
        for (std::size_t c = 0; c <= cols_; ++c) {
            if (sgn(at(p, c)) != 0) {
                at(p, c) *= inv;
                nonzero_.push_back(c);
            }
        }
        Rational factor;
        Rational product;
        auto eliminate = [&](Rational* row) {
            if (sgn(row[q]) == 0) return;
            factor = row[q];
            for (std::size_t c : nonzero_) {
                product = factor * at(p, c);
                row[c] -= product;
            }
        };
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != p) eliminate(&at(r, 0));
        }
        eliminate(reduced_.data());
        basis_[p] = q;
    }

    // Bland's rule: lowest-index improving column, lowest-index leaving basic
    // variable among ratio ties. Returns the column that proved unboundedness.
    std::optional<std::size_t> optimize(const std::vector<bool>& may_enter) {
        for (;;) {
            std::size_t q = kNone;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (may_enter[c] && sgn(reduced_[c]) > 0) {
                    q = c;
                    break;
                }
            }
            if (q == kNone) return std::nullopt;

            std::size_t p = kNone;
            Rational best;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (sgn(at(r, q)) <= 0) continue;
                Rational ratio = rhs(r) / at(r, q);
                if (p == kNone || ratio < best || (ratio == best && basis_[r] < basis_[p])) {
                    p = r;
                    best = std::move(ratio);
                }
            }
            if (p == kNone) return q;
            pivot(p, q);
        }
    }

    Vector solution() const {
        Vector w(cols_);
        for (std::size_t r = 0; r < rows_; ++r) w[basis_[r]] = rhs(r);
        return w;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> cells_;
    Vector reduced_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> nonzero_;
};

// Standard-form embedding: x_j = u_j − v_j (free) or lower_j + u_j (bounded),
// slack per LessEqual row, artificial where the slack cannot start basic.
struct StandardForm {
    std::vector<std::size_t> pos_col;
    std::vector<std::size_t> neg_col;
    std::vector<std::size_t> slack_col;
    std::vector<std::size_t> art_col;
    std::vector<int> row_sign;
    std::size_t cols = 0;

    Vector to_original(const LinearProgram& lp, const Vector& w, bool with_shift) const {
        Vector x(lp.num_vars());
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = w[pos_col[j]];
            if (neg_col[j] != kNone) x[j] -= w[neg_col[j]];
            if (with_shift && lp.lower_bounds[j]) x[j] += *lp.lower_bounds[j];
        }
        return x;
    }
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
    lp.check_dimensions();
    const std::size_t n = lp.num_vars();
    const std::size_t m = lp.num_rows();

    Vector shifted_rhs = lp.rhs;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (lp.lower_bounds[j] && sgn(lp.constraints(i, j)) != 0)
                shifted_rhs[i] -= lp.constraints(i, j) * *lp.lower_bounds[j];
        }
    }

    StandardForm sf;
    sf.pos_col.resize(n);
    sf.neg_col.assign(n, kNone);
    for (std::size_t j = 0; j < n; ++j) {
        sf.pos_col[j] = sf.cols++;
        if (!lp.lower_bounds[j]) sf.neg_col[j] = sf.cols++;
    }
    sf.slack_col.assign(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.kinds[i] == RowKind::LessEqual) sf.slack_col[i] = sf.cols++;
    }
    sf.row_sign.resize(m);
    sf.art_col.assign(m, kNone);
    for (std::size_t i = 0; i < m; ++i) {
        sf.row_sign[i] = sgn(shifted_rhs[i]) < 0 ? -1 : 1;
        if (lp.kinds[i] == RowKind::Equal || sf.row_sign[i] < 0) sf.art_col[i] = sf.cols++;
    }
    const std::size_t first_artificial = [&] {
        for (std::size_t i = 0; i < m; ++i) {
            if (sf.art_col[i] != kNone) return sf.art_col[i];
        }
        return sf.cols;
    }();

    Tableau t(m, sf.cols);
    for (std::size_t i = 0; i < m; ++i) {
        const int s = sf.row_sign[i];
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& a = lp.constraints(i, j);
            if (sgn(a) == 0) continue;
            t.at(i, sf.pos_col[j]) = s > 0 ? a : Rational(-a);
            if (sf.neg_col[j] != kNone) t.at(i, sf.neg_col[j]) = s > 0 ? Rational(-a) : a;
        }
        if (sf.slack_col[i] != kNone) t.at(i, sf.slack_col[i]) = s;
        t.rhs(i) = s > 0 ? shifted_rhs[i] : Rational(-shifted_rhs[i]);
        if (sf.art_col[i] != kNone) {
            t.at(i, sf.art_col[i]) = 1;
            t.basis()[i] = sf.art_col[i];
        } else {
            t.basis()[i] = sf.slack_col[i];
        }
    }

    if (first_artificial < sf.cols) {
        Vector phase1(sf.cols);
        for (std::size_t c = first_artificial; c < sf.cols; ++c) phase1[c] = -1;
        t.set_costs(phase1);
        t.optimize(std::vector<bool>(sf.cols, true));

        if (sgn(t.value()) < 0) {
            // π_i from the reduced cost of the column that started row i's basis.
            Vector y(m);
            for (std::size_t i = 0; i < m; ++i) {
                Rational pi = sf.art_col[i] != kNone ? Rational(-1 - t.reduced(sf.art_col[i]))
                                                     : Rational(-t.reduced(sf.slack_col[i]));
                y[i] = sf.row_sign[i] > 0 ? pi : Rational(-pi);
            }
            return Infeasible{std::move(y)};
        }

        for (std::size_t r = 0; r < m; ++r) {
            if (t.basis()[r] < first_artificial) continue;
            for (std::size_t c = 0; c < first_artificial; ++c) {
                if (sgn(t.at(r, c)) != 0) {
                    t.pivot(r, c);
                    break;
                }
            }
        }
    }

    Vector phase2(sf.cols);
    for (std::size_t j = 0; j < n; ++j) {
        phase2[sf.pos_col[j]] = lp.objective[j];
        if (sf.neg_col[j] != kNone) phase2[sf.neg_col[j]] = -lp.objective[j];
    }
    t.set_costs(phase2);
    std::vector<bool> may_enter(sf.cols, false);
    for (std::size_t c = 0; c < first_artificial; ++c) may_enter[c] = true;

    const auto unbounded_col = t.optimize(may_enter);
    Vector point = sf.to_original(lp, t.solution(), true);
    if (unbounded_col) {
        Vector w(sf.cols);
        w[*unbounded_col] = 1;
        for (std::size_t r = 0; r < m; ++r) w[t.basis()[r]] = -t.at(r, *unbounded_col);
        return Unbounded{std::move(point), sf.to_original(lp, w, false)};
    }
    Rational value = dot(lp.objective, point);
    return Optimal{std::move(point), std::move(value)};
}

bool is_feasible_point(const LinearProgram& lp, const Vector& x) {
    if (x.size() != lp.num_vars()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (lp.lower_bounds[j] && x[j] < *lp.lower_bounds[j]) return false;
    }
    for (std::size_t i = 0; i < lp.num_rows(); ++i) {
        const Rational lhs = dot(lp.constraints.row(i), x);
        if (lp.kinds[i] == RowKind::Equal ? lhs != lp.rhs[i] : lhs > lp.rhs[i]) return false;
    }
    return true;
}

std::string check_outcome(const LinearProgram& lp, const LpOutcome& outcome) {
    const std::size_t n = lp.num_vars();
    const std::size_t m = lp.num_rows();
    if (const auto* opt = std::get_if<Optimal>(&outcome)) {
        if (!is_feasible_point(lp, opt->point)) return "optimal point violates a constraint";
        if (dot(lp.objective, opt->point) != opt->value) return "optimal value differs from objective at point";
        return {};
    }
    if (const auto* inf = std::get_if<Infeasible>(&outcome)) {
        const Vector& y = inf->certificate;
        if (y.size() != m) return "certificate length differs from row count";
        for (std::size_t i = 0; i < m; ++i) {
            if (lp.kinds[i] == RowKind::LessEqual && sgn(y[i]) < 0) return "negative multiplier on inequality row";
        }
        Rational bound = dot(y, lp.rhs);
        for (std::size_t j = 0; j < n; ++j) {
            Rational combo = 0;
            for (std::size_t i = 0; i < m; ++i) combo += y[i] * lp.constraints(i, j);
            if (lp.lower_bounds[j]) {
                if (sgn(combo) < 0) return "certificate column sum negative on bounded variable";
                bound -= combo * *lp.lower_bounds[j];
            } else if (sgn(combo) != 0) {
                return "certificate column sum nonzero on free variable";
            }
        }
        if (sgn(bound) >= 0) return "certificate does not produce a contradiction";
        return {};
    }
    const auto& unb = std::get<Unbounded>(outcome);
    if (!is_feasible_point(lp, unb.point)) return "unbounded outcome carries an infeasible point";
    if (unb.ray.size() != n) return "ray length differs from variable count";
    for (std::size_t j = 0; j < n; ++j) {
        if (lp.lower_bounds[j] && sgn(unb.ray[j]) < 0) return "ray leaves a variable bound";
    }
    for (std::size_t i = 0; i < m; ++i) {
        const Rational lhs = dot(lp.constraints.row(i), unb.ray);
        if (lp.kinds[i] == RowKind::Equal ? sgn(lhs) != 0 : sgn(lhs) > 0) return "ray is not a recession direction";
    }
    if (sgn(dot(lp.objective, unb.ray)) <= 0) return "ray does not improve the objective";
    return {};
}

}  // namespace ftap
