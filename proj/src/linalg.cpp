#include "ftap/linalg.hpp"

#include "ftap/errors.hpp"

#include <algorithm>

namespace ftap {

void Matrix::append_row(std::span<const Rational> values) {
    if (rows_ == 0 && data_.empty()) cols_ = values.size();
    if (values.size() != cols_) throw InputError("row length does not match matrix column count");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw InputError("dot: dimension mismatch");
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) sum += a[i] * b[i];
    }
    return sum;
}

Vector scaled(std::span<const Rational> v, const Rational& factor) {
    Vector out(v.begin(), v.end());
    for (auto& x : out) x *= factor;
    return out;
}

Vector add(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw InputError("add: dimension mismatch");
    Vector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Vector subtract(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw InputError("subtract: dimension mismatch");
    Vector out(a.begin(), a.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

Rational max_norm(std::span<const Rational> v) {
    Rational m = 0;
    for (const auto& x : v) {
        Rational a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

namespace {

// In-place reduced row echelon form; returns the number of pivot rows, which
// are moved to the front.
std::size_t reduce(std::vector<Vector>& rows, std::size_t dim) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < dim && pivot_row < rows.size(); ++col) {
        std::size_t found = pivot_row;
        while (found < rows.size() && sgn(rows[found][col]) == 0) ++found;
        if (found == rows.size()) continue;
        std::swap(rows[pivot_row], rows[found]);

        const Rational inv = 1 / rows[pivot_row][col];
        for (auto& x : rows[pivot_row]) x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || sgn(rows[r][col]) == 0) continue;
            const Rational factor = rows[r][col];
            for (std::size_t c = col; c < dim; ++c) rows[r][c] -= factor * rows[pivot_row][c];
        }
        ++pivot_row;
    }
    return pivot_row;
}

std::size_t common_dimension(const std::vector<Vector>& vectors) {
    if (vectors.empty()) return 0;
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != dim) throw InputError("vectors do not share a dimension");
    }
    return dim;
}

}  // namespace

std::vector<Vector> span_basis(const std::vector<Vector>& points) {
    const std::size_t dim = common_dimension(points);
    std::vector<Vector> rows = points;
    rows.resize(reduce(rows, dim));
    return rows;
}

std::size_t rank(const std::vector<Vector>& vectors) {
    std::vector<Vector> rows = vectors;
    return reduce(rows, common_dimension(vectors));
}

bool in_span(const Vector& v, const std::vector<Vector>& basis) {
    if (is_zero(v)) return true;
    if (basis.empty()) return false;
    std::vector<Vector> extended = basis;
    extended.push_back(v);
    return rank(extended) == rank(basis);
}

Vector combine(const std::vector<Vector>& basis, std::span<const Rational> coords, std::size_t dim) {
    if (coords.size() != basis.size()) throw InputError("combine: coordinate count differs from basis size");
    Vector h(dim);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        if (sgn(coords[k]) == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) h[j] += coords[k] * basis[k][j];
    }
    return h;
}

}  // namespace ftap
