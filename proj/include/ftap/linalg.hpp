#pragma once

#include "ftap/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ftap {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    /// Appends a row; the first row fixes the column count of an empty matrix.
    void append_row(std::span<const Rational> values);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Vector scaled(std::span<const Rational> v, const Rational& factor);
Vector add(std::span<const Rational> a, std::span<const Rational> b);
Vector subtract(std::span<const Rational> a, std::span<const Rational> b);
Rational max_norm(std::span<const Rational> v);
bool is_zero(std::span<const Rational> v);

/// Basis of the linear span of `points`: the nonzero rows of the reduced row
/// echelon form (leftmost pivots), so the result is canonical for the span.
std::vector<Vector> span_basis(const std::vector<Vector>& points);

std::size_t rank(const std::vector<Vector>& vectors);

/// True iff v is an exact rational combination of `basis`.
bool in_span(const Vector& v, const std::vector<Vector>& basis);

/// h = Σ coords_k · basis_k in ambient dimension `dim`.
Vector combine(const std::vector<Vector>& basis, std::span<const Rational> coords, std::size_t dim);

}  // namespace ftap
