#pragma once

/**
 * @file linalg.hpp
 * @brief Exact Gaussian elimination over a field: rank, reduced row
 *        echelon form, null spaces and determinants.
 *
 * The field type F needs F(0), F(1), is_zero() and the four operations;
 * Rational and ValuedScalar both qualify.
 */

#include "tropcover/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tropcover {

template <class F>
using Matrix = std::vector<std::vector<F>>;

/// Reduced row echelon form in place; returns the pivot columns and drops
/// zero rows.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        F inv = F(1) / m[r][c];
        for (auto& v : m[r])
            if (!v.is_zero()) v = v * inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            F f = m[i][c];
            for (std::size_t j = 0; j < m[i].size(); ++j)
                if (!m[r][j].is_zero()) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

template <class F>
std::size_t rank(Matrix<F> m) {
    if (m.empty()) return 0;
    return rref(m, m.front().size()).size();
}

/// Basis of {x : M x = 0}; n is passed explicitly so that an empty M yields
/// the standard basis.
template <class F>
Matrix<F> null_space(Matrix<F> m, std::size_t n) {
    auto piv = rref(m, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv) is_pivot[p] = true;
    Matrix<F> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<F> v(n, F(0));
        v[f] = F(1);
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Linearly independent subset of the rows (first-come order).
template <class F>
Matrix<F> row_basis(const Matrix<F>& m) {
    Matrix<F> out;
    std::size_t r = 0;
    for (const auto& row : m) {
        out.push_back(row);
        std::size_t nr = rank(out);
        if (nr == r)
            out.pop_back();
        else
            r = nr;
    }
    return out;
}

template <class F>
F determinant(Matrix<F> m) {
    const std::size_t n = m.size();
    F det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return F(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        F inv = F(1) / m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            F f = m[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return det;
}

template <class F>
Matrix<F> mat_mul(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.empty()) return {};
    const std::size_t inner = b.size();
    const std::size_t cols = inner ? b.front().size() : 0;
    Matrix<F> out(a.size(), std::vector<F>(cols, F(0)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != inner) throw std::invalid_argument("mat_mul: shape mismatch");
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j)
                if (!b[k][j].is_zero()) out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    }
    return out;
}

template <class F>
Matrix<F> transpose(const Matrix<F>& a, std::size_t cols) {
    Matrix<F> t(cols, std::vector<F>(a.size(), F(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

inline QVector mat_vec(const QMatrix& a, const QVector& x) {
    QVector out;
    out.reserve(a.size());
    for (const auto& row : a) out.push_back(dot(row, x));
    return out;
}

}  // namespace tropcover
