#ifndef PENCIL_LATTICE_LINEAR_ALGEBRA_HPP
#define PENCIL_LATTICE_LINEAR_ALGEBRA_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/ring/rational.hpp>

namespace pencil
{

// Dense rational matrix, row-major as a vector of rows.
using rmatrix = std::vector<std::vector<rational>>;
using rvector = std::vector<rational>;

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(rmatrix &m)
{
    std::vector<std::size_t> pivots;
    if (m.empty()) {
        return pivots;
    }
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[r], m[p]);
        const rational inv = rational(1) / m[r][c];
        for (auto &x : m[r]) {
            x *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) {
                continue;
            }
            const rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                m[i][j] -= f * m[r][j];
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(rmatrix m)
{
    return rref(m).size();
}

// Basis of {x : m x = 0}; cols is needed when m has no rows.
inline std::vector<rvector> kernel(rmatrix m, std::size_t cols)
{
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    std::vector<rvector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) {
            continue;
        }
        rvector v(cols);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            v[pivots[r]] = -m[r][f];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline rational determinant(rmatrix m)
{
    const std::size_t n = m.size();
    rational det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) {
            ++p;
        }
        if (p == n) {
            return rational(0);
        }
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) {
                continue;
            }
            const rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) {
                m[i][j] -= f * m[c][j];
            }
        }
    }
    return det;
}

// Some solution of a x = b, or nothing if the system is inconsistent.
inline std::optional<rvector> solve(const rmatrix &a, const rvector &b)
{
    const std::size_t rows = a.size();
    if (rows == 0) {
        return rvector{};
    }
    const std::size_t cols = a[0].size();
    rmatrix aug(a);
    for (std::size_t i = 0; i < rows; ++i) {
        aug[i].push_back(b.at(i));
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols) {
        return std::nullopt;
    }
    rvector x(cols);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        x[pivots[r]] = aug[r][cols];
    }
    return x;
}

} // namespace pencil

#endif
