#ifndef PENCIL_LATTICE_MONODROMY_HPP
#define PENCIL_LATTICE_MONODROMY_HPP

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/linear_algebra.hpp>
#include <pencil/lattice/surface.hpp>

namespace pencil
{

// Integer 10x10 matrix acting on coefficient columns.
using h2_matrix = std::array<std::array<long, h2_rank>, h2_rank>;

inline h2_int apply_matrix(const h2_matrix &m, const h2_int &x)
{
    h2_int r;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        long s = 0;
        for (std::size_t j = 0; j < h2_rank; ++j) {
            s += m[i][j] * x.c[j];
        }
        r.c[i] = s;
    }
    return r;
}

inline h2_matrix identity_matrix()
{
    h2_matrix m{};
    for (std::size_t i = 0; i < h2_rank; ++i) {
        m[i][i] = 1;
    }
    return m;
}

// Swaps A_i and A_j.
inline h2_matrix transposition_matrix(std::size_t i, std::size_t j)
{
    h2_matrix m = identity_matrix();
    std::swap(m[1 + i], m[1 + j]);
    return m;
}

// X -> X + (X.S) S.
inline h2_matrix reflection_matrix(const h2_int &s)
{
    h2_matrix m{};
    for (std::size_t j = 0; j < h2_rank; ++j) {
        h2_int e;
        e.c[j] = 1;
        const h2_int img = e + [&] {
            h2_int t = s;
            t *= intersect(e, s);
            return t;
        }();
        for (std::size_t i = 0; i < h2_rank; ++i) {
            m[i][j] = img.c[i];
        }
    }
    return m;
}

// The reflection class L - A6 - A7 - A8.
inline h2_int reflection_class()
{
    return h2::L() - h2::A(6) - h2::A(7) - h2::A(8);
}

// C(x) = sum_i (x.D_i) D_i over the components D_i; C^2 = -C.
template <typename T>
h2_class<T> operator_c(const h2_class<T> &x, const surface_model &s)
{
    h2_class<T> r(x.c[0] * rational(0));
    for (const auto &d : s.components) {
        const T w = pair_with(x, d);
        for (std::size_t i = 0; i < h2_rank; ++i) {
            if (d.c[i] != 0) {
                r.c[i] += w * rational(d.c[i]);
            }
        }
    }
    return r;
}

// Generators of the monodromy group acting on H_2 that fix [delta E]: the adjacent
// transpositions inside each block of exceptional classes on which [delta E] has
// equal coefficient (these generate all such permutations), plus the reflection in
// L - A6 - A7 - A8 when it is orthogonal to [delta E].
inline std::vector<h2_matrix> monodromy_generators(const surface_model &s)
{
    const h2_int delta = s.delta();
    std::map<long, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < 9; ++i) {
        blocks[delta.a(i)].push_back(i);
    }
    std::vector<h2_matrix> gens;
    for (const auto &[coeff, idx] : blocks) {
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            gens.push_back(transposition_matrix(idx[k], idx[k + 1]));
        }
    }
    if (intersect(reflection_class(), delta) == 0) {
        gens.push_back(reflection_matrix(reflection_class()));
    }
    return gens;
}

// Exact kernel of the stacked (M - Id) over the rationals.
inline std::vector<h2_rat> invariant_subspace(const std::vector<h2_matrix> &gens)
{
    rmatrix stacked;
    for (const auto &m : gens) {
        for (std::size_t i = 0; i < h2_rank; ++i) {
            rvector row(h2_rank);
            for (std::size_t j = 0; j < h2_rank; ++j) {
                row[j] = rational(m[i][j] - (i == j ? 1 : 0));
            }
            stacked.push_back(std::move(row));
        }
    }
    std::vector<h2_rat> out;
    for (const auto &v : kernel(stacked, h2_rank)) {
        h2_rat x;
        for (std::size_t i = 0; i < h2_rank; ++i) {
            x.c[i] = v[i];
        }
        out.push_back(x);
    }
    return out;
}

// Whether x lies in the rational span of the given classes.
inline bool in_span(const std::vector<h2_rat> &basis, const h2_rat &x)
{
    rmatrix a(h2_rank, rvector(basis.size()));
    rvector b(h2_rank);
    for (std::size_t i = 0; i < h2_rank; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            a[i][j] = basis[j].c[i];
        }
        b[i] = x.c[i];
    }
    return solve(a, b).has_value();
}

// Whether two families of classes span the same rational subspace.
inline bool same_span(const std::vector<h2_rat> &a, const std::vector<h2_rat> &b)
{
    auto to_rows = [](const std::vector<h2_rat> &v) {
        rmatrix m;
        for (const auto &x : v) {
            m.emplace_back(x.c.begin(), x.c.end());
        }
        return m;
    };
    rmatrix both = to_rows(a);
    for (auto &r : to_rows(b)) {
        both.push_back(r);
    }
    const auto ra = rank(to_rows(a));
    return ra == rank(to_rows(b)) && ra == rank(both);
}

} // namespace pencil

#endif
