#ifndef PENCIL_LATTICE_E8_HPP
#define PENCIL_LATTICE_E8_HPP

#include <cstddef>
#include <vector>

#include <pencil/lattice/h2_class.hpp>

namespace pencil
{

// The E8 sublattice {X : [M-bar].X = 0, A0.X = 0}, negative definite.
inline std::vector<h2_int> e8_basis()
{
    std::vector<h2_int> b;
    for (std::size_t i = 1; i <= 7; ++i) {
        b.push_back(h2::A(i) - h2::A(i + 1));
    }
    b.push_back(h2::L() - h2::A(1) - h2::A(2) - h2::A(3));
    return b;
}

namespace detail
{

inline long isqrt(long n)
{
    if (n <= 0) {
        return 0;
    }
    long r = static_cast<long>(__builtin_sqrt(static_cast<double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

// Fills x.a(i), ..., x.a(8) with integers summing to s whose squares sum to at most r.
template <typename F>
void e8_fill(h2_int &x, std::size_t i, long s, long r, long used, F &visit)
{
    if (i == 8) {
        if (s * s <= r) {
            x.a(8) = s;
            visit(static_cast<const h2_int &>(x), used + s * s - x.l() * x.l());
        }
        return;
    }
    // After x_i there remain m slots: need (s - x)^2 <= m (r - x^2).
    const long m = static_cast<long>(8 - i);
    const long disc = m * ((1 + m) * r - s * s);
    if (disc < 0) {
        return;
    }
    const long root = isqrt(disc);
    const long lo = (s - root) / (1 + m) - 1, hi = (s + root) / (1 + m) + 1;
    for (long v = lo; v <= hi; ++v) {
        const long rest = r - v * v;
        if (rest < 0 || (s - v) * (s - v) > m * rest) {
            continue;
        }
        x.a(i) = v;
        e8_fill(x, i + 1, s - v, rest, used + v * v, visit);
    }
}

} // namespace detail

// Calls visit(X, N) for every X in the E8 sublattice with N = -X.X <= max_norm, in
// ascending lexicographic order of the coordinates (L, A0, ..., A8).
//
// In blowup coordinates X = x_L L + sum_{i>=1} x_i A_i with sum x_i = -3 x_L and
// N = sum x_i^2 - x_L^2. Cauchy-Schwarz gives x_L^2 <= 8N and bounds each partial
// assignment exactly, so the enumeration is complete without a bounding box.
template <typename F>
void for_each_e8_vector(long max_norm, F &&visit)
{
    if (max_norm < 0) {
        return;
    }
    const long xl_max = detail::isqrt(8 * max_norm);
    h2_int x;
    for (long xl = -xl_max; xl <= xl_max; ++xl) {
        const long budget = max_norm + xl * xl, sum = -3 * xl;
        if (sum * sum > 8 * budget) {
            continue;
        }
        x.l() = xl;
        detail::e8_fill(x, 1, sum, budget, 0, visit);
    }
}

// All E8 vectors with -X.X <= bound, sorted lexicographically.
inline std::vector<h2_int> short_vectors(long bound)
{
    std::vector<h2_int> out;
    for_each_e8_vector(bound, [&](const h2_int &x, long) { out.push_back(x); });
    return out;
}

// Number of E8 vectors of each norm 0..max_norm.
inline std::vector<long> e8_norm_counts(long max_norm)
{
    std::vector<long> counts(static_cast<std::size_t>(max_norm + 1), 0);
    for_each_e8_vector(max_norm, [&](const h2_int &, long n) { ++counts[static_cast<std::size_t>(n)]; });
    return counts;
}

} // namespace pencil

#endif
