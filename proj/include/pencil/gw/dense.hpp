#ifndef PENCIL_GW_DENSE_HPP
#define PENCIL_GW_DENSE_HPP

#include <cstddef>
#include <map>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/ring/rational.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil::detail
{

// Truncated power series with integer exponents base, base + 1, ...; the working
// format of the section sums.
using dense = std::vector<rational>;

// Coefficients of q^base, ..., q^{base + len - 1}; terms beyond the stored ones are
// taken as zero, so the caller decides what the precision means.
inline dense to_dense(const series &s, long base, std::size_t len)
{
    dense out(len);
    for (const auto &[e, c] : s.terms()) {
        if (!e.is_integer()) {
            throw domain_error("expected integer exponents, found q^" + e.pretty());
        }
        const long k = to_long(e.num()) - base;
        if (k < 0) {
            throw domain_error("term q^" + e.pretty() + " below the expected valuation");
        }
        if (static_cast<std::size_t>(k) < len) {
            out[static_cast<std::size_t>(k)] = c;
        }
    }
    return out;
}

inline series from_dense_coeffs(const dense &d, long base, precision_type prec)
{
    std::map<long, rational> terms;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d[i].is_zero()) {
            terms.emplace_hint(terms.end(), base + static_cast<long>(i), d[i]);
        }
    }
    return series::from_numerators(1, std::move(terms), std::move(prec), {});
}

inline dense dense_mul(const dense &a, const dense &b, std::size_t len)
{
    dense out(len);
    for (std::size_t i = 0; i < std::min(len, a.size()); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < len && j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// exp(l) for l with zero constant term: n E_n = sum_k k l_k E_{n-k}.
inline dense dense_exp(const dense &l, std::size_t len)
{
    if (!l.empty() && !l[0].is_zero()) {
        throw domain_error("exp needs a series without constant term");
    }
    dense e(len);
    if (len == 0) {
        return e;
    }
    e[0] = rational(1);
    for (std::size_t n = 1; n < len; ++n) {
        rational s;
        for (std::size_t k = 1; k <= n && k < l.size(); ++k) {
            if (!l[k].is_zero()) {
                s += rational(static_cast<long>(k)) * l[k] * e[n - k];
            }
        }
        e[n] = s / rational(static_cast<long>(n));
    }
    return e;
}

// log(a) for a with constant term 1: n L_n = n a_n - sum_{k<n} k L_k a_{n-k}.
inline dense dense_log(const dense &a, std::size_t len)
{
    if (a.empty() || a[0] != rational(1)) {
        throw domain_error("log needs constant term 1");
    }
    dense l(len);
    for (std::size_t n = 1; n < len; ++n) {
        rational s = n < a.size() ? rational(static_cast<long>(n)) * a[n] : rational(0);
        for (std::size_t k = 1; k < n; ++k) {
            if (n - k < a.size()) {
                s -= rational(static_cast<long>(k)) * l[k] * a[n - k];
            }
        }
        l[n] = s / rational(static_cast<long>(n));
    }
    return l;
}

} // namespace pencil::detail

#endif
