#ifndef PENCIL_MODULAR_ETA_HPP
#define PENCIL_MODULAR_ETA_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/ring/rational.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// (scale m, exponent e) stands for prod_{n>=1} (1 - q^{mn})^e.
using eta_factor = std::pair<long, long>;

// q^r prod (1 - q^{mn})^e, known mod O(q^order).
inline series eta_product(const std::vector<eta_factor> &spec, const rational &r, const rational &order)
{
    const long len = std::max(0L, to_long(ceil(order - r)));
    std::vector<integer> c(static_cast<std::size_t>(len), integer(0));
    if (len > 0) {
        c[0] = 1;
    }
    for (const auto &[m, e] : spec) {
        if (m <= 0) {
            throw domain_error("eta product scale must be positive");
        }
        for (long step = m; step < len; step += m) {
            const auto s = static_cast<std::size_t>(step);
            for (long t = 0; t < (e < 0 ? -e : e); ++t) {
                if (e > 0) {
                    for (std::size_t i = c.size(); i-- > s;) {
                        c[i] -= c[i - s];
                    }
                } else {
                    // Division by (1 - q^step): ascending prefix sums.
                    for (std::size_t i = s; i < c.size(); ++i) {
                        c[i] += c[i - s];
                    }
                }
            }
        }
    }
    std::vector<std::pair<rational, rational>> terms;
    for (long i = 0; i < len; ++i) {
        const auto &v = c[static_cast<std::size_t>(i)];
        if (v != 0) {
            terms.emplace_back(r + rational(i), rational(v));
        }
    }
    return series::from_terms(terms, order);
}

// Delta(q) = q prod (1 - q^n)^24.
inline series delta_series(const rational &order)
{
    return eta_product({{1, 24}}, rational(1), order);
}

// E4 = 1 + 240 sum sigma_3(n) q^n.
inline series eisenstein_e4(long order)
{
    std::vector<std::pair<rational, rational>> terms;
    if (order > 0) {
        terms.emplace_back(rational(0), rational(1));
    }
    for (long n = 1; n < order; ++n) {
        integer s = 0;
        for (long d = 1; d <= n; ++d) {
            if (n % d == 0) {
                s += integer(d) * d * d;
            }
        }
        terms.emplace_back(rational(n), rational(integer(240 * s)));
    }
    return series::from_terms(terms, rational(order));
}

// j = E4^3 / Delta, known mod O(q^order).
inline series classical_j(long order)
{
    const auto e4 = eisenstein_e4(order + 1);
    const auto inv_delta = invert(delta_series(rational(order + 2)));
    return (e4 * e4 * e4 * inv_delta).truncated(rational(order));
}

} // namespace pencil

#endif
