#ifndef PENCIL_GW_BRYAN_LEUNG_HPP
#define PENCIL_GW_BRYAN_LEUNG_HPP

#include <cstddef>
#include <vector>

#include <pencil/modular/eta.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// sum_k z_k q^k = prod_m (1 - q^m)^{-12}.
inline series bryan_leung(long order)
{
    return eta_product({{1, -12}}, rational(0), rational(order));
}

// z_0, ..., z_{n-1} as plain coefficients.
inline std::vector<rational> bryan_leung_coefficients(long n)
{
    const auto s = bryan_leung(n);
    std::vector<rational> out;
    for (long k = 0; k < n; ++k) {
        out.push_back(s.coefficient(rational(k)));
    }
    return out;
}

} // namespace pencil

#endif
