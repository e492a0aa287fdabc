#ifndef PENCIL_MODULAR_THETA_HPP
#define PENCIL_MODULAR_THETA_HPP

#include <map>
#include <numeric>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/lattice/e8.hpp>
#include <pencil/lattice/section.hpp>
#include <pencil/lattice/surface.hpp>
#include <pencil/ring/cyclotomic.hpp>
#include <pencil/ring/rational.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// Sum of q^{N/2} over E8 vectors of norm N.
inline series theta_e8(long order)
{
    std::map<long, rational> terms;
    if (order > 0) {
        const auto counts = e8_norm_counts(2 * (order - 1));
        for (std::size_t n = 0; n < counts.size(); n += 2) {
            if (counts[n] != 0) {
                terms.emplace(static_cast<long>(n / 2), rational(counts[n]));
            }
        }
    }
    return series::from_numerators(1, std::move(terms), rational(order), {});
}

// Sum over X in E8 of q^{[delta E].X + (d/2) N(X)}.
inline series theta_shifted(const surface_model &s, long order)
{
    const h2_int delta = s.delta();
    const long d = s.d();
    std::map<long, rational> terms;
    // Exponents are integers since N is even.
    for_each_e8_vector(section_norm_bound(s, rational(0), rational(order)), [&](const h2_int &x, long n) {
        const long e = intersect(delta, x) + d * n / 2;
        if (e < order) {
            terms[e] += rational(1);
        }
    });
    return series::from_numerators(1, std::move(terms), rational(order), {});
}

namespace detail
{

// Sum of q^{Q(m + s, n + s)} over (m, n) in Z^2 with Q(x, y) = x^2 + xy + y^2 and
// exponents below order.
inline series hex_sum(const rational &shift, long order)
{
    std::vector<std::pair<rational, rational>> terms;
    // Q(x, y) >= (x^2 + y^2) / 2, so |x| < sqrt(2 order) suffices.
    const long lim = detail::isqrt(2 * std::max(order, 0L)) + 2;
    for (long m = -lim; m <= lim; ++m) {
        for (long n = -lim; n <= lim; ++n) {
            const rational x = rational(m) + shift, y = rational(n) + shift;
            const rational e = x * x + x * y + y * y;
            if (e < rational(order)) {
                terms.emplace_back(e, rational(1));
            }
        }
    }
    return series::from_terms(terms, rational(order));
}

} // namespace detail

// Theta function of the hexagonal lattice.
inline series theta_hex(long order)
{
    return detail::hex_sum(rational(0), order);
}

// The same sum over the deep-hole coset (1/3, 1/3) + Z^2; starts 3 q^{1/3}.
inline series theta_hex_deep(long order)
{
    return detail::hex_sum(rational(1, 3), order);
}

namespace detail
{

// Sum over d in start + Z with d^2 < order of e^{2 pi i u d} q^{d^2}.
inline cseries jacobi_sum(const rational &u, const rational &start, const rational &order, unsigned n)
{
    std::vector<std::pair<rational, cyclotomic>> terms;
    if (order.sign() > 0) {
        const long lim = to_long(ceil(order)) + 1;
        for (long k = -lim; k <= lim; ++k) {
            const rational d = start + rational(k);
            const rational e = d * d;
            if (e < order) {
                terms.emplace_back(e, root_of_unity(u * d, n));
            }
        }
    }
    return cseries::from_terms(terms, order, n);
}

} // namespace detail

// theta_2(u, q) = sum_{d in Z + 1/2} e^{2 pi i u d} q^{d^2}, over Q(zeta_n).
inline cseries jacobi_theta2(const rational &u, const rational &order, unsigned n = default_cyclotomic_order)
{
    return detail::jacobi_sum(u, rational(1, 2), order, n);
}

// theta_3(u, q) = sum_{d in Z} e^{2 pi i u d} q^{d^2}.
inline cseries jacobi_theta3(const rational &u, const rational &order, unsigned n = default_cyclotomic_order)
{
    return detail::jacobi_sum(u, rational(0), order, n);
}

// theta_2(u, q^{1/2}) mod O(q^order).
inline cseries jacobi_theta2_half(const rational &u, const rational &order, unsigned n = default_cyclotomic_order)
{
    return jacobi_theta2(u, order * rational(2), n).exponents_scaled(rational(1, 2));
}

// gamma(q) = q^{-1/8} theta_2(1/6, q^{1/2}) / (zeta_12 + zeta_12^{-1}).
inline series gamma_series(long order)
{
    const auto th = jacobi_theta2_half(rational(1, 6), rational(order) + rational(1, 8), 12);
    const auto c = root_of_unity(rational(1, 12), 12) + root_of_unity(rational(-1, 12), 12);
    return to_rational_series(th.shifted(rational(-1, 8)) * c.inverse());
}

// Smallest cyclotomic order in which every character of the Watson identity for
// (u, v) is defined.
inline unsigned watson_cyclotomic_order(const rational &u, const rational &v)
{
    const rational half(1, 2);
    return required_cyclotomic_order({(u + v) * half, (u - v) * half, u * half, v * half});
}

// theta3(u+v, q) theta2(u-v, q) + theta2(u+v, q) theta3(u-v, q)
//   - theta2(u, q^{1/2}) theta2(v, q^{1/2}); identically zero.
inline cseries watson_residual(const rational &u, const rational &v, long order, unsigned n = 0)
{
    if (n == 0) {
        n = watson_cyclotomic_order(u, v);
    }
    const rational p(order);
    const auto lhs = jacobi_theta3(u + v, p, n) * jacobi_theta2(u - v, p, n)
                     + jacobi_theta2(u + v, p, n) * jacobi_theta3(u - v, p, n);
    return lhs - jacobi_theta2_half(u, p, n) * jacobi_theta2_half(v, p, n);
}

} // namespace pencil

#endif
