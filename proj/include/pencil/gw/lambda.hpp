#ifndef PENCIL_GW_LAMBDA_HPP
#define PENCIL_GW_LAMBDA_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include <pencil/error.hpp>
#include <pencil/gw/bryan_leung.hpp>
#include <pencil/gw/psi.hpp>
#include <pencil/gw/sections.hpp>
#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/section.hpp>
#include <pencil/lattice/surface.hpp>
#include <pencil/series/matrix.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

using gamma_matrix_t = series_matrix<rational>;

// lambda = -1/2 sum_{[M-bar].A = 1} q^{[delta E].A} z_k (A.S_ij)^2, mod O(q^order).
inline series lambda_eig(const surface_model &s, std::size_t i, std::size_t j, long order)
{
    if (!(i < j && j <= 8)) {
        throw domain_error("lambda needs 0 <= i < j <= 8");
    }
    const h2_int delta = s.delta(), sij = h2::s(i, j);
    const long d = s.d(), c = intersect(delta, h2::A(0));
    const long a0s = intersect(h2::A(0), sij);
    const auto groups = section_groups({delta, sij}, section_norm_bound(s, rational(c), rational(order)));
    const auto z = bryan_leung_coefficients(order / d + 3);
    std::map<long, rational> terms;
    for (const auto &g : groups) {
        const long t = g.pairings[0], as = a0s + g.pairings[1];
        if (as == 0) {
            continue;
        }
        for (long k = 0;; ++k) {
            const long e = c + t + d * g.norm / 2 + d * k;
            if (e >= order) {
                break;
            }
            terms[e] += rational(g.count * as * as) * z[static_cast<std::size_t>(k)];
        }
    }
    for (auto &[e, v] : terms) {
        v *= rational(-1, 2);
    }
    return series::from_numerators(1, std::move(terms), rational(order), {});
}

// The pair (i, j) used for lambda on this surface: the first two exceptional
// classes on which [delta E] has equal coefficient, so that S_ij is orthogonal to
// [delta E] and reversed by a monodromy transposition.
inline std::pair<std::size_t, std::size_t> lambda_pair(const surface_model &s)
{
    const h2_int delta = s.delta();
    for (std::size_t j = 1; j < 9; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (delta.a(i) == delta.a(j)) {
                return {i, j};
            }
        }
    }
    throw domain_error("no exceptional pair with equal [delta E] coefficient on " + s.name());
}

// z^(2) = (lambda^2 - (lambda/psi)') / 4 mod O(q^order), from lambda and psi known
// mod O(q^{order+2}).
inline series z2_from(const series &lambda, const series &psi, long order)
{
    const auto r = (lambda * lambda - derive(lambda * invert(psi))) * rational(1, 4);
    const auto out = r.truncated(rational(order));
    if (!out.is_zero() && out.valuation().sign() < 0) {
        throw consistency_error("z2 has a negative-exponent term q^" + out.valuation().pretty());
    }
    return out;
}

// z^(2) mod O(q^order).
inline series z2(const surface_model &s, long order)
{
    const auto [i, j] = lambda_pair(s);
    return z2_from(lambda_eig(s, i, j, order + 2), psi_eta(s, order + 2).psi, order);
}

// [[0, psi], [4 psi z2, eta]].
inline gamma_matrix_t make_gamma(const series &psi, const series &eta, const series &z2v)
{
    return gamma_matrix_t{{series(), psi}, {rational(4) * psi * z2v, eta}};
}

// Gamma mod O(q^order).
inline gamma_matrix_t gamma_matrix(const surface_model &s, long order)
{
    const auto pe = psi_eta(s, order + 2);
    const auto [i, j] = lambda_pair(s);
    const auto z = z2_from(lambda_eig(s, i, j, order + 2), pe.psi, order);
    const rational p(order);
    return make_gamma(pe.psi.truncated(p), pe.eta.truncated(p), z);
}

// dW - (psi W^2 - eta W - 4 psi z2) with psi, eta, 4 psi z2 read off Gamma.
inline series riccati_residual(const series &w, const gamma_matrix_t &gamma)
{
    const auto &psi = gamma(0, 1);
    const auto &eta = gamma(1, 1);
    return derive(w) - (psi * w * w - eta * w - gamma(1, 0));
}

inline series riccati_residual(const series &w, const surface_model &s, long order)
{
    return riccati_residual(w, gamma_matrix(s, order)).truncated(rational(order));
}

} // namespace pencil

#endif
