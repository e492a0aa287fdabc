#ifndef PENCIL_GW_PSI_HPP
#define PENCIL_GW_PSI_HPP

#include <utility>

#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/surface.hpp>
#include <pencil/modular/eta.hpp>
#include <pencil/modular/theta.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

struct psi_eta_pair {
    series psi;
    series eta;
};

// Pairing the fundamental equation (trivial bulk) with [M-bar]:
//   1/psi = (q/d) q^{[delta E].A0} (q^{d/2} / Delta(q^d)^{1/2}) Theta(q)
// with Theta the shifted E8 theta sum, and eta = -psi'/psi. Both mod O(q^order).
// For surfaces without a trivial-bulk solution the same formula is evaluated; its
// constant term need not be 1 then.
inline psi_eta_pair psi_eta(const surface_model &s, long order)
{
    const long p = order + 1;
    const long d = s.d(), c = intersect(s.delta(), h2::A(0));
    const long shift = -1 - c;
    auto theta = theta_shifted(s, p - shift);
    const rational v = theta.valuation();
    if (v.sign() > 0) {
        theta = theta_shifted(s, p - shift + 2 * to_long(ceil(v)));
    }
    // q^{d/2} / Delta(q^d)^{1/2} = prod (1 - q^{dn})^{-12}
    const auto e = eta_product({{d, 12}}, rational(0), rational(p - shift));
    const auto psi = (rational(d) * e * invert(theta)).shifted(rational(shift)).truncated(rational(p));
    const auto eta = -(derive(psi) * invert(psi));
    return {psi.truncated(rational(order)), eta.truncated(rational(order))};
}

} // namespace pencil

#endif
