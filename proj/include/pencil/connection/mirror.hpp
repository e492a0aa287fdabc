#ifndef PENCIL_CONNECTION_MIRROR_HPP
#define PENCIL_CONNECTION_MIRROR_HPP

#include <optional>
#include <string>
#include <vector>

#include <pencil/connection/fundamental.hpp>
#include <pencil/error.hpp>
#include <pencil/modular/eta.hpp>
#include <pencil/modular/theta.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// z = -Theta11 / Theta12.
inline series mirror_map(const fundamental_system &f)
{
    if (f(0, 1).is_zero()) {
        throw division_by_zero_error("mirror map needs Theta12 != 0");
    }
    return -(f(0, 0) / f(0, 1));
}

inline series mirror_map(const fundamental_system &f, long order)
{
    return mirror_map(f).truncated(rational(order));
}

// j(z) = z^3 (z^3 - 24)^3 / (z^3 - 27); the precision is whatever z supports.
inline series j_of_z(const series &z)
{
    if (z.is_zero() || z.valuation() != rational(-1)) {
        throw domain_error("j_of_z needs z with leading exponent -1");
    }
    const auto z3 = z * z * z;
    const auto a = z3 - series::scalar(rational(24));
    return z3 * a * a * a / (z3 - series::scalar(rational(27)));
}

inline series j_of_z(const series &z, long order)
{
    return j_of_z(z).truncated(rational(order));
}

// The classical j-function in the parameter q^9, mod O(q^order).
inline series classical_j_q9(long order)
{
    return classical_j((order + 8) / 9 + 1).exponents_scaled(rational(9)).truncated(rational(order));
}

// z^{-3} written in the Hesse parameter: exponents divided by 3, so q^3 becomes
// the first power of the Hesse parameter.
inline series hesse_reparam(const series &z)
{
    if (z.is_zero() || z.valuation() != rational(-1)) {
        throw domain_error("hesse_reparam needs z with leading exponent -1");
    }
    const auto w = pow_rational(z, rational(-3));
    for (const auto &[e, c] : w.terms()) {
        if (!(e / rational(3)).is_integer()) {
            throw domain_error("exponent " + e.pretty() + " of z^-3 is not a multiple of 3");
        }
    }
    return w.exponents_scaled(rational(1, 3));
}

inline series hesse_reparam(const series &z, long order)
{
    return hesse_reparam(z).truncated(rational(order));
}

struct agreement {
    std::string name;
    series lhs;
    series rhs;
    // Comparison is mod O(q^precision).
    rational precision;
    std::optional<rational> first_difference;

    bool agrees() const
    {
        return !first_difference.has_value();
    }
};

inline agreement compare_series(std::string name, const series &a, const series &b)
{
    agreement r{std::move(name), a, b, rational(0), std::nullopt};
    const auto p = min_precision(a.precision(), b.precision());
    if (!p) {
        throw domain_error("comparison needs at least one side with finite precision");
    }
    r.precision = *p;
    const auto diff = (a - b).truncated(*p);
    if (!diff.is_zero()) {
        r.first_difference = diff.valuation();
    }
    return r;
}

// j(z) from the mirror map against the classical j in q^9.
inline agreement j_check(const fundamental_system &f)
{
    const auto j = j_of_z(mirror_map(f));
    const long p = to_long(ceil(*j.precision()));
    return compare_series("j(z) vs j(q^9)", j, classical_j_q9(p + 9));
}

// -Delta(q^9)^{1/8} / (3 Delta(q^3)^{1/24}) = -(q/3) prod (1 - q^{9n})^3 / (1 - q^{3n}),
// the eta-quotient form as usually printed. It is Theta12 / 3.
inline series oberdieck_eta_quotient(long order)
{
    return eta_product({{9, 3}, {3, -1}}, rational(1), rational(order)) * rational(-1, 3);
}

// -Delta(q^9)^{1/8} / Delta(q^3)^{1/24}, which equals -1/3 Theta_hex+d(q^3).
inline series theta12_eta_quotient(long order)
{
    return -eta_product({{9, 3}, {3, -1}}, rational(1), rational(order));
}

// -1/3 Theta_hex+d(q^3) mod O(q^order).
inline series theta12_deep_hole(long order)
{
    const long h = (order + 2) / 3 + 1;
    return (theta_hex_deep(h).exponents_scaled(rational(3)) * rational(-1, 3)).truncated(rational(order));
}

// Closed-form candidates for DelPezzo(9) against Theta mod O(q^{order+1}).
inline std::vector<agreement> oberdieck_check(long order)
{
    const long p = order + 1;
    const auto f = fundamental_solution(surface_model::del_pezzo(9), p);
    const auto hex = theta_hex((p + 2) / 3 + 1).exponents_scaled(rational(3)).truncated(rational(p));
    const auto deep = theta12_deep_hole(p);
    return {
        compare_series("Theta11 vs Theta_hex(q^3)", f(0, 0), hex),
        compare_series("Theta12 vs -1/3 Theta_hex+d(q^3)", f(0, 1), deep),
        compare_series("Theta12 vs -Delta(q^9)^(1/8)/(3 Delta(q^3)^(1/24))", f(0, 1), oberdieck_eta_quotient(p)),
        compare_series("Theta12 vs -Delta(q^9)^(1/8)/Delta(q^3)^(1/24)", f(0, 1), theta12_eta_quotient(p)),
    };
}

} // namespace pencil

#endif
