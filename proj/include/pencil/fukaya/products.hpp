#ifndef PENCIL_FUKAYA_PRODUCTS_HPP
#define PENCIL_FUKAYA_PRODUCTS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/modular/eta.hpp>
#include <pencil/modular/theta.hpp>
#include <pencil/ring/cyclotomic.hpp>
#include <pencil/series/matrix.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// Every character below lives in Q(zeta_12).
inline constexpr unsigned fukaya_cyclotomic_order = 12;

using cmatrix = series_matrix<cyclotomic>;

// Logarithms u_k of the holonomies zeta_k = e^{2 pi i u_k}, zeta_k^3 = -1.
struct holonomy_tuple {
    std::array<rational, 4> u;

    const rational &operator[](std::size_t k) const
    {
        return u.at(k - 1);
    }
};

inline bool is_minus_cube_root_log(const rational &u)
{
    return ((u - rational(1, 6)) * rational(3)).is_integer();
}

// Validated tuple with each u_k reduced to [0, 1).
inline holonomy_tuple make_holonomy(const rational &u1, const rational &u2, const rational &u3, const rational &u4)
{
    holonomy_tuple h{{u1, u2, u3, u4}};
    for (auto &u : h.u) {
        if (!is_minus_cube_root_log(u)) {
            throw domain_error("holonomy logarithm " + u.pretty() + " is not in 1/6 + Z/3");
        }
        u = u - rational(floor(u));
    }
    return h;
}

// The 81 tuples with entries in {1/6, 1/2, 5/6}, lexicographic.
inline std::vector<holonomy_tuple> all_holonomy_tuples()
{
    const std::array<rational, 3> vals{rational(1, 6), rational(1, 2), rational(5, 6)};
    std::vector<holonomy_tuple> out;
    for (const auto &a : vals) {
        for (const auto &b : vals) {
            for (const auto &c : vals) {
                for (const auto &d : vals) {
                    out.push_back({{a, b, c, d}});
                }
            }
        }
    }
    return out;
}

// e^{pi i u}, the square root of e^{2 pi i u} fixed by the logarithm u.
inline cyclotomic half_character(const rational &u)
{
    return root_of_unity(u * rational(1, 2), fukaya_cyclotomic_order);
}

// e^{pi i u} + e^{-pi i u}
inline cyclotomic half_trace(const rational &u)
{
    return half_character(u) + half_character(-u);
}

// gamma(q) = prod (1 - q^{3n}) over Q(zeta_12), mod O(q^order).
inline cseries gamma_cyclotomic(const rational &order)
{
    return to_cyclotomic_series(eta_product({{3, 1}}, rational(0), order), fukaya_cyclotomic_order);
}

struct raw_product_set {
    cseries p123;
    cseries p134;
    cmatrix p124; // 1 x 2 row
    cmatrix p234; // 2 x 1 column
};

// Triangle-count products in the intersection-point bases, mod O(q^order).
inline raw_product_set raw_products(const holonomy_tuple &h, const rational &order)
{
    const unsigned n = fukaya_cyclotomic_order;
    const rational eighth(1, 8), quarter(1, 4);
    auto theta2_half_shifted = [&](const rational &u) {
        return jacobi_theta2_half(u, order + eighth, n).shifted(-eighth);
    };
    auto theta2_shifted = [&](const rational &u) { return jacobi_theta2(u, order + quarter, n).shifted(-quarter); };
    const rational w = rational(2) * h[1] - h[2] + h[4];
    const rational v = h[2] - rational(2) * h[3] + h[4];
    raw_product_set r;
    r.p123 = theta2_half_shifted(h[1] - h[2] + h[3]);
    r.p134 = theta2_half_shifted(h[1] - h[3] + h[4]);
    r.p124 = cmatrix{{jacobi_theta3(w, order, n), theta2_shifted(w)}};
    r.p234 = cmatrix{{theta2_shifted(v)}, {jacobi_theta3(v, order, n)}};
    return r;
}

struct basis_change {
    cmatrix m;
    cseries det;
    bool invertible = false;
};

// [[q^{-1/4} th2(a), q^{-1/4} th2(b)], [-th3(a), th3(b)]] with a = u2 + u4 + 2 sigma and
// b = u4 - u2, i.e. (u2, u4) shifted by sigma.
inline basis_change basis_change_matrix(const holonomy_tuple &h, const rational &order,
                                        const rational &sigma = rational(0))
{
    const unsigned n = fukaya_cyclotomic_order;
    const rational quarter(1, 4);
    const rational u2 = h[2] + sigma, u4 = h[4] + sigma;
    const rational a = u2 + u4, b = u4 - u2;
    basis_change r;
    r.m = cmatrix{{jacobi_theta2(a, order + quarter, n).shifted(-quarter),
                   jacobi_theta2(b, order + quarter, n).shifted(-quarter)},
                  {-jacobi_theta3(a, order, n), jacobi_theta3(b, order, n)}};
    r.det = (r.m(0, 0) * r.m(1, 1) - r.m(0, 1) * r.m(1, 0)).truncated(order);
    r.invertible = order.sign() > 0 && !r.det.coefficient(rational(0)).is_zero();
    return r;
}

// (e^{pi i u2} + e^{-pi i u2})(e^{pi i u4} + e^{-pi i u4}) gamma^2 for the shifted pair.
inline cseries expected_determinant(const holonomy_tuple &h, const rational &order,
                                    const rational &sigma = rational(0))
{
    const auto g = gamma_cyclotomic(order);
    return (g * g * (half_trace(h[2] + sigma) * half_trace(h[4] + sigma))).truncated(order);
}

struct trivialized_product_set {
    cseries p123;
    cseries p134;
    cmatrix p124;
    cmatrix p234;
    rational sigma;
};

// p123 / gamma, p134 / gamma, (p124 / gamma^2) M, M^{-1} p234, mod O(q^order).
inline trivialized_product_set trivialized_products(const holonomy_tuple &h, const rational &order,
                                                    const rational &sigma = rational(0))
{
    const auto bc = basis_change_matrix(h, order, sigma);
    if (!bc.invertible) {
        throw domain_error("basis change matrix is singular for u2 = " + h[2].pretty() + ", u4 = " +
                           h[4].pretty() + "; use shifted_check");
    }
    const auto raw = raw_products(h, order);
    const auto ginv = invert(gamma_cyclotomic(order));
    const auto ginv2 = ginv * ginv;
    const auto dinv = invert(bc.det);
    const cmatrix minv{{bc.m(1, 1) * dinv, -(bc.m(0, 1) * dinv)}, {-(bc.m(1, 0) * dinv), bc.m(0, 0) * dinv}};
    cmatrix row{{raw.p124(0, 0) * ginv2, raw.p124(0, 1) * ginv2}};
    trivialized_product_set r;
    r.p123 = (raw.p123 * ginv).truncated(order);
    r.p134 = (raw.p134 * ginv).truncated(order);
    r.p124 = row * bc.m;
    r.p234 = minv * raw.p234;
    for (auto *m : {&r.p124, &r.p234}) {
        for (std::size_t i = 0; i < m->rows(); ++i) {
            for (std::size_t j = 0; j < m->cols(); ++j) {
                (*m)(i, j) = (*m)(i, j).truncated(order);
            }
        }
    }
    r.sigma = sigma;
    return r;
}

struct expected_constants {
    cyclotomic p123;
    cyclotomic p134;
    std::array<cyclotomic, 2> p124;
};

// The q-independent values of p123, p134 and the transformed (124) row, from the
// special value and Watson's identity; sigma shifts u2 and u4.
inline expected_constants trivialized_constants(const holonomy_tuple &h, const rational &sigma = rational(0))
{
    const rational u1 = h[1], u2 = h[2] + sigma, u3 = h[3], u4 = h[4] + sigma;
    auto e = [](const rational &u) { return half_character(u); };
    expected_constants c;
    c.p123 = e(u1 - h[2] + u3) + e(-u1 + h[2] - u3);
    c.p134 = e(u1 - u3 + h[4]) + e(-u1 + u3 - h[4]);
    c.p124[0] = -((e(u1 + u4) - e(-u1 - u4)) * (e(u1 - u2) - e(-u1 + u2)));
    c.p124[1] = (e(u1 - u2 + u4) + e(-u1 + u2 - u4)) * (e(u1) + e(-u1));
    return c;
}

// First exponent other than 0 with a nonzero coefficient, if any.
inline std::optional<rational> first_nonconstant(const cseries &s)
{
    for (const auto &[e, c] : s.terms()) {
        if (!e.is_zero()) {
            return e;
        }
    }
    return std::nullopt;
}

struct fukaya_report {
    bool ok = false;
    std::optional<rational> sigma;
    // Set when a product fails: which one, and the first offending exponent if the
    // failure is non-constancy.
    std::string failure;
    std::optional<rational> offending_exponent;
};

// Constancy of all four trivialized products and agreement with the expected
// constants for one sigma.
inline fukaya_report check_trivialized(const holonomy_tuple &h, const rational &order, const rational &sigma)
{
    fukaya_report rep;
    rep.sigma = sigma;
    const auto t = trivialized_products(h, order, sigma);
    const auto c = trivialized_constants(h, sigma);
    if (order.sign() <= 0) {
        rep.ok = true;
        return rep;
    }
    struct item {
        std::string name;
        const cseries *value;
        const cyclotomic *expected;
    };
    const std::vector<item> items{{"p123", &t.p123, &c.p123},         {"p134", &t.p134, &c.p134},
                                  {"p124[0]", &t.p124(0, 0), &c.p124[0]}, {"p124[1]", &t.p124(0, 1), &c.p124[1]},
                                  {"p234[0]", &t.p234(0, 0), nullptr},  {"p234[1]", &t.p234(1, 0), nullptr}};
    for (const auto &it : items) {
        if (const auto e = first_nonconstant(*it.value)) {
            rep.failure = it.name + " is not constant";
            rep.offending_exponent = e;
            return rep;
        }
        if (it.expected && it.value->coefficient(rational(0)) != *it.expected) {
            rep.failure = it.name + " differs from the expected constant";
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

// Tries sigma = 0, 1/3, 2/3 and succeeds with the first invertible basis change whose
// trivialized products are constant.
inline fukaya_report shifted_check_report(const holonomy_tuple &h, const rational &order)
{
    fukaya_report last;
    if (order.sign() <= 0) {
        last.ok = true;
        return last;
    }
    last.failure = "no shift gives an invertible basis change";
    for (const rational &sigma : {rational(0), rational(1, 3), rational(2, 3)}) {
        if (!basis_change_matrix(h, order, sigma).invertible) {
            continue;
        }
        auto rep = check_trivialized(h, order, sigma);
        if (rep.ok) {
            return rep;
        }
        last = rep;
    }
    return last;
}

inline bool shifted_check(const holonomy_tuple &h, const rational &order)
{
    return shifted_check_report(h, order).ok;
}

// theta_2(u, q^{1/2}) - (e^{pi i u} + e^{-pi i u}) q^{1/8} gamma(q), mod O(q^{order + 1/8}).
inline cseries special_value_check(const rational &u, const rational &order)
{
    const rational p = order + rational(1, 8);
    const auto lhs = jacobi_theta2_half(u, p, fukaya_cyclotomic_order);
    const auto rhs = (gamma_cyclotomic(order) * half_trace(u)).shifted(rational(1, 8));
    return (lhs - rhs).truncated(p);
}

} // namespace pencil

#endif
