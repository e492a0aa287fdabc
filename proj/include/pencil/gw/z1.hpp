#ifndef PENCIL_GW_Z1_HPP
#define PENCIL_GW_Z1_HPP

#include <array>
#include <cstddef>
#include <set>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/gw/bryan_leung.hpp>
#include <pencil/gw/dense.hpp>
#include <pencil/gw/sections.hpp>
#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/monodromy.hpp>
#include <pencil/lattice/section.hpp>
#include <pencil/lattice/surface.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// Class with series coefficients. As a bulk term B = log(b) every coefficient has
// valuation >= 1.
using series_class = h2_class<series>;
using bulk_class = series_class;

inline series_class zero_class(precision_type prec = std::nullopt)
{
    return series_class(series({}, std::move(prec)));
}

// x * [class] for a series x.
inline series_class times_class(const series &x, const h2_int &cls)
{
    series_class r(series({}, x.precision()));
    for (std::size_t i = 0; i < h2_rank; ++i) {
        if (cls.c[i] != 0) {
            r.c[i] = x * rational(cls.c[i]);
        }
    }
    return r;
}

inline series_class truncated(const series_class &x, const rational &p)
{
    series_class r;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        r.c[i] = x.c[i].truncated(p);
    }
    return r;
}

inline precision_type class_precision(const series_class &x)
{
    precision_type p;
    for (const auto &c : x.c) {
        p = min_precision(p, c.precision());
    }
    return p;
}

// Whether every q-coefficient of x lies in the rational span of basis.
inline bool in_span_over_series(const series_class &x, const std::vector<h2_rat> &basis)
{
    std::set<rational> exponents;
    for (const auto &c : x.c) {
        for (const auto &t : c.terms()) {
            exponents.insert(t.first);
        }
    }
    for (const auto &e : exponents) {
        h2_rat v;
        for (std::size_t i = 0; i < h2_rank; ++i) {
            v.c[i] = x.c[i].coefficient(e);
        }
        if (!in_span(basis, v)) {
            return false;
        }
    }
    return true;
}

namespace detail
{

// sum over classes A with [M-bar].A = 1 of q^{[delta E].A} z_k exp(sum_i b_i (p_i.A)) A
// mod O(q^order), as dense coefficients of q^{-1}, ..., q^{order-1}. The b_i hold the
// coefficients of q^0..q^order and are treated as exact.
inline std::array<dense, h2_rank> section_sum(const surface_model &s, const std::vector<h2_int> &probes,
                                              const std::vector<dense> &b, long order)
{
    const std::size_t width = static_cast<std::size_t>(std::max(order + 1, 0L));
    std::array<dense, h2_rank> out;
    out.fill(dense(width));
    if (order <= -1) {
        return out;
    }
    const h2_int delta = s.delta();
    const h2_int a0 = h2::A(0), mbar = h2::mbar();
    const long d = s.d(), c = intersect(delta, a0);

    std::vector<h2_int> group_probes{delta};
    group_probes.insert(group_probes.end(), probes.begin(), probes.end());
    const auto groups = section_groups(group_probes, section_norm_bound(s, rational(c), rational(order)));
    const auto z = bryan_leung_coefficients(order / std::max(d, 1L) + 3);

    std::vector<long> p_a0, p_mbar;
    for (const auto &p : probes) {
        p_a0.push_back(intersect(p, a0));
        p_mbar.push_back(intersect(p, mbar));
    }
    const bool trivial_bulk = std::all_of(b.begin(), b.end(), [](const dense &v) {
        return std::all_of(v.begin(), v.end(), [](const rational &x) { return x.is_zero(); });
    });

    for (const auto &g : groups) {
        const long t = g.pairings[0];
        for (long k = 0;; ++k) {
            const long e = c + t + d * g.norm / 2 + d * k;
            if (e >= order) {
                break;
            }
            if (e < -1) {
                throw consistency_error("section class with q-exponent below -1");
            }
            const long m = g.norm / 2 + k;
            const std::size_t len = static_cast<std::size_t>(order - e);
            dense w;
            if (trivial_bulk) {
                w.assign(1, z[static_cast<std::size_t>(k)]);
            } else {
                dense l(len);
                for (std::size_t i = 0; i < probes.size(); ++i) {
                    const long pa = p_a0[i] + m * p_mbar[i] + g.pairings[1 + i];
                    if (pa == 0) {
                        continue;
                    }
                    for (std::size_t n = 1; n < len && n < b[i].size(); ++n) {
                        l[n] += rational(pa) * b[i][n];
                    }
                }
                w = dense_exp(l, len);
                for (auto &x : w) {
                    x *= z[static_cast<std::size_t>(k)];
                }
            }
            h2_int cls = a0;
            cls *= g.count;
            h2_int mm = mbar;
            mm *= g.count * m;
            cls += mm;
            cls += g.sum_x;
            for (std::size_t j = 0; j < h2_rank; ++j) {
                if (cls.c[j] == 0) {
                    continue;
                }
                const rational f(cls.c[j]);
                auto &dst = out[j];
                for (std::size_t n = 0; n < w.size() && n < len; ++n) {
                    if (!w[n].is_zero()) {
                        dst[static_cast<std::size_t>(e + 1) + n] += f * w[n];
                    }
                }
            }
        }
    }
    return out;
}

inline series_class section_sum_class(const std::array<dense, h2_rank> &d, long order)
{
    series_class r;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        r.c[i] = from_dense_coeffs(d[i], -1, rational(order));
    }
    return r;
}

// Coordinates b_i with B = sum_i b_i p_i: over the invariant basis when B lies in
// the invariant subspace, over the standard basis otherwise.
inline std::pair<std::vector<h2_int>, std::vector<series>> bulk_coordinates(const surface_model &s,
                                                                             const bulk_class &bulk)
{
    const auto basis = invariant_basis(s);
    std::vector<series> coeffs;
    bool ok = true;
    for (std::size_t i = 0; i < basis.size() && ok; ++i) {
        // A coordinate where only basis[i] is nonzero.
        std::size_t pivot = h2_rank;
        for (std::size_t col = 0; col < h2_rank && pivot == h2_rank; ++col) {
            bool only = basis[i].c[col] != 0;
            for (std::size_t j = 0; j < basis.size() && only; ++j) {
                only = j == i || basis[j].c[col] == 0;
            }
            if (only) {
                pivot = col;
            }
        }
        if (pivot == h2_rank) {
            ok = false;
            break;
        }
        coeffs.push_back(bulk.c[pivot] * rational(1, basis[i].c[pivot]));
    }
    if (ok) {
        series_class back = zero_class();
        for (std::size_t i = 0; i < basis.size(); ++i) {
            back += times_class(coeffs[i], basis[i]);
        }
        for (std::size_t j = 0; j < h2_rank && ok; ++j) {
            ok = (back.c[j] - bulk.c[j]).is_zero();
        }
    }
    if (ok) {
        return {basis, coeffs};
    }
    std::vector<h2_int> standard;
    std::vector<series> raw;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        h2_int e;
        e.c[i] = 1;
        standard.push_back(e);
        raw.push_back(bulk.c[i]);
    }
    return {standard, raw};
}

} // namespace detail

// z^(1) with trivial bulk term, mod O(q^order).
inline series_class z1(const surface_model &s, long order)
{
    return detail::section_sum_class(detail::section_sum(s, {}, {}, order), order);
}

// z^(1) with bulk term B = log(b): sections weighted by q^{[delta E].A} e^{B.A} z_A.
// Known mod O(q^P) with P = min(order, P_B - 1).
inline series_class z1(const surface_model &s, const bulk_class &bulk, long order)
{
    long p = order;
    for (const auto &c : bulk.c) {
        if (!c.is_zero() && c.valuation() < rational(1)) {
            throw domain_error("bulk term coefficients need valuation >= 1");
        }
        if (c.precision()) {
            p = std::min(p, to_long(floor(*c.precision())) - 1);
        }
    }
    const auto [probes, coeffs] = detail::bulk_coordinates(s, bulk);
    std::vector<detail::dense> b;
    for (const auto &c : coeffs) {
        b.push_back(detail::to_dense(c, 0, static_cast<std::size_t>(std::max(p + 1, 0L))));
    }
    return detail::section_sum_class(detail::section_sum(s, probes, b, p), p);
}

} // namespace pencil

#endif
