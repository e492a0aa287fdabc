#ifndef PENCIL_GW_BULK_HPP
#define PENCIL_GW_BULK_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/gw/dense.hpp>
#include <pencil/gw/sections.hpp>
#include <pencil/gw/z1.hpp>
#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/linear_algebra.hpp>
#include <pencil/lattice/monodromy.hpp>
#include <pencil/lattice/surface.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// A triple (B, psi, eta) for the fundamental equation
//   q^{-1} [delta E] + dB = psi z1(B) - eta [M-bar].
struct gauge_triple {
    bulk_class bulk;
    series psi;
    series eta;
};

// Left side minus right side of the fundamental equation, mod O(q^order).
inline series_class fundamental_residual(const surface_model &s, const bulk_class &bulk, const series &psi,
                                         const series &eta, long order)
{
    const auto z = z1(s, bulk, order);
    series_class r = times_class(series::term(rational(1), rational(-1)), s.delta());
    for (std::size_t i = 0; i < h2_rank; ++i) {
        r.c[i] += derive(bulk.c[i]) - psi * z.c[i];
    }
    r += times_class(eta, h2::mbar());
    return truncated(r, rational(order));
}

inline series_class fundamental_residual(const surface_model &s, const gauge_triple &t, long order)
{
    return fundamental_residual(s, t.bulk, t.psi, t.eta, order);
}

namespace detail
{

inline std::optional<rvector> coordinates_in(const std::vector<h2_int> &basis, const h2_rat &x)
{
    rmatrix a(h2_rank, rvector(basis.size()));
    rvector b(h2_rank);
    for (std::size_t i = 0; i < h2_rank; ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            a[i][j] = rational(basis[j].c[i]);
        }
        b[i] = x.c[i];
    }
    return solve(a, b);
}

inline h2_rat class_at(const std::array<dense, h2_rank> &sum, std::size_t index)
{
    h2_rat r;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        r.c[i] = sum[i][index];
    }
    return r;
}

} // namespace detail

// The bulk term B = sum_{j>=1} B_j q^j solving dB = z1(B) - q^{-1}[delta E]
// (gauge psi = 1, eta = 0), mod O(q^order). Order by order
//   (j - C) B_j = [z1(B_1 q + ... + B_{j-1} q^{j-1})]_{q^{j-1}},
// and C^2 = -C gives (j - C)^{-1} = 1/j + C/(j(j+1)). B stays in the
// monodromy-invariant subspace, where z1 is evaluated group by group.
inline bulk_class solve_fundamental_general(const surface_model &s, long order)
{
    const auto basis = invariant_basis(s);
    const std::size_t width = static_cast<std::size_t>(std::max(order + 1, 1L));
    std::vector<detail::dense> b(basis.size(), detail::dense(width));
    for (long j = 1; j < order; ++j) {
        const auto sum = detail::section_sum(s, basis, b, j);
        const h2_rat r = detail::class_at(sum, static_cast<std::size_t>(j));
        h2_rat bj = r;
        bj *= rational(1, j);
        h2_rat cr = operator_c(r, s);
        cr *= rational(1, j * (j + 1));
        bj += cr;
        const auto coords = detail::coordinates_in(basis, bj);
        if (!coords) {
            throw consistency_error("bulk coefficient B_" + std::to_string(j) + " left the invariant subspace");
        }
        for (std::size_t i = 0; i < basis.size(); ++i) {
            b[i][static_cast<std::size_t>(j)] = (*coords)[i];
        }
    }
    bulk_class out = zero_class(rational(order));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        out += times_class(detail::from_dense_coeffs(b[i], 0, rational(order)), basis[i]);
    }
    return out;
}

struct f1_solution {
    series beta;
    series psi;
    series eta;
    // Largest n such that the equations through q^{n-1} were consistent; beta and
    // psi are then known mod O(q^{n+1}), eta mod O(q^n).
    long max_consistent_order = 0;
};

// The ansatz b = beta(q)^{A0} on F1 (DelPezzo(8)). Weights are beta^{A0.A} with
// A0.A = -1 + N/2 + k. At q^{n-1} the unknowns beta_n, psi_n, eta_{n-1} enter
// linearly through n beta_n A0 - psi_n [delta E] + eta_{n-1} [M-bar].
inline f1_solution solve_f1_ansatz(long order, bool fix_beta_one = false)
{
    const auto s = surface_model::del_pezzo(8);
    const h2_int a0 = h2::A(0), delta = s.delta(), mbar = h2::mbar();
    const std::size_t width = static_cast<std::size_t>(std::max(order + 1, 1L));
    detail::dense beta(width), psi(width), eta(width);
    beta[0] = rational(1);
    psi[0] = rational(1);
    long consistent = std::max(order - 1, 0L);
    for (long n = 1; n < order; ++n) {
        const auto un = static_cast<std::size_t>(n);
        const auto lb = detail::dense_log(detail::dense(beta.begin(), beta.begin() + n + 1), un + 1);
        const auto sum = detail::section_sum(s, {a0}, {lb}, n);
        h2_rat rhs;
        for (std::size_t a = 0; a < un; ++a) {
            if (psi[a].is_zero()) {
                continue;
            }
            h2_rat t = detail::class_at(sum, un - a);
            t *= psi[a];
            rhs += t;
        }
        rhs.a(0) -= rational(n) * lb[un];

        std::vector<h2_int> cols;
        if (!fix_beta_one) {
            h2_int c = a0;
            c *= n;
            cols.push_back(c);
        }
        cols.push_back(-delta);
        cols.push_back(mbar);
        const auto x = detail::coordinates_in(cols, rhs);
        if (!x) {
            consistent = n - 1;
            break;
        }
        std::size_t k = 0;
        if (!fix_beta_one) {
            beta[un] = (*x)[k++];
        }
        psi[un] = (*x)[k++];
        eta[un - 1] = (*x)[k++];
    }
    f1_solution out;
    const rational p(consistent + 1);
    out.beta = detail::from_dense_coeffs(beta, 0, p).truncated(p);
    out.psi = detail::from_dense_coeffs(psi, 0, p).truncated(p);
    out.eta = detail::from_dense_coeffs(eta, 0, p - rational(1)).truncated(p - rational(1));
    out.max_consistent_order = consistent;
    return out;
}

// B = log(beta) A0 for an F1 ansatz solution.
inline bulk_class f1_bulk(const f1_solution &f)
{
    return times_class(log_series(f.beta), h2::A(0));
}

enum class gauge_kind { alpha, beta, beta_unit_psi };

// (b alpha^{[M-bar]}, psi / alpha, eta - alpha'/alpha) for alpha in 1 + qQ[[q]].
inline gauge_triple gauge_alpha(const gauge_triple &t, const series &alpha)
{
    if (alpha.is_zero() || alpha.valuation().sign() != 0 || alpha.leading_coefficient() != rational(1)) {
        throw domain_error("alpha must lie in 1 + qQ[[q]]");
    }
    const auto inv = invert(alpha);
    gauge_triple r = t;
    r.bulk += times_class(log_series(alpha), h2::mbar());
    r.psi = t.psi * inv;
    r.eta = t.eta - derive(alpha) * inv;
    return r;
}

// (b(beta) (beta/q)^{[delta E]}, psi(beta) beta', eta(beta) beta') for beta in q + q^2 Q[[q]].
inline gauge_triple gauge_beta(const gauge_triple &t, const surface_model &s, const series &beta)
{
    if (beta.is_zero() || beta.valuation() != rational(1) || beta.leading_coefficient() != rational(1)) {
        throw domain_error("beta must lie in q + q^2 Q[[q]]");
    }
    const auto db = derive(beta);
    auto sub = [&](const series &f) { return f.is_zero() && f.is_exact() ? f : compose(f, beta); };
    gauge_triple r;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        r.bulk.c[i] = sub(t.bulk.c[i]);
    }
    r.bulk += times_class(log_series(beta.shifted(rational(-1))), s.delta());
    r.psi = sub(t.psi) * db;
    r.eta = sub(t.eta) * db;
    return r;
}

// The beta transformation followed by alpha = beta', which keeps psi = 1.
inline gauge_triple gauge_beta_unit_psi(const gauge_triple &t, const surface_model &s, const series &beta)
{
    return gauge_alpha(gauge_beta(t, s, beta), derive(beta));
}

inline gauge_triple gauge_transform(const gauge_triple &t, const surface_model &s, gauge_kind kind,
                                    const series &param)
{
    switch (kind) {
    case gauge_kind::alpha:
        return gauge_alpha(t, param);
    case gauge_kind::beta:
        return gauge_beta(t, s, param);
    case gauge_kind::beta_unit_psi:
        return gauge_beta_unit_psi(t, s, param);
    }
    throw domain_error("unknown gauge kind");
}

} // namespace pencil

#endif
