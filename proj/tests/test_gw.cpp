#include <catch_amalgamated.hpp>

#include <vector>

#include <pencil/gw.hpp>
#include <pencil/lattice.hpp>
#include <pencil/modular.hpp>

using namespace pencil;

namespace
{

series O(const rational &p)
{
    return series::big_o(p);
}

series from_ints(const std::vector<long> &cs, const rational &prec)
{
    std::vector<std::pair<rational, rational>> terms;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        terms.emplace_back(rational(static_cast<long>(i)), rational(cs[i]));
    }
    return series::from_terms(terms, prec);
}

series qp(long e, const rational &c = rational(1))
{
    return series::term(c, rational(e));
}

// Direct sum over section classes A = A0 + X + (N/2 + k)[M-bar], one class at a
// time, weights from the generic series exp (oracle for the grouped evaluation).
series_class z1_direct(const surface_model &s, const bulk_class &bulk, long order)
{
    const auto z = bryan_leung(order + 2);
    series_class out = zero_class(rational(order));
    const h2_int delta = s.delta();
    for (const auto &x : short_vectors(4 * order + 8)) {
        for (long k = 0;; ++k) {
            const section_class sc{x, k};
            const h2_int a = sc.a();
            const long e = intersect(delta, a);
            if (e >= order) {
                break;
            }
            series w = series::scalar(z.coefficient(rational(k)), {}, rational(order - e + 1));
            const series ba = pair_with(bulk, a);
            if (!ba.is_zero()) {
                w = w * exp_series(ba.truncated(rational(order - e + 1)));
            }
            out += times_class(w.shifted(rational(e)), a);
        }
    }
    return truncated(out, rational(order));
}

bool classes_equal(const series_class &a, const series_class &b)
{
    for (std::size_t i = 0; i < h2_rank; ++i) {
        if (!(a.c[i] == b.c[i])) {
            return false;
        }
    }
    return true;
}

bool class_is_zero(const series_class &a)
{
    for (const auto &c : a.c) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

std::vector<h2_rat> delta_mbar(const surface_model &s)
{
    return {to_rational(s.delta()), to_rational(h2::mbar())};
}

} // namespace

TEST_CASE("Bryan-Leung")
{
    const auto z = bryan_leung(10);
    CHECK(z.coefficient(rational(0)) == rational(1));
    CHECK(z.coefficient(rational(1)) == rational(12));
    CHECK(z.coefficient(rational(2)) == rational(90));
    CHECK(z == invert(eta_product({{1, 12}}, rational(0), rational(10))));
}

TEST_CASE("z1 grouped evaluation against direct summation")
{
    for (int d : {9, 8, 3}) {
        const auto s = surface_model::del_pezzo(d);
        CHECK(classes_equal(z1(s, 4), z1_direct(s, zero_class(), 4)));
    }
    // A bulk term inside the invariant subspace and one outside it.
    const auto s = surface_model::del_pezzo(9);
    bulk_class b = times_class(qp(1) + qp(2, rational(-3, 2)), s.delta());
    b += times_class(qp(1, rational(2)) + O(rational(5)), h2::mbar());
    CHECK(classes_equal(z1(s, b, 4), z1_direct(s, b, 4)));
    bulk_class off = times_class(qp(1, rational(1, 2)) + qp(3) + O(rational(5)), h2::A(3));
    CHECK(classes_equal(z1(s, off, 4), z1_direct(s, off, 4)));
    CHECK_THROWS_AS(z1(s, times_class(series::scalar(rational(1)), h2::L()), 3), domain_error);
}

TEST_CASE("psi closed forms")
{
    const auto dp9 = psi_eta(surface_model::del_pezzo(9), 15);
    CHECK(dp9.psi == from_ints({1, 0, 0, -4, 0, 0, 2, 0, 0, 8, 0, 0, -5, 0, 0}, rational(15)));
    CHECK(dp9.eta.coefficient(rational(0)) == rational(0));
    CHECK(dp9.eta.truncated(rational(14)) == -(derive(dp9.psi) / dp9.psi));

    const long order = 12;
    const auto dp1 = psi_eta(surface_model::del_pezzo(1), order);
    const auto closed = (pow_rational(delta_series(rational(order + 1)), rational(1, 2)).shifted(rational(-1, 2))
                         / theta_e8(order + 1))
                            .truncated(rational(order));
    CHECK(dp1.psi == closed);
}

TEST_CASE("pairing of z1 with the fibre class")
{
    const long order = 10;
    for (const auto &s : surface_model::all()) {
        const auto pe = psi_eta(s, order + 1);
        const auto m = pair_with(z1(s, order + 1), h2::mbar());
        const auto prod = (m * pe.psi).shifted(rational(1)).truncated(rational(order));
        CHECK(prod == series::scalar(rational(s.d()), {}, rational(order)));
        if (s.admits_trivial_bulk()) {
            CHECK(pe.psi.coefficient(rational(0)) == rational(1));
        }
    }
}

TEST_CASE("z1 with trivial bulk and the invariant span")
{
    for (const auto &s : surface_model::all()) {
        const auto z = z1(s, 8);
        CHECK(z.c[0].valuation() >= rational(-1));
        CHECK(in_span_over_series(z, delta_mbar(s)) == s.admits_trivial_bulk());
    }
    // Leading term q^{-1}[delta E] on DelPezzo(9).
    const auto s9 = surface_model::del_pezzo(9);
    const auto z9 = z1(s9, 3);
    for (std::size_t i = 0; i < h2_rank; ++i) {
        CHECK(z9.c[i].coefficient(rational(-1)) == rational(s9.delta().c[i]));
    }
    // F1: z1 = q^{-1}[delta E] + A0 + O(q) mod [M-bar].
    const auto s8 = surface_model::del_pezzo(8);
    auto z8 = z1(s8, 1);
    z8 -= times_class(series::term(rational(1), rational(-1)), s8.delta());
    z8 -= times_class(series::scalar(rational(1)), h2::A(0));
    CHECK(in_span_over_series(z8, {to_rational(h2::mbar())}));
    CHECK(z8.c[0].precision() == rational(1));
}

TEST_CASE("lambda")
{
    const auto s = surface_model::del_pezzo(9);
    const auto l01 = lambda_eig(s, 0, 1, 20);
    CHECK(l01.valuation() == rational(-1));
    CHECK(l01.leading_coefficient() == rational(-1));
    CHECK(l01 == lambda_eig(s, 2, 7, 20));
    CHECK(l01 == lambda_eig(s, 5, 8, 20));
    for (const auto &[e, c] : l01.terms()) {
        CHECK((e + rational(1)) / rational(3) == rational(floor((e + rational(1)) / rational(3))));
    }
    CHECK_THROWS_AS(lambda_eig(s, 3, 3, 5), domain_error);
    CHECK(lambda_pair(surface_model::del_pezzo(1)) == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK(lambda_pair(s) == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("z2 and the Riccati equation")
{
    const auto s = surface_model::del_pezzo(9);
    const long order = 20;
    const auto z = z2(s, order);
    CHECK(z.valuation() >= rational(0));
    CHECK(z.precision() == rational(order));
    CHECK(z.coefficient(rational(0)) == rational(0));
    CHECK(z.coefficient(rational(1)) == rational(9));

    const auto g = gamma_matrix(s, order);
    CHECK(g(0, 0).is_zero());
    CHECK(g(0, 1).coefficient(rational(0)) == rational(1));
    CHECK(g(1, 0).coefficient(rational(0)) == rational(0));
    CHECK(g(1, 1).coefficient(rational(0)) == rational(0));

    const auto l = lambda_eig(s, 0, 1, order + 1);
    const auto res = riccati_residual(l, g);
    CHECK(res.is_zero());
    CHECK(res.precision() >= rational(order - 2));
    CHECK_FALSE(riccati_residual(l + series::q(), g).is_zero());

    // Other surfaces with a trivial bulk solution.
    for (int d : {1, 3, 6}) {
        const auto sd = surface_model::del_pezzo(d);
        const auto [i, j] = lambda_pair(sd);
        const auto zd = z2(sd, 8);
        CHECK(zd.valuation() >= rational(0));
        CHECK(riccati_residual(lambda_eig(sd, i, j, 9), gamma_matrix(sd, 8)).is_zero());
    }
}

TEST_CASE("trivial bulk solves the fundamental equation")
{
    for (const auto &s : surface_model::all()) {
        const auto pe = psi_eta(s, 9);
        const auto r = fundamental_residual(s, zero_class(), pe.psi, pe.eta, 8);
        CHECK(class_is_zero(r) == s.admits_trivial_bulk());
    }
}

TEST_CASE("general bulk solve")
{
    const series one = series::scalar(rational(1));
    const series zero;
    for (const auto &s : surface_model::all()) {
        const auto b = solve_fundamental_general(s, 9);
        const auto r = fundamental_residual(s, b, one, zero, 8);
        CHECK(class_is_zero(r));
        CHECK(class_precision(r) == rational(8));
        for (const auto &c : b.c) {
            CHECK((c.is_zero() || c.valuation() >= rational(1)));
        }
        CHECK(in_span_over_series(b, delta_mbar(s)) == s.admits_trivial_bulk());
    }
    // DelPezzo(8): the q^1 coefficient already leaves span{[delta E], [M-bar]}.
    const auto s8 = surface_model::del_pezzo(8);
    const auto b8 = solve_fundamental_general(s8, 6);
    CHECK_FALSE(in_span_over_series(truncated(b8, rational(2)), delta_mbar(s8)));

    // Stability under raising the order.
    const auto s3 = surface_model::del_pezzo(3);
    CHECK(classes_equal(truncated(solve_fundamental_general(s3, 9), rational(6)), solve_fundamental_general(s3, 6)));

    // Uniqueness: moving B_1 breaks the equation at q^0.
    auto bad = solve_fundamental_general(s3, 6);
    bad.c[0] += series::q();
    const auto r = fundamental_residual(s3, bad, one, zero, 5);
    CHECK_FALSE(class_is_zero(r));
}

TEST_CASE("F1 ansatz")
{
    const auto f = solve_f1_ansatz(6);
    CHECK(f.max_consistent_order == 5);
    CHECK(f.beta.truncated(rational(4)) == series::scalar(rational(1)) + series::q() + qp(2, rational(-8, 3))
                                               + qp(3, rational(-1)) + O(rational(4)));
    CHECK(f.psi.coefficient(rational(0)) == rational(1));
    const auto s8 = surface_model::del_pezzo(8);
    const auto r = fundamental_residual(s8, f1_bulk(f), f.psi, f.eta, f.max_consistent_order);
    CHECK(class_is_zero(r));

    const auto fixed = solve_f1_ansatz(6, true);
    CHECK(fixed.max_consistent_order == 0);
}

TEST_CASE("gauge transformations")
{
    const auto s = surface_model::del_pezzo(9);
    const auto pe = psi_eta(s, 10);
    const gauge_triple sol{zero_class(), pe.psi, pe.eta};
    const long order = 8;
    REQUIRE(class_is_zero(fundamental_residual(s, sol, order)));

    const auto id_a = gauge_transform(sol, s, gauge_kind::alpha, series::scalar(rational(1)));
    CHECK(id_a.psi == sol.psi);
    CHECK(id_a.eta == sol.eta);
    CHECK(classes_equal(id_a.bulk, sol.bulk));
    const auto id_b = gauge_transform(sol, s, gauge_kind::beta, series::q());
    CHECK(id_b.psi == sol.psi);
    CHECK(id_b.eta == sol.eta);

    const auto alpha = series::scalar(rational(1)) + series::q() + qp(2, rational(2)) + O(rational(11));
    const auto beta = series::q() + qp(2) + qp(3, rational(-1, 2)) + O(rational(12));
    for (auto kind : {gauge_kind::alpha, gauge_kind::beta}) {
        const auto t = gauge_transform(sol, s, kind, kind == gauge_kind::alpha ? alpha : beta);
        CHECK(class_is_zero(fundamental_residual(s, t, order)));
    }

    // From the psi = 1, eta = 0 solution the unit-psi version keeps psi = 1.
    const auto s3 = surface_model::del_pezzo(3);
    const gauge_triple g{solve_fundamental_general(s3, 11), series::scalar(rational(1)), series()};
    const auto t = gauge_transform(g, s3, gauge_kind::beta_unit_psi, beta);
    CHECK(t.psi.truncated(rational(order)) == series::scalar(rational(1)) + O(rational(order)));
    CHECK(class_is_zero(fundamental_residual(s3, t, order)));
    // eta picks up -beta''/beta'.
    const auto db = derive(beta);
    CHECK(t.eta.truncated(rational(order)) == (-(derive(db) / db)).truncated(rational(order)));

    CHECK_THROWS_AS(gauge_alpha(sol, series::q()), domain_error);
    CHECK_THROWS_AS(gauge_beta(sol, s, series::scalar(rational(1))), domain_error);
}
