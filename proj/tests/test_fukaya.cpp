#include <catch_amalgamated.hpp>

#include <pencil/fukaya/products.hpp>
#include <pencil/modular.hpp>

using namespace pencil;

namespace
{

const rational sixth(1, 6), half(1, 2), five_sixths(5, 6);

cyclotomic z(const rational &u)
{
    return half_character(u);
}

bool is_zero_series(const cseries &s)
{
    return s.terms().empty();
}

} // namespace

TEST_CASE("holonomy tuples")
{
    CHECK(all_holonomy_tuples().size() == 81);
    const auto h = make_holonomy(rational(7, 6), rational(-1, 6), half, rational(11, 6));
    CHECK(h[1] == sixth);
    CHECK(h[2] == five_sixths);
    CHECK(h[3] == half);
    CHECK(h[4] == five_sixths);
    CHECK_THROWS_AS(make_holonomy(rational(0), sixth, sixth, sixth), domain_error);
    CHECK_THROWS_AS(make_holonomy(sixth, rational(1, 3), sixth, sixth), domain_error);
}

TEST_CASE("special value of theta_2")
{
    for (const auto &u : {sixth, half, five_sixths, rational(-1, 6), rational(7, 6)}) {
        CHECK(is_zero_series(special_value_check(u, rational(30))));
    }
    const auto bad = special_value_check(rational(0), rational(10));
    CHECK(!is_zero_series(bad));
}

TEST_CASE("raw products")
{
    const auto h = make_holonomy(sixth, half, five_sixths, sixth);
    const auto r = raw_products(h, rational(12));
    CHECK(r.p123.coefficient(rational(0)) ==
          z(h[1]) * z(-h[2]) * z(h[3]) + z(-h[1]) * z(h[2]) * z(-h[3]));
    CHECK(r.p124(0, 1).valuation() == rational(0));
    CHECK(r.p124(0, 0).coefficient(rational(0)) == cyclotomic::zeta_power(12, 0));
    CHECK(r.p234(1, 0).coefficient(rational(0)) == cyclotomic::zeta_power(12, 0));
    CHECK(r.p234(0, 0).valuation() == rational(0));

    // gamma = 1 - q^3 - ..., so the untrivialized p123 moves at q^3.
    const auto s = make_holonomy(sixth, sixth, sixth, sixth);
    const auto raw = raw_products(s, rational(10));
    REQUIRE(first_nonconstant(raw.p123).has_value());
    CHECK(*first_nonconstant(raw.p123) == rational(3));
}

TEST_CASE("periodicity of the products in each logarithm")
{
    const holonomy_tuple h{{sixth, half, five_sixths, sixth}};
    const auto base = raw_products(h, rational(10));
    for (std::size_t k = 0; k < 4; ++k) {
        holonomy_tuple g = h;
        g.u[k] += rational(1);
        const auto r = raw_products(g, rational(10));
        const bool flip123 = k != 3, flip134 = k != 1;
        CHECK(r.p123 == (flip123 ? -base.p123 : base.p123));
        CHECK(r.p134 == (flip134 ? -base.p134 : base.p134));
        // w = 2u1 - u2 + u4 and v = u2 - 2u3 + u4 move by an odd integer exactly when
        // u2 or u4 moves; then the theta_2 generator flips sign.
        const bool odd = k == 1 || k == 3;
        CHECK(r.p124(0, 0) == base.p124(0, 0));
        CHECK(r.p124(0, 1) == (odd ? -base.p124(0, 1) : base.p124(0, 1)));
        CHECK(r.p234(0, 0) == (odd ? -base.p234(0, 0) : base.p234(0, 0)));
        CHECK(r.p234(1, 0) == base.p234(1, 0));
    }
}

TEST_CASE("basis change matrix")
{
    const auto h = make_holonomy(sixth, sixth, half, five_sixths);
    const auto bc = basis_change_matrix(h, rational(15));
    CHECK(bc.m(0, 0).coefficient(rational(0)) == z(h[2]) * z(h[4]) + z(-h[2]) * z(-h[4]));
    CHECK(bc.m(0, 1).coefficient(rational(0)) == z(h[4]) * z(-h[2]) + z(-h[4]) * z(h[2]));
    CHECK(bc.m(1, 0).coefficient(rational(0)) == -cyclotomic::zeta_power(12, 0));
    CHECK(bc.m(1, 1).coefficient(rational(0)) == cyclotomic::zeta_power(12, 0));

    for (const auto &t : all_holonomy_tuples()) {
        for (const rational &sigma : {rational(0), rational(1, 3), rational(2, 3)}) {
            const auto b = basis_change_matrix(t, rational(12), sigma);
            CHECK(b.det == expected_determinant(t, rational(12), sigma));
        }
    }

    const auto s = make_holonomy(sixth, sixth, sixth, sixth);
    const auto d = basis_change_matrix(s, rational(10)).det;
    CHECK(d.coefficient(rational(0)) == cyclotomic::zeta_power(12, 0) * rational(3));
    const auto g = gamma_cyclotomic(rational(10));
    CHECK(d == (g * g * rational(3)).truncated(rational(10)));

    const auto singular = basis_change_matrix(make_holonomy(sixth, half, sixth, sixth), rational(10));
    CHECK(!singular.invertible);
    CHECK(is_zero_series(singular.det));
    CHECK_THROWS_AS(trivialized_products(make_holonomy(sixth, half, sixth, sixth), rational(10)), domain_error);
}

TEST_CASE("Watson form of the transformed (124) row")
{
    const rational order(12), eighth(1, 8);
    for (const auto &h : all_holonomy_tuples()) {
        const auto raw = raw_products(h, order);
        const auto bc = basis_change_matrix(h, order);
        const auto row = raw.p124 * bc.m;
        auto th = [&](const rational &u) { return jacobi_theta2_half(u, order + eighth, 12).shifted(-eighth); };
        const auto a = th(h[1] + h[4] + half) * th(h[1] - h[2] + half);
        const auto b = th(h[1] - h[2] + h[4]) * th(h[1]);
        CHECK(row(0, 0).truncated(order) == a.truncated(order));
        CHECK(row(0, 1).truncated(order) == b.truncated(order));
    }
}

TEST_CASE("trivialized products at u = 1/6")
{
    const auto h = make_holonomy(sixth, sixth, sixth, sixth);
    const auto t = trivialized_products(h, rational(20));
    const auto c = trivialized_constants(h);
    for (const auto *s : {&t.p123, &t.p134, &t.p124(0, 0), &t.p124(0, 1), &t.p234(0, 0), &t.p234(1, 0)}) {
        CHECK(!first_nonconstant(*s).has_value());
    }
    CHECK(t.p123.coefficient(rational(0)) == c.p123);
    CHECK(t.p134.coefficient(rational(0)) == c.p134);
    // -(z1 z4 - 1/(z1 z4))(z1/z2 - z2/z1) with all half-characters e^{i pi/6}
    const cyclotomic one = cyclotomic::zeta_power(12, 0);
    CHECK(t.p124(0, 0).coefficient(rational(0)) == c.p124[0]);
    CHECK(c.p124[0].is_zero());
    CHECK(t.p124(0, 1).coefficient(rational(0)) == c.p124[1]);
    CHECK(c.p124[1] == one * rational(3));
    CHECK(t.p234(0, 0).coefficient(rational(0)).is_zero());
    CHECK(t.p234(1, 0).coefficient(rational(0)) == one);
}

TEST_CASE("shifted check")
{
    const auto h = make_holonomy(sixth, half, sixth, half);
    const auto rep = shifted_check_report(h, rational(20));
    CHECK(rep.ok);
    REQUIRE(rep.sigma.has_value());
    CHECK(*rep.sigma == rational(1, 3));

    CHECK(shifted_check(h, rational(0)));
    for (const auto &t : all_holonomy_tuples()) {
        const auto r = shifted_check_report(t, rational(20));
        INFO(t[1].pretty() << " " << t[2].pretty() << " " << t[3].pretty() << " " << t[4].pretty() << ": "
                           << r.failure);
        CHECK(r.ok);
    }
}

TEST_CASE("every invertible shift trivializes")
{
    for (const auto &t : all_holonomy_tuples()) {
        for (const rational &sigma : {rational(0), rational(1, 3), rational(2, 3)}) {
            if (basis_change_matrix(t, rational(10), sigma).invertible) {
                CHECK(check_trivialized(t, rational(10), sigma).ok);
            }
        }
    }
}
