#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include <pencil/ring/cyclotomic.hpp>
#include <pencil/ring/rational.hpp>

using namespace pencil;

namespace
{

// Numerical value of a cyclotomic element, used as an independent oracle.
std::complex<double> evaluate(const cyclotomic &c)
{
    const double pi = std::acos(-1.0);
    std::complex<double> z = std::polar(1.0, 2 * pi / c.order()), acc = 0, p = 1;
    for (const auto &x : c.coeffs()) {
        acc += x.to_double() * p;
        p *= z;
    }
    return acc;
}

cyclotomic random_element(std::mt19937 &rng, unsigned n)
{
    std::uniform_int_distribution<long> d(-5, 5), den(1, 4);
    cyclotomic c(n);
    std::vector<rational> cs;
    for (unsigned i = 0; i < n; ++i) {
        cs.emplace_back(d(rng), den(rng));
    }
    return cyclotomic(n, cs);
}

} // namespace

TEST_CASE("rational lowest terms and formatting")
{
    rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(r.str() == "-3/2");
    CHECK(rational(5).str() == "5/1");
    CHECK(rational::parse("10/4") == rational(5, 2));
    CHECK(rational::parse("-7") == rational(-7));
    CHECK_THROWS_AS(rational::parse("1/0"), division_by_zero_error);
    CHECK_THROWS_AS(rational::parse("x"), parse_error);
    CHECK_THROWS_AS(rational(1) / rational(0), division_by_zero_error);
    CHECK(floor(rational(-1, 2)) == -1);
    CHECK(ceil(rational(1, 2)) == 1);
}

TEST_CASE("rational exact powers")
{
    CHECK(exact_pow(rational(4, 9), rational(1, 2)) == std::pair{true, rational(2, 3)});
    CHECK(exact_pow(rational(-8), rational(1, 3)) == std::pair{true, rational(-2)});
    CHECK_FALSE(exact_pow(rational(2), rational(1, 2)).first);
    CHECK_FALSE(exact_pow(rational(-4), rational(1, 2)).first);
    CHECK(exact_pow(rational(4), rational(-3, 2)) == std::pair{true, rational(1, 8)});
}

TEST_CASE("cyclotomic polynomial is the minimal polynomial")
{
    CHECK(detail::cyclotomic_polynomial(12) == detail::qpoly{1, 0, -1, 0, 1});
    CHECK(detail::cyclotomic_polynomial(24).size() == 9);
    for (unsigned n : {1u, 2u, 3u, 4u, 6u, 12u, 24u}) {
        const cyclotomic z = cyclotomic::zeta_power(n, 1);
        cyclotomic p(n, rational(1));
        for (unsigned i = 0; i < n; ++i) {
            p *= z;
        }
        CHECK(p == cyclotomic(n, rational(1)));
        // Phi_N(zeta) = 0
        cyclotomic phi(n);
        const auto poly = detail::cyclotomic_polynomial(n);
        cyclotomic zp(n, rational(1));
        for (const auto &c : poly) {
            phi += zp * c;
            zp *= z;
        }
        CHECK(phi.is_zero());
    }
}

TEST_CASE("root_of_unity")
{
    CHECK(root_of_unity(rational(1, 2)) == cyclotomic(12, rational(-1)));
    const auto i = root_of_unity(rational(1, 4));
    CHECK(i * i == cyclotomic(12, rational(-1)));
    // 2 cos(pi/3) = 1, cross-checked numerically.
    const auto s = root_of_unity(rational(1, 6)) + root_of_unity(rational(-1, 6));
    CHECK(std::lround(evaluate(s).real()) == 1);
    CHECK(s == cyclotomic(12, rational(1)));
    CHECK_THROWS_AS(root_of_unity(rational(1, 5)), unsupported_order_error);
    CHECK_NOTHROW(root_of_unity(rational(1, 24), 24));
    // zeta_12^3 = i
    CHECK(root_of_unity(rational(1, 12)) * root_of_unity(rational(1, 6)) == i);
}

TEST_CASE("root_of_unity is a homomorphism")
{
    for (long a = -12; a <= 12; ++a) {
        for (long b = -12; b <= 12; ++b) {
            const rational r(a, 12), s(b, 12);
            CHECK(root_of_unity(r) * root_of_unity(s) == root_of_unity(frac(r + s)));
        }
    }
}

TEST_CASE("cyclotomic inverse")
{
    CHECK(invert(cyclotomic(12, rational(1))) == cyclotomic(12, rational(1)));
    CHECK(invert(cyclotomic(12, rational(-1))) == cyclotomic(12, rational(-1)));
    const cyclotomic one_plus_i(4, std::vector<rational>{1, 1});
    CHECK(invert(one_plus_i) == cyclotomic(4, std::vector<rational>{rational(1, 2), rational(-1, 2)}));
    CHECK_THROWS_AS(invert(cyclotomic(12)), division_by_zero_error);
}

TEST_CASE("cyclotomic field axioms on random samples")
{
    std::mt19937 rng(12345);
    for (unsigned n : {12u, 24u, 4u}) {
        for (int trial = 0; trial < 40; ++trial) {
            const auto a = random_element(rng, n), b = random_element(rng, n), c = random_element(rng, n);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            if (!a.is_zero()) {
                CHECK(a * invert(a) == cyclotomic(n, rational(1)));
            }
            const auto va = evaluate(a), vb = evaluate(b);
            CHECK(std::abs(evaluate(a * b) - va * vb) < 1e-9);
        }
    }
}

TEST_CASE("mixing cyclotomic orders is an error")
{
    CHECK_THROWS_AS(cyclotomic(12) + cyclotomic(24), ring_mismatch_error);
    CHECK_THROWS_AS(cyclotomic(12) * cyclotomic(4), ring_mismatch_error);
}
