#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include <pencil/lattice.hpp>

using namespace pencil;

namespace
{

// Norm counts of E8 in the even-coordinate model D8 + (D8 + (1/2)^8), by brute force
// over doubled coordinates y = 2x (independent of the blowup-coordinate enumeration).
std::vector<long> d8_model_counts(long max_norm)
{
    std::vector<long> counts(static_cast<std::size_t>(max_norm + 1), 0);
    const long lim = 2 * detail::isqrt(max_norm) + 1;
    std::array<long, 8> y{};
    auto rec = [&](auto &&self, std::size_t i, long sq, long sum) -> void {
        if (4 * max_norm < sq) {
            return;
        }
        if (i == 8) {
            const bool all_even = std::all_of(y.begin(), y.end(), [](long v) { return v % 2 == 0; });
            const bool all_odd = std::all_of(y.begin(), y.end(), [](long v) { return v % 2 != 0; });
            if ((all_even || all_odd) && sum % 4 == 0 && sq % 4 == 0) {
                ++counts[static_cast<std::size_t>(sq / 4)];
            }
            return;
        }
        for (long v = -lim; v <= lim; ++v) {
            y[i] = v;
            self(self, i + 1, sq + v * v, sum + v);
        }
    };
    rec(rec, 0, 0, 0);
    return counts;
}

h2_int random_class(std::mt19937 &rng)
{
    std::uniform_int_distribution<long> d(-4, 4);
    h2_int x;
    for (auto &c : x.c) {
        c = d(rng);
    }
    return x;
}

} // namespace

TEST_CASE("intersection pairing")
{
    CHECK(intersect(h2::L(), h2::L()) == 1);
    CHECK(intersect(h2::mbar(), h2::mbar()) == 0);
    CHECK(intersect(h2::s(0, 1), h2::s(0, 1)) == -2);
    CHECK(intersect(h2::A(3), h2::A(3)) == -1);
    CHECK(intersect(h2::mbar(), h2::A(0)) == 1);
}

TEST_CASE("E8 basis")
{
    const auto b = e8_basis();
    REQUIRE(b.size() == 8);
    rmatrix gram(8, rvector(8));
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(intersect(h2::mbar(), b[i]) == 0);
        CHECK(intersect(h2::A(0), b[i]) == 0);
        CHECK(intersect(b[i], b[i]) == -2);
        for (std::size_t j = 0; j < 8; ++j) {
            gram[i][j] = rational(intersect(b[i], b[j]));
        }
    }
    CHECK(abs(determinant(gram)) == rational(1));
    const auto t = h2::L() - h2::A(1) - h2::A(2) - h2::A(3);
    CHECK(intersect(t, t) == -2);
}

TEST_CASE("short vector counts against the D8 model")
{
    const auto oracle = d8_model_counts(8);
    const auto counts = e8_norm_counts(8);
    CHECK(counts == oracle);
    CHECK(counts[0] == 1);
    CHECK(counts[2] == 240);
    CHECK(counts[4] == 2160);
    for (std::size_t n = 1; n < counts.size(); n += 2) {
        CHECK(counts[n] == 0);
    }
}

TEST_CASE("short_vectors output")
{
    CHECK(short_vectors(0) == std::vector<h2_int>{h2_int()});
    const auto v = short_vectors(4);
    CHECK(v.size() == 1 + 240 + 2160);
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
    const std::set<h2_int> set(v.begin(), v.end());
    for (const auto &x : v) {
        CHECK(set.count(-x) == 1);
        CHECK(intersect(x, h2::mbar()) == 0);
        CHECK(x.a(0) == 0);
        CHECK(-intersect(x, x) <= 4);
    }
    CHECK(short_vectors(-1).empty());
}

TEST_CASE("section classes")
{
    for (const auto &x : short_vectors(6)) {
        for (long k = 0; k < 3; ++k) {
            const section_class s{x, k};
            const auto a = s.a();
            CHECK(intersect(h2::mbar(), a) == 1);
            CHECK(intersect(a, a) == 2 * k - 1);
        }
    }
}

TEST_CASE("surface models")
{
    for (const auto &s : surface_model::all()) {
        for (const auto &d : s.components) {
            CHECK(intersect(d, d) == -1);
            CHECK(intersect(d, h2::mbar()) == 1);
        }
        CHECK(surface_model::parse(s.name()) == s);
    }
    CHECK(surface_model::del_pezzo(3).delta() == h2::A(0) + h2::A(1) + h2::A(2));
    CHECK(surface_model::p1xp1().d() == 8);
    CHECK_THROWS_AS(surface_model::parse("dp0"), domain_error);
    CHECK_THROWS_AS(surface_model::parse("cp2"), domain_error);
}

TEST_CASE("operator C")
{
    const auto dp9 = surface_model::del_pezzo(9);
    CHECK(operator_c(to_rational(h2::A(0)), dp9) == to_rational(-h2::A(0)));
    CHECK(operator_c(to_rational(h2::L()), dp9) == h2_rat());
    std::mt19937 rng(1);
    for (const auto &s : surface_model::all()) {
        for (int t = 0; t < 20; ++t) {
            const auto x = to_rational(random_class(rng)), y = to_rational(random_class(rng));
            const auto cx = operator_c(x, s);
            CHECK(operator_c(cx, s) + cx == h2_rat());
            auto sum = x + y;
            CHECK(operator_c(sum, s) == cx + operator_c(y, s));
        }
    }
}

TEST_CASE("monodromy generators")
{
    for (const auto &s : surface_model::all()) {
        const auto gens = monodromy_generators(s);
        const bool has_reflection = intersect(reflection_class(), s.delta()) == 0;
        CHECK(has_reflection == (s.kind == surface_kind::p1xp1 || s.degree <= 6));
        for (const auto &m : gens) {
            CHECK(apply_matrix(m, s.delta()) == s.delta());
            CHECK(apply_matrix(m, h2::mbar()) == h2::mbar());
            for (std::size_t i = 0; i < h2_rank; ++i) {
                for (std::size_t j = 0; j < h2_rank; ++j) {
                    h2_int ei, ej;
                    ei.c[i] = 1;
                    ej.c[j] = 1;
                    CHECK(intersect(apply_matrix(m, ei), apply_matrix(m, ej)) == intersect(ei, ej));
                }
            }
        }
    }
    const auto r = reflection_matrix(reflection_class());
    std::mt19937 rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto x = random_class(rng);
        CHECK(apply_matrix(r, apply_matrix(r, x)) == x);
    }
}

TEST_CASE("invariant subspaces")
{
    for (const auto &s : surface_model::all()) {
        const auto w = invariant_subspace(monodromy_generators(s));
        const std::vector<h2_rat> expected{to_rational(s.delta()), to_rational(h2::mbar())};
        if (s.admits_trivial_bulk()) {
            CHECK(w.size() == 2);
            CHECK(same_span(w, expected));
        } else {
            CHECK(w.size() == 3);
            CHECK(in_span(w, to_rational(s.delta())));
            CHECK(in_span(w, to_rational(h2::mbar())));
        }
    }
    // F1: the extra direction is A0.
    const auto w8 = invariant_subspace(monodromy_generators(surface_model::del_pezzo(8)));
    CHECK(in_span(w8, to_rational(h2::A(0))));
}
