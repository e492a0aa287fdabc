#ifndef PENCIL_ACCEPTANCE_HPP
#define PENCIL_ACCEPTANCE_HPP

#include <algorithm>
#include <exception>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pencil/connection.hpp>
#include <pencil/fukaya.hpp>
#include <pencil/gw.hpp>
#include <pencil/lattice.hpp>
#include <pencil/modular.hpp>

namespace pencil::acceptance
{

struct criterion_result {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

namespace detail
{

inline series sparse(const std::vector<std::pair<long, long>> &terms, long prec)
{
    std::vector<std::pair<rational, rational>> t;
    for (const auto &[e, c] : terms) {
        t.emplace_back(rational(e), rational(c));
    }
    return series::from_terms(t, rational(prec));
}

inline bool class_is_zero(const series_class &a)
{
    return std::all_of(a.c.begin(), a.c.end(), [](const series &c) { return c.is_zero(); });
}

inline std::vector<h2_rat> delta_mbar(const surface_model &s)
{
    return {to_rational(s.delta()), to_rational(h2::mbar())};
}

// Collects failed sub-checks for the detail column.
class checklist
{
public:
    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            m_failed.push_back(what);
        }
    }
    void note(const std::string &s)
    {
        m_notes.push_back(s);
    }
    bool ok() const
    {
        return m_failed.empty();
    }
    std::string detail() const
    {
        std::string out;
        for (const auto &f : m_failed) {
            out += (out.empty() ? "" : "; ") + ("failed: " + f);
        }
        for (const auto &n : m_notes) {
            out += (out.empty() ? "" : "; ") + n;
        }
        return out;
    }

private:
    std::vector<std::string> m_failed, m_notes;
};

inline const fundamental_system &dp9_theta32()
{
    static const auto f = fundamental_solution(surface_model::del_pezzo(9), 32);
    return f;
}

} // namespace detail

inline criterion_result theta_table()
{
    using detail::sparse;
    const auto &f = detail::dp9_theta32();
    detail::checklist c;
    c.require(f(0, 0) == sparse({{0, 1}, {3, 6}, {9, 6}, {12, 6}, {21, 12}, {27, 6}}, 32), "Theta11");
    c.require(f(1, 0) == sparse({{2, -18},
                                 {5, -72},
                                 {8, -306},
                                 {11, -1008},
                                 {14, -2934},
                                 {17, -7704},
                                 {20, -19134},
                                 {23, -44496},
                                 {26, -99270},
                                 {29, -212256}},
                                32),
              "Theta21");
    c.require(f(0, 1) == sparse({{1, -1}, {4, -1}, {7, -2}, {13, -2}, {16, -1}, {19, -2}, {25, -1}, {28, -2}, {31, -2}},
                                32),
              "Theta12");
    c.require(f(1, 1) == sparse({{0, 1},
                                 {3, 8},
                                 {6, 44},
                                 {9, 152},
                                 {12, 487},
                                 {15, 1352},
                                 {18, 3518},
                                 {21, 8480},
                                 {24, 19503},
                                 {27, 42768},
                                 {30, 90530}},
                                32),
              "Theta22");
    c.note("DelPezzo(9), all four entries mod O(q^32)");
    return {1, "Theta table", c.ok(), c.detail()};
}

inline criterion_result psi_closed_forms()
{
    const long order = 30;
    const rational p(order);
    detail::checklist c;
    // DelPezzo(9): Delta(q^3)^{1/6} / q^{1/2} = prod (1 - q^{3n})^4.
    const auto psi9 = psi_eta(surface_model::del_pezzo(9), order).psi;
    c.require(psi9 == eta_product({{3, 4}}, rational(0), p), "DelPezzo(9): psi = Delta(q^3)^(1/6)/q^(1/2)");
    // DelPezzo(1) against Delta(q)^{1/2} / Theta_E8 with Theta_E8 = E4 from divisor sums.
    const auto psi1 = psi_eta(surface_model::del_pezzo(1), order).psi;
    const auto ratio = eta_product({{1, 12}}, rational(0), p) * invert(eisenstein_e4(order));
    const bool corrected = psi1 == ratio;
    const bool printed = psi1 == ratio.shifted(rational(1)).truncated(p);
    c.require(printed, "DelPezzo(1): psi = q^(1/2) Delta^(1/2)/Theta_E8 (as printed)");
    if (!printed && corrected) {
        c.note("DelPezzo(1): psi = q^(-1/2) Delta^(1/2)/Theta_E8 holds mod O(q^30); the printed form is q psi, "
               "valuation 1, incompatible with psi(0) = 1");
    }
    c.note("mod O(q^30)");
    return {2, "psi closed forms", c.ok(), c.detail()};
}

inline criterion_result f1_bulk_term()
{
    const auto f = solve_f1_ansatz(6);
    detail::checklist c;
    const auto expected = detail::sparse({{0, 1}, {1, 1}}, 4) +
                          series::term(rational(-8, 3), rational(2)) + series::term(rational(-1), rational(3));
    c.require(f.beta.truncated(rational(4)) == expected, "beta = 1 + q - 8/3 q^2 - q^3 + O(q^4)");
    c.require(f.max_consistent_order >= 3, "max_consistent_order >= 3");
    c.note("max_consistent_order = " + std::to_string(f.max_consistent_order) + " at order 6");
    return {3, "F1 bulk term", c.ok(), c.detail()};
}

inline criterion_result mirror_map_checks()
{
    using detail::sparse;
    const auto &f = detail::dp9_theta32();
    detail::checklist c;
    const auto z = mirror_map(f);
    c.require(z.truncated(rational(30)) == sparse({{-1, 1},
                                                   {2, 5},
                                                   {5, -7},
                                                   {8, 3},
                                                   {11, 15},
                                                   {14, -32},
                                                   {17, 9},
                                                   {20, 58},
                                                   {23, -96},
                                                   {26, 22},
                                                   {29, 149}},
                                                  30),
              "z = -Theta11/Theta12, eleven coefficients");
    const auto j = j_of_z(z);
    c.require(j.precision().has_value() && *j.precision() >= rational(22), "j(z) precision");
    c.require(j.truncated(rational(22)) == sparse({{-9, 1}, {0, 744}, {9, 196884}, {18, 21493760}}, 22),
              "j(z) = q^-9 + 744 + 196884 q^9 + 21493760 q^18");
    const auto jc = j_check(f);
    c.require(jc.agrees(), "j(z) = j(q^9)");
    const auto h = hesse_reparam(z);
    const std::vector<long> hesse{1, -15, 171, -1679, 15054, -126981};
    bool hok = h.valuation() == rational(1);
    for (std::size_t k = 0; k < hesse.size(); ++k) {
        hok = hok && h.coefficient(rational(static_cast<long>(k) + 1)) == rational(hesse[k]);
    }
    c.require(hok, "Hesse coefficients 1, -15, 171, -1679, 15054, -126981");
    c.note("j(z) = j(q^9) mod O(q^" + jc.precision.pretty() + ")");
    return {4, "mirror map", c.ok(), c.detail()};
}

inline criterion_result oberdieck_forms()
{
    const auto rep = oberdieck_check(31);
    detail::checklist c;
    c.require(rep[0].agrees(), "Theta11 = Theta_hex(q^3)");
    c.require(rep[1].agrees(), "Theta12 = -1/3 Theta_hex+d(q^3)");
    c.require(rep[2].agrees(), "Theta12 = -Delta(q^9)^(1/8)/(3 Delta(q^3)^(1/24)) (as printed)");
    if (!rep[2].agrees() && rep[3].agrees()) {
        c.note("the printed eta quotient equals Theta12/3; Theta12 = -Delta(q^9)^(1/8)/Delta(q^3)^(1/24) holds "
               "mod O(q^32)");
    }
    return {5, "closed forms for Theta11 and Theta12", c.ok(), c.detail()};
}

inline criterion_result triviality()
{
    detail::checklist c;
    for (const auto &s : surface_model::all()) {
        if (!s.admits_trivial_bulk()) {
            continue;
        }
        const auto inv = invariant_subspace(monodromy_generators(s));
        c.require(same_span(inv, detail::delta_mbar(s)), s.name() + ": invariant subspace");
        c.require(in_span_over_series(z1(s, 8), detail::delta_mbar(s)), s.name() + ": z1 in span");
    }
    const auto s8 = surface_model::del_pezzo(8);
    auto z8 = z1(s8, 1);
    z8 -= times_class(series::term(rational(1), rational(-1)), s8.delta());
    z8 -= times_class(series::scalar(rational(1)), h2::A(0));
    c.require(in_span_over_series(z8, {to_rational(h2::mbar())}), "DelPezzo(8): z1 = q^-1 [delta E] + A0 mod [M-bar]");
    return {6, "triviality criteria", c.ok(), c.detail()};
}

inline criterion_result ode_identities(long order)
{
    detail::checklist c;
    const series one = series::scalar(rational(1)), zero;
    for (const auto &s : surface_model::all()) {
        for (std::size_t i = 0; i < h2_rank; ++i) {
            h2_rat e;
            e.c[i] = rational(1);
            const auto ce = operator_c(e, s);
            c.require(operator_c(ce, s) == -ce, s.name() + ": C^2 = -C");
        }
        const auto b = solve_fundamental_general(s, order + 1);
        c.require(detail::class_is_zero(fundamental_residual(s, b, one, zero, order)),
                  s.name() + ": general solve residual");
    }
    for (int d : {9, 1}) {
        const auto s = surface_model::del_pezzo(d);
        const h2_int delta = s.delta();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t j = 1; j < 9; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                if (delta.a(i) == delta.a(j)) {
                    pairs.emplace_back(i, j);
                }
            }
        }
        const auto [i0, j0] = lambda_pair(s);
        const auto l = lambda_eig(s, i0, j0, order + 1);
        // A spread of pairs; all pairs are equivalent under the monodromy.
        for (std::size_t k = 0; k < pairs.size(); k += 5) {
            const auto [i, j] = pairs[k];
            c.require(lambda_eig(s, i, j, order + 1) == l, s.name() + ": lambda independent of the pair");
        }
        const auto g = gamma_matrix(s, order);
        c.require(riccati_residual(l, g).truncated(rational(order - 1)).is_zero(), s.name() + ": lambda Riccati");
        const auto zz = z2(s, order);
        c.require(zz.is_zero() || zz.valuation().sign() >= 0, s.name() + ": z2 has no negative exponents");
    }
    const auto f = fundamental_solution(surface_model::del_pezzo(9), order + 1);
    for (long sv : {-2, 0, 1, 5}) {
        const auto w = riccati_solution(f, rational(sv));
        c.require(riccati_residual(w, f.gamma).truncated(rational(order - 1)).is_zero(),
                  "riccati_solution(" + std::to_string(sv) + ") residual");
    }
    c.note("order " + std::to_string(order));
    return {7, "ODE and eigenvalue identities", c.ok(), c.detail()};
}

inline criterion_result theta_identities(long order)
{
    detail::checklist c;
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<long> num(-24, 24);
    std::uniform_int_distribution<int> den_pick(0, 4);
    const long dens[] = {2, 3, 4, 6, 12};
    for (int t = 0; t < 10; ++t) {
        const rational u(num(rng), dens[den_pick(rng)]), v(num(rng), dens[den_pick(rng)]);
        const auto r = watson_residual(u, v, order);
        c.require(r.terms().empty(), "Watson residual at (" + u.pretty() + ", " + v.pretty() + ")");
    }
    for (const auto &u : {rational(1, 6), rational(1, 2), rational(5, 6)}) {
        c.require(special_value_check(u, rational(order)).terms().empty(), "special value at u = " + u.pretty());
    }
    c.require(gamma_series(40) == eta_product({{3, 1}}, rational(0), rational(40)), "gamma = prod(1 - q^3n) mod O(q^40)");
    const auto g = gamma_series(order);
    c.require(g * g * g * g == psi_eta(surface_model::del_pezzo(9), order).psi, "gamma^4 = psi(DelPezzo(9))");
    c.note("order " + std::to_string(order));
    return {8, "theta identities", c.ok(), c.detail()};
}

inline criterion_result fukaya_trivialization(long order)
{
    detail::checklist c;
    const rational p(order);
    int shifted = 0;
    for (const auto &h : all_holonomy_tuples()) {
        const auto rep = shifted_check_report(h, p);
        c.require(rep.ok, "tuple (" + h[1].pretty() + ", " + h[2].pretty() + ", " + h[3].pretty() + ", " +
                              h[4].pretty() + "): " + rep.failure);
        if (rep.sigma && !rep.sigma->is_zero()) {
            ++shifted;
        }
        // The unshifted (124) row against the displayed Watson constants.
        if (basis_change_matrix(h, p).invertible) {
            const auto t = trivialized_products(h, p);
            const auto k = trivialized_constants(h);
            for (std::size_t j = 0; j < 2; ++j) {
                const auto &x = t.p124(0, j);
                c.require(!first_nonconstant(x) && x.coefficient(rational(0)) == k.p124[j],
                          "(124) row entry " + std::to_string(j) + " at (" + h[1].pretty() + ", " + h[2].pretty() +
                              ", " + h[3].pretty() + ", " + h[4].pretty() + ")");
            }
        }
    }
    c.note("81 tuples, order " + std::to_string(order) + ", " + std::to_string(shifted) + " needed a shift");
    return {9, "Fukaya trivialization", c.ok(), c.detail()};
}

inline criterion_result e8_enumeration(long order)
{
    detail::checklist c;
    c.require(theta_e8(order) == eisenstein_e4(order), "theta_E8 = E4");
    c.note("mod O(q^" + std::to_string(order) + ")");
    return {10, "E8 enumeration", c.ok(), c.detail()};
}

// Runs all ten criteria, concurrently when parallel is set; results are in
// criterion order either way.
inline std::vector<criterion_result> run_all(long order = 20, bool parallel = true)
{
    std::vector<std::function<criterion_result()>> jobs{
        theta_table,
        psi_closed_forms,
        f1_bulk_term,
        mirror_map_checks,
        oberdieck_forms,
        triviality,
        [order] { return ode_identities(order); },
        [order] { return theta_identities(order); },
        [order] { return fukaya_trivialization(order); },
        [order] { return e8_enumeration(order); },
    };
    auto guarded = [](int id, const std::function<criterion_result()> &job) {
        try {
            return job();
        } catch (const std::exception &e) {
            return criterion_result{id, "criterion " + std::to_string(id), false,
                                    std::string("exception: ") + e.what()};
        }
    };
    std::vector<criterion_result> out;
    if (!parallel) {
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            out.push_back(guarded(static_cast<int>(i) + 1, jobs[i]));
        }
        return out;
    }
    std::vector<std::future<criterion_result>> futures;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        futures.push_back(std::async(std::launch::async, guarded, static_cast<int>(i) + 1, jobs[i]));
    }
    for (auto &f : futures) {
        out.push_back(f.get());
    }
    return out;
}

inline std::string format_line(const criterion_result &r)
{
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title;
    if (!r.detail.empty()) {
        os << ": " << r.detail;
    }
    return os.str();
}

// Exit status: 0 when every failure is in allowed, 1 otherwise.
inline int exit_status(const std::vector<criterion_result> &results, const std::set<int> &allowed)
{
    for (const auto &r : results) {
        if (!r.pass && !allowed.count(r.id)) {
            return 1;
        }
    }
    return 0;
}

} // namespace pencil::acceptance

#endif
