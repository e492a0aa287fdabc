#ifndef PENCIL_SERIES_PUISEUX_SERIES_HPP
#define PENCIL_SERIES_PUISEUX_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/ring/cyclotomic.hpp>
#include <pencil/ring/rational.hpp>
#include <pencil/series/ring_traits.hpp>

namespace pencil
{

// Known modulo O(q^P) for a finite P; std::nullopt means exact.
using precision_type = std::optional<rational>;

inline precision_type min_precision(const precision_type &a, const precision_type &b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

inline precision_type shift_precision(const precision_type &p, const rational &d)
{
    return p ? precision_type(*p + d) : std::nullopt;
}

inline std::string format_exponent(const rational &e)
{
    if (e == rational(1)) {
        return "q";
    }
    if (e.is_integer()) {
        return "q^" + e.pretty();
    }
    return "q^(" + e.pretty() + ")";
}

// Truncated formal series sum_k c_k q^{k/g} + O(q^P).
//
// Terms are keyed by the numerator k on the grain g; the grain is kept minimal so
// that equality is structural. Stored terms are nonzero and lie below the precision.
template <typename C>
class puiseux_series
{
public:
    using coeff_type = C;
    using traits = ring_traits<C>;
    using tag_type = typename traits::tag_type;

    // Exact zero.
    puiseux_series() : m_tag(traits::default_tag()) {}
    explicit puiseux_series(tag_type tag, precision_type prec = std::nullopt) : m_tag(tag), m_prec(std::move(prec)) {}

    static puiseux_series constant(const C &c, precision_type prec = std::nullopt)
    {
        return monomial(c, rational(0), std::move(prec));
    }
    // Constant with a rational value in the ring identified by tag.
    static puiseux_series scalar(const rational &c, tag_type tag = traits::default_tag(),
                                 precision_type prec = std::nullopt)
    {
        return monomial(traits::from_rational(c, tag), rational(0), std::move(prec));
    }
    static puiseux_series monomial(const C &c, const rational &e, precision_type prec = std::nullopt)
    {
        puiseux_series r(traits::tag_of(c), std::move(prec));
        r.m_grain = e.den().get_si();
        r.m_terms.emplace(to_long(e.num()), c);
        r.canonicalize();
        return r;
    }
    // c q^e with a rational c in the ring identified by tag.
    static puiseux_series term(const rational &c, const rational &e, tag_type tag = traits::default_tag(),
                               precision_type prec = std::nullopt)
    {
        return monomial(traits::from_rational(c, tag), e, std::move(prec));
    }
    // The series q.
    static puiseux_series q(tag_type tag = traits::default_tag())
    {
        return term(rational(1), rational(1), tag);
    }
    // O(q^P).
    static puiseux_series big_o(const rational &p, tag_type tag = traits::default_tag())
    {
        return puiseux_series(tag, p);
    }
    static puiseux_series from_terms(const std::vector<std::pair<rational, C>> &terms, precision_type prec,
                                     tag_type tag = traits::default_tag())
    {
        puiseux_series r(tag, std::move(prec));
        long g = 1;
        for (const auto &t : terms) {
            g = std::lcm(g, t.first.den().get_si());
        }
        r.m_grain = g;
        for (const auto &[e, c] : terms) {
            if (traits::tag_of(c) != tag) {
                throw ring_mismatch_error("series term in " + traits::name(traits::tag_of(c)) + " added to series over "
                                          + traits::name(tag));
            }
            const long k = to_long((e * rational(g)).num());
            auto it = r.m_terms.find(k);
            if (it == r.m_terms.end()) {
                r.m_terms.emplace(k, c);
            } else {
                it->second += c;
            }
        }
        r.canonicalize();
        return r;
    }
    // Raw constructor from numerators on a given grain.
    static puiseux_series from_numerators(long grain, std::map<long, C> terms, precision_type prec, tag_type tag)
    {
        if (grain <= 0) {
            throw grain_error("grain must be positive");
        }
        puiseux_series r(tag, std::move(prec));
        r.m_grain = grain;
        r.m_terms = std::move(terms);
        r.canonicalize();
        return r;
    }

    tag_type tag() const
    {
        return m_tag;
    }
    long grain() const
    {
        return m_grain;
    }
    const precision_type &precision() const
    {
        return m_prec;
    }
    bool is_exact() const
    {
        return !m_prec.has_value();
    }
    // No stored terms (the series may still carry an O(q^P)).
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }
    const std::map<long, C> &numerators() const
    {
        return m_terms;
    }
    rational exponent_of(long k) const
    {
        return rational(k, m_grain);
    }
    std::vector<std::pair<rational, C>> terms() const
    {
        std::vector<std::pair<rational, C>> out;
        out.reserve(m_terms.size());
        for (const auto &[k, c] : m_terms) {
            out.emplace_back(exponent_of(k), c);
        }
        return out;
    }

    // Lowest exponent; the precision for an inexact zero series.
    rational valuation() const
    {
        if (!m_terms.empty()) {
            return exponent_of(m_terms.begin()->first);
        }
        if (m_prec) {
            return *m_prec;
        }
        throw domain_error("valuation of the exact zero series");
    }
    rational max_exponent() const
    {
        if (m_terms.empty()) {
            throw domain_error("max exponent of a zero series");
        }
        return exponent_of(m_terms.rbegin()->first);
    }
    const C &leading_coefficient() const
    {
        if (m_terms.empty()) {
            throw domain_error("leading coefficient of a zero series");
        }
        return m_terms.begin()->second;
    }

    // Coefficient of q^e; asking beyond the precision is an error.
    C coefficient(const rational &e) const
    {
        if (m_prec && e >= *m_prec) {
            throw domain_error("coefficient of " + format_exponent(e) + " requested beyond precision O("
                               + format_exponent(*m_prec) + ")");
        }
        const rational k = e * rational(m_grain);
        if (!k.is_integer()) {
            return zero_coeff();
        }
        auto it = m_terms.find(to_long(k.num()));
        return it == m_terms.end() ? zero_coeff() : it->second;
    }

    C zero_coeff() const
    {
        return traits::from_rational(rational(0), m_tag);
    }
    C one_coeff() const
    {
        return traits::from_rational(rational(1), m_tag);
    }

    // Numerators at a multiple of the grain; g2 must be divisible by grain().
    std::vector<std::pair<long, C>> numerators_at(long g2) const
    {
        if (g2 % m_grain != 0) {
            throw grain_error("grain " + std::to_string(g2) + " is not a multiple of " + std::to_string(m_grain));
        }
        const long f = g2 / m_grain;
        std::vector<std::pair<long, C>> out;
        out.reserve(m_terms.size());
        for (const auto &[k, c] : m_terms) {
            out.emplace_back(k * f, c);
        }
        return out;
    }

    // Lowers the precision to min(current, p) and drops the terms above it.
    puiseux_series truncated(const rational &p) const
    {
        puiseux_series r(*this);
        r.m_prec = min_precision(m_prec, p);
        r.canonicalize();
        return r;
    }

    puiseux_series operator-() const
    {
        puiseux_series r(*this);
        for (auto &t : r.m_terms) {
            t.second = -t.second;
        }
        return r;
    }
    puiseux_series &operator+=(const puiseux_series &o)
    {
        check_ring(o);
        const long g = std::lcm(m_grain, o.m_grain);
        rescale_grain(g);
        for (const auto &[k, c] : o.numerators_at(g)) {
            auto it = m_terms.find(k);
            if (it == m_terms.end()) {
                m_terms.emplace(k, c);
            } else {
                it->second += c;
            }
        }
        m_prec = min_precision(m_prec, o.m_prec);
        canonicalize();
        return *this;
    }
    puiseux_series &operator-=(const puiseux_series &o)
    {
        return *this += -o;
    }
    puiseux_series &operator*=(const C &c)
    {
        if (traits::tag_of(c) != m_tag) {
            throw ring_mismatch_error("scalar from " + traits::name(traits::tag_of(c)) + " times series over "
                                      + traits::name(m_tag));
        }
        for (auto &t : m_terms) {
            t.second *= c;
        }
        canonicalize();
        return *this;
    }
    puiseux_series &operator*=(const rational &c)
        requires(!std::is_same_v<C, rational>)
    {
        for (auto &t : m_terms) {
            t.second *= c;
        }
        canonicalize();
        return *this;
    }
    puiseux_series &operator*=(const puiseux_series &o)
    {
        return *this = multiply(*this, o);
    }

    friend puiseux_series operator+(puiseux_series a, const puiseux_series &b)
    {
        return a += b;
    }
    friend puiseux_series operator-(puiseux_series a, const puiseux_series &b)
    {
        return a -= b;
    }
    friend puiseux_series operator*(const puiseux_series &a, const puiseux_series &b)
    {
        return multiply(a, b);
    }
    friend puiseux_series operator*(puiseux_series a, const C &c)
    {
        return a *= c;
    }
    friend puiseux_series operator*(const C &c, puiseux_series a)
    {
        return a *= c;
    }
    friend puiseux_series operator/(const puiseux_series &a, const puiseux_series &b)
    {
        return multiply(a, invert(b));
    }
    friend bool operator==(const puiseux_series &a, const puiseux_series &b)
    {
        a.check_ring(b);
        return a.m_grain == b.m_grain && a.m_prec == b.m_prec && a.m_terms == b.m_terms;
    }

    // Multiplication by the exact monomial q^e.
    puiseux_series shifted(const rational &e) const
    {
        const long g = std::lcm(m_grain, e.den().get_si());
        puiseux_series r(*this);
        r.rescale_grain(g);
        const long d = to_long((e * rational(g)).num());
        std::map<long, C> terms;
        for (auto &[k, c] : r.m_terms) {
            terms.emplace_hint(terms.end(), k + d, std::move(c));
        }
        r.m_terms = std::move(terms);
        r.m_prec = shift_precision(m_prec, e);
        r.canonicalize();
        return r;
    }

    // Substitution q -> q^v for rational v > 0, exponents multiplied by v.
    puiseux_series exponents_scaled(const rational &v) const
    {
        if (v.sign() <= 0) {
            throw domain_error("exponent scaling factor must be positive");
        }
        // k/g * a/b = k*a / (g*b)
        const long a = to_long(v.num()), b = to_long(v.den());
        std::map<long, C> terms;
        for (const auto &[k, c] : m_terms) {
            terms.emplace_hint(terms.end(), k * a, c);
        }
        precision_type p = m_prec ? precision_type(*m_prec * v) : std::nullopt;
        return from_numerators(m_grain * b, std::move(terms), std::move(p), m_tag);
    }

    // Human-readable form, e.g. "1 - 4*q^3 + O(q^6)".
    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto &[k, c] : m_terms) {
            std::string cs = coeff_string(c);
            const rational e = exponent_of(k);
            bool negative = !cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
            if (!first) {
                os << (negative ? " - " : " + ");
                if (negative) {
                    cs = cs.substr(1);
                }
            } else if (negative) {
                os << "-";
                cs = cs.substr(1);
            }
            first = false;
            const bool compound = cs.find_first_of("+-", 1) != std::string::npos;
            if (e.is_zero()) {
                os << (compound ? "(" + cs + ")" : cs);
            } else {
                if (cs != "1") {
                    os << (compound ? "(" + cs + ")" : cs) << "*";
                }
                os << format_exponent(e);
            }
        }
        if (m_prec) {
            os << (first ? "" : " + ") << "O(" << format_exponent(*m_prec) << ")";
        } else if (first) {
            os << "0";
        }
        return os.str();
    }
    friend std::ostream &operator<<(std::ostream &os, const puiseux_series &s)
    {
        return os << s.str();
    }

    void check_ring(const puiseux_series &o) const
    {
        if (!(m_tag == o.m_tag)) {
            throw ring_mismatch_error("mixing series over " + traits::name(m_tag) + " and " + traits::name(o.m_tag));
        }
    }

private:
    static std::string coeff_string(const C &c)
    {
        std::ostringstream os;
        os << c;
        return os.str();
    }

    void rescale_grain(long g)
    {
        if (g == m_grain) {
            return;
        }
        const long f = g / m_grain;
        std::map<long, C> terms;
        for (auto &[k, c] : m_terms) {
            terms.emplace_hint(terms.end(), k * f, std::move(c));
        }
        m_terms = std::move(terms);
        m_grain = g;
    }

    void canonicalize()
    {
        for (auto it = m_terms.begin(); it != m_terms.end();) {
            if (traits::is_zero(it->second) || (m_prec && rational(it->first, m_grain) >= *m_prec)) {
                it = m_terms.erase(it);
            } else {
                ++it;
            }
        }
        long d = m_grain;
        for (const auto &t : m_terms) {
            d = std::gcd(d, t.first);
            if (d == 1) {
                break;
            }
        }
        if (d > 1) {
            std::map<long, C> terms;
            for (auto &[k, c] : m_terms) {
                terms.emplace_hint(terms.end(), k / d, std::move(c));
            }
            m_terms = std::move(terms);
            m_grain /= d;
        }
    }

    static puiseux_series multiply(const puiseux_series &a, const puiseux_series &b)
    {
        a.check_ring(b);
        if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) {
            return puiseux_series(a.m_tag);
        }
        precision_type p;
        if (a.m_prec) {
            p = min_precision(p, *a.m_prec + b.valuation());
        }
        if (b.m_prec) {
            p = min_precision(p, *b.m_prec + a.valuation());
        }
        puiseux_series r(a.m_tag, p);
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        const long g = std::lcm(a.m_grain, b.m_grain);
        const auto at = a.numerators_at(g), bt = b.numerators_at(g);
        const long a0 = at.front().first, b0 = bt.front().first;
        long step = 0;
        for (const auto &t : at) {
            step = std::gcd(step, t.first - a0);
        }
        for (const auto &t : bt) {
            step = std::gcd(step, t.first - b0);
        }
        if (step == 0) {
            step = 1;
        }
        long len = (at.back().first - a0 + bt.back().first - b0) / step + 1;
        if (p) {
            // Keep only a0 + b0 + i*step < P*g.
            const integer lim = ceil(*p * rational(g)) - (a0 + b0);
            if (lim <= 0) {
                r.m_grain = g;
                return r;
            }
            const long cap = to_long((lim + step - 1) / step);
            len = std::min(len, cap);
        }
        std::vector<C> acc(static_cast<std::size_t>(len), a.zero_coeff());
        for (const auto &[ka, ca] : at) {
            const long ia = (ka - a0) / step;
            if (ia >= len) {
                break;
            }
            for (const auto &[kb, cb] : bt) {
                const long i = ia + (kb - b0) / step;
                if (i >= len) {
                    break;
                }
                acc[static_cast<std::size_t>(i)] += ca * cb;
            }
        }
        for (long i = 0; i < len; ++i) {
            auto &c = acc[static_cast<std::size_t>(i)];
            if (!traits::is_zero(c)) {
                r.m_terms.emplace_hint(r.m_terms.end(), a0 + b0 + i * step, std::move(c));
            }
        }
        r.m_grain = g;
        r.canonicalize();
        return r;
    }

    tag_type m_tag;
    long m_grain = 1;
    std::map<long, C> m_terms;
    precision_type m_prec;
};

template <typename C>
    requires(!std::is_same_v<C, rational>)
puiseux_series<C> operator*(puiseux_series<C> a, const rational &c)
{
    return a *= c;
}

template <typename C>
    requires(!std::is_same_v<C, rational>)
puiseux_series<C> operator*(const rational &c, puiseux_series<C> a)
{
    return a *= c;
}

using series = puiseux_series<rational>;
using cseries = puiseux_series<cyclotomic>;

namespace detail
{

// Coefficients of (1 + u)^r where u[0] is ignored and u[m] multiplies t^m; n terms.
template <typename C>
std::vector<C> miller_power(const std::vector<C> &u, const rational &r, std::size_t n, const C &zero, const C &one)
{
    std::vector<C> b(n, zero);
    if (n == 0) {
        return b;
    }
    b[0] = one;
    const rational r1 = r + rational(1);
    for (std::size_t k = 1; k < n; ++k) {
        C acc = zero;
        const std::size_t jmax = std::min(k, u.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) {
            if (ring_traits<C>::is_zero(u[j])) {
                continue;
            }
            const rational w = r1 * rational(static_cast<long>(j)) - rational(static_cast<long>(k));
            if (w.is_zero()) {
                continue;
            }
            acc += u[j] * b[k - j] * w;
        }
        b[k] = acc * (rational(1) / rational(static_cast<long>(k)));
    }
    return b;
}

// Dense view of a series with nonnegative offsets: coefficient of q^{base + m*step}.
template <typename C>
struct dense_view {
    rational base;
    rational step;
    std::vector<C> coeffs;
};

// Splits s = sum over exponents e >= base into a dense array in units of the gcd step,
// with entries m*step < rel_prec.
template <typename C>
dense_view<C> make_dense(const puiseux_series<C> &s, const rational &base, const rational &rel_prec)
{
    dense_view<C> v{base, rational(1), {}};
    const long g = s.grain();
    const long b = to_long((base * rational(g)).num());
    long d = 0;
    for (const auto &[k, c] : s.numerators()) {
        d = std::gcd(d, k - b);
    }
    v.step = d == 0 ? rel_prec : rational(d, g);
    const long n = to_long(ceil(rel_prec / v.step));
    v.coeffs.assign(static_cast<std::size_t>(std::max(n, 0L)), s.zero_coeff());
    for (const auto &[k, c] : s.numerators()) {
        const long m = d == 0 ? 0 : (k - b) / d;
        if (m < n) {
            v.coeffs[static_cast<std::size_t>(m)] = c;
        }
    }
    return v;
}

template <typename C>
puiseux_series<C> from_dense(const dense_view<C> &v, precision_type prec, typename ring_traits<C>::tag_type tag)
{
    std::vector<std::pair<rational, C>> terms;
    for (std::size_t m = 0; m < v.coeffs.size(); ++m) {
        if (!ring_traits<C>::is_zero(v.coeffs[m])) {
            terms.emplace_back(v.base + v.step * rational(static_cast<long>(m)), v.coeffs[m]);
        }
    }
    return puiseux_series<C>::from_terms(terms, std::move(prec), tag);
}

} // namespace detail

template <typename C>
puiseux_series<C> pow_rational(const puiseux_series<C> &a, const rational &r);

template <typename C>
puiseux_series<C> invert(const puiseux_series<C> &a)
{
    if (a.is_zero()) {
        throw division_by_zero_error("inverse of a zero series");
    }
    return pow_rational(a, rational(-1));
}

// a^r for a = c q^v (1 + tail): c^r q^{rv} (1 + tail)^r, keeping the relative precision.
template <typename C>
puiseux_series<C> pow_rational(const puiseux_series<C> &a, const rational &r)
{
    using traits = ring_traits<C>;
    if (a.is_zero()) {
        if (r.sign() > 0) {
            return a.is_exact() ? a : puiseux_series<C>::big_o(*a.precision() * r, a.tag());
        }
        if (r.is_zero()) {
            return puiseux_series<C>::scalar(rational(1), a.tag());
        }
        throw division_by_zero_error("non-positive power of a zero series");
    }
    const rational v = a.valuation();
    const C &c = a.leading_coefficient();
    auto cr = traits::try_pow(c, r);
    if (!cr) {
        throw domain_error("leading coefficient has no exact " + r.pretty() + "-th power in the coefficient ring");
    }
    if (a.is_exact()) {
        if (a.size() == 1) {
            return puiseux_series<C>::monomial(*cr, r * v);
        }
        if (r.is_integer() && r.sign() >= 0) {
            auto acc = puiseux_series<C>::scalar(rational(1), a.tag());
            auto base = a;
            for (long e = to_long(r.num()); e > 0; e >>= 1) {
                if (e & 1) {
                    acc *= base;
                }
                if (e > 1) {
                    base *= base;
                }
            }
            return acc;
        }
        throw domain_error("power " + r.pretty() + " of an exact multi-term series needs a finite precision");
    }
    const rational rel = *a.precision() - v;
    // u = a / (c q^v) - 1
    auto normalized = a.shifted(-v) * traits::inverse(c);
    auto dv = detail::make_dense(normalized, rational(0), rel);
    auto b = detail::miller_power(dv.coeffs, r, dv.coeffs.size(), a.zero_coeff(), a.one_coeff());
    for (auto &x : b) {
        x *= *cr;
    }
    detail::dense_view<C> out{r * v, dv.step, std::move(b)};
    return detail::from_dense(out, r * v + rel, a.tag());
}

template <typename C>
puiseux_series<C> exp_series(const puiseux_series<C> &a)
{
    if (a.is_zero()) {
        return puiseux_series<C>::scalar(rational(1), a.tag(), a.precision());
    }
    if (a.valuation().sign() <= 0) {
        throw domain_error("exp_series needs positive valuation, got " + format_exponent(a.valuation()));
    }
    if (a.is_exact()) {
        throw domain_error("exp_series of an exact nonzero series needs a finite precision");
    }
    const rational p = *a.precision();
    auto dv = detail::make_dense(a, rational(0), p);
    const auto &al = dv.coeffs;
    std::vector<C> e(al.size(), a.zero_coeff());
    if (!e.empty()) {
        e[0] = a.one_coeff();
    }
    for (std::size_t n = 1; n < e.size(); ++n) {
        C acc = a.zero_coeff();
        for (std::size_t m = 1; m <= n; ++m) {
            if (!ring_traits<C>::is_zero(al[m])) {
                acc += al[m] * e[n - m] * rational(static_cast<long>(m));
            }
        }
        e[n] = acc * (rational(1) / rational(static_cast<long>(n)));
    }
    dv.coeffs = std::move(e);
    return detail::from_dense(dv, p, a.tag());
}

template <typename C>
puiseux_series<C> log_series(const puiseux_series<C> &a)
{
    if (a.is_zero() || a.valuation() != rational(0) || !(a.leading_coefficient() == a.one_coeff())) {
        throw domain_error("log_series needs a series of the form 1 + (positive valuation)");
    }
    if (a.size() == 1) {
        return puiseux_series<C>(a.tag(), a.precision());
    }
    if (a.is_exact()) {
        throw domain_error("log_series of an exact non-constant series needs a finite precision");
    }
    const rational p = *a.precision();
    auto dv = detail::make_dense(a, rational(0), p);
    const auto &u = dv.coeffs;
    std::vector<C> l(u.size(), a.zero_coeff());
    for (std::size_t n = 1; n < l.size(); ++n) {
        C acc = a.zero_coeff();
        for (std::size_t m = 1; m < n; ++m) {
            if (!ring_traits<C>::is_zero(l[m]) && !ring_traits<C>::is_zero(u[n - m])) {
                acc += l[m] * u[n - m] * rational(static_cast<long>(m));
            }
        }
        l[n] = u[n] - acc * (rational(1) / rational(static_cast<long>(n)));
    }
    dv.coeffs = std::move(l);
    return detail::from_dense(dv, p, a.tag());
}

template <typename C>
puiseux_series<C> derive(const puiseux_series<C> &a)
{
    std::map<long, C> terms;
    const long g = a.grain();
    for (const auto &[k, c] : a.numerators()) {
        if (k != 0) {
            terms.emplace_hint(terms.end(), k - g, c * rational(k, g));
        }
    }
    return puiseux_series<C>::from_numerators(g, std::move(terms), shift_precision(a.precision(), rational(-1)),
                                              a.tag());
}

template <typename C>
puiseux_series<C> truncate(const puiseux_series<C> &a, const rational &p)
{
    return a.truncated(p);
}

// Substitution q -> g(q) in f. Result precision is
// min(P_f * val(g), P_g + (val(f) - 1) * val(g)).
template <typename C>
puiseux_series<C> compose(const puiseux_series<C> &f, const puiseux_series<C> &g)
{
    f.check_ring(g);
    if (g.is_zero() || g.valuation().sign() <= 0) {
        throw domain_error("compose needs val(g) > 0");
    }
    const rational v = g.valuation();
    const C &c = g.leading_coefficient();
    if (g.is_exact() && g.size() == 1) {
        std::vector<std::pair<rational, C>> terms;
        for (const auto &[e, fc] : f.terms()) {
            auto ce = ring_traits<C>::try_pow(c, e);
            if (!ce) {
                throw domain_error("compose: leading coefficient of g has no exact power " + e.pretty());
            }
            terms.emplace_back(e * v, fc * *ce);
        }
        precision_type p = f.precision() ? precision_type(*f.precision() * v) : std::nullopt;
        return puiseux_series<C>::from_terms(terms, std::move(p), f.tag());
    }
    precision_type p = f.precision() ? precision_type(*f.precision() * v) : std::nullopt;
    if (g.precision() && !f.is_zero()) {
        p = min_precision(p, *g.precision() + (f.valuation() - rational(1)) * v);
    }
    auto result = puiseux_series<C>(f.tag(), p);
    if (!p) {
        // Both exact: only nonnegative integer exponents expand to finitely many terms.
        for (const auto &[e, fc] : f.terms()) {
            if (!e.is_integer() || e.sign() < 0) {
                throw domain_error("compose of exact series needs nonnegative integer exponents in f");
            }
            result += pow_rational(g, e) * fc;
        }
        return result;
    }
    // g = c q^v h with h = 1 + ...; g^e = c^e q^{ve} h^e.
    const auto h = g.shifted(-v) * ring_traits<C>::inverse(c);
    for (const auto &[e, fc] : f.terms()) {
        const rational base = v * e;
        if (base >= *p) {
            continue;
        }
        auto ce = ring_traits<C>::try_pow(c, e);
        if (!ce) {
            throw domain_error("compose: leading coefficient of g has no exact power " + e.pretty());
        }
        auto he = pow_rational(h.truncated(*p - base), e);
        result += he.shifted(base) * (fc * *ce);
    }
    return result.truncated(*p);
}

// Coerces cyclotomic coefficients to rationals; fails if any coefficient is irrational.
inline series to_rational_series(const cseries &s)
{
    std::map<long, rational> terms;
    for (const auto &[k, c] : s.numerators()) {
        terms.emplace_hint(terms.end(), k, c.to_rational());
    }
    return series::from_numerators(s.grain(), std::move(terms), s.precision(), {});
}

inline cseries to_cyclotomic_series(const series &s, unsigned n = default_cyclotomic_order)
{
    std::map<long, cyclotomic> terms;
    for (const auto &[k, c] : s.numerators()) {
        terms.emplace_hint(terms.end(), k, cyclotomic(n, c));
    }
    return cseries::from_numerators(s.grain(), std::move(terms), s.precision(), n);
}

// First exponent at which a and b differ, or their common precision if they agree
// (std::nullopt if both are exact and equal).
template <typename C>
precision_type agreement_order(const puiseux_series<C> &a, const puiseux_series<C> &b)
{
    const auto d = a - b;
    if (!d.is_zero()) {
        return d.valuation();
    }
    return d.precision();
}

} // namespace pencil

#endif
