#ifndef PENCIL_RING_CYCLOTOMIC_HPP
#define PENCIL_RING_CYCLOTOMIC_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/ring/rational.hpp>

namespace pencil
{

namespace detail
{

// Dense polynomial over the rationals, lowest degree first, no trailing zeros.
using qpoly = std::vector<rational>;

inline void trim(qpoly &p)
{
    while (!p.empty() && p.back().is_zero()) {
        p.pop_back();
    }
}

inline qpoly poly_mul(const qpoly &a, const qpoly &b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    qpoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

inline qpoly poly_sub(const qpoly &a, const qpoly &b)
{
    qpoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
    }
    trim(r);
    return r;
}

// Returns (quotient, remainder); b must be nonzero.
inline std::pair<qpoly, qpoly> poly_divmod(qpoly a, const qpoly &b)
{
    trim(a);
    if (a.size() < b.size()) {
        return {{}, a};
    }
    qpoly q(a.size() - b.size() + 1);
    const rational lead = b.back();
    for (std::size_t shift = q.size(); shift-- > 0;) {
        const rational c = a[shift + b.size() - 1] / lead;
        q[shift] = c;
        if (!c.is_zero()) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                a[shift + j] -= c * b[j];
            }
        }
    }
    trim(q);
    trim(a);
    return {q, a};
}

struct cyclotomic_field {
    unsigned n;
    std::size_t phi;
    // Monic Phi_N, degree phi.
    qpoly modulus;
    // powers[k] = x^k mod Phi_N for 0 <= k < N, each of size phi.
    std::vector<std::vector<rational>> powers;
};

inline qpoly cyclotomic_polynomial(unsigned n)
{
    qpoly p(n + 1);
    p[0] = -1;
    p[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) {
            p = poly_divmod(p, cyclotomic_polynomial(d)).first;
        }
    }
    return p;
}

inline std::shared_ptr<const cyclotomic_field> make_field(unsigned n)
{
    auto f = std::make_shared<cyclotomic_field>();
    f->n = n;
    f->modulus = cyclotomic_polynomial(n);
    f->phi = f->modulus.size() - 1;
    for (unsigned k = 0; k < n; ++k) {
        qpoly xk(k + 1);
        xk[k] = 1;
        auto r = poly_divmod(xk, f->modulus).second;
        r.resize(f->phi);
        f->powers.push_back(std::move(r));
    }
    return f;
}

inline std::shared_ptr<const cyclotomic_field> field(unsigned n)
{
    if (n == 0) {
        throw unsupported_order_error("cyclotomic order must be positive");
    }
    static std::mutex mutex;
    static std::map<unsigned, std::shared_ptr<const cyclotomic_field>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, make_field(n)).first;
    }
    return it->second;
}

} // namespace detail

inline constexpr unsigned default_cyclotomic_order = 12;

// Element of the N-th cyclotomic field Q(zeta_N), zeta_N = e^{2 pi i / N}, stored as
// a polynomial in zeta_N of degree < phi(N).
class cyclotomic
{
public:
    explicit cyclotomic(unsigned n = default_cyclotomic_order) : m_field(detail::field(n)), m_coeffs(m_field->phi) {}
    cyclotomic(unsigned n, const rational &c) : cyclotomic(n)
    {
        m_coeffs[0] = c;
    }
    // From a coefficient list (any length; reduced modulo Phi_N).
    cyclotomic(unsigned n, const std::vector<rational> &coeffs) : cyclotomic(n)
    {
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            add_power(k, coeffs[k]);
        }
    }

    // zeta_N^k for any integer k.
    static cyclotomic zeta_power(unsigned n, long k)
    {
        cyclotomic r(n);
        const long nn = static_cast<long>(n);
        r.add_power(static_cast<std::size_t>(((k % nn) + nn) % nn), rational(1));
        return r;
    }

    unsigned order() const
    {
        return m_field->n;
    }
    const std::vector<rational> &coeffs() const
    {
        return m_coeffs;
    }
    bool is_zero() const
    {
        for (const auto &c : m_coeffs) {
            if (!c.is_zero()) {
                return false;
            }
        }
        return true;
    }
    bool is_rational() const
    {
        for (std::size_t i = 1; i < m_coeffs.size(); ++i) {
            if (!m_coeffs[i].is_zero()) {
                return false;
            }
        }
        return true;
    }
    rational to_rational() const
    {
        if (!is_rational()) {
            throw consistency_error("cyclotomic value " + str() + " is not rational");
        }
        return m_coeffs[0];
    }

    cyclotomic inverse() const
    {
        if (is_zero()) {
            throw division_by_zero_error("inverse of zero cyclotomic element");
        }
        // Extended Euclid: track s with s * a = r (mod Phi_N).
        detail::qpoly r0 = m_field->modulus, r1 = m_coeffs;
        detail::trim(r1);
        detail::qpoly s0, s1{rational(1)};
        while (r1.size() > 1) {
            auto [q, r] = detail::poly_divmod(r0, r1);
            auto s = detail::poly_sub(s0, detail::poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        // r1 is a nonzero constant since Phi_N is irreducible.
        const rational c = r1.at(0);
        for (auto &x : s1) {
            x /= c;
        }
        return cyclotomic(order(), s1);
    }

    cyclotomic operator-() const
    {
        cyclotomic r(*this);
        for (auto &c : r.m_coeffs) {
            c = -c;
        }
        return r;
    }
    cyclotomic &operator+=(const cyclotomic &o)
    {
        check(o);
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            m_coeffs[i] += o.m_coeffs[i];
        }
        return *this;
    }
    cyclotomic &operator-=(const cyclotomic &o)
    {
        check(o);
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            m_coeffs[i] -= o.m_coeffs[i];
        }
        return *this;
    }
    cyclotomic &operator*=(const cyclotomic &o)
    {
        check(o);
        cyclotomic r(order());
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            if (m_coeffs[i].is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < o.m_coeffs.size(); ++j) {
                if (!o.m_coeffs[j].is_zero()) {
                    r.add_power(i + j, m_coeffs[i] * o.m_coeffs[j]);
                }
            }
        }
        return *this = std::move(r);
    }
    cyclotomic &operator/=(const cyclotomic &o)
    {
        return *this *= o.inverse();
    }
    cyclotomic &operator*=(const rational &c)
    {
        for (auto &x : m_coeffs) {
            x *= c;
        }
        return *this;
    }
    cyclotomic &operator/=(const rational &c)
    {
        for (auto &x : m_coeffs) {
            x /= c;
        }
        return *this;
    }
    friend cyclotomic operator+(cyclotomic a, const cyclotomic &b)
    {
        return a += b;
    }
    friend cyclotomic operator-(cyclotomic a, const cyclotomic &b)
    {
        return a -= b;
    }
    friend cyclotomic operator*(cyclotomic a, const cyclotomic &b)
    {
        return a *= b;
    }
    friend cyclotomic operator/(cyclotomic a, const cyclotomic &b)
    {
        return a /= b;
    }
    friend cyclotomic operator*(cyclotomic a, const rational &c)
    {
        return a *= c;
    }
    friend cyclotomic operator*(const rational &c, cyclotomic a)
    {
        return a *= c;
    }
    friend bool operator==(const cyclotomic &a, const cyclotomic &b)
    {
        a.check(b);
        return a.m_coeffs == b.m_coeffs;
    }

    // Polynomial in z = zeta_N, e.g. "1/2*z - z^3"; "0" for zero.
    std::string str() const
    {
        std::string out;
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            const rational &c = m_coeffs[k];
            if (c.is_zero()) {
                continue;
            }
            const rational a = abs(c);
            if (out.empty()) {
                out = c.sign() < 0 ? "-" : "";
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            if (k == 0) {
                out += a.pretty();
                continue;
            }
            if (a != rational(1)) {
                out += a.pretty() + "*";
            }
            out += k == 1 ? "z" : "z^" + std::to_string(k);
        }
        return out.empty() ? "0" : out;
    }
    friend std::ostream &operator<<(std::ostream &os, const cyclotomic &c)
    {
        return os << c.str();
    }

private:
    void check(const cyclotomic &o) const
    {
        if (order() != o.order()) {
            throw ring_mismatch_error("mixing cyclotomic fields of order " + std::to_string(order()) + " and "
                                      + std::to_string(o.order()));
        }
    }
    void add_power(std::size_t k, const rational &c)
    {
        const auto &p = m_field->powers[k % m_field->n];
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p[i].is_zero()) {
                m_coeffs[i] += c * p[i];
            }
        }
    }

    std::shared_ptr<const detail::cyclotomic_field> m_field;
    std::vector<rational> m_coeffs;
};

inline cyclotomic invert(const cyclotomic &x)
{
    return x.inverse();
}

// e^{2 pi i r} in Q(zeta_N); the reduced denominator of r must divide N.
inline cyclotomic root_of_unity(const rational &r, unsigned n = default_cyclotomic_order)
{
    const integer b = r.den();
    if (n == 0 || !b.fits_ulong_p() || n % b.get_ui() != 0) {
        throw unsupported_order_error("root of unity e^{2 pi i " + r.pretty() + "} is not in Q(zeta_" + std::to_string(n)
                                      + ")");
    }
    const rational k = r * rational(static_cast<long>(n));
    return cyclotomic::zeta_power(n, to_long(k.num()));
}

// Smallest cyclotomic order containing e^{2 pi i r} for all given r.
inline unsigned required_cyclotomic_order(const std::vector<rational> &rs)
{
    unsigned long n = 1;
    for (const auto &r : rs) {
        n = std::lcm(n, r.den().get_ui());
    }
    return static_cast<unsigned>(n);
}

} // namespace pencil

#endif
