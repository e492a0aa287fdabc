#ifndef PENCIL_RING_RATIONAL_HPP
#define PENCIL_RING_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include <pencil/error.hpp>

namespace pencil
{

using integer = mpz_class;

// Exact rational number in lowest terms with positive denominator.
//
// Thin wrapper around mpq_class so that generic code never sees gmpxx
// expression templates.
class rational
{
public:
    rational() = default;
    rational(int n) : m_value(n) {}
    rational(long n) : m_value(n) {}
    rational(long long n) : m_value(integer(std::to_string(n))) {}
    rational(unsigned long n) : m_value(n) {}
    explicit rational(const integer &n) : m_value(n) {}
    rational(const integer &n, const integer &d)
    {
        if (d == 0) {
            throw division_by_zero_error("rational with zero denominator");
        }
        m_value = mpq_class(n, d);
        m_value.canonicalize();
    }
    rational(long n, long d) : rational(integer(n), integer(d)) {}
    explicit rational(const mpq_class &q) : m_value(q)
    {
        m_value.canonicalize();
    }

    // Accepts "n", "-n", "n/d".
    static rational parse(std::string_view s)
    {
        if (s.empty()) {
            throw parse_error("empty rational literal");
        }
        const auto slash = s.find('/');
        auto parse_int = [&](std::string_view part) {
            integer z;
            std::string str(part);
            if (str.empty() || z.set_str(str[0] == '+' ? str.substr(1) : str, 10) != 0) {
                throw parse_error("malformed rational literal '" + std::string(s) + "'");
            }
            return z;
        };
        if (slash == std::string_view::npos) {
            return rational(parse_int(s));
        }
        const integer d = parse_int(s.substr(slash + 1));
        if (d == 0) {
            throw division_by_zero_error("rational literal with zero denominator");
        }
        return rational(parse_int(s.substr(0, slash)), d);
    }

    const mpq_class &get() const
    {
        return m_value;
    }
    integer num() const
    {
        return m_value.get_num();
    }
    integer den() const
    {
        return m_value.get_den();
    }
    bool is_zero() const
    {
        return sgn(m_value) == 0;
    }
    bool is_integer() const
    {
        return m_value.get_den() == 1;
    }
    int sign() const
    {
        return sgn(m_value);
    }
    double to_double() const
    {
        return m_value.get_d();
    }

    // Always "num/den", also for integers.
    std::string str() const
    {
        return m_value.get_num().get_str() + "/" + m_value.get_den().get_str();
    }
    // "n" for integers, "n/d" otherwise.
    std::string pretty() const
    {
        return is_integer() ? m_value.get_num().get_str() : str();
    }

    rational operator-() const
    {
        return rational(mpq_class(-m_value));
    }
    rational &operator+=(const rational &o)
    {
        m_value += o.m_value;
        return *this;
    }
    rational &operator-=(const rational &o)
    {
        m_value -= o.m_value;
        return *this;
    }
    rational &operator*=(const rational &o)
    {
        m_value *= o.m_value;
        return *this;
    }
    rational &operator/=(const rational &o)
    {
        if (o.is_zero()) {
            throw division_by_zero_error("rational division by zero");
        }
        m_value /= o.m_value;
        return *this;
    }
    friend rational operator+(rational a, const rational &b)
    {
        return a += b;
    }
    friend rational operator-(rational a, const rational &b)
    {
        return a -= b;
    }
    friend rational operator*(rational a, const rational &b)
    {
        return a *= b;
    }
    friend rational operator/(rational a, const rational &b)
    {
        return a /= b;
    }
    friend bool operator==(const rational &a, const rational &b)
    {
        return a.m_value == b.m_value;
    }
    friend std::strong_ordering operator<=>(const rational &a, const rational &b)
    {
        const int c = cmp(a.m_value, b.m_value);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream &operator<<(std::ostream &os, const rational &r)
    {
        return os << r.pretty();
    }

private:
    mpq_class m_value;
};

inline rational abs(const rational &r)
{
    return r.sign() < 0 ? -r : r;
}

inline integer floor(const rational &r)
{
    integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get().get_num_mpz_t(), r.get().get_den_mpz_t());
    return q;
}

inline integer ceil(const rational &r)
{
    integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get().get_num_mpz_t(), r.get().get_den_mpz_t());
    return q;
}

// Fractional part in [0, 1).
inline rational frac(const rational &r)
{
    return r - rational(floor(r));
}

inline rational pow(const rational &r, long e)
{
    if (e < 0) {
        if (r.is_zero()) {
            throw division_by_zero_error("negative power of zero");
        }
        return pow(rational(1) / r, -e);
    }
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), r.get().get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), r.get().get_den_mpz_t(), static_cast<unsigned long>(e));
    return rational(n, d);
}

// Exact rational power, or std::nullopt-like failure signalled by the bool.
inline std::pair<bool, rational> exact_pow(const rational &r, const rational &e)
{
    if (e.is_integer()) {
        return {true, pow(r, e.num().get_si())};
    }
    if (r.is_zero()) {
        return {e.sign() > 0, rational(0)};
    }
    const unsigned long k = e.den().get_ui();
    integer n = r.num(), d = r.den();
    bool negate = false;
    if (n < 0) {
        if (k % 2 == 0) {
            return {false, rational(0)};
        }
        n = -n;
        negate = true;
    }
    integer rn, rd;
    if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k) == 0 || mpz_root(rd.get_mpz_t(), d.get_mpz_t(), k) == 0) {
        return {false, rational(0)};
    }
    rational root(negate ? integer(-rn) : rn, rd);
    return {true, pow(root, e.num().get_si())};
}

inline long to_long(const integer &z)
{
    if (!z.fits_slong_p()) {
        throw domain_error("integer does not fit in a machine word: " + z.get_str());
    }
    return z.get_si();
}

} // namespace pencil

#endif
