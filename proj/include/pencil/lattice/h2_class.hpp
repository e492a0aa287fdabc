#ifndef PENCIL_LATTICE_H2_CLASS_HPP
#define PENCIL_LATTICE_H2_CLASS_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <ostream>
#include <string>
#include <type_traits>

#include <pencil/error.hpp>
#include <pencil/ring/rational.hpp>

namespace pencil
{

inline constexpr std::size_t h2_rank = 10;

// Class in H_2 of the rational elliptic surface in the blowup basis (L, A0, ..., A8).
// Index 0 is L, index 1 + i is A_i. The pairing is diag(1, -1, ..., -1).
template <typename T>
struct h2_class {
    std::array<T, h2_rank> c{};

    h2_class() = default;
    explicit h2_class(const T &fill)
    {
        c.fill(fill);
    }
    explicit h2_class(const std::array<T, h2_rank> &coeffs) : c(coeffs) {}

    T &operator[](std::size_t i)
    {
        return c[i];
    }
    const T &operator[](std::size_t i) const
    {
        return c[i];
    }
    T &l()
    {
        return c[0];
    }
    const T &l() const
    {
        return c[0];
    }
    // Coefficient of A_i.
    T &a(std::size_t i)
    {
        return c[1 + i];
    }
    const T &a(std::size_t i) const
    {
        return c[1 + i];
    }

    h2_class &operator+=(const h2_class &o)
    {
        for (std::size_t i = 0; i < h2_rank; ++i) {
            c[i] += o.c[i];
        }
        return *this;
    }
    h2_class &operator-=(const h2_class &o)
    {
        for (std::size_t i = 0; i < h2_rank; ++i) {
            c[i] -= o.c[i];
        }
        return *this;
    }
    friend h2_class operator+(h2_class a, const h2_class &b)
    {
        return a += b;
    }
    friend h2_class operator-(h2_class a, const h2_class &b)
    {
        return a -= b;
    }
    h2_class operator-() const
    {
        h2_class r(*this);
        for (auto &x : r.c) {
            x = -x;
        }
        return r;
    }
    template <typename S>
    h2_class &operator*=(const S &s)
    {
        for (auto &x : c) {
            x *= s;
        }
        return *this;
    }
    friend bool operator==(const h2_class &a, const h2_class &b)
    {
        return a.c == b.c;
    }
    friend auto operator<=>(const h2_class &a, const h2_class &b)
        requires std::three_way_comparable<T>
    {
        return a.c <=> b.c;
    }
};

using h2_int = h2_class<long>;
using h2_rat = h2_class<rational>;

namespace h2
{

inline h2_int L()
{
    h2_int x;
    x.l() = 1;
    return x;
}

inline h2_int A(std::size_t i)
{
    if (i > 8) {
        throw domain_error("exceptional class index out of range: A" + std::to_string(i));
    }
    h2_int x;
    x.a(i) = 1;
    return x;
}

// [M-bar] = 3L - A0 - ... - A8, the fibre class.
inline h2_int mbar()
{
    h2_int x;
    x.l() = 3;
    for (std::size_t i = 0; i < 9; ++i) {
        x.a(i) = -1;
    }
    return x;
}

// S_ij = A_i - A_j.
inline h2_int s(std::size_t i, std::size_t j)
{
    return A(i) - A(j);
}

} // namespace h2

inline long intersect(const h2_int &a, const h2_int &b)
{
    long r = a.c[0] * b.c[0];
    for (std::size_t i = 1; i < h2_rank; ++i) {
        r -= a.c[i] * b.c[i];
    }
    return r;
}

// Pairing of a class with coefficients in any ring against an integer class.
template <typename T>
T pair_with(const h2_class<T> &a, const h2_int &b)
{
    T r = a.c[0] * rational(b.c[0]);
    for (std::size_t i = 1; i < h2_rank; ++i) {
        if (b.c[i] != 0) {
            r -= a.c[i] * rational(b.c[i]);
        }
    }
    return r;
}

template <typename T>
h2_class<T> lift(const h2_int &x, const T &one)
{
    h2_class<T> r;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        r.c[i] = one * rational(x.c[i]);
    }
    return r;
}

inline h2_rat to_rational(const h2_int &x)
{
    h2_rat r;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        r.c[i] = rational(x.c[i]);
    }
    return r;
}

template <typename T>
std::string to_string(const h2_class<T> &x)
{
    std::string s = "[";
    for (std::size_t i = 0; i < h2_rank; ++i) {
        if (i > 0) {
            s += ", ";
        }
        if constexpr (std::is_same_v<T, long>) {
            s += std::to_string(x.c[i]);
        } else {
            s += x.c[i].pretty();
        }
    }
    return s + "]";
}

// Linear combination "L - A1 - 2*A3" of an integer class.
inline std::string describe(const h2_int &x)
{
    std::string s;
    for (std::size_t i = 0; i < h2_rank; ++i) {
        const long v = x.c[i];
        if (v == 0) {
            continue;
        }
        const std::string name = i == 0 ? "L" : "A" + std::to_string(i - 1);
        s += s.empty() ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ");
        const long m = v < 0 ? -v : v;
        s += (m == 1 ? "" : std::to_string(m) + "*") + name;
    }
    return s.empty() ? "0" : s;
}

} // namespace pencil

#endif
