#ifndef PENCIL_SERIES_RING_TRAITS_HPP
#define PENCIL_SERIES_RING_TRAITS_HPP

#include <optional>
#include <string>

#include <pencil/error.hpp>
#include <pencil/ring/cyclotomic.hpp>
#include <pencil/ring/rational.hpp>

namespace pencil
{

// Coefficient rings of a series. A tag identifies the concrete ring (the cyclotomic
// order for cyclotomic coefficients) so that constants can be built without a
// sample coefficient at hand.
template <typename C>
struct ring_traits;

template <>
struct ring_traits<rational> {
    struct tag_type {
        friend bool operator==(tag_type, tag_type)
        {
            return true;
        }
    };
    static tag_type default_tag()
    {
        return {};
    }
    static tag_type tag_of(const rational &)
    {
        return {};
    }
    static rational from_rational(const rational &r, tag_type)
    {
        return r;
    }
    static std::string name(tag_type)
    {
        return "rational";
    }
    static bool is_zero(const rational &c)
    {
        return c.is_zero();
    }
    static rational inverse(const rational &c)
    {
        if (c.is_zero()) {
            throw division_by_zero_error("inverse of zero rational");
        }
        return rational(1) / c;
    }
    // c^r if it lies in the ring.
    static std::optional<rational> try_pow(const rational &c, const rational &r)
    {
        auto [ok, v] = exact_pow(c, r);
        if (!ok) {
            return std::nullopt;
        }
        return v;
    }
};

template <>
struct ring_traits<cyclotomic> {
    using tag_type = unsigned;
    static tag_type default_tag()
    {
        return default_cyclotomic_order;
    }
    static tag_type tag_of(const cyclotomic &c)
    {
        return c.order();
    }
    static cyclotomic from_rational(const rational &r, tag_type n)
    {
        return cyclotomic(n, r);
    }
    static std::string name(tag_type n)
    {
        return "cyclotomic(" + std::to_string(n) + ")";
    }
    static bool is_zero(const cyclotomic &c)
    {
        return c.is_zero();
    }
    static cyclotomic inverse(const cyclotomic &c)
    {
        return c.inverse();
    }
    static std::optional<cyclotomic> try_pow(const cyclotomic &c, const rational &r)
    {
        if (r.is_integer()) {
            long e = to_long(r.num());
            cyclotomic base = e < 0 ? c.inverse() : c;
            e = e < 0 ? -e : e;
            cyclotomic acc(c.order(), rational(1));
            while (e > 0) {
                if (e & 1) {
                    acc *= base;
                }
                base *= base;
                e >>= 1;
            }
            return acc;
        }
        if (!c.is_rational()) {
            return std::nullopt;
        }
        auto [ok, v] = exact_pow(c.to_rational(), r);
        if (!ok) {
            return std::nullopt;
        }
        return cyclotomic(c.order(), v);
    }
};

} // namespace pencil

#endif
