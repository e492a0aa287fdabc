#ifndef PENCIL_GW_SECTIONS_HPP
#define PENCIL_GW_SECTIONS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/lattice/e8.hpp>
#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/monodromy.hpp>
#include <pencil/lattice/surface.hpp>

namespace pencil
{

// E8 vectors of one norm sharing their pairings with a fixed list of probe classes.
// Any sum over sections whose summand depends on X only through these pairings
// (and is linear in X otherwise) can be evaluated group by group.
struct section_group {
    long norm = 0;
    std::vector<long> pairings;
    long count = 0;
    h2_int sum_x;
};

namespace detail
{

using group_key = std::array<long, 2 + h2_rank>;

struct group_key_hash {
    std::size_t operator()(const group_key &k) const
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (long v : k) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::vector<section_group> build_groups(const std::vector<h2_int> &probes, long max_norm)
{
    std::unordered_map<group_key, std::size_t, group_key_hash> index;
    std::vector<section_group> groups;
    group_key key{};
    for_each_e8_vector(max_norm, [&](const h2_int &x, long n) {
        key[0] = n;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            key[1 + i] = intersect(probes[i], x);
        }
        auto [it, fresh] = index.try_emplace(key, groups.size());
        if (fresh) {
            section_group g;
            g.norm = n;
            g.pairings.assign(key.begin() + 1, key.begin() + 1 + static_cast<long>(probes.size()));
            groups.push_back(std::move(g));
        }
        auto &g = groups[it->second];
        ++g.count;
        g.sum_x += x;
    });
    std::sort(groups.begin(), groups.end(), [](const section_group &a, const section_group &b) {
        return std::tie(a.norm, a.pairings) < std::tie(b.norm, b.pairings);
    });
    return groups;
}

struct group_cache_entry {
    long max_norm = -1;
    std::shared_ptr<const std::vector<section_group>> groups;
};

inline std::mutex &group_cache_mutex()
{
    static std::mutex m;
    return m;
}

inline std::map<std::vector<h2_int>, group_cache_entry> &group_cache()
{
    static std::map<std::vector<h2_int>, group_cache_entry> c;
    return c;
}

} // namespace detail

// Groups of E8 vectors of norm <= max_norm keyed by (norm, probe pairings), sorted.
// Results are cached per probe list; a request below a cached bound is served by
// filtering.
inline std::vector<section_group> section_groups(const std::vector<h2_int> &probes, long max_norm)
{
    if (probes.size() > h2_rank + 1) {
        throw domain_error("at most " + std::to_string(h2_rank + 1) + " probe classes");
    }
    std::shared_ptr<const std::vector<section_group>> all;
    {
        std::lock_guard lock(detail::group_cache_mutex());
        auto &entry = detail::group_cache()[probes];
        if (entry.max_norm < max_norm) {
            entry.groups = std::make_shared<const std::vector<section_group>>(detail::build_groups(probes, max_norm));
            entry.max_norm = max_norm;
        }
        all = entry.groups;
    }
    std::vector<section_group> out;
    for (const auto &g : *all) {
        if (g.norm > max_norm) {
            break;
        }
        out.push_back(g);
    }
    return out;
}

// Integer basis of the monodromy-invariant subspace, each vector scaled to be primitive.
inline std::vector<h2_int> invariant_basis(const surface_model &s)
{
    std::vector<h2_int> out;
    for (const auto &w : invariant_subspace(monodromy_generators(s))) {
        integer l = 1;
        for (const auto &c : w.c) {
            l = lcm(l, c.den());
        }
        h2_int v;
        long g = 0;
        for (std::size_t i = 0; i < h2_rank; ++i) {
            v.c[i] = to_long((w.c[i] * rational(l)).num());
            g = std::gcd(g, v.c[i]);
        }
        if (g > 1) {
            for (auto &c : v.c) {
                c /= g;
            }
        }
        out.push_back(v);
    }
    return out;
}

} // namespace pencil

#endif
