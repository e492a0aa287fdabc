#ifndef PENCIL_LATTICE_SURFACE_HPP
#define PENCIL_LATTICE_SURFACE_HPP

#include <string>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/lattice/h2_class.hpp>

namespace pencil
{

enum class surface_kind { del_pezzo, p1xp1 };

// Anticanonical pencil on a del Pezzo surface (or P1 x P1). Blowing up the base
// locus gives the rational elliptic surface; the components of the divisor at
// infinity are trivial sections with classes D, D.D = -1 and D.[M-bar] = 1.
struct surface_model {
    surface_kind kind = surface_kind::del_pezzo;
    // Degree for del Pezzo surfaces, 8 for P1 x P1.
    int degree = 9;
    std::vector<h2_int> components;

    // Number of connected components of the divisor at infinity.
    long d() const
    {
        return static_cast<long>(components.size());
    }
    h2_int delta() const
    {
        h2_int s;
        for (const auto &c : components) {
            s += c;
        }
        return s;
    }
    std::string name() const
    {
        return kind == surface_kind::p1xp1 ? "p1xp1" : "dp" + std::to_string(degree);
    }
    // Surfaces for which the trivial bulk term solves the fundamental equation.
    bool admits_trivial_bulk() const
    {
        return kind == surface_kind::p1xp1 || degree <= 6 || degree == 9;
    }

    // Degree d del Pezzo: the plane blown up in 9 - d points. For d = 8 this is F1,
    // whose components are A1, ..., A8 and A0 is the extra section.
    static surface_model del_pezzo(int d)
    {
        if (d < 1 || d > 9) {
            throw domain_error("del Pezzo degree must be in 1..9, got " + std::to_string(d));
        }
        surface_model s;
        s.kind = surface_kind::del_pezzo;
        s.degree = d;
        const std::size_t first = d == 8 ? 1 : 0;
        for (std::size_t i = first; i < first + static_cast<std::size_t>(d); ++i) {
            s.components.push_back(h2::A(i));
        }
        return s;
    }
    static surface_model p1xp1()
    {
        surface_model s;
        s.kind = surface_kind::p1xp1;
        s.degree = 8;
        for (std::size_t i = 0; i < 7; ++i) {
            s.components.push_back(h2::A(i));
        }
        s.components.push_back(h2::L() - h2::A(7) - h2::A(8));
        return s;
    }
    // "dp1".."dp9" or "p1xp1".
    static surface_model parse(const std::string &name)
    {
        if (name == "p1xp1") {
            return p1xp1();
        }
        if (name.size() == 3 && name.compare(0, 2, "dp") == 0 && name[2] >= '1' && name[2] <= '9') {
            return del_pezzo(name[2] - '0');
        }
        throw domain_error("unknown surface '" + name + "' (expected dp1..dp9 or p1xp1)");
    }
    static std::vector<surface_model> all()
    {
        std::vector<surface_model> out;
        for (int d = 1; d <= 9; ++d) {
            out.push_back(del_pezzo(d));
        }
        out.push_back(p1xp1());
        return out;
    }

    friend bool operator==(const surface_model &a, const surface_model &b)
    {
        return a.kind == b.kind && a.degree == b.degree && a.components == b.components;
    }
};

} // namespace pencil

#endif
