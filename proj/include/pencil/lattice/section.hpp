#ifndef PENCIL_LATTICE_SECTION_HPP
#define PENCIL_LATTICE_SECTION_HPP

#include <pencil/error.hpp>
#include <pencil/lattice/h2_class.hpp>
#include <pencil/lattice/surface.hpp>
#include <pencil/ring/rational.hpp>

namespace pencil
{

// Class A = A0 + X - (X.X)/2 [M-bar] + k [M-bar] with X in E8 and k >= 0.
// Every class with [M-bar].A = 1 and A.A = 2k - 1 is of this form.
struct section_class {
    h2_int x;
    long k = 0;

    long norm() const
    {
        return -intersect(x, x);
    }
    // Multiplicity of [M-bar] in A - A0 - X.
    long fibre_multiplicity() const
    {
        return norm() / 2 + k;
    }
    h2_int a() const
    {
        if (k < 0) {
            throw domain_error("section class needs k >= 0");
        }
        h2_int m = h2::mbar();
        m *= fibre_multiplicity();
        return h2::A(0) + x + m;
    }
};

// Q = -pi.pi for pi the projection of [delta E] to E8 (x) Q, so that
// |[delta E].X| <= sqrt(Q N) for X in E8 of norm N.
inline long delta_projection_norm(const surface_model &s)
{
    const h2_int delta = s.delta();
    const long d = s.d(), c = intersect(delta, h2::A(0));
    return -intersect(delta, delta) + 2 * d * c + d * d;
}

// Largest norm N for which some X in E8 of norm N can reach an exponent
// base + [delta E].X + (d/2) N below order; -1 if none. The lower bound
// base + (d/2) N - sqrt(Q N) is convex in N, so the scan stops once it has
// passed its minimum and exceeds order.
inline long section_norm_bound(const surface_model &s, const rational &base, const rational &order)
{
    const long d = s.d(), q = delta_projection_norm(s);
    long last = -1;
    for (long n = 0;; n += 2) {
        // base + dN/2 - order < sqrt(QN)
        const rational a = base + rational(d * n, 2) - order;
        const bool reachable = a.sign() < 0 || a * a < rational(q * n);
        if (reachable) {
            last = n;
        } else if (d * d * n >= q) {
            return last;
        }
    }
}

} // namespace pencil

#endif
