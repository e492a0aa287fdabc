#ifndef PENCIL_CONNECTION_FUNDAMENTAL_HPP
#define PENCIL_CONNECTION_FUNDAMENTAL_HPP

#include <cstddef>

#include <pencil/error.hpp>
#include <pencil/gw/lambda.hpp>
#include <pencil/lattice/surface.hpp>
#include <pencil/series/matrix.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

using theta_matrix_t = series_matrix<rational>;

// Theta with (d/dq + Gamma) Theta = 0 and Theta(0) = Id, known mod O(q^order).
struct fundamental_system {
    theta_matrix_t theta;
    gamma_matrix_t gamma;
    long order = 0;

    const series &operator()(std::size_t i, std::size_t j) const
    {
        return theta(i, j);
    }
};

inline fundamental_system fundamental_solution(const gamma_matrix_t &gamma, long order)
{
    for (const auto &e : gamma.entries()) {
        if (!e.is_zero() && e.valuation().sign() < 0) {
            throw singular_connection_error("connection entry has negative valuation " + e.valuation().pretty());
        }
    }
    return {solve_linear_ode_firstorder(gamma, order), gamma, order};
}

// Theta for the surface's Gamma; Theta mod O(q^order) needs Gamma mod O(q^{order-1}).
inline fundamental_system fundamental_solution(const surface_model &s, long order)
{
    return fundamental_solution(gamma_matrix(s, std::max(order - 1, 0L)), order);
}

inline theta_matrix_t truncated(const theta_matrix_t &m, const rational &p)
{
    theta_matrix_t r(m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = m(i, j).truncated(p);
        }
    }
    return r;
}

// (d/dq + Gamma) Theta mod O(q^{order-1}).
inline theta_matrix_t ode_residual(const fundamental_system &f)
{
    return truncated(derive(f.theta) + f.gamma * f.theta, rational(f.order - 1));
}

inline series determinant(const theta_matrix_t &m)
{
    if (m.rows() != 2 || m.cols() != 2) {
        throw domain_error("determinant is implemented for 2x2 matrices");
    }
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

// d(det Theta) + tr(Gamma) det Theta, zero by Abel's identity.
inline series abel_residual(const fundamental_system &f)
{
    const auto det = determinant(f.theta);
    const auto tr = f.gamma(0, 0) + f.gamma(1, 1);
    return (derive(det) + tr * det).truncated(rational(f.order - 1));
}

// (Theta21 r + Theta22 s) / (Theta11 r + Theta12 s).
inline series moebius_value(const fundamental_system &f, const rational &r, const rational &s)
{
    if (r.is_zero() && s.is_zero()) {
        throw domain_error("moebius_value needs (r, s) != (0, 0)");
    }
    return (f(1, 0) * r + f(1, 1) * s) / (f(0, 0) * r + f(0, 1) * s);
}

// The Riccati solution with constant term s.
inline series riccati_solution(const fundamental_system &f, const rational &s)
{
    return moebius_value(f, rational(1), s);
}

} // namespace pencil

#endif
