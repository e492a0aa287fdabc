#ifndef PENCIL_SERIES_MATRIX_HPP
#define PENCIL_SERIES_MATRIX_HPP

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <pencil/error.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

// Small dense matrix of series, row-major.
template <typename C>
class series_matrix
{
public:
    using value_type = puiseux_series<C>;
    using tag_type = typename value_type::tag_type;

    series_matrix() = default;
    series_matrix(std::size_t rows, std::size_t cols, tag_type tag = ring_traits<C>::default_tag())
        : m_rows(rows), m_cols(cols), m_data(rows * cols, value_type(tag))
    {
    }
    series_matrix(std::initializer_list<std::initializer_list<value_type>> rows)
    {
        m_rows = rows.size();
        m_cols = m_rows == 0 ? 0 : rows.begin()->size();
        for (const auto &r : rows) {
            if (r.size() != m_cols) {
                throw domain_error("ragged matrix initializer");
            }
            m_data.insert(m_data.end(), r.begin(), r.end());
        }
    }
    static series_matrix identity(std::size_t n, tag_type tag = ring_traits<C>::default_tag())
    {
        series_matrix m(n, n, tag);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = value_type::scalar(rational(1), tag);
        }
        return m;
    }

    std::size_t rows() const
    {
        return m_rows;
    }
    std::size_t cols() const
    {
        return m_cols;
    }
    value_type &operator()(std::size_t i, std::size_t j)
    {
        return m_data.at(i * m_cols + j);
    }
    const value_type &operator()(std::size_t i, std::size_t j) const
    {
        return m_data.at(i * m_cols + j);
    }
    const std::vector<value_type> &entries() const
    {
        return m_data;
    }

    friend series_matrix operator*(const series_matrix &a, const series_matrix &b)
    {
        if (a.m_cols != b.m_rows) {
            throw domain_error("matrix shape mismatch in product");
        }
        series_matrix r(a.m_rows, b.m_cols, a.m_data.empty() ? ring_traits<C>::default_tag() : a.m_data[0].tag());
        for (std::size_t i = 0; i < a.m_rows; ++i) {
            for (std::size_t j = 0; j < b.m_cols; ++j) {
                for (std::size_t k = 0; k < a.m_cols; ++k) {
                    r(i, j) += a(i, k) * b(k, j);
                }
            }
        }
        return r;
    }
    friend series_matrix operator+(series_matrix a, const series_matrix &b)
    {
        if (a.m_rows != b.m_rows || a.m_cols != b.m_cols) {
            throw domain_error("matrix shape mismatch in sum");
        }
        for (std::size_t i = 0; i < a.m_data.size(); ++i) {
            a.m_data[i] += b.m_data[i];
        }
        return a;
    }
    friend bool operator==(const series_matrix &a, const series_matrix &b)
    {
        return a.m_rows == b.m_rows && a.m_cols == b.m_cols && a.m_data == b.m_data;
    }

private:
    std::size_t m_rows = 0, m_cols = 0;
    std::vector<value_type> m_data;
};

template <typename C>
series_matrix<C> derive(const series_matrix<C> &m)
{
    series_matrix<C> r(m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = derive(m(i, j));
        }
    }
    return r;
}

// Fundamental solution of dTheta/dq = -Gamma * Theta with Theta(0) = Id, known mod O(q^order).
// Gamma must be known mod O(q^{order-1}); less precision in Gamma lowers the output precision.
template <typename C>
series_matrix<C> solve_linear_ode_firstorder(const series_matrix<C> &gamma, long order)
{
    using traits = ring_traits<C>;
    const std::size_t m = gamma.rows();
    if (gamma.cols() != m) {
        throw domain_error("connection matrix must be square");
    }
    if (order < 0) {
        throw domain_error("order must be nonnegative");
    }
    const auto tag = m == 0 ? traits::default_tag() : gamma(0, 0).tag();
    rational prec(order);
    long g = 1;
    for (const auto &e : gamma.entries()) {
        if (!e.is_zero() && e.valuation().sign() < 0) {
            throw singular_connection_error("connection entry has negative valuation " + e.valuation().pretty());
        }
        if (e.precision()) {
            prec = std::min(prec, *e.precision() + rational(1));
        }
        g = std::lcm(g, e.grain());
    }
    // Theta_n multiplies q^{n/g}; n/g < prec.
    const long nmax = std::max(0L, to_long(ceil(prec * rational(g))));
    const C zero = traits::from_rational(rational(0), tag);
    auto dense = [&](const puiseux_series<C> &s) {
        std::vector<C> v(static_cast<std::size_t>(nmax), zero);
        for (const auto &[k, c] : s.numerators_at(g)) {
            if (k < nmax) {
                v[static_cast<std::size_t>(k)] = c;
            }
        }
        return v;
    };
    std::vector<std::vector<C>> gd;
    for (const auto &e : gamma.entries()) {
        gd.push_back(dense(e));
    }
    // theta[n][i*m + j]
    std::vector<std::vector<C>> theta(static_cast<std::size_t>(nmax), std::vector<C>(m * m, zero));
    if (nmax > 0) {
        for (std::size_t i = 0; i < m; ++i) {
            theta[0][i * m + i] = traits::from_rational(rational(1), tag);
        }
    }
    for (long n = g; n < nmax; ++n) {
        // (n/g) Theta_n = -sum_{a + b = n - g} Gamma_a Theta_b
        auto &tn = theta[static_cast<std::size_t>(n)];
        for (long b = 0; b <= n - g; ++b) {
            const long a = n - g - b;
            const auto &tb = theta[static_cast<std::size_t>(b)];
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t k = 0; k < m; ++k) {
                    const C &gik = gd[i * m + k][static_cast<std::size_t>(a)];
                    if (traits::is_zero(gik)) {
                        continue;
                    }
                    for (std::size_t j = 0; j < m; ++j) {
                        if (!traits::is_zero(tb[k * m + j])) {
                            tn[i * m + j] -= gik * tb[k * m + j];
                        }
                    }
                }
            }
        }
        const rational scale(g, n);
        for (auto &x : tn) {
            x *= scale;
        }
    }
    series_matrix<C> out(m, m, tag);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            std::map<long, C> terms;
            for (long n = 0; n < nmax; ++n) {
                const C &c = theta[static_cast<std::size_t>(n)][i * m + j];
                if (!traits::is_zero(c)) {
                    terms.emplace_hint(terms.end(), n, c);
                }
            }
            out(i, j) = puiseux_series<C>::from_numerators(g, std::move(terms), prec, tag);
        }
    }
    return out;
}

} // namespace pencil

#endif
