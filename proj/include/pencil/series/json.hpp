#ifndef PENCIL_SERIES_JSON_HPP
#define PENCIL_SERIES_JSON_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include <pencil/error.hpp>
#include <pencil/ring/cyclotomic.hpp>
#include <pencil/ring/rational.hpp>
#include <pencil/series/matrix.hpp>
#include <pencil/series/puiseux_series.hpp>

namespace pencil
{

inline nlohmann::json to_json(const rational &r)
{
    return r.str();
}

// Coefficient list in powers of zeta_N, lowest index first.
inline nlohmann::json to_json(const cyclotomic &c)
{
    auto out = nlohmann::json::array();
    for (const auto &x : c.coeffs()) {
        out.push_back(x.str());
    }
    return out;
}

inline rational rational_from_json(const nlohmann::json &j)
{
    if (j.is_number_integer()) {
        return rational(j.get<long>());
    }
    if (!j.is_string()) {
        throw parse_error("rational must be a \"num/den\" string");
    }
    return rational::parse(j.get<std::string>());
}

inline cyclotomic cyclotomic_from_json(const nlohmann::json &j, unsigned n)
{
    if (!j.is_array()) {
        throw parse_error("cyclotomic coefficient must be a list of \"num/den\" strings");
    }
    std::vector<rational> cs;
    for (const auto &x : j) {
        cs.push_back(rational_from_json(x));
    }
    return cyclotomic(n, cs);
}

// {"grain": g, "precision": "p/q" or null when exact, "terms": [[k, coeff], ...]}
// with the exponent of each term equal to k/g on the requested output grain.
template <typename C>
nlohmann::json to_json(const puiseux_series<C> &s, long grain)
{
    if (grain <= 0) {
        throw grain_error("output grain must be positive");
    }
    nlohmann::json j;
    j["grain"] = grain;
    j["precision"] = s.precision() ? nlohmann::json(s.precision()->str()) : nlohmann::json(nullptr);
    auto terms = nlohmann::json::array();
    for (const auto &[e, c] : s.terms()) {
        const rational k = e * rational(grain);
        if (!k.is_integer()) {
            throw grain_error("exponent " + e.pretty() + " does not lie on the output grain 1/" + std::to_string(grain)
                              + "; choose --grain as a multiple of " + std::to_string(s.grain()));
        }
        terms.push_back(nlohmann::json::array({to_long(k.num()), to_json(c)}));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline series series_from_json(const nlohmann::json &j)
{
    const long g = j.at("grain").get<long>();
    precision_type p;
    if (!j.at("precision").is_null()) {
        p = rational_from_json(j.at("precision"));
    }
    std::map<long, rational> terms;
    for (const auto &t : j.at("terms")) {
        terms[t.at(0).get<long>()] += rational_from_json(t.at(1));
    }
    return series::from_numerators(g, std::move(terms), p, {});
}

inline cseries cseries_from_json(const nlohmann::json &j, unsigned n)
{
    const long g = j.at("grain").get<long>();
    precision_type p;
    if (!j.at("precision").is_null()) {
        p = rational_from_json(j.at("precision"));
    }
    std::map<long, cyclotomic> terms;
    for (const auto &t : j.at("terms")) {
        auto c = cyclotomic_from_json(t.at(1), n);
        auto it = terms.find(t.at(0).get<long>());
        if (it == terms.end()) {
            terms.emplace(t.at(0).get<long>(), c);
        } else {
            it->second += c;
        }
    }
    return cseries::from_numerators(g, std::move(terms), p, n);
}

template <typename C>
nlohmann::json to_json(const series_matrix<C> &m, long grain)
{
    auto out = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(to_json(m(i, j), grain));
        }
        out.push_back(std::move(row));
    }
    return out;
}

// One term per line, "q^{k/g}: coeff" with the exponent written as a reduced fraction.
template <typename C>
std::string to_text(const puiseux_series<C> &s)
{
    std::string out;
    for (const auto &[e, c] : s.terms()) {
        std::ostringstream os;
        os << c;
        out += "q^{" + e.pretty() + "}: " + os.str() + "\n";
    }
    out += s.precision() ? "O(q^{" + s.precision()->pretty() + "})\n" : "exact\n";
    return out;
}

} // namespace pencil

#endif
