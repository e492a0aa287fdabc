#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <pencil/acceptance.hpp>
#include <pencil/connection.hpp>
#include <pencil/fukaya.hpp>
#include <pencil/gw.hpp>
#include <pencil/lattice.hpp>
#include <pencil/modular.hpp>
#include <pencil/series/json.hpp>

using namespace pencil;
using json = nlohmann::json;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_usage = 2;

// Thrown for bad flag values detected after parsing.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct options {
    std::string surface = "dp9";
    long order = 10;
    bool order_given = false;
    std::string format = "text";
    std::string out;
    unsigned cyclotomic_order = default_cyclotomic_order;
    long grain = 72;
};

// Named results in insertion order, rendered as one JSON object or as text blocks.
class report
{
public:
    explicit report(const options &o) : m_opts(o) {}

    void value(const std::string &name, const json &v)
    {
        m_json[name] = v;
        m_text += name + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    template <typename C>
    void add(const std::string &name, const puiseux_series<C> &s)
    {
        if (json_mode()) {
            m_json[name] = to_json(s, m_opts.grain);
        }
        m_text += "# " + name + "\n" + to_text(s);
    }
    template <typename C>
    void add(const std::string &name, const series_matrix<C> &m)
    {
        if (json_mode()) {
            m_json[name] = to_json(m, m_opts.grain);
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                m_text += "# " + name + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]\n" +
                          to_text(m(i, j));
            }
        }
    }
    void add(const std::string &name, const series_class &c)
    {
        json obj = json::object();
        for (std::size_t i = 0; i < h2_rank; ++i) {
            const std::string label = i == 0 ? "L" : "A" + std::to_string(i - 1);
            if (json_mode()) {
                obj[label] = to_json(c.c[i], m_opts.grain);
            }
            m_text += "# " + name + "." + label + "\n" + to_text(c.c[i]);
        }
        m_json[name] = std::move(obj);
    }
    void raw(const std::string &name, json j, const std::string &text)
    {
        m_json[name] = std::move(j);
        m_text += text;
    }

    bool json_mode() const
    {
        return m_opts.format == "json";
    }
    std::string render() const
    {
        return json_mode() ? m_json.dump(2) + "\n" : m_text;
    }

private:
    const options &m_opts;
    json m_json = json::object();
    std::string m_text;
};

surface_model surface_of(const options &o)
{
    return surface_model::parse(o.surface);
}

void header(report &r, const options &o, bool with_surface = true)
{
    if (with_surface) {
        r.value("surface", o.surface);
    }
    r.value("order", o.order);
}

series named_series(const std::string &name, long order)
{
    if (name == "delta") {
        return delta_series(rational(order));
    }
    if (name == "e4") {
        return eisenstein_e4(order);
    }
    if (name == "j") {
        return classical_j(order);
    }
    if (name == "theta-e8") {
        return theta_e8(order);
    }
    if (name == "gamma") {
        return gamma_series(order);
    }
    if (name == "bryan-leung") {
        return bryan_leung(order);
    }
    if (name == "theta-hex") {
        return theta_hex(order);
    }
    if (name == "theta-hex-deep") {
        return theta_hex_deep(order);
    }
    throw usage_error("--name: unknown series '" + name + "'");
}

template <typename C>
void describe(report &r, const puiseux_series<C> &s)
{
    r.value("valuation", s.is_zero() ? json(nullptr) : json(s.valuation().str()));
    r.value("precision", s.precision() ? json(s.precision()->str()) : json(nullptr));
    r.value("grain", s.grain());
    r.value("terms", static_cast<long>(s.terms().size()));
}

rational parse_rational_flag(const std::string &flag, const std::string &v)
{
    try {
        return rational::parse(v);
    } catch (const std::exception &) {
        throw usage_error(flag + ": '" + v + "' is not a rational number");
    }
}

std::string agreement_text(const agreement &a)
{
    return a.name + ": " + (a.agrees() ? "agree" : "differ at q^" + a.first_difference->pretty()) + " mod O(q^" +
           a.precision.pretty() + ")\n";
}

json agreement_json(const agreement &a)
{
    return {{"name", a.name},
            {"agrees", a.agrees()},
            {"precision", a.precision.str()},
            {"first_difference", a.first_difference ? json(a.first_difference->str()) : json(nullptr)}};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact q-series computations for anticanonical pencils"};
    app.require_subcommand(1);
    options o;
    static const std::vector<std::string> surfaces{"dp1", "dp2", "dp3", "dp4", "dp5", "dp6", "dp7", "dp8", "dp9", "p1xp1"};

    app.add_option("--surface", o.surface, "dp1..dp9 or p1xp1 (dp8 is F1, dp9 is CP2)")
        ->check(CLI::IsMember(surfaces));
    app.add_option_function<long>(
           "--order",
           [&](const long &v) {
               o.order = v;
               o.order_given = true;
           },
           "Series are computed mod O(q^N)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", o.out, "Write output to FILE instead of stdout");
    app.add_option("--cyclotomic-order", o.cyclotomic_order, "Cyclotomic field for theta characters")
        ->check(CLI::PositiveNumber);
    app.add_option("--grain", o.grain, "Exponent denominator for JSON terms")->check(CLI::PositiveNumber);

    auto *series_info = app.add_subcommand("series-info", "Describe a named series or a series in JSON form");
    std::string series_name = "delta", series_in;
    series_info->add_option("--name", series_name, "delta, e4, j, theta-e8, gamma, bryan-leung, theta-hex, theta-hex-deep");
    series_info->add_option("--in", series_in, "Read a series from a JSON file instead")->check(CLI::ExistingFile);

    auto *psi_cmd = app.add_subcommand("psi", "psi and eta for the trivial bulk term");
    auto *z1_cmd = app.add_subcommand("z1", "Section class z1 with trivial bulk term");
    auto *lambda_cmd = app.add_subcommand("lambda", "Eigenvalue lambda on S_ij");
    std::vector<std::size_t> pair;
    lambda_cmd->add_option("--pair", pair, "Exceptional indices i,j (default: first equal-coefficient pair)")
        ->delimiter(',')
        ->expected(2);
    auto *gamma_cmd = app.add_subcommand("gamma-matrix", "Connection matrix Gamma and z2");
    auto *theta_cmd = app.add_subcommand("theta", "Theta series");
    std::string theta_kind = "shifted";
    std::string theta_u = "1/6";
    theta_cmd->add_option("--kind", theta_kind, "shifted, e8, hex, hex-deep, jacobi2, jacobi3, jacobi2-half")
        ->check(CLI::IsMember({"shifted", "e8", "hex", "hex-deep", "jacobi2", "jacobi3", "jacobi2-half"}));
    theta_cmd->add_option("--u", theta_u, "Character argument u for the Jacobi thetas");
    auto *connection_cmd = app.add_subcommand("connection", "Fundamental solution Theta");
    auto *mirror_cmd = app.add_subcommand("mirror-map", "Mirror map, j-invariant and Hesse parameter (DelPezzo(9))");
    auto *bulk_general_cmd = app.add_subcommand("bulk-general", "Bulk term solving the fundamental equation with psi = 1");
    auto *bulk_f1_cmd = app.add_subcommand("bulk-f1", "The beta^{A0} ansatz on F1");
    bool fix_beta = false;
    bulk_f1_cmd->add_flag("--fix-beta", fix_beta, "Force beta = 1");
    auto *fukaya_cmd = app.add_subcommand("fukaya-check", "Trivialization of the Floer products");
    std::vector<std::string> holonomy;
    fukaya_cmd->add_option("--u", holonomy, "One holonomy tuple u1,u2,u3,u4 (default: all 81)")
        ->delimiter(',')
        ->expected(4);
    auto *verify_cmd = app.add_subcommand("verify", "Run the acceptance suite");
    std::set<int> allow_fail;
    bool serial = false;
    verify_cmd->add_option("--allow-fail", allow_fail, "Criteria whose failure does not change the exit status")
        ->delimiter(',');
    verify_cmd->add_flag("--serial", serial, "Run the criteria one after another");

    for (auto *sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    report r(o);
    int status = exit_ok;
    try {
        if (*series_info) {
            if (!series_in.empty()) {
                std::ifstream in(series_in);
                json j;
                try {
                    in >> j;
                } catch (const json::exception &e) {
                    throw usage_error("--in: " + std::string(e.what()));
                }
                const auto s = series_from_json(j);
                describe(r, s);
                r.add("series", s);
            } else {
                const auto s = named_series(series_name, o.order);
                r.value("name", series_name);
                describe(r, s);
                r.add("series", s);
            }
        } else if (*psi_cmd) {
            const auto s = surface_of(o);
            header(r, o);
            const auto pe = psi_eta(s, o.order);
            r.value("admits_trivial_bulk", s.admits_trivial_bulk());
            r.add("psi", pe.psi);
            r.add("eta", pe.eta);
        } else if (*z1_cmd) {
            const auto s = surface_of(o);
            header(r, o);
            r.add("z1", z1(s, o.order));
        } else if (*lambda_cmd) {
            const auto s = surface_of(o);
            header(r, o);
            auto [i, j] = lambda_pair(s);
            if (pair.size() == 2) {
                i = pair[0];
                j = pair[1];
            }
            r.value("pair", json::array({i, j}));
            r.add("lambda", lambda_eig(s, i, j, o.order));
        } else if (*gamma_cmd) {
            const auto s = surface_of(o);
            header(r, o);
            const auto g = gamma_matrix(s, o.order);
            r.add("gamma", g);
            r.add("z2", z2(s, o.order));
        } else if (*theta_cmd) {
            header(r, o, theta_kind == "shifted");
            const rational p(o.order);
            if (theta_kind == "shifted") {
                r.add("theta", theta_shifted(surface_of(o), o.order));
            } else if (theta_kind == "e8") {
                r.add("theta", theta_e8(o.order));
            } else if (theta_kind == "hex") {
                r.add("theta", theta_hex(o.order));
            } else if (theta_kind == "hex-deep") {
                r.add("theta", theta_hex_deep(o.order));
            } else {
                const rational u = parse_rational_flag("--u", theta_u);
                r.value("u", u.str());
                r.value("cyclotomic_order", o.cyclotomic_order);
                if (theta_kind == "jacobi2") {
                    r.add("theta", jacobi_theta2(u, p, o.cyclotomic_order));
                } else if (theta_kind == "jacobi3") {
                    r.add("theta", jacobi_theta3(u, p, o.cyclotomic_order));
                } else {
                    r.add("theta", jacobi_theta2_half(u, p, o.cyclotomic_order));
                }
            }
        } else if (*connection_cmd) {
            const auto s = surface_of(o);
            header(r, o);
            const auto f = fundamental_solution(s, o.order);
            r.add("theta", f.theta);
            r.add("det", determinant(f.theta).truncated(rational(o.order)));
        } else if (*mirror_cmd) {
            if (o.surface != "dp9") {
                throw usage_error("--surface: the mirror map is implemented for dp9 only");
            }
            const long order = o.order_given ? o.order : 32;
            o.order = order;
            header(r, o);
            const auto f = fundamental_solution(surface_model::del_pezzo(9), order);
            const auto z = mirror_map(f);
            r.add("z", z);
            r.add("j", j_of_z(z));
            r.add("hesse", hesse_reparam(z));
            const auto jc = j_check(f);
            r.raw("j_check", agreement_json(jc), agreement_text(jc));
            if (!jc.agrees()) {
                status = exit_verification;
            }
        } else if (*bulk_general_cmd) {
            const auto s = surface_of(o);
            header(r, o);
            r.add("bulk", solve_fundamental_general(s, o.order));
        } else if (*bulk_f1_cmd) {
            r.value("order", o.order);
            const auto f = solve_f1_ansatz(o.order, fix_beta);
            r.value("max_consistent_order", f.max_consistent_order);
            r.add("beta", f.beta);
            r.add("psi", f.psi);
            r.add("eta", f.eta);
        } else if (*fukaya_cmd) {
            std::vector<holonomy_tuple> tuples;
            if (holonomy.size() == 4) {
                std::array<rational, 4> u;
                for (std::size_t k = 0; k < 4; ++k) {
                    u[k] = parse_rational_flag("--u", holonomy[k]);
                }
                try {
                    tuples.push_back(make_holonomy(u[0], u[1], u[2], u[3]));
                } catch (const domain_error &e) {
                    throw usage_error(std::string("--u: ") + e.what());
                }
            } else {
                tuples = all_holonomy_tuples();
            }
            r.value("order", o.order);
            json rows = json::array();
            std::string text;
            int passed = 0;
            for (const auto &h : tuples) {
                const auto rep = shifted_check_report(h, rational(o.order));
                passed += rep.ok ? 1 : 0;
                json u = json::array();
                std::string us;
                for (std::size_t k = 1; k <= 4; ++k) {
                    u.push_back(h[k].str());
                    us += (k > 1 ? "," : "") + h[k].pretty();
                }
                rows.push_back({{"u", u},
                                {"ok", rep.ok},
                                {"sigma", rep.sigma ? json(rep.sigma->str()) : json(nullptr)},
                                {"failure", rep.failure},
                                {"offending_exponent",
                                 rep.offending_exponent ? json(rep.offending_exponent->str()) : json(nullptr)}});
                text += std::string(rep.ok ? "PASS" : "FAIL") + "  u=(" + us + ")" +
                        (rep.sigma ? "  shift " + rep.sigma->pretty() : "") +
                        (rep.failure.empty() ? "" : "  " + rep.failure) + "\n";
            }
            r.raw("tuples", rows, text);
            r.value("passed", passed);
            r.value("total", static_cast<long>(tuples.size()));
            if (passed != static_cast<int>(tuples.size())) {
                status = exit_verification;
            }
        } else if (*verify_cmd) {
            const long order = o.order_given ? o.order : 20;
            const auto results = acceptance::run_all(order, !serial);
            json rows = json::array();
            std::string text;
            for (const auto &c : results) {
                rows.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
                text += acceptance::format_line(c) + "\n";
            }
            r.raw("criteria", rows, text);
            status = acceptance::exit_status(results, allow_fail);
        }
    } catch (const usage_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const grain_error &e) {
        std::cerr << "error: --grain: " << e.what() << "\n";
        return exit_usage;
    } catch (const consistency_error &e) {
        std::cerr << "inconsistent: " << e.what() << "\n";
        return exit_verification;
    } catch (const pencil::error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    const std::string text = r.render();
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(o.out);
        if (!out) {
            std::cerr << "error: --out: cannot write '" << o.out << "'\n";
            return exit_usage;
        }
        out << text;
    }
    return status;
}
