// siegelkit command-line front end.

#include "siegelkit/errors.hpp"
#include "siegelkit/formats.hpp"
#include "siegelkit/lattice.hpp"
#include "siegelkit/lift.hpp"
#include "siegelkit/siegel_series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace siegelkit;
using json = nlohmann::ordered_json;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_domain = 2;
constexpr int exit_capability = 3;
constexpr int exit_consistency = 4;

std::string approx50(const QuadNumber& v) {
    mpf_class acc(0, 256);
    for (const auto& [r, c] : v.terms()) {
        mpf_class s(r, 256);
        s = sqrt(s);
        acc += mpf_class(c, 256) * s;
    }
    std::ostringstream os;
    os << std::setprecision(50) << acc;
    return os.str();
}

json quad_json(const QuadNumber& v) {
    json terms = json::object();
    for (const auto& [r, c] : v.terms()) terms[std::to_string(r)] = c.get_str();
    return {{"exact", v.to_string()}, {"terms", terms}, {"approx", approx50(v)}};
}

json poly_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p) a.push_back(c.get_str());
    return a;
}

std::string poly_text(const Poly& p, const std::string& var = "X") {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        BigInt c = p[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        c = abs(c);
        if (i == 0 || c != 1) os << c.get_str() << (i ? "*" : "");
        if (i) os << var << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return first ? "0" : os.str();
}

json lambda_poly_json(const LambdaPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs) a.push_back(c.to_string());
    return a;
}

struct Options {
    std::string format = "text";
    unsigned threads = 1;
    long prime = 0;
    std::string xi;
    std::vector<std::string> xis;
    std::string lattice;
    std::string genus;
    std::string eigenform;  // empty: bundled defaults, and no lift where optional
    std::string plusform;
    long bound = 0;
    int depth = -1;
    long eta = 0;
    int k = 0;
    std::string classfn = "const:1";
    std::string sign = "printed";
    std::string lambda;
    std::string method = "auto";
    bool no_orbits = false;
    std::size_t max_lattices = 2'000'000;
};

std::string eigenform_ref(const Options& o) { return o.eigenform.empty() ? "delta" : o.eigenform; }
std::string plusform_ref(const Options& o) { return o.plusform.empty() ? "plus13" : o.plusform; }

struct Output {
    json inputs = json::object();
    json result;
    std::vector<std::string> text;
};

PsiSign parse_sign(const std::string& s) {
    if (s == "printed") return PsiSign::as_printed;
    if (s == "kz") return PsiSign::kohnen_zagier;
    throw DomainError("--sign must be 'printed' or 'kz'");
}

SeriesOptions series_options(const Options& o) {
    SeriesOptions s;
    s.threads = o.threads;
    s.max_lattices = o.max_lattices;
    if (o.method == "auto")
        s.method = SeriesMethod::automatic;
    else if (o.method == "enumeration")
        s.method = SeriesMethod::enumeration;
    else if (o.method == "lattice-sum")
        s.method = SeriesMethod::lattice_sum;
    else
        throw DomainError("--method must be auto, enumeration or lattice-sum");
    return s;
}

EnumerationOptions enum_options(const Options& o) {
    EnumerationOptions e;
    e.threads = o.threads;
    e.orbit_reduction = !o.no_orbits;
    return e;
}

const char* method_name(SeriesMethod m) {
    switch (m) {
        case SeriesMethod::enumeration: return "enumeration";
        case SeriesMethod::lattice_sum: return "lattice-sum";
        default: return "auto";
    }
}

void need(const std::string& v, const char* flag) {
    if (v.empty()) throw DomainError(std::string("missing required flag ") + flag);
}
void need_prime(long p) {
    if (p <= 0) throw DomainError("missing required flag --prime");
    if (!is_prime(p)) throw DomainError("--prime " + std::to_string(p) + " is not prime");
}

QuadNumber lambda_value(const Options& o, long p) {
    if (!o.lambda.empty()) {
        Rational v;
        if (v.set_str(o.lambda, 10) != 0) throw DomainError("--lambda must be a rational number");
        v.canonicalize();
        return QuadNumber(v);
    }
    return read_eigenform_file(resolve_form_file(eigenform_ref(o), ".eigen")).satake().lambda(p);
}

json map_json(const std::map<long, BigInt>& m) {
    json j = json::object();
    for (const auto& [n, c] : m) j[std::to_string(n)] = c.get_str();
    return j;
}

// Command handlers.

void cmd_siegel_series(const Options& o, Output& out) {
    need(o.xi, "--xi");
    need_prime(o.prime);
    const HalfIntegralForm xi = parse_xi(o.xi);
    out.inputs = {{"xi", xi.to_string()}, {"prime", o.prime}};
    if (o.depth >= 0) {
        out.inputs["depth"] = o.depth;
        out.inputs["method"] = o.method;
        std::vector<BigInt> layers;
        if (o.method == "lattice-sum") {
            LatticeSumOptions lo;
            lo.max_lattices = o.max_lattices;
            layers = siegel_series_lattice_sum(xi, o.prime, o.depth, lo);
        } else {
            LayerOptions lo;
            lo.threads = o.threads;
            layers = siegel_series_layers(xi, o.prime, o.depth, lo);
        }
        out.result = {{"layers", poly_json(layers)}};
        out.text.push_back("b_p layers: " + poly_text(layers));
        return;
    }
    const SiegelSeriesData d = siegel_series_data(xi, o.prime, series_options(o));
    const GammaFactor g = gamma_p(d.m, d.gamma_delta, o.prime);
    out.result = {{"layers", poly_json(d.layer_coeffs)},
                  {"gamma", poly_json(g.polynomial)},
                  {"delta", d.gamma_delta},
                  {"f", d.f},
                  {"F", poly_json(d.F_coeffs)},
                  {"method", method_name(d.method)},
                  {"completed_by_symmetry", d.completed_by_symmetry}};
    out.text.push_back("layers: " + poly_text(d.layer_coeffs));
    out.text.push_back("gamma_p: " + poly_text(g.polynomial));
    out.text.push_back("F_p: " + poly_text(d.F_coeffs) + "  (f = " + std::to_string(d.f) + ")");
}

void cmd_fpoly(const Options& o, Output& out) {
    need(o.xi, "--xi");
    need_prime(o.prime);
    const HalfIntegralForm xi = parse_xi(o.xi);
    out.inputs = {{"xi", xi.to_string()}, {"prime", o.prime}};
    const Poly F = F_p_poly(xi, o.prime, series_options(o));
    out.result = {{"F", poly_json(F)}};
    out.text.push_back(poly_text(F));
}

void cmd_ftilde(const Options& o, Output& out) {
    need(o.xi, "--xi");
    need_prime(o.prime);
    const HalfIntegralForm xi = parse_xi(o.xi);
    if (xi.size() % 2) throw DomainError("ftilde: xi must have even size");
    out.inputs = {{"xi", xi.to_string()}, {"prime", o.prime}};
    const Poly F = F_p_poly(xi, o.prime, series_options(o));
    const LambdaPoly P = F_tilde_poly(F, o.prime, xi.size() / 2);
    out.result = {{"polynomial", lambda_poly_json(P)}, {"polynomial_text", P.to_string()}};
    out.text.push_back("F~_p(lambda) = " + P.to_string());
    if (!o.lambda.empty() || !o.eigenform.empty()) {
        const QuadNumber lam = lambda_value(o, o.prime);
        const QuadNumber v = P.eval(lam);
        out.inputs["lambda"] = lam.to_string();
        out.result["value"] = quad_json(v);
        out.text.push_back("at lambda = " + lam.to_string() + ": " + v.to_string());
    }
}

void cmd_psi(const Options& o, Output& out) {
    if (o.eta == 0) throw DomainError("missing required flag --eta");
    need_prime(o.prime);
    const PsiSign sign = parse_sign(o.sign);
    out.inputs = {{"eta", o.eta}, {"prime", o.prime}, {"sign", o.sign}};
    const LambdaPoly P = Psi_p(Rational(o.eta), o.prime, sign);
    out.result = {{"polynomial", lambda_poly_json(P)}, {"polynomial_text", P.to_string()}};
    std::string line = P.to_string();
    if (!o.lambda.empty()) {
        const QuadNumber lam = lambda_value(o, o.prime);
        const QuadNumber v = P.eval(lam);
        out.inputs["lambda"] = lam.to_string();
        out.result["value"] = quad_json(v);
        line += "  at lambda = " + lam.to_string() + ": " + v.to_string();
    }
    out.text.push_back(line);
}

void cmd_shortvec(const Options& o, Output& out) {
    need(o.lattice, "--lattice");
    const EvenLattice L = resolve_lattice(o.lattice);
    out.inputs = {{"lattice", L.name()}, {"bound", o.bound}};
    const auto counts = short_vectors(L, o.bound);
    out.result = map_json(counts);
    std::string line = "{";
    for (const auto& [n, c] : counts) line += (line.size() > 1 ? ", " : "") + std::to_string(n) + ": " + c.get_str();
    out.text.push_back(line + "}");
}

void cmd_repcount(const Options& o, Output& out) {
    need(o.lattice, "--lattice");
    need(o.xi, "--xi");
    const EvenLattice L = resolve_lattice(o.lattice);
    const HalfIntegralForm xi = parse_xi(o.xi);
    out.inputs = {{"lattice", L.name()}, {"xi", xi.to_string()}};
    const BigInt n = representation_count(L, xi, enum_options(o));
    out.result = {{"count", n.get_str()}};
    out.text.push_back(n.get_str());
}

void cmd_autord(const Options& o, Output& out) {
    need(o.lattice, "--lattice");
    const EvenLattice L = resolve_lattice(o.lattice);
    out.inputs = {{"lattice", L.name()}};
    const BigInt n = automorphism_order(L, enum_options(o));
    out.result = {{"order", n.get_str()}};
    out.text.push_back(n.get_str());
}

std::vector<HalfIntegralForm> all_xis(const Options& o) {
    std::vector<HalfIntegralForm> v;
    if (!o.xi.empty()) v.push_back(parse_xi(o.xi));
    for (const auto& s : o.xis) v.push_back(parse_xi(s));
    if (v.empty()) throw DomainError("missing required flag --xi");
    return v;
}

void cmd_theta(const Options& o, Output& out) {
    need(o.lattice, "--lattice");
    const EvenLattice L = resolve_lattice(o.lattice);
    const auto xis = all_xis(o);
    out.inputs = {{"lattice", L.name()}, {"xi", json::array()}};
    for (const auto& x : xis) out.inputs["xi"].push_back(x.to_string());
    out.result = json::array();
    for (const auto& [x, n] : theta_coefficients(L, xis.front().size(), xis, enum_options(o))) {
        out.result.push_back({{"xi", x.to_string()}, {"count", n.get_str()}});
        out.text.push_back(x.to_string() + ": " + n.get_str());
    }
}

void cmd_ravg(const Options& o, Output& out) {
    need(o.genus, "--genus");
    const GenusWithWeights g = load_genus(o.genus, enum_options(o));
    const ClassFunction f = parse_class_function(o.classfn, g);
    const auto xis = all_xis(o);
    out.inputs = {{"genus", o.genus}, {"classfn", o.classfn}, {"xi", json::array()}};
    out.result = json::array();
    for (const auto& x : xis) {
        out.inputs["xi"].push_back(x.to_string());
        const Rational R = weighted_average(g, f, x, enum_options(o));
        out.result.push_back({{"xi", x.to_string()}, {"R", R.get_str()}});
        out.text.push_back("R(" + x.to_string() + ", f) = " + R.get_str());
    }
}

int cmd_siegel_check(const Options& o, Output& out) {
    need(o.xi, "--xi");
    need(o.genus, "--genus");
    const HalfIntegralForm xi = parse_xi(o.xi);
    if (o.k && xi.size() != 2 * o.k)
        throw DomainError("siegel-check: xi has size " + std::to_string(xi.size()) + ", expected 2k = " +
                          std::to_string(2 * o.k));
    const GenusWithWeights g = load_genus(o.genus, enum_options(o));
    out.inputs = {{"xi", xi.to_string()}, {"genus", o.genus}, {"k", o.k}};
    Rational lhs = weighted_average(g, constant_class_function(g, 1), xi, enum_options(o)) / g.mass();
    lhs.canonicalize();
    const Rational rhs = siegel_rhs(xi, g.rank(), series_options(o));
    const bool pass = lhs == rhs;
    out.result = {{"lhs", lhs.get_str()}, {"rhs", rhs.get_str()}, {"mass", g.mass().get_str()}, {"pass", pass}};
    out.text.push_back("LHS " + lhs.get_str() + " == RHS " + rhs.get_str() + ": " + (pass ? "PASS" : "FAIL"));
    return pass ? 0 : exit_consistency;
}

void cmd_ikeda(const Options& o, Output& out) {
    need(o.xi, "--xi");
    const HalfIntegralForm xi = parse_xi(o.xi);
    const SatakeData S = read_eigenform_file(resolve_form_file(eigenform_ref(o), ".eigen")).satake();
    const PlusFormCoefficients P = read_plusform_file(resolve_form_file(plusform_ref(o), ".plus")).coefficients();
    out.inputs = {{"xi", xi.to_string()}, {"eigenform", eigenform_ref(o)}, {"plusform", plusform_ref(o)}};
    IkedaOptions io;
    io.series = series_options(o);
    const IkedaCoefficient A = ikeda_coefficient(xi, S, P, io);
    json primes = json::array();
    for (long p : A.local_primes) primes.push_back(p);
    out.result = {{"value", quad_json(A.value)}, {"in_support", A.in_support}, {"local_primes", primes}};
    out.text.push_back(A.value.to_string() + (A.in_support ? "" : "  (not positive definite)"));
}

void cmd_hpredict(const Options& o, Output& out) {
    if (o.eta == 0) throw DomainError("missing required flag --eta");
    const SatakeData S = read_eigenform_file(resolve_form_file(eigenform_ref(o), ".eigen")).satake();
    const PlusFormCoefficients P = read_plusform_file(resolve_form_file(plusform_ref(o), ".plus")).coefficients();
    out.inputs = {{"eta", o.eta}, {"eigenform", eigenform_ref(o)}, {"plusform", plusform_ref(o)}, {"sign", o.sign}};
    const QuadNumber v = h_coefficient_predict(o.eta, S, P, parse_sign(o.sign));
    out.result = {{"value", quad_json(v)}};
    if (P.has(o.eta)) out.result["C"] = P.C(o.eta).get_str();
    out.text.push_back(v.to_string() + (P.has(o.eta) ? "  (C = " + P.C(o.eta).get_str() + ")" : ""));
}

int cmd_cor101(const Options& o, Output& out) {
    need(o.genus, "--genus");
    const GenusWithWeights g = load_genus(o.genus, enum_options(o));
    const ClassFunction f = parse_class_function(o.classfn, g);
    const auto xis = all_xis(o);
    const bool with_lift = !o.eigenform.empty() || !o.plusform.empty();
    SatakeData S;
    PlusFormCoefficients P;
    if (with_lift) {
        S = read_eigenform_file(resolve_form_file(eigenform_ref(o), ".eigen")).satake();
        P = read_plusform_file(resolve_form_file(plusform_ref(o), ".plus")).coefficients();
    }
    IkedaOptions io;
    io.series = series_options(o);
    const RatioReport rep = corollary_ratio_check(g, f, with_lift ? &S : nullptr, with_lift ? &P : nullptr, xis,
                                                  enum_options(o), io);
    out.inputs = {{"genus", o.genus}, {"classfn", o.classfn}, {"xi", json::array()}, {"lift", with_lift}};
    out.result = {{"entries", json::array()}};
    for (const auto& e : rep.entries) {
        out.inputs["xi"].push_back(e.xi.to_string());
        json j = {{"xi", e.xi.to_string()}, {"R", e.R.get_str()}};
        std::string line = "R(" + e.xi.to_string() + ", f) = " + e.R.get_str();
        if (e.A) {
            j["A"] = quad_json(e.A->value);
            line += "   A = " + e.A->value.to_string();
        }
        out.result["entries"].push_back(j);
        out.text.push_back(line);
    }
    if (rep.consistent) {
        out.result["consistent"] = *rep.consistent;
        out.text.push_back(std::string("ratios consistent: ") + (*rep.consistent ? "PASS" : "FAIL"));
        if (!*rep.consistent) return exit_consistency;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"siegelkit: Siegel series, lattice counts and lift coefficients in exact arithmetic"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv("SIEGELKIT_THREADS")) {
        const long t = std::atol(env);
        if (t > 0) o.threads = static_cast<unsigned>(t);
    }

    struct Cmd {
        std::string name;
        std::string help;
        std::function<int(const Options&, Output&)> run;
        std::vector<std::string> flags;
    };
    auto wrap = [](void (*f)(const Options&, Output&)) {
        return [f](const Options& opt, Output& out) {
            f(opt, out);
            return 0;
        };
    };
    const std::vector<Cmd> cmds = {
        {"siegel-series", "layers of b_p(xi, X), gamma_p and F_p", wrap(cmd_siegel_series),
         {"xi", "prime", "depth", "method", "max-lattices"}},
        {"fpoly", "F_p(xi, X) as an integer polynomial", wrap(cmd_fpoly), {"xi", "prime", "method", "max-lattices"}},
        {"ftilde", "F~_p(xi) in the variable lambda = X + 1/X", wrap(cmd_ftilde),
         {"xi", "prime", "lambda", "eigenform", "method", "max-lattices"}},
        {"psi", "Psi_p(eta) in lambda", wrap(cmd_psi), {"eta", "prime", "lambda", "sign"}},
        {"shortvec", "vector counts by norm up to a bound", wrap(cmd_shortvec), {"lattice", "bound"}},
        {"repcount", "N(L, xi)", wrap(cmd_repcount), {"lattice", "xi", "no-orbits"}},
        {"autord", "order of O(L)", wrap(cmd_autord), {"lattice", "no-orbits"}},
        {"theta", "degree-j theta coefficients N(L, xi)", wrap(cmd_theta), {"lattice", "xi", "no-orbits"}},
        {"ravg", "weighted average R(xi, f) over a genus", wrap(cmd_ravg), {"genus", "xi", "classfn", "no-orbits"}},
        {"siegel-check", "R(xi, 1)/mass by enumeration against the Siegel formula", cmd_siegel_check,
         {"xi", "genus", "k", "method", "max-lattices", "no-orbits"}},
        {"ikeda", "lift Fourier coefficient at xi", wrap(cmd_ikeda),
         {"xi", "eigenform", "plusform", "method", "max-lattices"}},
        {"hpredict", "predicted coefficient of h at eta", wrap(cmd_hpredict), {"eta", "eigenform", "plusform", "sign"}},
        {"cor101-check", "ratio consistency of R(xi, f) and the lift coefficients", cmd_cor101,
         {"genus", "xi", "classfn", "eigenform", "plusform", "method", "max-lattices", "no-orbits"}},
    };

    std::map<std::string, CLI::App*> subs;
    for (const auto& c : cmds) {
        CLI::App* s = app.add_subcommand(c.name, c.help);
        s->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        s->add_option("--threads", o.threads, "worker threads (default $SIEGELKIT_THREADS or 1)")
            ->check(CLI::PositiveNumber);
        for (const auto& f : c.flags) {
            if (f == "xi") {
                s->add_option("--xi", o.xis, "inline rows '1,1/2;1/2,1', a file, or gram:<lattice>; repeatable");
            } else if (f == "prime") {
                s->add_option("--prime", o.prime, "prime p");
            } else if (f == "depth") {
                s->add_option("--depth", o.depth, "only the layers c_0..c_depth");
            } else if (f == "method") {
                s->add_option("--method", o.method, "auto, enumeration or lattice-sum");
            } else if (f == "max-lattices") {
                s->add_option("--max-lattices", o.max_lattices, "overlattice budget of the lattice-sum engine");
            } else if (f == "lambda") {
                s->add_option("--lambda", o.lambda, "rational lambda value");
            } else if (f == "eigenform") {
                s->add_option("--eigenform", o.eigenform, "eigenform file or bundled key (default delta)");
            } else if (f == "plusform") {
                s->add_option("--plusform", o.plusform, "plus-form file or bundled key (default plus13)");
            } else if (f == "sign") {
                s->add_option("--sign", o.sign, "Psi sign convention: printed or kz");
            } else if (f == "eta") {
                s->add_option("--eta", o.eta, "index eta");
            } else if (f == "lattice") {
                s->add_option("--lattice", o.lattice, "lattice file or bundled key");
            } else if (f == "genus") {
                s->add_option("--genus", o.genus, "genus file or bundled key");
            } else if (f == "bound") {
                s->add_option("--bound", o.bound, "largest norm")->required();
            } else if (f == "classfn") {
                s->add_option("--classfn", o.classfn, "name=value,... or const:<value>");
            } else if (f == "k") {
                s->add_option("--k", o.k, "the integer k (xi has size 2k)");
            } else if (f == "no-orbits") {
                s->add_flag("--no-orbits", o.no_orbits, "disable orbit reduction");
            }
        }
        subs[c.name] = s;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    const Cmd* chosen = nullptr;
    for (const auto& c : cmds)
        if (subs[c.name]->parsed()) chosen = &c;
    if (o.xis.size() == 1) {
        o.xi = o.xis.front();
        o.xis.clear();
    } else if (!o.xis.empty() && chosen->name != "theta" && chosen->name != "ravg" && chosen->name != "cor101-check") {
        std::cerr << "--xi given more than once\n";
        return exit_usage;
    }

    Output out;
    int status = 0;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        status = chosen->run(o, out);
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return exit_domain;
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return exit_capability;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_consistency;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (o.format == "json") {
        json j = {{"command", chosen->name},
                  {"inputs", out.inputs},
                  {"result", out.result},
                  {"timing", {{"seconds", seconds}, {"threads", o.threads}}}};
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& l : out.text) std::cout << l << "\n";
    }
    return status;
}
