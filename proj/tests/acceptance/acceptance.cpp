// Acceptance checks. Each criterion prints exactly one "CRITERION n: PASS" or
// "CRITERION n: FAIL" line; indented lines carry details.

#include "siegelkit/errors.hpp"
#include "siegelkit/formats.hpp"
#include "siegelkit/lattice.hpp"
#include "siegelkit/lift.hpp"
#include "siegelkit/siegel_series.hpp"
#include "test_support.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace siegelkit;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::vector<HalfIntegralForm> binary_suite() {
    std::vector<HalfIntegralForm> out;
    for (int a = -4; a <= 4; ++a)
        for (int c = -4; c <= 4; ++c)
            for (int b = -4; b <= 4; ++b) {
                if (a <= 0 || a % 2 || c % 2 || a * c - b * b <= 0) continue;
                out.push_back(HalfIntegralForm::from_two_xi(IntMatrix::from_rows({{a, b}, {b, c}})));
            }
    return out;
}

BigInt ipow(long p, long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
    Outcome o;
    const auto suite = binary_suite();
    int cases = 0;
    for (const auto& xi : suite)
        for (long p : {2L, 3L, 5L}) {
            const LocalInvariants inv = xi_local_invariants(xi, p);
            const GammaFactor g = gamma_p(1, inv.delta, p);
            const int n_layers = full_layer_count(xi, p) + 1;
            const std::vector<BigInt> layers = siegel_series_layers(xi, p, n_layers);
            const std::string tag = xi.to_string() + " p=" + std::to_string(p);
            Poly F;
            try {
                F = divide_by_gamma(layers, g, inv.f, false);
            } catch (const ConsistencyError& e) {
                o.check(false, tag + ": division by gamma_p: " + e.what());
                continue;
            }
            // zero remainder: gamma * F reproduces every computed layer
            Poly prod = poly_mul(g.polynomial, F);
            prod.resize(std::max(prod.size(), layers.size()), BigInt(0));
            bool exact = true;
            for (std::size_t e = 0; e < layers.size(); ++e) exact = exact && prod[e] == layers[e];
            for (std::size_t e = layers.size(); e < prod.size(); ++e) exact = exact && prod[e] == 0;
            o.check(exact, tag + ": nonzero remainder");
            o.check(static_cast<long>(F.size()) - 1 == 2 * inv.f, tag + ": deg F = " + std::to_string(F.size() - 1));
            o.check(!F.empty() && F[0] == 1, tag + ": a0 != 1");
            for (long j = 0; j <= inv.f && static_cast<long>(F.size()) == 2 * inv.f + 1; ++j)
                o.check(F[inv.f + j] == F[inv.f - j] * ipow(p, 3 * j), tag + ": symmetry at j=" + std::to_string(j));
            ++cases;
        }
    o.note(std::to_string(suite.size()) + " forms, " + std::to_string(cases) + " (xi, p) cases");
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::set<std::pair<std::string, long>> pairs;
    int p2 = 0;
    for (const auto& xi : binary_suite())
        for (long p : {2L, 3L, 5L})
            if (xi_local_invariants(xi, p).f == 0) {
                SeriesOptions s;
                s.method = SeriesMethod::enumeration;
                o.check(F_p_poly(xi, p, s) == Poly{BigInt(1)}, xi.to_string() + " p=" + std::to_string(p));
                pairs.emplace(xi.to_string(), p);
                p2 += p == 2;
            }
    o.check(pairs.size() >= 20, "fewer than 20 pairs");
    o.check(p2 > 0, "no p = 2 case");
    o.note(std::to_string(pairs.size()) + " pairs, " + std::to_string(p2) + " at p = 2");
    return o;
}

Outcome criterion3() {
    Outcome o;
    o.check(f_p_eta(Rational(2), 2) < 0, "f_2(2) should be negative");
    o.check(Psi_p(Rational(2), 2).is_zero(), "Psi_2(2) != 0");
    for (const Rational X : {Rational(3), Rational(-1, 2)})
        o.check(Psi_p_at_X(Rational(2), 2, X).is_zero(), "Psi_2(2, X) != 0 as a rational function");
    int f0 = 0, f1 = 0;
    const std::vector<Rational> Xs = {Rational(2), Rational(-3), Rational(5, 7), Rational(-4, 9)};
    for (long eta = 1; eta <= 200; ++eta)
        for (long p : {2L, 3L, 5L, 7L}) {
            if (eta % 4 == 2 || eta % 4 == 3) continue;
            const long f = f_p_eta(Rational(eta), p);
            const LambdaPoly P = Psi_p(Rational(eta), p);
            const std::string tag = "eta=" + std::to_string(eta) + " p=" + std::to_string(p);
            if (f == 0) {
                o.check(P == LambdaPoly{{QuadNumber(1)}}, tag + ": Psi != 1");
                for (const auto& X : Xs) o.check(Psi_p_at_X(Rational(eta), p, X) == QuadNumber(1), tag + ": rational route != 1");
                ++f0;
            } else if (f == 1) {
                const QuadNumber low = QuadNumber(delta_p(Rational(eta), p)) * QuadNumber::half_power(p, -1);
                for (const auto& X : Xs) {
                    const QuadNumber lam(X + 1 / X);
                    const QuadNumber want = lam + low;
                    o.check(Psi_p_at_X(Rational(eta), p, X) == want, tag + ": rational-function route");
                    o.check(P.eval(lam) == want, tag + ": lambda-polynomial route");
                }
                ++f1;
            }
        }
    o.note(std::to_string(f0) + " cases with f = 0, " + std::to_string(f1) + " with f = 1");
    return o;
}

Outcome criterion4() {
    Outcome o;
    int cases = 0;
    for (const auto& xi : binary_suite())
        for (long p : {2L, 3L, 5L}) {
            const int n = full_layer_count(xi, p) + 1;
            LayerOptions u;
            u.character_unit = p == 2 ? 3 : 2;
            o.check(siegel_series_layers(xi, p, n) == siegel_series_layers(xi, p, n, u),
                    xi.to_string() + " p=" + std::to_string(p));
            ++cases;
        }
    o.note(std::to_string(cases) + " cases, unit 3 at p = 2 and 2 otherwise");
    return o;
}

Outcome criterion5() {
    Outcome o;
    const EvenLattice E8 = resolve_lattice("e8");
    const auto sv = short_vectors(E8, 6);
    const std::map<long, BigInt> want = {{2, BigInt(240)}, {4, BigInt(2160)}, {6, BigInt(6720)}};
    o.check(sv == want, "short_vectors(E8, 6)");
    const auto oracle = testsupport::box_search_counts(E8.gram(), 6);
    for (const auto& [N, c] : want) o.check(oracle.count(N) && BigInt(oracle.at(N)) == c, "box search at N=" + std::to_string(N));
    o.check(oracle.size() == 3, "box search found unexpected norms");
    o.check(automorphism_order(resolve_lattice("a2")) == 12, "#O(A2)");
    o.check(automorphism_order(resolve_lattice("d4")) == 1152, "#O(D4)");
    const auto t0 = std::chrono::steady_clock::now();
    const BigInt e = automorphism_order(E8);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(e == BigInt("696729600"), "#O(E8) = " + e.get_str());
    o.check(secs < 600, "#O(E8) took longer than 10 minutes");
    o.note("short_vectors(E8,6) = {2:240, 4:2160, 6:6720}; #O(E8) = " + e.get_str() + " in " + std::to_string(secs) + " s");
    return o;
}

Outcome criterion6() {
    Outcome o;
    const EvenLattice E8 = resolve_lattice("e8");
    const Rational a = siegel_rhs(E8.as_form(), 8);
    const BigInt aut = automorphism_order(E8);
    o.check(a == Rational(aut), "siegel_rhs(Gram(E8)/2) = " + a.get_str() + " vs " + aut.get_str());
    const HalfIntegralForm I8 = HalfIntegralForm::identity(8);
    const Rational b = siegel_rhs(I8, 8);
    const BigInt n = representation_count(E8, I8);
    o.check(b == Rational(n), "siegel_rhs(I8) = " + b.get_str() + " vs N(E8, I8) = " + n.get_str());
    o.note("siegel_rhs(Gram(E8)/2) = " + a.get_str() + ", #O(E8) = " + aut.get_str());
    o.note("siegel_rhs(I8) = " + b.get_str() + ", N(E8, I8) = " + n.get_str());
    return o;
}

// Plus-space form of weight 13/2 by theta multiplication: the combination of
// theta^13, theta^9 F, theta^5 F^2, theta F^3 (F = sum_{n odd} sigma(n) q^n)
// with C(0) = 0 and C(n) = 0 for n = 2, 3 mod 4, scaled to C(1) = 1.
std::map<long, Rational> theta_multiplication_oracle(long N) {
    using Series = std::vector<BigInt>;
    auto mul = [N](const Series& a, const Series& b) {
        Series out(N + 1, BigInt(0));
        for (long i = 0; i <= N; ++i)
            if (a[i] != 0)
                for (long j = 0; i + j <= N; ++j) out[i + j] += a[i] * b[j];
        return out;
    };
    Series theta(N + 1, BigInt(0)), F(N + 1, BigInt(0));
    for (long m = 0; m * m <= N; ++m) theta[m * m] += m == 0 ? 1 : 2;
    for (long n = 1; n <= N; n += 2)
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) F[n] += d;
    std::vector<Series> basis;
    for (int j = 0; j < 4; ++j) {
        Series s(N + 1, BigInt(0));
        s[0] = 1;
        for (int t = 0; t < 13 - 4 * j; ++t) s = mul(s, theta);
        for (int t = 0; t < j; ++t) s = mul(s, F);
        basis.push_back(std::move(s));
    }
    std::vector<std::vector<Rational>> rows;
    for (long n = 0; n <= N; ++n)
        if (n == 0 || n % 4 == 2 || n % 4 == 3) {
            std::vector<Rational> r;
            for (const auto& b : basis) r.emplace_back(b[n]);
            rows.push_back(std::move(r));
        }
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < 4; ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Rational d = rows[r][c];
        for (auto& x : rows[r]) x /= d;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i][c] != 0) {
                const Rational f = rows[i][c];
                for (int k = 0; k < 4; ++k) rows[i][k] -= f * rows[r][k];
            }
        pivots.push_back(c);
        ++r;
    }
    if (pivots.size() != 3) throw ConsistencyError("theta multiplication: plus-space cusp forms are not one-dimensional");
    int free = 0;
    while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
    std::vector<Rational> coef(4, Rational(0));
    coef[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) coef[pivots[i]] = -rows[i][free];
    std::vector<Rational> form(N + 1, Rational(0));
    for (long n = 0; n <= N; ++n)
        for (int j = 0; j < 4; ++j) form[n] += coef[j] * Rational(basis[j][n]);
    std::map<long, Rational> out;
    for (long n = 1; n <= N; ++n) out[n] = form[n] / form[1];
    return out;
}

std::map<long, BigInt> tau_at_primes(long N) {
    std::vector<BigInt> c(N + 1, BigInt(0));
    c[0] = 1;
    for (long m = 1; m <= N; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (long i = N; i >= m; --i) c[i] -= c[i - m];
    std::map<long, BigInt> out;
    for (long p = 2; p <= N; ++p)
        if (is_prime(p)) out[p] = c[p - 1];
    return out;
}

Outcome criterion7() {
    Outcome o;
    const long N = 100;
    const auto oracle = theta_multiplication_oracle(N);
    std::map<long, Rational> supported;
    for (const auto& [n, c] : oracle) {
        if (n % 4 == 2 || n % 4 == 3) {
            if (c != 0) throw ConsistencyError("oracle has support off the plus space");
            continue;
        }
        supported[n] = c;
    }
    const PlusFormCoefficients plus(6, supported);
    const SatakeData satake = SatakeData::from_hecke_eigenvalues(12, tau_at_primes(N));

    const QuadNumber h4 = h_coefficient_predict(4, satake, plus);
    const bool clause_a = h4 == QuadNumber(8) * QuadNumber(plus.C(1));
    o.check(clause_a, "h_coefficient_predict(4) = " + h4.to_string() + ", expected 8 C(1)");
    std::vector<long> bad;
    for (const auto& [eta, c] : supported)
        if (h_coefficient_predict(eta, satake, plus) != QuadNumber(c)) bad.push_back(eta);
    std::ostringstream os;
    for (std::size_t i = 0; i < bad.size() && i < 8; ++i) os << (i ? ", " : "") << bad[i];
    o.check(bad.empty(), "predictions differ from the oracle at " + std::to_string(bad.size()) + " of " +
                             std::to_string(supported.size()) + " indices (eta = " + os.str() + (bad.size() > 8 ? ", ..." : "") + ")");
    o.note("oracle C(4) = " + plus.C(4).get_str() + ", printed-sign prediction h(4) = " + h4.to_string());

    // The same comparison with the Kohnen-Zagier sign in the lower Psi term.
    long kz_bad = 0;
    for (const auto& [eta, c] : supported)
        if (h_coefficient_predict(eta, satake, plus, PsiSign::kohnen_zagier) != QuadNumber(c)) ++kz_bad;
    const QuadNumber h4kz = h_coefficient_predict(4, satake, plus, PsiSign::kohnen_zagier);
    o.note("with the Kohnen-Zagier sign: h(4) = " + h4kz.to_string() + ", mismatches " + std::to_string(kz_bad) + " of " +
           std::to_string(supported.size()));
    o.note("no single sign satisfies both clauses: h(4) = 8 C(1) forces the printed sign, the oracle match forces the other");
    return o;
}

Outcome criterion8() {
    Outcome o;
    o.note("Niemeier primary: the Hecke eigenfunction attached to Delta on the 24 classes is not bundled, and");
    o.note("the automorphism orders of several Niemeier lattices are out of enumeration reach; using the fallback");
    const GenusWithWeights g = load_genus("rank16");
    const EvenLattice& A = g.lattices()[g.index_of("E8+E8")];
    const EvenLattice& B = g.lattices()[g.index_of("D16+")];
    const ClassFunction f{{A.name(), Rational(3)}, {B.name(), Rational(-5)}};
    const HalfIntegralForm xa = A.as_form(), xb = B.as_form();
    const BigInt cross_ab = representation_count(B, xa);
    const BigInt cross_ba = representation_count(A, xb);
    o.check(cross_ab == 0, "N(D16+, Gram(E8+E8)/2) = " + cross_ab.get_str());
    o.check(cross_ba == 0, "N(E8+E8, Gram(D16+)/2) = " + cross_ba.get_str());
    const Rational ra = weighted_average(g, f, xa);
    const Rational rb = weighted_average(g, f, xb);
    o.check(ra == f.at(A.name()), "R(Gram(E8+E8)/2, f) = " + ra.get_str());
    o.check(rb == f.at(B.name()), "R(Gram(D16+)/2, f) = " + rb.get_str());
    o.note("fallback: R(Gram(E8+E8)/2, f) = " + ra.get_str() + " = f(E8+E8), R(Gram(D16+)/2, f) = " + rb.get_str() +
           " = f(D16+), cross counts 0 and 0");
    return o;
}

Outcome criterion9() {
    Outcome o;
    const unsigned N = 4;
    EnumerationOptions one, many;
    many.threads = N;
    const EvenLattice E8 = resolve_lattice("e8");
    const EvenLattice D16 = resolve_lattice("d16plus");
    struct Job {
        std::string name;
        std::function<BigInt(const EnumerationOptions&)> run;
    };
    const std::vector<Job> jobs = {
        {"#O(E8)", [&](const EnumerationOptions& e) { return automorphism_order(E8, e); }},
        {"#O(D16+)", [&](const EnumerationOptions& e) { return automorphism_order(D16, e); }},
        {"N(E8, I8)", [&](const EnumerationOptions& e) { return representation_count(E8, HalfIntegralForm::identity(8), e); }},
        {"N(E8+E8, Gram(D16+)/2)",
         [&](const EnumerationOptions& e) { return representation_count(resolve_lattice("e8e8"), D16.as_form(), e); }},
    };
    for (const auto& j : jobs) {
        const BigInt a = j.run(one), b = j.run(many);
        o.check(a == b, j.name + ": " + a.get_str() + " with 1 thread, " + b.get_str() + " with " + std::to_string(N));
        o.note(j.name + " = " + a.get_str() + " (1 and " + std::to_string(N) + " threads)");
    }
    o.check(short_vectors(E8, 8) == short_vectors(E8, 8), "short vectors");
    const HalfIntegralForm xi = parse_inline_form("1,1/2;1/2,2");
    LayerOptions l1, lN;
    lN.threads = N;
    o.check(siegel_series_layers(xi, 2, 8, l1) == siegel_series_layers(xi, 2, 8, lN), "Siegel series layers");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app("siegelkit acceptance checks");
    std::vector<int> which;
    app.add_option("--criterion", which, "criterion number (1-9); repeatable, default all")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);
    if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    const std::map<int, std::pair<std::string, std::function<Outcome()>>> table = {
        {1, {"Siegel-series oracle suite", criterion1}},
        {2, {"f = 0 gives F = 1", criterion2}},
        {3, {"Psi edge cases", criterion3}},
        {4, {"character independence", criterion4}},
        {5, {"lattice counting", criterion5}},
        {6, {"Siegel formula on E8", criterion6}},
        {7, {"Shimura-layer consistency", criterion7}},
        {8, {"ratio law (rank-16 fallback)", criterion8}},
        {9, {"thread determinism", criterion9}},
    };
    bool all = true;
    for (int n : which) {
        const auto& [title, fn] = table.at(n);
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "CRITERION " << n << ": " << (out.pass ? "PASS" : "FAIL") << "  " << title << "  (" << secs << " s)\n";
        for (const auto& s : out.notes) std::cout << "    " << s << "\n";
        all = all && out.pass;
    }
    return all ? 0 : 1;
}
