#include "siegelkit/siegel_series.hpp"

#include "siegelkit/errors.hpp"

#include <algorithm>
#include <array>
#include <thread>

namespace siegelkit {

Poly poly_trim(Poly a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly series_div(const Poly& a, const Poly& b, int n) {
    if (b.empty() || (b[0] != 1 && b[0] != -1)) throw DomainError("series_div: divisor must have unit constant term");
    Poly q(n + 1, BigInt(0));
    for (int i = 0; i <= n; ++i) {
        BigInt s = (i < static_cast<int>(a.size())) ? a[i] : BigInt(0);
        for (int j = 1; j <= i && j < static_cast<int>(b.size()); ++j) s -= b[j] * q[i - j];
        q[i] = s * b[0];
    }
    return q;
}

GammaFactor gamma_p(int m, int delta, long p) {
    if (m < 1) throw DomainError("gamma_p: m must be positive");
    if (delta < -1 || delta > 1) throw DomainError("gamma_p: delta must be -1, 0 or 1");
    if (!is_prime(p)) throw DomainError("gamma_p: p is not prime");
    GammaFactor g;
    g.m = m;
    g.delta = delta;
    g.p = p;
    g.numerator = {BigInt(1), BigInt(-1)};
    for (int j = 1; j <= m; ++j) g.numerator = poly_mul(g.numerator, {BigInt(1), BigInt(0), -ipow(BigInt(p), 2 * j)});
    const BigInt pm = ipow(BigInt(p), m);
    g.denominator = delta == 0 ? Poly{BigInt(1)} : Poly{BigInt(1), BigInt(-delta) * pm};
    if (delta == 0) {
        g.polynomial = g.numerator;
    } else {
        // (1 - p^{2m} X^2) = (1 - delta p^m X)(1 + delta p^m X)
        Poly rest = {BigInt(1), BigInt(-1)};
        for (int j = 1; j < m; ++j) rest = poly_mul(rest, {BigInt(1), BigInt(0), -ipow(BigInt(p), 2 * j)});
        g.polynomial = poly_mul(rest, {BigInt(1), BigInt(delta) * pm});
    }
    if (poly_trim(poly_mul(g.polynomial, g.denominator)) != poly_trim(g.numerator))
        throw ConsistencyError("gamma_p: denominator does not divide numerator");
    return g;
}

static Rational eval_poly(const Poly& a, const Rational& X) {
    Rational acc = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * X + Rational(*it);
    return acc;
}

Rational GammaFactor::eval(const Rational& X) const {
    const Rational den = eval_poly(denominator, X);
    if (den == 0) throw DomainError("gamma_p: evaluation at the pole X = p^{-m}");
    return eval_poly(numerator, X) / den;
}

// ---------------------------------------------------------------------------
// Direct enumeration of the defining sum.

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t q) {
    std::int64_t g = q, x = 0, x1 = 1, b = a % q;
    if (b < 0) b += q;
    while (b) {
        const std::int64_t t = g / b;
        std::tie(g, b) = std::make_pair(b, g - t * b);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1) throw ConsistencyError("mod_inverse: value is not a unit");
    x %= q;
    return x < 0 ? x + q : x;
}

struct LayerContext {
    long p;
    int e;
    std::int64_t q;
    int n;
    std::vector<int> ord;  // ord[r] = valuation of r mod q, capped at e
};

// Elementary-divisor valuations of a symmetric matrix mod q, summed as
// sum_i (e - v_i).
int nu_exponent(const LayerContext& ctx, std::array<std::int64_t, 16> a) {
    const int n = ctx.n;
    const std::int64_t q = ctx.q;
    int total = 0;
    for (int k = 0; k < n; ++k) {
        int best = ctx.e, bi = -1, bj = -1;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                const int v = ctx.ord[a[i * n + j]];
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break;  // remaining block vanishes mod q
        total += ctx.e - best;
        if (bi != k)
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[bi * n + j]);
        if (bj != k)
            for (int i = 0; i < n; ++i) std::swap(a[i * n + k], a[i * n + bj]);
        std::int64_t pv = 1;
        for (int s = 0; s < best; ++s) pv *= ctx.p;
        const std::int64_t uinv = mod_inverse(a[k * n + k] / pv, q);
        for (int i = k + 1; i < n; ++i) {
            const std::int64_t fct = static_cast<std::int64_t>((static_cast<__int128>(a[i * n + k] / pv) * uinv) % q);
            for (int j = k; j < n; ++j) {
                std::int64_t v = (a[i * n + j] - static_cast<std::int64_t>((static_cast<__int128>(fct) * a[k * n + j]) % q)) % q;
                a[i * n + j] = v < 0 ? v + q : v;
            }
        }
        for (int j = k + 1; j < n; ++j) {
            const std::int64_t fct = static_cast<std::int64_t>((static_cast<__int128>(a[k * n + j] / pv) * uinv) % q);
            for (int i = k; i < n; ++i) {
                std::int64_t v = (a[i * n + j] - static_cast<std::int64_t>((static_cast<__int128>(fct) * a[i * n + k]) % q)) % q;
                a[i * n + j] = v < 0 ? v + q : v;
            }
        }
    }
    return total;
}

// counts[t * q + r] for t in [0, n*e], r residue of unit * tr(xi y) mod q.
using Counts = std::vector<std::int64_t>;

void enumerate_size2(const LayerContext& ctx, const IntMatrix& T, std::int64_t unit, unsigned tid, unsigned nthreads,
                     Counts& counts) {
    const std::int64_t q = ctx.q;
    const long p = ctx.p;
    const int e = ctx.e;
    auto md = [q](std::int64_t v) {
        v %= q;
        return v < 0 ? v + q : v;
    };
    const std::int64_t ca = md(unit * (T(0, 0) / 2)), cb = md(unit * T(0, 1)), cc = md(unit * (T(1, 1) / 2));
    for (std::int64_t a = tid; a < q; a += nthreads) {
        for (std::int64_t b = 0; b < q; ++b) {
            const bool prim_ab = (a % p) != 0 || (b % p) != 0;
            std::int64_t det = md(-b * b);
            std::int64_t r = md(ca * a + cb * b);
            for (std::int64_t c = 0; c < q; ++c) {
                if (prim_ab || (c % p) != 0) {
                    const int t = e + (e - ctx.ord[det]);
                    ++counts[static_cast<std::size_t>(t) * q + r];
                }
                det += a;
                if (det >= q) det -= q;
                r += cc;
                if (r >= q) r -= q;
            }
        }
    }
}

void enumerate_general(const LayerContext& ctx, const IntMatrix& T, std::int64_t unit, unsigned tid, unsigned nthreads,
                       Counts& counts) {
    const int n = ctx.n;
    const std::int64_t q = ctx.q;
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pos.emplace_back(i, j);
    const int d = static_cast<int>(pos.size());
    std::vector<std::int64_t> coef(d);
    for (int k = 0; k < d; ++k) {
        const auto [i, j] = pos[k];
        std::int64_t c = (i == j) ? T(i, i) / 2 : T(i, j);
        c = (c * unit) % q;
        coef[k] = c < 0 ? c + q : c;
    }
    std::vector<std::int64_t> y(d, 0);
    y[0] = tid;
    if (y[0] >= q) return;
    while (true) {
        bool primitive = false;
        for (int k = 0; k < d && !primitive; ++k) primitive = (y[k] % ctx.p) != 0;
        if (primitive) {
            std::array<std::int64_t, 16> a{};
            std::int64_t r = 0;
            for (int k = 0; k < d; ++k) {
                const auto [i, j] = pos[k];
                a[i * n + j] = a[j * n + i] = y[k];
                r = (r + coef[k] * y[k]) % q;
            }
            const int t = nu_exponent(ctx, a);
            ++counts[static_cast<std::size_t>(t) * q + r];
        }
        // odometer: last coordinate fastest, first coordinate strided by thread
        int k = d - 1;
        while (k > 0) {
            if (++y[k] < q) break;
            y[k] = 0;
            --k;
        }
        if (k == 0) {
            y[0] += nthreads;
            if (y[0] >= q) break;
        }
    }
}

}  // namespace

std::vector<BigInt> siegel_series_layers(const HalfIntegralForm& xi, long p, int e_max, const LayerOptions& opts) {
    if (!is_prime(p)) throw DomainError("siegel_series_layers: p is not prime");
    const int n = xi.size();
    if (n < 1) throw DomainError("siegel_series_layers: empty form");
    if (n > 4) throw CapabilityError("siegel_series_layers: enumeration supports size at most 4");
    if (xi.det_two_xi() == 0) throw DomainError("siegel_series_layers: form is singular");
    if (e_max < 0) throw DomainError("siegel_series_layers: e_max must be nonnegative");
    if (opts.character_unit % p == 0) throw DomainError("siegel_series_layers: character unit must be prime to p");
    const unsigned nthreads = std::max(1u, opts.threads);

    std::vector<BigInt> layers(e_max + 1, BigInt(0));
    layers[0] = 1;
    for (int e = 1; e <= e_max; ++e) {
        LayerContext ctx{p, e, ipow64(p, e), n, {}};
        if (ctx.q > (std::int64_t{1} << 40)) throw CapabilityError("siegel_series_layers: modulus too large");
        ctx.ord.assign(ctx.q, 0);
        ctx.ord[0] = e;
        for (std::int64_t r = 1; r < ctx.q; ++r) {
            int v = 0;
            std::int64_t s = r;
            while (s % p == 0) {
                s /= p;
                ++v;
            }
            ctx.ord[r] = v;
        }
        const std::size_t tspan = static_cast<std::size_t>(n) * e + 1;
        std::vector<Counts> per_thread(nthreads, Counts(tspan * ctx.q, 0));
        std::vector<std::thread> pool;
        for (unsigned tid = 0; tid < nthreads; ++tid) {
            pool.emplace_back([&, tid] {
                if (n == 2)
                    enumerate_size2(ctx, xi.two_xi(), opts.character_unit, tid, nthreads, per_thread[tid]);
                else
                    enumerate_general(ctx, xi.two_xi(), opts.character_unit, tid, nthreads, per_thread[tid]);
            });
        }
        for (auto& th : pool) th.join();
        Counts counts(tspan * ctx.q, 0);
        for (const auto& c : per_thread)
            for (std::size_t i = 0; i < c.size(); ++i) counts[i] += c[i];

        // Contract each (t, ord r) orbit with the Ramanujan sum
        // sum_{ord r = w} exp(2 pi i r / p^e) = mu(p^{e-w}).
        for (std::size_t t = 0; t < tspan; ++t) {
            const std::int64_t* row = counts.data() + t * ctx.q;
            std::vector<std::int64_t> rep(e + 1, -1);
            for (std::int64_t r = 0; r < ctx.q; ++r) {
                const int w = ctx.ord[r];
                if (rep[w] < 0)
                    rep[w] = row[r];
                else if (rep[w] != row[r])
                    throw ConsistencyError("siegel_series_layers: character-sum counts are not constant on unit orbits");
            }
            const std::int64_t contrib = rep[e] - (e >= 1 ? rep[e - 1] : 0);
            if (contrib != 0) {
                if (t > static_cast<std::size_t>(e_max)) continue;  // beyond the requested range
                layers[t] += BigInt(static_cast<long>(contrib));
            }
        }
    }
    return layers;
}

// ---------------------------------------------------------------------------

int full_layer_count(const HalfIntegralForm& xi, long p) {
    if (xi.size() % 2) throw DomainError("full_layer_count: size must be even");
    const LocalInvariants inv = xi_local_invariants(xi, p);
    return static_cast<int>(2 * inv.f) + gamma_p(xi.size() / 2, inv.delta, p).degree();
}

bool satisfies_functional_equation(const Poly& F, long p, int m) {
    if (F.empty() || F.size() % 2 == 0) return false;
    const int f = static_cast<int>(F.size() / 2);
    for (int j = 0; j <= f; ++j)
        if (F[f + j] != F[f - j] * ipow(BigInt(p), static_cast<unsigned long>((2 * m + 1) * j))) return false;
    return true;
}

Poly divide_by_gamma(const std::vector<BigInt>& layers, const GammaFactor& gamma, long f, bool allow_completion,
                     bool* completed) {
    if (layers.empty() || layers[0] != 1) throw ConsistencyError("divide_by_gamma: layer c_0 must equal 1");
    if (f < 0) throw ConsistencyError("divide_by_gamma: negative f");
    const int E = static_cast<int>(layers.size()) - 1;
    const int full = static_cast<int>(2 * f) + gamma.degree();
    const Poly Q = series_div(layers, gamma.polynomial, E);
    Poly F(2 * f + 1, BigInt(0));
    if (completed) *completed = false;
    if (E >= full) {
        for (int i = 0; i <= 2 * f; ++i) F[i] = Q[i];
        for (int i = static_cast<int>(2 * f) + 1; i <= E; ++i)
            if (Q[i] != 0) throw ConsistencyError("F_p: nonzero remainder in the division by gamma_p");
        if (F[2 * f] == 0) throw ConsistencyError("F_p: degree differs from 2 f_p");
    } else {
        if (!allow_completion || E < f)
            throw ConsistencyError("F_p: too few layers (" + std::to_string(E) + ") for f = " + std::to_string(f));
        for (int i = 0; i <= f; ++i) F[i] = Q[i];
        for (long j = 1; j <= f; ++j)
            F[f + j] = F[f - j] * ipow(BigInt(gamma.p), static_cast<unsigned long>((2 * gamma.m + 1) * j));
        for (int i = static_cast<int>(f) + 1; i <= E; ++i)
            if (Q[i] != F[i]) throw ConsistencyError("F_p: known layers contradict the functional equation");
        if (completed) *completed = true;
    }
    if (F[0] != 1) throw ConsistencyError("F_p: constant term differs from 1");
    if (!satisfies_functional_equation(F, gamma.p, gamma.m))
        throw ConsistencyError("F_p: coefficients violate the functional equation");
    return F;
}

SiegelSeriesData siegel_series_data(const HalfIntegralForm& xi, long p, const SeriesOptions& opts) {
    if (xi.size() % 2) throw DomainError("siegel_series_data: size must be even");
    if (!is_prime(p)) throw DomainError("siegel_series_data: p is not prime");
    const BigInt det = xi.det_two_xi();
    if (det == 0) throw DomainError("siegel_series_data: form is singular");
    const LocalInvariants inv = xi_local_invariants(xi, p);
    const int m = xi.size() / 2;
    const GammaFactor gamma = gamma_p(m, inv.delta, p);
    const int full = static_cast<int>(2 * inv.f) + gamma.degree();

    SiegelSeriesData out;
    out.prime = p;
    out.m = m;
    out.gamma_delta = inv.delta;
    out.f = inv.f;
    out.method = opts.method;
    if (out.method == SeriesMethod::automatic)
        out.method = xi.size() <= 2 ? SeriesMethod::enumeration : SeriesMethod::lattice_sum;

    const int wanted = full + std::max(0, opts.extra_layers);
    if (out.method == SeriesMethod::enumeration) {
        const int cap = ordp(det, p) + 3;
        LayerOptions lo{opts.threads, opts.character_unit};
        out.layer_coeffs = siegel_series_layers(xi, p, std::min(wanted, cap), lo);
    } else {
        LatticeSumOptions lo{opts.max_lattices};
        LatticeSumResult r = siegel_series_lattice_sum_partial(xi, p, wanted, lo);
        if (r.complete_through < wanted && (!opts.allow_symmetric_completion || r.complete_through < inv.f))
            throw CapabilityError("siegel_series_data: overlattice budget allows only " +
                                  std::to_string(r.complete_through) + " layers at p = " + std::to_string(p));
        out.layer_coeffs = std::move(r.layers);
    }
    bool completed = false;
    out.F_coeffs = divide_by_gamma(out.layer_coeffs, gamma, inv.f, opts.allow_symmetric_completion, &completed);
    out.completed_by_symmetry = completed;
    return out;
}

Poly F_p_poly(const HalfIntegralForm& xi, long p, const SeriesOptions& opts) { return siegel_series_data(xi, p, opts).F_coeffs; }

LambdaPoly F_tilde_poly(const Poly& F, long p, int m) {
    if (!satisfies_functional_equation(F, p, m)) throw ConsistencyError("F_tilde: F_p is not symmetric");
    const int f = static_cast<int>(F.size() / 2);
    LambdaPoly out;
    out.coeffs.assign(f + 1, QuadNumber());
    // a_f p^{-f(2m+1)/2} + sum_j a_{f-j} p^{-(f-j)(2m+1)/2} V_j(lambda)
    out.coeffs[0] += QuadNumber::half_power(p, -static_cast<long>(f) * (2 * m + 1)) * QuadNumber(Rational(F[f]));
    for (int j = 1; j <= f; ++j) {
        const QuadNumber w = QuadNumber::half_power(p, -static_cast<long>(f - j) * (2 * m + 1)) * QuadNumber(Rational(F[f - j]));
        const auto V = chebyshev_V(j);
        for (std::size_t i = 0; i < V.size(); ++i)
            if (V[i] != 0) out.coeffs[i] += w * QuadNumber(Rational(V[i]));
    }
    out.trim();
    return out;
}

QuadNumber F_tilde_at_X(const Poly& F, long p, int m, const Rational& X) {
    if (X == 0) throw DomainError("F_tilde_at_X: X must be nonzero");
    const long f = static_cast<long>(F.size() / 2);
    QuadNumber acc;
    for (long i = 0; i < static_cast<long>(F.size()); ++i)
        acc += QuadNumber(Rational(F[i]) * rpow(X, i - f)) * QuadNumber::half_power(p, -i * (2 * m + 1));
    return acc;
}

QuadNumber F_tilde_eval(const HalfIntegralForm& xi, long p, const QuadNumber& lambda, const SeriesOptions& opts) {
    return F_tilde_poly(F_p_poly(xi, p, opts), p, xi.size() / 2).eval(lambda);
}

long double F_tilde_eval(const HalfIntegralForm& xi, long p, long double lambda, const SeriesOptions& opts) {
    return F_tilde_poly(F_p_poly(xi, p, opts), p, xi.size() / 2).eval(lambda);
}

static int psi_sign(PsiSign s) { return s == PsiSign::as_printed ? 1 : -1; }

LambdaPoly Psi_p(const Rational& eta, long p, PsiSign sign) {
    if (eta == 0) throw DomainError("Psi_p: eta must be nonzero");
    if (!is_prime(p)) throw DomainError("Psi_p: p is not prime");
    const long f = f_p_eta(eta, p);
    LambdaPoly out;
    if (f < 0) return out;
    const int delta = delta_p(eta, p);
    const auto Uf = chebyshev_U(static_cast<int>(f));
    const auto Ug = chebyshev_U(static_cast<int>(f) - 1);
    out.coeffs.assign(Uf.size(), QuadNumber());
    for (std::size_t i = 0; i < Uf.size(); ++i) out.coeffs[i] += QuadNumber(Rational(Uf[i]));
    const QuadNumber w = QuadNumber::half_power(p, -1) * QuadNumber(psi_sign(sign) * delta);
    for (std::size_t i = 0; i < Ug.size(); ++i) out.coeffs[i] += w * QuadNumber(Rational(Ug[i]));
    out.trim();
    return out;
}

QuadNumber Psi_p_at_X(const Rational& eta, long p, const Rational& X, PsiSign sign) {
    if (X == 0 || X == 1 || X == -1) throw DomainError("Psi_p_at_X: X must avoid 0 and +-1");
    const long f = f_p_eta(eta, p);
    if (f < 0) return QuadNumber();
    const Rational den = X - 1 / X;
    const Rational u = (rpow(X, f + 1) - rpow(X, -f - 1)) / den;
    const Rational v = (rpow(X, f) - rpow(X, -f)) / den;
    return QuadNumber(u) + QuadNumber::half_power(p, -1) * QuadNumber(psi_sign(sign) * delta_p(eta, p) * v);
}

}  // namespace siegelkit
