// Overlattice evaluation of the Siegel series.
//
// An overlattice Z_p^n <= M is carried as an adapted basis: M is spanned by
// p^{-a_i} U_i for the columns U_i of a unimodular U. Every index-p
// extension M + Z u, u in p^{-1} M, raises exactly one exponent, namely the
// largest a_i on the support of u in that basis, so the children of a node
// and their admissibility follow from the parent in O(n^2). Nodes are
// deduplicated through the Howell form of M / Z_p^n inside (Z/p^E)^n.
//
// Each lattice of level t has (p^r - 1)/(p - 1) parents, r the number of
// nonzero exponents. Summing |M^#/M| / #parents over all children of level
// t-1 therefore gives the level-t sum without building level t. The last
// level uses this; the other levels compute it too as a cross-check.

#include "siegelkit/errors.hpp"
#include "siegelkit/siegel_series.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <unordered_set>

namespace siegelkit {

namespace {

using Vec = std::vector<std::int64_t>;

// All moduli stay below 2^31, so products fit in 64 bits.
inline std::int64_t md(std::int64_t x, std::int64_t m) {
    x %= m;
    return x < 0 ? x + m : x;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, b = md(a, m);
    while (b) {
        const std::int64_t t = g / b;
        std::tie(g, b) = std::make_pair(b, g - t * b);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1) throw ConsistencyError("lattice_sum: non-unit pivot");
    return md(x, m);
}

struct Ctx {
    int n;
    long p;
    int E;
    std::int64_t q;                // p^E, modulus of the Howell keys
    std::int64_t K;                // p^{E+3}, modulus of bases and Gram entries
    std::vector<std::int64_t> pw;  // p^0 .. p^{E+3}
    int key_width;                 // bytes per key entry
};

int val(const Ctx& c, std::int64_t x, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % c.p == 0) {
        x /= c.p;
        ++v;
    }
    return std::min(v, cap);
}

bool nonzero(const Vec& v) {
    for (auto x : v)
        if (x) return true;
    return false;
}

// Howell form over Z/p^E, packed into a byte string. Row c of the form is
// the generator with pivot in column c, or zero.
std::string howell_key(const Ctx& c, std::vector<Vec> pool) {
    const int n = c.n;
    Vec H(static_cast<std::size_t>(n) * n, 0);
    for (int col = 0; col < n; ++col) {
        int best = -1, bv = c.E;
        for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
            if (pool[i][col] == 0) continue;
            const int v = val(c, pool[i][col], c.E);
            if (v < bv) {
                bv = v;
                best = i;
            }
        }
        if (best < 0) continue;
        Vec r = std::move(pool[best]);
        pool.erase(pool.begin() + best);
        const std::int64_t inv = inverse_mod(r[col] / c.pw[bv], c.q);
        for (auto& x : r) x = md(x * inv, c.q);
        for (auto& s : pool) {
            if (s[col] == 0) continue;
            const std::int64_t f = s[col] / c.pw[bv];
            for (int j = col; j < n; ++j) s[j] = md(s[j] - f * r[j], c.q);
        }
        Vec sat(n);
        for (int j = 0; j < n; ++j) sat[j] = md(r[j] * c.pw[c.E - bv], c.q);
        if (nonzero(sat)) pool.push_back(std::move(sat));
        std::erase_if(pool, [](const Vec& v) { return !nonzero(v); });
        for (int j = 0; j < n; ++j) H[col * n + j] = r[j];
    }
    for (int col = 0; col < n; ++col) {
        const std::int64_t piv = H[col * n + col];
        if (piv == 0) continue;
        for (int r2 = 0; r2 < col; ++r2) {
            const std::int64_t f = H[r2 * n + col] / piv;
            if (f == 0) continue;
            for (int j = col; j < n; ++j) H[r2 * n + j] = md(H[r2 * n + j] - f * H[col * n + j], c.q);
        }
    }
    std::string key(H.size() * c.key_width, '\0');
    for (std::size_t i = 0; i < H.size(); ++i)
        for (int b = 0; b < c.key_width; ++b) key[i * c.key_width + b] = static_cast<char>((H[i] >> (8 * b)) & 0xff);
    return key;
}

struct Node {
    std::vector<std::int32_t> U;  // n x n row-major, modulo p^{E+3}
    std::vector<int> a;
};

// sum_{i<=j} min(a_i, a_j)
long dual_exponent(std::vector<int> a) {
    std::sort(a.begin(), a.end(), std::greater<int>());
    long s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += static_cast<long>(j + 1) * a[j];
    return s;
}

int rank_of(const std::vector<int>& a) {
    int r = 0;
    for (int x : a) r += x > 0;
    return r;
}

}  // namespace

LatticeSumResult siegel_series_lattice_sum_partial(const HalfIntegralForm& xi, long p, int e_max,
                                                  const LatticeSumOptions& opts) {
    if (!is_prime(p)) throw DomainError("siegel_series_lattice_sum: p is not prime");
    const int n = xi.size();
    if (n < 1) throw DomainError("siegel_series_lattice_sum: empty form");
    if (xi.det_two_xi() == 0) throw DomainError("siegel_series_lattice_sum: form is singular");
    if (e_max < 0) throw DomainError("siegel_series_lattice_sum: e_max must be nonnegative");
    std::vector<BigInt> P(e_max + 1, BigInt(0));
    P[0] = 1;
    int reached = 0;
    std::size_t stored = 1;
    if (e_max > 0) {
        Ctx c{n, p, e_max, 0, 0, {1}, 1};
        for (int i = 1; i <= e_max + 3; ++i) {
            if (c.pw.back() * p >= (std::int64_t{1} << 31))
                throw CapabilityError("siegel_series_lattice_sum: p^(e_max+3) exceeds 2^31");
            c.pw.push_back(c.pw.back() * p);
        }
        c.q = c.pw[e_max];
        c.K = c.pw[e_max + 3];
        c.key_width = c.q <= 256 ? 1 : (c.q <= 65536 ? 2 : 4);
        const std::int64_t K = c.K;

        std::vector<std::int64_t> T(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) T[i * n + j] = md(xi.two_xi()(i, j), K);

        // projective points of F_p^n with first nonzero coordinate 1
        std::vector<std::vector<std::int32_t>> points;
        for (int lead = 0; lead < n; ++lead) {
            std::int64_t count = 1;
            for (int i = lead + 1; i < n; ++i) count *= p;
            for (std::int64_t idx = 0; idx < count; ++idx) {
                std::vector<std::int32_t> v(n, 0);
                v[lead] = 1;
                std::int64_t r = idx;
                for (int i = lead + 1; i < n; ++i) {
                    v[i] = static_cast<std::int32_t>(r % p);
                    r /= p;
                }
                points.push_back(std::move(v));
            }
        }

        std::vector<Node> level(1);
        level[0].U.assign(static_cast<std::size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) level[0].U[i * n + i] = 1;
        level[0].a.assign(n, 0);

        std::vector<std::int64_t> Tp(static_cast<std::size_t>(n) * n), TU(static_cast<std::size_t>(n) * n);
        std::vector<std::int64_t> r(n), newcol(n), newrow(n);
        bool out_of_budget = false;
        for (int t = 1; t <= e_max; ++t) {
            // Once the budget is spent, level t is still summed through the
            // parent identity but its lattices are not kept.
            bool last = (t == e_max);
            std::unordered_set<std::string> seen;
            std::vector<Node> next;
            // (dual exponent, rank) -> number of (parent, child) incidences
            std::map<std::pair<long, int>, std::uint64_t> incidences;
            for (const Node& node : level) {
                const auto& U = node.U;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        std::int64_t s = 0;
                        for (int k = 0; k < n; ++k) s = md(s + T[i * n + k] * U[k * n + j], K);
                        TU[i * n + j] = s;
                    }
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        std::int64_t s = 0;
                        for (int k = 0; k < n; ++k) s = md(s + static_cast<std::int64_t>(U[k * n + i]) * TU[k * n + j], K);
                        Tp[i * n + j] = s;
                    }
                for (const auto& pt : points) {
                    int star = -1;
                    for (int i = 0; i < n; ++i)
                        if (pt[i] && (star < 0 || node.a[i] > node.a[star])) star = i;
                    const std::int64_t inv = inverse_mod(pt[star], K);
                    for (int i = 0; i < n; ++i)
                        r[i] = (i == star || pt[i] == 0) ? 0 : md(pt[i] * inv % K * c.pw[node.a[star] - node.a[i]], K);
                    // row star of U'^t T U': T'_{star,k} + sum_i r_i T'_{i,k}
                    for (int k = 0; k < n; ++k) {
                        std::int64_t s = Tp[star * n + k];
                        for (int i = 0; i < n; ++i)
                            if (r[i]) s = md(s + r[i] * Tp[i * n + k], K);
                        newrow[k] = s;
                    }
                    std::int64_t diag = newrow[star];
                    for (int i = 0; i < n; ++i)
                        if (r[i]) diag = md(diag + r[i] * newrow[i], K);
                    const int as = node.a[star] + 1;
                    if (diag % ((p == 2 ? 2 : 1) * c.pw[as]) != 0) continue;
                    bool ok = true;
                    for (int k = 0; k < n && ok; ++k) {
                        if (k == star) continue;
                        ok = newrow[k] % c.pw[std::min(as, node.a[k])] == 0;
                    }
                    if (!ok) continue;

                    std::vector<int> a2 = node.a;
                    a2[star] = as;
                    ++incidences[{dual_exponent(a2), rank_of(a2)}];
                    if (last) continue;

                    for (int row = 0; row < n; ++row) {
                        std::int64_t s = U[row * n + star];
                        for (int i = 0; i < n; ++i)
                            if (r[i]) s = md(s + r[i] * U[row * n + i], K);
                        newcol[row] = s;
                    }
                    std::vector<Vec> gens;
                    for (int i = 0; i < n; ++i) {
                        if (a2[i] == 0) continue;
                        Vec g(n);
                        for (int row = 0; row < n; ++row)
                            g[row] = md((i == star ? newcol[row] : U[row * n + i]) * c.pw[e_max - a2[i]], c.q);
                        gens.push_back(std::move(g));
                    }
                    std::string key = howell_key(c, std::move(gens));
                    if (!seen.insert(std::move(key)).second) continue;
                    if (stored + 1 > opts.max_lattices) {
                        out_of_budget = true;
                        last = true;
                        next.clear();
                        seen.clear();
                        continue;
                    }
                    ++stored;
                    Node child;
                    child.U = U;
                    for (int row = 0; row < n; ++row) child.U[row * n + star] = static_cast<std::int32_t>(newcol[row]);
                    child.a = std::move(a2);
                    next.push_back(std::move(child));
                }
            }
            BigInt via_parents = 0;
            for (const auto& [key, count] : incidences) {
                const BigInt parents = (ipow(BigInt(p), key.second) - 1) / (p - 1);
                const BigInt num = ipow(BigInt(p), key.first) * BigInt(static_cast<unsigned long>(count));
                if (num % parents != 0) throw ConsistencyError("lattice_sum: parent count does not divide incidences");
                via_parents += num / parents;
            }
            if (!last) {
                BigInt direct = 0;
                for (const Node& node : next) direct += ipow(BigInt(p), dual_exponent(node.a));
                if (direct != via_parents)
                    throw ConsistencyError("lattice_sum: level sum disagrees with the parent-count identity");
            }
            P[t] = via_parents;
            reached = t;
            if (std::getenv("SIEGELKIT_TRACE"))
                std::fprintf(stderr, "lattice_sum p=%ld t=%d nodes=%zu\n", p, t, next.size());
            if (out_of_budget) break;
            level = std::move(next);
            if (level.empty()) {
                // no admissible overlattices beyond this index
                reached = e_max;
                break;
            }
        }
    }
    Poly factor{BigInt(1)};
    for (int i = 0; i < n; ++i) factor = poly_mul(factor, {BigInt(1), -ipow(BigInt(p), i)});
    Poly b = poly_mul(P, factor);
    b.resize(reached + 1, BigInt(0));
    return {std::move(b), reached, stored};
}

std::vector<BigInt> siegel_series_lattice_sum(const HalfIntegralForm& xi, long p, int e_max, const LatticeSumOptions& opts) {
    LatticeSumResult r = siegel_series_lattice_sum_partial(xi, p, e_max, opts);
    if (r.complete_through < e_max)
        throw CapabilityError("siegel_series_lattice_sum: overlattice budget exhausted after layer " +
                              std::to_string(r.complete_through) + " at p = " + std::to_string(p));
    return std::move(r.layers);
}

}  // namespace siegelkit
