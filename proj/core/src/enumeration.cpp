// Short-vector enumeration and tuple counting.
//
// With the fraction-free factorisation of a positive definite G (U upper
// triangular, U_ii = D_i the i-th leading minor, D_{-1} = 1),
//   x^t G x = sum_i (sum_{j>=i} U_ij x_j)^2 / (D_{i-1} D_i).
// Enumerating x_{n-1} first, the scaled tail V_i = D_{i-1} * (sum of the
// terms with index >= i) is an integer and obeys
//   V_i = ((D_i x_i + b_i)^2 + D_{i-1} V_{i+1}) / D_i,
// so the pruning test (D_i x_i + b_i)^2 <= D_{i-1}(D_i B - V_{i+1}) is exact.

#include "enumeration_internal.hpp"

#include "siegelkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace siegelkit {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

i128 to_i128(const BigInt& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 120) throw CapabilityError("enumeration: intermediate value too large");
    const std::string s = v.get_str();
    i128 r = 0;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    for (; i < s.size(); ++i) r = r * 10 + (s[i] - '0');
    return s[0] == '-' ? -r : r;
}

i128 isqrt128(i128 x) {
    if (x <= 0) return 0;
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(x)));
    while (r > 0 && r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

struct Factor {
    int n = 0;
    std::vector<i128> U;   // row-major, upper part used
    std::vector<i128> D;   // D[i] = leading minor of size i+1
    i128 Dm1(int i) const { return i ? D[i - 1] : 1; }
};

Factor fraction_free(const IntMatrix& G) {
    const int n = G.rows();
    std::vector<std::vector<BigInt>> M(n, std::vector<BigInt>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = BigInt(static_cast<long>(G(i, j)));
    BigInt prev = 1;
    for (int k = 0; k < n; ++k) {
        if (M[k][k] <= 0) throw DomainError("enumeration: Gram matrix not positive definite");
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    Factor f;
    f.n = n;
    f.U.assign(static_cast<std::size_t>(n) * n, 0);
    f.D.resize(n);
    for (int i = 0; i < n; ++i) {
        f.D[i] = to_i128(M[i][i]);
        for (int j = i; j < n; ++j) f.U[i * n + j] = to_i128(M[i][j]);
    }
    return f;
}

}  // namespace

VectorList enumerate_short_vectors(const IntMatrix& gram, long bound) {
    if (!gram.is_symmetric()) throw DomainError("enumerate_short_vectors: Gram matrix not symmetric");
    const int n = gram.rows();
    VectorList out;
    out.rank = n;
    if (n == 0 || bound <= 0) return out;
    const Factor F = fraction_free(gram);
    // Every intermediate is bounded by max D_{i-1} D_i * bound.
    for (int i = 0; i < n; ++i) {
        const long double bits = std::log2(static_cast<long double>(F.Dm1(i))) +
                                 std::log2(static_cast<long double>(F.D[i])) + std::log2(static_cast<long double>(bound));
        if (bits > 120) throw CapabilityError("enumerate_short_vectors: bound too large for the Gram matrix");
    }
    std::vector<i128> V(n + 1, 0);
    std::vector<std::int64_t> x(n, 0);
    const i128 B = bound;
    std::function<void(int)> rec = [&](int i) {
        if (i < 0) {
            if (V[0] == 0) return;
            for (int k = 0; k < n; ++k) out.coords.push_back(static_cast<std::int32_t>(x[k]));
            out.norms.push_back(static_cast<long>(V[0]));
            return;
        }
        i128 b = 0;
        for (int j = i + 1; j < n; ++j) b += F.U[i * n + j] * x[j];
        const i128 R = F.Dm1(i) * (F.D[i] * B - V[i + 1]);
        if (R < 0) return;
        const i128 s = isqrt128(R);
        const i128 lo = ceil_div(-s - b, F.D[i]), hi = floor_div(s - b, F.D[i]);
        for (i128 xi = lo; xi <= hi; ++xi) {
            const i128 y = F.D[i] * xi + b;
            V[i] = (y * y + F.Dm1(i) * V[i + 1]) / F.D[i];
            x[i] = static_cast<std::int64_t>(xi);
            rec(i - 1);
        }
        x[i] = 0;
    };
    rec(n - 1);
    return out;
}

namespace {

// Candidate vectors with their images under G, so that (v, w) is a single
// dot product.
struct Pool {
    int n = 0;
    std::vector<std::int32_t> x;
    std::vector<std::int64_t> gx;
    std::size_t size() const { return n ? x.size() / n : 0; }
    const std::int32_t* vec(std::size_t i) const { return x.data() + i * n; }
    const std::int64_t* img(std::size_t i) const { return gx.data() + i * n; }
};

inline std::int64_t dot(const std::int32_t* a, const std::int64_t* b, int n) {
    std::int64_t s = 0;
    for (int k = 0; k < n; ++k) s += a[k] * b[k];
    return s;
}

void push(Pool& P, const IntMatrix& G, const std::int32_t* v) {
    const int n = P.n;
    for (int k = 0; k < n; ++k) P.x.push_back(v[k]);
    for (int r = 0; r < n; ++r) {
        std::int64_t s = 0;
        for (int k = 0; k < n; ++k) s += G(r, k) * v[k];
        P.gx.push_back(s);
    }
}

std::string key_of(const std::int32_t* v, int n) {
    return std::string(reinterpret_cast<const char*>(v), sizeof(std::int32_t) * n);
}

u128 add_checked(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) throw CapabilityError("representation_count: count exceeds 128 bits");
    return r;
}

u128 mul_checked(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw CapabilityError("representation_count: count exceeds 128 bits");
    return r;
}

BigInt to_big(u128 v) {
    BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
    return (hi << 64) + lo;
}

class TupleCounter {
public:
    TupleCounter(const IntMatrix& G, const IntMatrix& T, const EnumerationOptions& opts)
        : G_(G), T_(T), n_(G.rows()), j_(T.rows()), opts_(opts) {}

    BigInt run() {
        if (j_ == 0) return 1;
        long max_norm = 0;
        for (int a = 0; a < j_; ++a) {
            if (T_(a, a) < 0) return 0;
            max_norm = std::max<long>(max_norm, static_cast<long>(T_(a, a)));
        }
        const bool want_roots = opts_.orbit_reduction;
        const VectorList list = enumerate_short_vectors(G_, std::max<long>(max_norm, want_roots ? 2 : 0));
        for (int a = 0; a < j_; ++a) {
            const long N = static_cast<long>(T_(a, a));
            if (pool_of_norm_.count(N)) continue;
            pool_of_norm_[N] = pools_.size();
            pools_.emplace_back();
            pools_.back().n = n_;
        }
        roots_.n = n_;
        std::vector<std::int32_t> zero(n_, 0);
        if (pool_of_norm_.count(0)) push(pools_[pool_of_norm_[0]], G_, zero.data());
        for (std::size_t i = 0; i < list.size(); ++i) {
            auto it = pool_of_norm_.find(list.norms[i]);
            if (it != pool_of_norm_.end()) push(pools_[it->second], G_, list.at(i));
            if (want_roots && list.norms[i] == 2) push(roots_, G_, list.at(i));
        }
        col_pool_.resize(j_);
        for (int a = 0; a < j_; ++a) col_pool_[a] = &pools_[pool_of_norm_[static_cast<long>(T_(a, a))]];

        std::vector<std::vector<std::uint32_t>> lists(j_);
        for (int a = 0; a < j_; ++a) {
            lists[a].resize(col_pool_[a]->size());
            std::iota(lists[a].begin(), lists[a].end(), 0u);
        }
        std::vector<std::uint32_t> roots(roots_.size());
        std::iota(roots.begin(), roots.end(), 0u);

        if (j_ == 1) return BigInt(static_cast<unsigned long>(lists[0].size()));
        const auto reps = orbits(0, lists[0], roots);
        std::vector<u128> partial(reps.size(), 0);
        const unsigned T = std::max(1u, std::min<unsigned>(opts_.threads, static_cast<unsigned>(reps.size())));
        auto work = [&](unsigned t) {
            for (std::size_t r = t; r < reps.size(); r += T)
                partial[r] = mul_checked(reps[r].second, branch(0, reps[r].first, lists, roots));
        };
        if (T == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < T; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
        u128 total = 0;
        for (u128 v : partial) total = add_checked(total, v);
        return to_big(total);
    }

private:
    // Count completions after fixing column a to candidate `idx`.
    u128 branch(int a, std::uint32_t idx, const std::vector<std::vector<std::uint32_t>>& lists,
                const std::vector<std::uint32_t>& roots) {
        const Pool& P = *col_pool_[a];
        const std::int32_t* v = P.vec(idx);
        std::vector<std::vector<std::uint32_t>> next(j_);
        for (int b = a + 1; b < j_; ++b) {
            const Pool& Q = *col_pool_[b];
            const std::int64_t want = T_(a, b);
            auto& out = next[b];
            for (std::uint32_t c : lists[b])
                if (dot(v, Q.img(c), n_) == want) out.push_back(c);
            if (out.empty()) return 0;
        }
        if (a + 1 == j_ - 1) return next[j_ - 1].size();
        std::vector<std::uint32_t> sub_roots;
        if (opts_.orbit_reduction)
            for (std::uint32_t r : roots)
                if (dot(v, roots_.img(r), n_) == 0) sub_roots.push_back(r);
        u128 total = 0;
        for (const auto& [rep, weight] : orbits(a + 1, next[a + 1], sub_roots))
            total = add_checked(total, mul_checked(weight, branch(a + 1, rep, next, sub_roots)));
        return total;
    }

    // Simple roots of the root system `R` (indices into roots_) for a
    // positive system cut out by a generic functional.
    std::vector<std::uint32_t> simple_roots(const std::vector<std::uint32_t>& R) const {
        std::mt19937_64 rng(0x5eedULL + R.size());
        std::uniform_int_distribution<std::int64_t> dist(-(1 << 20), 1 << 20);
        std::vector<std::int64_t> h(R.size());
        for (int attempt = 0;; ++attempt) {
            if (attempt == 200) throw ConsistencyError("orbit reduction: no generic functional found");
            std::vector<std::int32_t> rho(n_);
            for (auto& c : rho) c = static_cast<std::int32_t>(dist(rng));
            bool generic = true;
            for (std::size_t i = 0; i < R.size() && generic; ++i) {
                h[i] = dot(rho.data(), roots_.img(R[i]), n_);
                generic = h[i] != 0;
            }
            if (generic) break;
        }
        std::vector<std::size_t> pos;
        std::unordered_set<std::string> pos_keys;
        for (std::size_t i = 0; i < R.size(); ++i)
            if (h[i] > 0) {
                pos.push_back(i);
                pos_keys.insert(key_of(roots_.vec(R[i]), n_));
            }
        std::vector<std::uint32_t> simple;
        std::vector<std::int32_t> diff(n_);
        for (std::size_t a : pos) {
            bool decomposable = false;
            for (std::size_t b : pos) {
                if (h[b] >= h[a]) continue;
                const std::int32_t* ra = roots_.vec(R[a]);
                const std::int32_t* rb = roots_.vec(R[b]);
                for (int k = 0; k < n_; ++k) diff[k] = ra[k] - rb[k];
                if (pos_keys.count(key_of(diff.data(), n_))) {
                    decomposable = true;
                    break;
                }
            }
            if (!decomposable) simple.push_back(R[a]);
        }
        return simple;
    }

    // Orbit representatives of column a's candidates under the reflections
    // in `R`, with orbit sizes. Reflections in roots orthogonal to the
    // chosen columns fix those columns, so they permute the candidates and
    // preserve the number of completions.
    std::vector<std::pair<std::uint32_t, u128>> orbits(int a, const std::vector<std::uint32_t>& F,
                                                       const std::vector<std::uint32_t>& R) const {
        std::vector<std::pair<std::uint32_t, u128>> out;
        if (!opts_.orbit_reduction || R.empty() || F.size() < 2) {
            for (auto c : F) out.emplace_back(c, 1);
            return out;
        }
        const Pool& P = *col_pool_[a];
        const auto simple = simple_roots(R);
        std::unordered_map<std::string, std::uint32_t> where;
        where.reserve(F.size() * 2);
        for (std::uint32_t i = 0; i < F.size(); ++i) where.emplace(key_of(P.vec(F[i]), n_), i);
        std::vector<std::uint32_t> parent(F.size());
        std::iota(parent.begin(), parent.end(), 0u);
        std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t u) {
            while (parent[u] != u) u = parent[u] = parent[parent[u]];
            return u;
        };
        std::vector<std::int32_t> w(n_);
        for (std::uint32_t i = 0; i < F.size(); ++i) {
            const std::int32_t* v = P.vec(F[i]);
            for (std::uint32_t s : simple) {
                const std::int64_t c = dot(v, roots_.img(s), n_);
                if (c == 0) continue;
                const std::int32_t* r = roots_.vec(s);
                for (int k = 0; k < n_; ++k) w[k] = static_cast<std::int32_t>(v[k] - c * r[k]);
                auto it = where.find(key_of(w.data(), n_));
                if (it == where.end()) throw ConsistencyError("orbit reduction: reflection left the candidate set");
                const std::uint32_t x = find(i), y = find(it->second);
                if (x != y) parent[std::max(x, y)] = std::min(x, y);
            }
        }
        std::vector<u128> size(F.size(), 0);
        for (std::uint32_t i = 0; i < F.size(); ++i) ++size[find(i)];
        for (std::uint32_t i = 0; i < F.size(); ++i)
            if (size[i]) out.emplace_back(F[i], size[i]);
        return out;
    }

    const IntMatrix& G_;
    const IntMatrix& T_;
    int n_, j_;
    EnumerationOptions opts_;
    std::vector<Pool> pools_;
    std::map<long, std::size_t> pool_of_norm_;
    std::vector<const Pool*> col_pool_;
    Pool roots_;
};

}  // namespace

namespace detail {

BigInt count_tuples(const IntMatrix& gram, const IntMatrix& target, const EnumerationOptions& opts) {
    if (!target.is_symmetric()) throw DomainError("count_tuples: target not symmetric");
    TupleCounter c(gram, target, opts);
    return c.run();
}

}  // namespace detail

}  // namespace siegelkit
