#pragma once

// Shared oracles and fixture readers for the unit tests. Everything here is
// deliberately naive and independent of the library's fast paths.

#include "siegelkit/quadform.hpp"
#include "siegelkit/siegel_series.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

using siegelkit::BigInt;
using siegelkit::IntMatrix;
using siegelkit::Rational;

struct LayerFixture {
    std::string xi;
    long p;
    std::vector<BigInt> values;
};

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// Lines "xi | p | v0 v1 ..." with '#' comments.
inline std::vector<LayerFixture> read_fixture(const std::string& name) {
    std::ifstream in(std::string(SIEGELKIT_TEST_FIXTURES) + "/" + name);
    std::vector<LayerFixture> out;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        const auto a = line.find('|'), b = line.find('|', a + 1);
        LayerFixture f;
        f.xi = trim(line.substr(0, a));
        f.p = std::stol(line.substr(a + 1, b - a - 1));
        std::istringstream vs(line.substr(b + 1));
        std::string v;
        while (vs >> v) f.values.emplace_back(v);
        out.push_back(std::move(f));
    }
    return out;
}

// Exact inverse by Gauss-Jordan over Q.
inline std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& g) {
    const int n = g.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = Rational(g(i, j));
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (a[piv][c] == 0) ++piv;
        std::swap(a[c], a[piv]);
        const Rational d = a[c][c];
        for (auto& x : a[c]) x /= d;
        for (int r = 0; r < n; ++r)
            if (r != c && a[r][c] != 0) {
                const Rational f = a[r][c];
                for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
            }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

// Every integer vector in the box |x_i| <= floor(sqrt(B (G^-1)_ii)), which
// contains all vectors of norm <= B, tested one by one.
inline std::vector<std::vector<long>> box_search_vectors(const IntMatrix& g, long bound) {
    const int n = g.rows();
    const auto inv = rational_inverse(g);
    std::vector<long> r(n);
    for (int i = 0; i < n; ++i) {
        const Rational t = inv[i][i] * bound;
        long k = 0;
        while (Rational((k + 1) * (k + 1)) <= t) ++k;
        r[i] = k;
    }
    std::vector<std::vector<long>> out;
    std::vector<long> x(n);
    for (int i = 0; i < n; ++i) x[i] = -r[i];
    while (true) {
        long norm = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) norm += x[i] * g(i, j) * x[j];
        if (norm > 0 && norm <= bound) out.push_back(x);
        int i = 0;
        while (i < n && x[i] == r[i]) {
            x[i] = -r[i];
            ++i;
        }
        if (i == n) break;
        ++x[i];
    }
    return out;
}

// Norm counts in the same box, with the last coordinate swept through the
// quadratic a x^2 + b x + c so that larger boxes stay affordable.
inline std::map<long, long> box_search_counts(const IntMatrix& g, long bound) {
    const int n = g.rows();
    const auto inv = rational_inverse(g);
    std::vector<long> r(n);
    for (int i = 0; i < n; ++i) {
        const Rational t = inv[i][i] * bound;
        long k = 0;
        while (Rational((k + 1) * (k + 1)) <= t) ++k;
        r[i] = k;
    }
    std::map<long, long> out;
    const int last = n - 1;
    std::vector<long> x(n, 0);
    for (int i = 0; i < last; ++i) x[i] = -r[i];
    const long a = g(last, last);
    while (true) {
        long c = 0, b = 0;
        for (int i = 0; i < last; ++i) {
            for (int j = 0; j < last; ++j) c += x[i] * g(i, j) * x[j];
            b += 2 * x[i] * g(i, last);
        }
        for (long t = -r[last]; t <= r[last]; ++t) {
            const long norm = a * t * t + b * t + c;
            if (norm > 0 && norm <= bound) ++out[norm];
        }
        int i = 0;
        while (i < last && x[i] == r[i]) {
            x[i] = -r[i];
            ++i;
        }
        if (i == last) break;
        ++x[i];
    }
    return out;
}

// Brute-force N(L, xi): all tuples of box-search vectors with Gram 2 xi.
inline long brute_representations(const IntMatrix& g, const IntMatrix& two_xi) {
    const int n = g.rows(), j = two_xi.rows();
    long maxnorm = 0;
    for (int i = 0; i < j; ++i) maxnorm = std::max<long>(maxnorm, two_xi(i, i));
    const auto vs = box_search_vectors(g, maxnorm);
    auto ip = [&](const std::vector<long>& u, const std::vector<long>& v) {
        long s = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += u[a] * g(a, b) * v[b];
        return s;
    };
    long count = 0;
    std::vector<int> idx(j, 0);
    while (true) {
        bool ok = true;
        for (int a = 0; a < j && ok; ++a)
            for (int b = 0; b <= a && ok; ++b) ok = ip(vs[idx[a]], vs[idx[b]]) == two_xi(a, b);
        if (ok) ++count;
        int k = 0;
        while (k < j && idx[k] == static_cast<int>(vs.size()) - 1) idx[k++] = 0;
        if (k == j) break;
        ++idx[k];
    }
    return count;
}

inline std::vector<BigInt> poly_to_big(const std::vector<long>& v) {
    std::vector<BigInt> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace testsupport
