#include "siegelkit/special_values.hpp"

#include "siegelkit/errors.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <vector>

namespace siegelkit {

namespace {

std::mutex bern_mutex;
std::vector<Rational> bern_cache{Rational(1)};

BigInt binomial(long n, long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

}  // namespace

Rational bernoulli(int n) {
    if (n < 0) throw DomainError("bernoulli: negative index");
    std::lock_guard<std::mutex> lock(bern_mutex);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    while (static_cast<int>(bern_cache.size()) <= n) {
        const long m = static_cast<long>(bern_cache.size());
        Rational s = 0;
        for (long j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * bern_cache[j];
        Rational b = -s / Rational(m + 1);
        b.canonicalize();
        bern_cache.push_back(b);
    }
    return bern_cache[n];
}

Rational bernoulli_polynomial(int n, const Rational& x) {
    Rational s = 0, xp = 1;
    // B_n(x) = sum_k C(n,k) B_{n-k} x^k
    for (int k = 0; k <= n; ++k) {
        s += Rational(binomial(n, k)) * bernoulli(n - k) * xp;
        xp *= x;
    }
    s.canonicalize();
    return s;
}

Rational generalized_bernoulli(int k, const BigInt& D) {
    if (k < 0) throw DomainError("generalized_bernoulli: negative index");
    if (D == 1) {
        // B_{k, 1} = B_k(1); differs from B_k only at k = 1
        return bernoulli_polynomial(k, 1);
    }
    const BigInt f = abs(D);
    if (!f.fits_slong_p()) throw CapabilityError("generalized_bernoulli: conductor too large");
    const long F = f.get_si();
    Rational s = 0;
    for (long a = 1; a <= F; ++a) {
        const int chi = kronecker(D, BigInt(a));
        if (chi) s += chi * bernoulli_polynomial(k, Rational(BigInt(a), f));
    }
    s *= Rational(ipow(f, static_cast<unsigned long>(k > 0 ? k - 1 : 0)));
    if (k == 0) s /= Rational(f);
    s.canonicalize();
    return s;
}

SymbolicReal::SymbolicReal(const Rational& c, int pi_half_exponent, const BigInt& radicand)
    : coeff_(c), pi_half_(pi_half_exponent), rad_(radicand) {
    if (rad_ <= 0) throw DomainError("SymbolicReal: radicand must be positive");
    normalize();
}

void SymbolicReal::normalize() {
    coeff_.canonicalize();
    if (coeff_ == 0) {
        pi_half_ = 0;
        rad_ = 1;
        return;
    }
    BigInt out = 1, in = 1;
    for (const auto& [p, e] : factorize(rad_)) {
        out *= ipow(BigInt(p), e / 2);
        if (e % 2) in *= p;
    }
    coeff_ *= Rational(out);
    coeff_.canonicalize();
    rad_ = in;
}

SymbolicReal SymbolicReal::sqrt_of(const Rational& x) {
    if (x <= 0) throw DomainError("SymbolicReal::sqrt_of: argument must be positive");
    // sqrt(a/b) = sqrt(a b) / b
    Rational c(1, x.get_den());
    c.canonicalize();
    return SymbolicReal(c, 0, x.get_num() * x.get_den());
}

SymbolicReal SymbolicReal::gamma_half(int twice_s) {
    if (twice_s <= 0) throw DomainError("gamma_half: argument must be positive");
    if (twice_s % 2 == 0) {
        BigInt f = 1;
        for (int i = 2; i < twice_s / 2; ++i) f *= i;
        return SymbolicReal(Rational(f));
    }
    // Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    const int n = (twice_s - 1) / 2;
    Rational c = 1;
    for (int i = 0; i < n; ++i) c *= Rational(2 * i + 1, 2);
    return SymbolicReal(c, 1);
}

Rational SymbolicReal::to_rational() const {
    if (!is_rational()) throw ConsistencyError("SymbolicReal: " + to_string() + " is not rational");
    return coeff_;
}

SymbolicReal& SymbolicReal::operator*=(const SymbolicReal& o) {
    coeff_ *= o.coeff_;
    pi_half_ += o.pi_half_;
    rad_ *= o.rad_;
    normalize();
    return *this;
}

SymbolicReal& SymbolicReal::operator/=(const SymbolicReal& o) {
    if (o.coeff_ == 0) throw DomainError("SymbolicReal: division by zero");
    // 1/sqrt(r) = sqrt(r)/r
    coeff_ /= o.coeff_ * Rational(o.rad_);
    pi_half_ -= o.pi_half_;
    rad_ *= o.rad_;
    normalize();
    return *this;
}

bool SymbolicReal::operator==(const SymbolicReal& o) const {
    return coeff_ == o.coeff_ && pi_half_ == o.pi_half_ && rad_ == o.rad_;
}

long double SymbolicReal::approx() const {
    return static_cast<long double>(coeff_.get_d()) * std::pow(std::numbers::pi_v<long double>, pi_half_ / 2.0L) *
           std::sqrt(static_cast<long double>(rad_.get_d()));
}

std::string SymbolicReal::to_string() const {
    std::ostringstream os;
    os << coeff_.get_str();
    if (coeff_ == 0) return os.str();
    if (pi_half_ != 0) {
        os << "*pi^";
        if (pi_half_ % 2 == 0)
            os << pi_half_ / 2;
        else
            os << "(" << pi_half_ << "/2)";
    }
    if (rad_ != 1) os << "*sqrt(" << rad_.get_str() << ")";
    return os.str();
}

SymbolicReal zeta_even(int n) {
    if (n < 0 || n % 2) throw DomainError("zeta_even: argument must be even and nonnegative");
    if (n == 0) return SymbolicReal(Rational(-1, 2));
    // zeta(n) = (-1)^{n/2+1} B_n (2 pi)^n / (2 n!)
    BigInt fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    Rational c = bernoulli(n) * Rational(ipow(BigInt(2), n)) / (2 * Rational(fact));
    if ((n / 2) % 2 == 0) c = -c;
    return SymbolicReal(c, 2 * n);
}

SymbolicReal zeta_L_exact(int k, const BigInt& D) {
    if (k < 1) throw DomainError("zeta_L_exact: k must be positive");
    if (D == 1) {
        if (k % 2) throw DomainError("zeta_L_exact: zeta(k) has no closed form for odd k");
        return zeta_even(k);
    }
    if (!is_fundamental_discriminant(D)) throw DomainError("zeta_L_exact: D is not a fundamental discriminant");
    const int parity = D > 0 ? 0 : 1;
    if ((k - parity) % 2 != 0)
        throw DomainError("zeta_L_exact: chi_D(-1) does not match (-1)^k, no closed form");
    // L(k, chi) = (-1)^{1 + (k - parity)/2} (sqrt f / 2) (2 pi / f)^k B_{k,chi} / k!
    const BigInt f = abs(D);
    BigInt fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    Rational c = generalized_bernoulli(k, D) * Rational(ipow(BigInt(2), k), ipow(f, k)) / (2 * Rational(fact));
    if (((k - parity) / 2) % 2 == 0) c = -c;
    return SymbolicReal(c, 2 * k, f);
}

}  // namespace siegelkit
