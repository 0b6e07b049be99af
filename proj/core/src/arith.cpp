#include "siegelkit/arith.hpp"

#include "siegelkit/errors.hpp"

#include <string>

namespace siegelkit {

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(long n) { return is_prime(BigInt(n)); }

std::vector<std::pair<long, int>> factorize(const BigInt& n) {
    if (n == 0) throw DomainError("factorize: zero has no factorization");
    BigInt m = abs(n);
    std::vector<std::pair<long, int>> out;
    for (long p = 2; BigInt(p) * p <= m; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    }
    if (m > 1) {
        if (!m.fits_slong_p()) throw CapabilityError("factorize: prime factor exceeds machine range");
        out.emplace_back(m.get_si(), 1);
    }
    return out;
}

static void require_prime(long p, const char* where) {
    if (!is_prime(p)) throw DomainError(std::string(where) + ": " + std::to_string(p) + " is not prime");
}

int ordp(const BigInt& x, long p) {
    require_prime(p, "ordp");
    if (x == 0) throw DomainError("ordp: zero input");
    BigInt m = abs(x);
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        ++e;
    }
    return e;
}

int ordp(const Rational& x, long p) {
    if (x == 0) throw DomainError("ordp: zero input");
    return ordp(BigInt(x.get_num()), p) - ordp(BigInt(x.get_den()), p);
}

static bool is_discriminant(const BigInt& D) {
    BigInt r = D % 4;
    if (r < 0) r += 4;
    return r == 0 || r == 1;
}

int kronecker(const BigInt& D, const BigInt& n) {
    if (!is_discriminant(D)) throw DomainError("kronecker: D must be congruent to 0 or 1 mod 4");
    if (n <= 0) throw DomainError("kronecker: n must be positive");
    return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

static bool is_squarefree(const BigInt& n) {
    for (const auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

bool is_fundamental_discriminant(const BigInt& D) {
    if (D == 1) return true;
    if (D == 0) return false;
    BigInt r = D % 4;
    if (r < 0) r += 4;
    if (r == 1) return is_squarefree(D);
    if (r != 0) return false;
    BigInt m = D / 4;
    BigInt s = m % 4;
    if (s < 0) s += 4;
    return (s == 2 || s == 3) && is_squarefree(m);
}

SquareClassData square_class(const Rational& eta) {
    if (eta == 0) throw DomainError("square_class: eta must be nonzero");
    // eta and num*den share a square class.
    BigInt N = eta.get_num() * eta.get_den();
    BigInt sq_part = 1, free_part = 1;
    for (const auto& [p, e] : factorize(N)) {
        if (e % 2) free_part *= p;
        sq_part *= ipow(BigInt(p), e / 2);
    }
    BigInt d = sgn(N) * free_part;
    SquareClassData out;
    out.eta = eta;
    BigInt dm = d % 4;
    if (dm < 0) dm += 4;
    if (d == 1 || dm == 1) {
        out.fundamental_discriminant = d;
        out.cofactor = Rational(sq_part, eta.get_den());
    } else {
        out.fundamental_discriminant = 4 * d;
        out.cofactor = Rational(sq_part, 2 * BigInt(eta.get_den()));
    }
    out.cofactor.canonicalize();
    out.conductor = abs(out.fundamental_discriminant);
    if (out.fundamental_discriminant * out.cofactor * out.cofactor != eta)
        throw ConsistencyError("square_class: normal form does not reproduce eta");
    return out;
}

int delta_p(const Rational& eta, long p) {
    require_prime(p, "delta_p");
    const BigInt D = square_class(eta).fundamental_discriminant;
    if (D == 1) return 1;
    if (mpz_divisible_ui_p(D.get_mpz_t(), p)) return 0;
    return kronecker(D, BigInt(p));
}

long f_p_eta(const Rational& eta, long p) {
    const SquareClassData sc = square_class(eta);
    const int diff = ordp(eta, p) - ordp(sc.conductor, p);
    if (diff % 2 != 0) throw ConsistencyError("f_p_eta: odd valuation difference");
    return diff / 2;
}

bool is_rational_square(const Rational& x) {
    if (x < 0) return false;
    return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

Rational rational_sqrt(const Rational& x) {
    if (!is_rational_square(x)) throw ConsistencyError("rational_sqrt: radicand is not a rational square");
    BigInt a, b;
    mpz_sqrt(a.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), x.get_den_mpz_t());
    return Rational(a, b);
}

Rational f_frak_eta(const Rational& eta) {
    const SquareClassData sc = square_class(eta);
    return rational_sqrt(abs(eta) / Rational(sc.conductor));
}

BigInt ipow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational rpow(const Rational& base, long e) {
    if (e >= 0) return Rational(ipow(base.get_num(), e), ipow(base.get_den(), e));
    if (base == 0) throw DomainError("rpow: zero to a negative power");
    Rational r(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
    r.canonicalize();
    return r;
}

std::int64_t ipow64(std::int64_t base, unsigned e) {
    std::int64_t r = 1;
    while (e--) r *= base;
    return r;
}

}  // namespace siegelkit
