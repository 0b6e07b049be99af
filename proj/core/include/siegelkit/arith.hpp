#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace siegelkit {

using BigInt = mpz_class;
using Rational = mpq_class;

bool is_prime(const BigInt& n);
bool is_prime(long n);

// Prime factorization of |n| by trial division; n != 0.
std::vector<std::pair<long, int>> factorize(const BigInt& n);

// Exponent of p in x.
int ordp(const Rational& x, long p);
int ordp(const BigInt& x, long p);

// Kronecker symbol (D/n) for a discriminant D.
int kronecker(const BigInt& D, const BigInt& n);

bool is_fundamental_discriminant(const BigInt& D);

struct SquareClassData {
    Rational eta;
    BigInt fundamental_discriminant;
    BigInt conductor;
    Rational cofactor;
};

SquareClassData square_class(const Rational& eta);

int delta_p(const Rational& eta, long p);
long f_p_eta(const Rational& eta, long p);
Rational f_frak_eta(const Rational& eta);

// Exact square root; throws ConsistencyError when x is not a rational square.
Rational rational_sqrt(const Rational& x);
bool is_rational_square(const Rational& x);

BigInt ipow(const BigInt& base, unsigned long e);
Rational rpow(const Rational& base, long e);
std::int64_t ipow64(std::int64_t base, unsigned e);

}  // namespace siegelkit
