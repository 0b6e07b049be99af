#pragma once

#include "siegelkit/arith.hpp"

#include <string>

namespace siegelkit {

// Bernoulli numbers with B_1 = -1/2.
Rational bernoulli(int n);
// B_n(x)
Rational bernoulli_polynomial(int n, const Rational& x);
// B_{k, chi_D} for the Kronecker character of a discriminant D (D = 1 allowed).
Rational generalized_bernoulli(int k, const BigInt& D);

// coefficient * pi^{pi_half_exponent / 2} * sqrt(radicand), radicand a
// squarefree positive integer. Closed under products and quotients.
class SymbolicReal {
public:
    SymbolicReal() = default;
    SymbolicReal(const Rational& c) : coeff_(c) {}
    SymbolicReal(const Rational& c, int pi_half_exponent, const BigInt& radicand = 1);

    static SymbolicReal pi_power(int half_exponent) { return SymbolicReal(1, half_exponent); }
    static SymbolicReal sqrt_of(const Rational& x);
    // Gamma(s) for s = twice_s / 2 > 0.
    static SymbolicReal gamma_half(int twice_s);

    const Rational& coefficient() const { return coeff_; }
    int pi_half_exponent() const { return pi_half_; }
    const BigInt& radicand() const { return rad_; }
    bool is_zero() const { return coeff_ == 0; }
    bool is_rational() const { return coeff_ == 0 || (pi_half_ == 0 && rad_ == 1); }
    Rational to_rational() const;  // ConsistencyError if a transcendental or surd factor remains

    SymbolicReal& operator*=(const SymbolicReal& o);
    SymbolicReal& operator/=(const SymbolicReal& o);
    friend SymbolicReal operator*(SymbolicReal a, const SymbolicReal& b) { return a *= b; }
    friend SymbolicReal operator/(SymbolicReal a, const SymbolicReal& b) { return a /= b; }
    bool operator==(const SymbolicReal& o) const;

    long double approx() const;
    std::string to_string() const;

private:
    void normalize();
    Rational coeff_ = 0;
    int pi_half_ = 0;
    BigInt rad_ = 1;
};

// zeta(n) for n even >= 0 (zeta(0) = -1/2).
SymbolicReal zeta_even(int n);

// L(k, chi_D) for a fundamental discriminant D or D = 1 and k >= 1, exact
// when chi_D(-1) = (-1)^k; DomainError otherwise (and for D = 1 with k odd).
SymbolicReal zeta_L_exact(int k, const BigInt& D);

}  // namespace siegelkit
