#pragma once

#include "siegelkit/arith.hpp"

#include <map>
#include <string>

namespace siegelkit {

// Exact element of Q(sqrt 2, sqrt 3, ...): a finite sum of c_r * sqrt(r)
// over squarefree radicands r >= 1. Values like p^{-1/2} and
// a_p * p^{-(2k-1)/2} live here without rounding.
class QuadNumber {
public:
    QuadNumber() = default;
    QuadNumber(long v) : QuadNumber(Rational(v)) {}
    QuadNumber(const Rational& v);

    // c * sqrt(radicand) for a positive integer radicand (not necessarily squarefree).
    static QuadNumber sqrt_of(const BigInt& radicand, const Rational& c = 1);
    // p^{e/2} for an integer e.
    static QuadNumber half_power(long p, long e);

    const std::map<long, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_part() const;
    Rational coefficient(long radicand) const;
    Rational to_rational() const;  // throws ConsistencyError unless rational

    QuadNumber& operator+=(const QuadNumber& o);
    QuadNumber& operator-=(const QuadNumber& o);
    QuadNumber& operator*=(const QuadNumber& o);
    QuadNumber& operator/=(const Rational& r);
    friend QuadNumber operator+(QuadNumber a, const QuadNumber& b) { return a += b; }
    friend QuadNumber operator-(QuadNumber a, const QuadNumber& b) { return a -= b; }
    friend QuadNumber operator*(QuadNumber a, const QuadNumber& b) { return a *= b; }
    friend QuadNumber operator/(QuadNumber a, const Rational& b) { return a /= b; }
    QuadNumber operator-() const;
    bool operator==(const QuadNumber& o) const { return terms_ == o.terms_; }
    bool operator!=(const QuadNumber& o) const { return !(*this == o); }

    long double approx() const;
    // "a + b*sqrt(p)" style, radicands ascending, zero rendered as "0".
    std::string to_string() const;

private:
    void add_term(long radicand, const Rational& c);
    std::map<long, Rational> terms_;
};

// Polynomial in lambda = X + 1/X with QuadNumber coefficients, lowest degree first.
struct LambdaPoly {
    std::vector<QuadNumber> coeffs;

    bool is_zero() const;
    int degree() const;  // -1 for the zero polynomial
    QuadNumber eval(const QuadNumber& lambda) const;
    long double eval(long double lambda) const;
    void trim();
    std::string to_string() const;
    bool operator==(const LambdaPoly& o) const;
};

// V_j(lambda) = X^j + X^-j and U_j(lambda) = (X^{j+1} - X^{-j-1})/(X - X^-1), as
// integer polynomials in lambda.
std::vector<BigInt> chebyshev_V(int j);
std::vector<BigInt> chebyshev_U(int j);

}  // namespace siegelkit
