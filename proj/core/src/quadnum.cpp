#include "siegelkit/quadnum.hpp"

#include "siegelkit/errors.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace siegelkit {

QuadNumber::QuadNumber(const Rational& v) { add_term(1, v); }

void QuadNumber::add_term(long radicand, const Rational& c_in) {
    Rational c = c_in;
    c.canonicalize();
    if (c == 0) return;
    auto it = terms_.find(radicand);
    if (it == terms_.end()) {
        terms_.emplace(radicand, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

QuadNumber QuadNumber::sqrt_of(const BigInt& radicand, const Rational& c) {
    if (radicand <= 0) throw DomainError("QuadNumber::sqrt_of: radicand must be positive");
    BigInt outside = 1, inside = 1;
    for (const auto& [p, e] : factorize(radicand)) {
        outside *= ipow(BigInt(p), e / 2);
        if (e % 2) inside *= p;
    }
    if (!inside.fits_slong_p()) throw CapabilityError("QuadNumber: radicand too large");
    QuadNumber q;
    q.add_term(inside.get_si(), c * Rational(outside));
    return q;
}

QuadNumber QuadNumber::half_power(long p, long e) {
    // p^{e/2} = p^{floor(e/2)} * sqrt(p)^{e mod 2}
    const long q = (e >= 0) ? e / 2 : -((-e + 1) / 2);
    const long r = e - 2 * q;
    const Rational c = rpow(Rational(p), q);
    if (r == 0) return QuadNumber(c);
    return sqrt_of(BigInt(p), c);
}

bool QuadNumber::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational QuadNumber::coefficient(long radicand) const {
    auto it = terms_.find(radicand);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational QuadNumber::rational_part() const { return coefficient(1); }

Rational QuadNumber::to_rational() const {
    if (!is_rational()) throw ConsistencyError("QuadNumber: value " + to_string() + " is not rational");
    return rational_part();
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
    for (const auto& [r, c] : o.terms_) add_term(r, c);
    return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) {
    for (const auto& [r, c] : o.terms_) add_term(r, -c);
    return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& o) {
    QuadNumber out;
    for (const auto& [r, c] : terms_) {
        for (const auto& [s, d] : o.terms_) {
            const long g = std::gcd(r, s);
            out.add_term((r / g) * (s / g), c * d * Rational(g));
        }
    }
    terms_ = std::move(out.terms_);
    return *this;
}

QuadNumber& QuadNumber::operator/=(const Rational& r) {
    if (r == 0) throw DomainError("QuadNumber: division by zero");
    for (auto& [rad, c] : terms_) c /= r;
    return *this;
}

QuadNumber QuadNumber::operator-() const {
    QuadNumber q = *this;
    for (auto& [rad, c] : q.terms_) c = -c;
    return q;
}

long double QuadNumber::approx() const {
    long double s = 0;
    for (const auto& [r, c] : terms_)
        s += static_cast<long double>(c.get_d()) * std::sqrt(static_cast<long double>(r));
    return s;
}

std::string QuadNumber::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [r, c] : terms_) {
        Rational a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            a = abs(a);
        }
        if (r == 1) {
            os << a.get_str();
        } else if (a == 1) {
            os << "sqrt(" << r << ")";
        } else if (a == -1) {
            os << "-sqrt(" << r << ")";
        } else {
            os << a.get_str() << "*sqrt(" << r << ")";
        }
        first = false;
    }
    return os.str();
}

bool LambdaPoly::is_zero() const {
    for (const auto& c : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

void LambdaPoly::trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

int LambdaPoly::degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
        if (!coeffs[i].is_zero()) return i;
    return -1;
}

QuadNumber LambdaPoly::eval(const QuadNumber& lambda) const {
    QuadNumber acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + *it;
    return acc;
}

long double LambdaPoly::eval(long double lambda) const {
    long double acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + it->approx();
    return acc;
}

bool LambdaPoly::operator==(const LambdaPoly& o) const {
    LambdaPoly a = *this, b = o;
    a.trim();
    b.trim();
    return a.coeffs == b.coeffs;
}

std::string LambdaPoly::to_string() const {
    const int d = degree();
    if (d < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = d; i >= 0; --i) {
        if (coeffs[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        const std::string c = coeffs[i].to_string();
        const bool compound = !coeffs[i].is_rational() && coeffs[i].terms().size() > 1;
        if (i == 0) {
            os << c;
        } else {
            if (c != "1") os << (compound ? "(" + c + ")" : c) << "*";
            os << "lambda" << (i > 1 ? "^" + std::to_string(i) : "");
        }
    }
    return os.str();
}

static std::vector<BigInt> poly_shift_sub(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    // lambda * a - b
    std::vector<BigInt> out(std::max(a.size() + 1, b.size()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i + 1] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

std::vector<BigInt> chebyshev_V(int j) {
    if (j < 0) throw DomainError("chebyshev_V: negative index");
    std::vector<BigInt> prev{BigInt(2)}, cur{BigInt(0), BigInt(1)};
    if (j == 0) return prev;
    for (int i = 1; i < j; ++i) {
        auto next = poly_shift_sub(cur, prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<BigInt> chebyshev_U(int j) {
    if (j < 0) return {};
    std::vector<BigInt> prev{BigInt(1)}, cur{BigInt(0), BigInt(1)};
    if (j == 0) return prev;
    for (int i = 1; i < j; ++i) {
        auto next = poly_shift_sub(cur, prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace siegelkit
