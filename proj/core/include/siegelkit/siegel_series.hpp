#pragma once

#include "siegelkit/arith.hpp"
#include "siegelkit/quadform.hpp"
#include "siegelkit/quadnum.hpp"

#include <cstddef>
#include <vector>

namespace siegelkit {

// Integer polynomial, lowest degree first.
using Poly = std::vector<BigInt>;

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_trim(Poly a);
// Power-series quotient a/b to degree n; b(0) must be +-1.
Poly series_div(const Poly& a, const Poly& b, int n);

// gamma_p(X) = (1 - X) prod_{j=1..m} (1 - p^{2j} X^2) / (1 - delta p^m X).
// The denominator always cancels against the j = m factor, so `polynomial`
// is available for every delta; `eval` follows the rational-function
// formula and rejects its nominal pole.
struct GammaFactor {
    int m = 0;
    int delta = 0;
    long p = 0;
    Poly numerator;
    Poly denominator;
    Poly polynomial;

    Rational eval(const Rational& X) const;
    int degree() const { return static_cast<int>(polynomial.size()) - 1; }
};

GammaFactor gamma_p(int m, int delta, long p);

struct LayerOptions {
    unsigned threads = 1;
    // The order-zero additive character is x -> exp(2 pi i * unit * x);
    // any p-adic unit gives the same layers.
    long character_unit = 1;
};

// Layers c_0..c_{e_max} of b_p(xi, X) = sum c_e X^e by direct enumeration of
// the cosets z = y / p^e in Sym_n(Q_p)/Sym_n(Z_p). Size at most 4.
std::vector<BigInt> siegel_series_layers(const HalfIntegralForm& xi, long p, int e_max, const LayerOptions& opts = {});

struct LatticeSumOptions {
    // Upper bound on the number of overlattices kept in memory at once
    // (roughly 400 bytes each for size 8).
    std::size_t max_lattices = 2'000'000;
};

struct LatticeSumResult {
    std::vector<BigInt> layers;  // c_0 .. c_{complete_through}
    int complete_through = 0;
    std::size_t lattices_stored = 0;
};

// The same layers through the overlattice sum
//   b_p(xi, X) = prod_{i<n} (1 - p^i X) * sum_M |M^# / M| X^{log_p [M : Z_p^n]},
// M ranging over the overlattices of Z_p^n on which the character attached
// to xi is admissible. No size cap; cost grows with the number of such M.
std::vector<BigInt> siegel_series_lattice_sum(const HalfIntegralForm& xi, long p, int e_max,
                                              const LatticeSumOptions& opts = {});
// As above, but stops at the last layer the budget allows instead of
// raising a capability error.
LatticeSumResult siegel_series_lattice_sum_partial(const HalfIntegralForm& xi, long p, int e_max,
                                                  const LatticeSumOptions& opts = {});

enum class SeriesMethod { automatic, enumeration, lattice_sum };

struct SeriesOptions {
    SeriesMethod method = SeriesMethod::automatic;
    unsigned threads = 1;
    long character_unit = 1;
    // Layers beyond the last one required; they must vanish.
    int extra_layers = 1;
    // If the full layer range is out of budget, recover a_0..a_f and
    // complete F_p by the functional equation.
    bool allow_symmetric_completion = true;
    std::size_t max_lattices = 2'000'000;
};

struct SiegelSeriesData {
    long prime = 0;
    std::vector<BigInt> layer_coeffs;
    int gamma_delta = 0;
    int m = 0;
    Poly F_coeffs;
    long f = 0;
    SeriesMethod method = SeriesMethod::enumeration;
    bool completed_by_symmetry = false;
};

// Number of layers that determine F_p completely: 2f + deg gamma_p.
int full_layer_count(const HalfIntegralForm& xi, long p);

// Exact division of a layer polynomial by gamma_p. With `known_layers`
// short of the full range the result is completed by the functional
// equation and the consistency of the known part is checked.
Poly divide_by_gamma(const std::vector<BigInt>& layers, const GammaFactor& gamma, long f, bool allow_completion,
                     bool* completed = nullptr);

SiegelSeriesData siegel_series_data(const HalfIntegralForm& xi, long p, const SeriesOptions& opts = {});
Poly F_p_poly(const HalfIntegralForm& xi, long p, const SeriesOptions& opts = {});

bool satisfies_functional_equation(const Poly& F, long p, int m);

// F~_p as a polynomial in lambda = X + 1/X.
LambdaPoly F_tilde_poly(const Poly& F, long p, int m);
// X^{-f} F(p^{-(2m+1)/2} X) evaluated directly at a rational X.
QuadNumber F_tilde_at_X(const Poly& F, long p, int m, const Rational& X);
QuadNumber F_tilde_eval(const HalfIntegralForm& xi, long p, const QuadNumber& lambda, const SeriesOptions& opts = {});
long double F_tilde_eval(const HalfIntegralForm& xi, long p, long double lambda, const SeriesOptions& opts = {});

// Sign in front of p^{-1/2} delta_p(eta) U_{f-1}. `as_printed` is the
// definition as stated; `kohnen_zagier` is the opposite sign.
enum class PsiSign { as_printed, kohnen_zagier };

LambdaPoly Psi_p(const Rational& eta, long p, PsiSign sign = PsiSign::as_printed);
// The defining rational function in X evaluated at a rational X != 0, +-1.
QuadNumber Psi_p_at_X(const Rational& eta, long p, const Rational& X, PsiSign sign = PsiSign::as_printed);

}  // namespace siegelkit
