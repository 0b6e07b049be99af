#pragma once

#include "siegelkit/lattice.hpp"
#include "siegelkit/quadnum.hpp"
#include "siegelkit/siegel_series.hpp"
#include "siegelkit/special_values.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace siegelkit {

// Normalised Hecke eigenvalues lambda_p = alpha_p + 1/alpha_p of a weight-2k
// eigenform.
class SatakeData {
public:
    SatakeData() = default;
    SatakeData(int k, std::map<long, QuadNumber> lambda);
    // lambda_p = a_p p^{-(2k-1)/2}, kept exact.
    static SatakeData from_hecke_eigenvalues(int weight, const std::map<long, BigInt>& a_p);

    int k() const { return k_; }
    const std::map<long, QuadNumber>& lambdas() const { return lambda_; }
    const std::map<long, BigInt>& source() const { return source_; }
    // DataError if p is missing.
    const QuadNumber& lambda(long p) const;

private:
    int k_ = 0;
    std::map<long, QuadNumber> lambda_;
    std::map<long, BigInt> source_;
};

// Fourier coefficients C(eta) of a plus-space form of weight (2k+1)/2.
class PlusFormCoefficients {
public:
    PlusFormCoefficients() = default;
    // Checks the plus-space support condition on the supplied indices.
    PlusFormCoefficients(int k, std::map<long, Rational> C);

    int k() const { return k_; }
    const std::map<long, Rational>& coefficients() const { return C_; }
    bool has(long eta) const { return C_.count(eta) != 0; }
    // C(eta); SupportError off the plus-space support, DataError if not supplied.
    Rational C(long eta) const;
    // c(eta) = C(D) for the fundamental discriminant D of eta (D = 1 for squares).
    Rational c_reduced(const Rational& eta) const;

private:
    int k_ = 0;
    std::map<long, Rational> C_;
};

// c(eta_0) f_eta^{(2k-1)/2} prod_p Psi_p(eta, lambda_p).
QuadNumber h_coefficient_predict(long eta, const SatakeData& satake, const PlusFormCoefficients& plus,
                                 PsiSign sign = PsiSign::as_printed);

struct IkedaOptions {
    SeriesOptions series;
    // F_p supplied from outside, used instead of computing it.
    std::map<long, Poly> supplied_F;
};

struct IkedaCoefficient {
    QuadNumber value;
    // false when xi is not positive definite (the coefficient vanishes there)
    bool in_support = true;
    std::vector<long> local_primes;  // primes with f_p(xi) != 0
};

// c(det 2xi) f_xi^{(2k-1)/2} prod_p F~_p(xi, lambda_p), for xi of size 2k.
IkedaCoefficient ikeda_coefficient(const HalfIntegralForm& xi, const SatakeData& satake,
                                   const PlusFormCoefficients& plus, const IkedaOptions& opts = {});

struct SiegelRhs {
    Rational value;
    // Exact transcendental pieces before cancellation, for reporting.
    SymbolicReal archimedean;
    SymbolicReal euler_product;
    std::map<long, Rational> local_factors;  // F_p(xi, p^{-r/2}) at primes with f_p != 0
};

// R(xi, 1) / mass for the genus of even unimodular lattices of rank
// `lattice_rank` (a multiple of 8, at least the size of xi), by the Siegel
// formula.
SiegelRhs siegel_rhs_detail(const HalfIntegralForm& xi, int lattice_rank, const SeriesOptions& opts = {});
Rational siegel_rhs(const HalfIntegralForm& xi, int lattice_rank, const SeriesOptions& opts = {});

struct RatioEntry {
    HalfIntegralForm xi;
    Rational R;
    std::optional<IkedaCoefficient> A;
};

struct RatioReport {
    std::vector<RatioEntry> entries;
    // R(xi_i) A(xi_j) == R(xi_j) A(xi_i) for every pair; empty when some A
    // was not requested.
    std::optional<bool> consistent;
    std::vector<std::pair<std::size_t, std::size_t>> failing_pairs;
};

// Compares R(xi, f) across the forms, and against the lift coefficients
// when Satake and plus-form data are given.
RatioReport corollary_ratio_check(const GenusWithWeights& genus, const ClassFunction& f,
                                  const SatakeData* satake, const PlusFormCoefficients* plus,
                                  const std::vector<HalfIntegralForm>& xis, const EnumerationOptions& enum_opts = {},
                                  const IkedaOptions& ikeda_opts = {});

}  // namespace siegelkit
