#include "siegelkit/lift.hpp"

#include "siegelkit/errors.hpp"

#include <string>

namespace siegelkit {

namespace {

bool plus_support(const BigInt& eta) {
    BigInt r = eta % 4;
    if (r < 0) r += 4;
    return r == 0 || r == 1;
}

// x^{(2k-1)/2} for a positive rational x.
QuadNumber odd_half_power(const Rational& x, int k) {
    if (x <= 0) throw DomainError("odd_half_power: argument must be positive");
    QuadNumber out(1);
    for (const auto& [p, e] : factorize(x.get_num())) out *= QuadNumber::half_power(p, static_cast<long>(e) * (2 * k - 1));
    for (const auto& [p, e] : factorize(x.get_den())) out *= QuadNumber::half_power(p, -static_cast<long>(e) * (2 * k - 1));
    return out;
}

void require_even_k(int k, const char* who) {
    if (k <= 0 || k % 2 != 0) throw DomainError(std::string(who) + ": k must be an even positive integer");
}

Poly local_F(const HalfIntegralForm& xi, long p, const SeriesOptions& series, const std::map<long, Poly>& supplied) {
    if (auto it = supplied.find(p); it != supplied.end()) return it->second;
    try {
        return siegel_series_data(xi, p, series).F_coeffs;
    } catch (const CapabilityError& e) {
        throw CapabilityError("F_p at p = " + std::to_string(p) + " is out of reach and was not supplied: " + e.what());
    }
}

// Primes with f_p^xi != 0; they all divide det(2 xi).
std::vector<long> local_primes(const HalfIntegralForm& xi) {
    std::vector<long> out;
    for (const auto& [p, e] : factorize(xi.det_two_xi())) {
        (void)e;
        if (xi_local_invariants(xi, p).f != 0) out.push_back(p);
    }
    return out;
}

}  // namespace

SatakeData::SatakeData(int k, std::map<long, QuadNumber> lambda) : k_(k), lambda_(std::move(lambda)) {
    require_even_k(k, "SatakeData");
    for (const auto& [p, v] : lambda_) {
        (void)v;
        if (!is_prime(p)) throw DomainError("SatakeData: " + std::to_string(p) + " is not prime");
    }
}

SatakeData SatakeData::from_hecke_eigenvalues(int weight, const std::map<long, BigInt>& a_p) {
    if (weight % 2 != 0) throw DomainError("SatakeData: weight must be even");
    const int k = weight / 2;
    std::map<long, QuadNumber> lambda;
    for (const auto& [p, a] : a_p) lambda[p] = QuadNumber(Rational(a)) * QuadNumber::half_power(p, -(2 * k - 1));
    SatakeData out(k, std::move(lambda));
    out.source_ = a_p;
    return out;
}

const QuadNumber& SatakeData::lambda(long p) const {
    auto it = lambda_.find(p);
    if (it == lambda_.end()) throw DataError("no Satake parameter for p = " + std::to_string(p));
    return it->second;
}

PlusFormCoefficients::PlusFormCoefficients(int k, std::map<long, Rational> C) : k_(k), C_(std::move(C)) {
    require_even_k(k, "PlusFormCoefficients");
    for (const auto& [eta, c] : C_) {
        if (eta <= 0) throw DomainError("PlusFormCoefficients: index " + std::to_string(eta) + " is not positive");
        if (c != 0 && !plus_support(eta))
            throw SupportError("PlusFormCoefficients: nonzero C(" + std::to_string(eta) + ") off the plus-space support");
    }
}

Rational PlusFormCoefficients::C(long eta) const {
    if (!plus_support(eta)) throw SupportError("C(" + std::to_string(eta) + "): index is 2 or 3 mod 4");
    auto it = C_.find(eta);
    if (it == C_.end()) throw DataError("C(" + std::to_string(eta) + ") not supplied");
    return it->second;
}

Rational PlusFormCoefficients::c_reduced(const Rational& eta) const {
    if (eta.get_den() == 1 && !plus_support(eta.get_num()))
        throw SupportError("c(" + eta.get_str() + "): index is 2 or 3 mod 4");
    const BigInt D = square_class(eta).fundamental_discriminant;
    if (D <= 0 || !D.fits_slong_p())
        throw DataError("c(" + eta.get_str() + "): fundamental discriminant " + D.get_str() + " has no coefficient");
    return C(D.get_si());
}

QuadNumber h_coefficient_predict(long eta, const SatakeData& satake, const PlusFormCoefficients& plus, PsiSign sign) {
    if (eta <= 0) throw DomainError("h_coefficient_predict: eta must be positive");
    if (satake.k() != plus.k()) throw DomainError("h_coefficient_predict: Satake data and plus form have different k");
    if (!plus_support(eta)) throw SupportError("h_coefficient_predict: eta = " + std::to_string(eta) + " is 2 or 3 mod 4");
    const Rational e(eta);
    QuadNumber out = QuadNumber(plus.c_reduced(e)) * odd_half_power(f_frak_eta(e), plus.k());
    for (const auto& [p, mult] : factorize(BigInt(eta))) {
        (void)mult;
        if (f_p_eta(e, p) < 0) throw ConsistencyError("h_coefficient_predict: negative f_p on the plus-space support");
        if (f_p_eta(e, p) == 0) continue;
        out *= Psi_p(e, p, sign).eval(satake.lambda(p));
    }
    return out;
}

IkedaCoefficient ikeda_coefficient(const HalfIntegralForm& xi, const SatakeData& satake,
                                   const PlusFormCoefficients& plus, const IkedaOptions& opts) {
    const int k = plus.k();
    if (satake.k() != k) throw DomainError("ikeda_coefficient: Satake data and plus form have different k");
    if (xi.size() != 2 * k)
        throw DomainError("ikeda_coefficient: xi has size " + std::to_string(xi.size()) + ", expected " +
                          std::to_string(2 * k));
    IkedaCoefficient out;
    if (!xi.is_positive_definite()) {
        out.value = QuadNumber(0);
        out.in_support = false;
        return out;
    }
    const Rational D(D_xi(xi));
    out.value = QuadNumber(plus.c_reduced(D)) * odd_half_power(f_frak_eta(D), k);
    out.local_primes = local_primes(xi);
    for (long p : out.local_primes) {
        const Poly F = local_F(xi, p, opts.series, opts.supplied_F);
        out.value *= F_tilde_poly(F, p, k).eval(satake.lambda(p));
    }
    return out;
}

SiegelRhs siegel_rhs_detail(const HalfIntegralForm& xi, int lattice_rank, const SeriesOptions& opts) {
    const int j = xi.size();
    const int r = lattice_rank;
    if (j == 0 || j % 2 != 0) throw DomainError("siegel_rhs: xi must have even positive size");
    if (r % 8 != 0 || r < j) throw DomainError("siegel_rhs: lattice rank must be a multiple of 8 and at least size(xi)");
    if (!xi.is_positive_definite()) throw DomainError("siegel_rhs: xi is not positive definite");
    const int m = j / 2;
    const int s = r / 2;
    const BigInt det = xi.det_two_xi();
    const BigInt D = D_xi(xi);

    SiegelRhs out;
    // 2^j det(2 xi)^{(r-j-1)/2} prod_{i<j} pi^{(r-i)/2} / Gamma((r-i)/2)
    SymbolicReal arch(Rational(ipow(BigInt(2), j)));
    arch *= SymbolicReal(Rational(ipow(det, (r - j) / 2)));
    arch /= SymbolicReal::sqrt_of(Rational(det));
    for (int i = 0; i < j; ++i) {
        arch *= SymbolicReal::pi_power(r - i);
        arch /= SymbolicReal::gamma_half(r - i);
    }
    out.archimedean = arch;

    // Euler product of gamma_p(p^{-s}) over all p.
    SymbolicReal euler(1);
    euler /= zeta_even(s);
    for (int i = 1; i < m; ++i) euler /= zeta_even(2 * s - 2 * i);
    const BigInt D0 = square_class(Rational(D)).fundamental_discriminant;
    if (r == j) {
        // zeta(0) and L(0, chi_D) are not Euler products; the theta side
        // forces chi_D trivial (D a square), where the pair contributes 1,
        // and the mass halves.
        if (D0 != 1) {
            out.value = 0;
            out.euler_product = SymbolicReal(0);
            return out;
        }
        euler *= SymbolicReal(Rational(1, 2));
    } else {
        euler /= zeta_even(2 * s - 2 * m);
        euler *= zeta_L_exact(s - m, D0);
    }
    out.euler_product = euler;

    SymbolicReal total = arch * euler;
    for (long p : local_primes(xi)) {
        const Poly F = local_F(xi, p, opts, {});
        const Rational X = rpow(Rational(p), -s);
        Rational v = 0, Xe = 1;
        for (const auto& c : F) {
            v += Rational(c) * Xe;
            Xe *= X;
        }
        v.canonicalize();
        out.local_factors[p] = v;
        total *= SymbolicReal(v);
    }
    out.value = total.to_rational();
    return out;
}

Rational siegel_rhs(const HalfIntegralForm& xi, int lattice_rank, const SeriesOptions& opts) {
    return siegel_rhs_detail(xi, lattice_rank, opts).value;
}

RatioReport corollary_ratio_check(const GenusWithWeights& genus, const ClassFunction& f, const SatakeData* satake,
                                  const PlusFormCoefficients* plus, const std::vector<HalfIntegralForm>& xis,
                                  const EnumerationOptions& enum_opts, const IkedaOptions& ikeda_opts) {
    if (xis.size() < 2) throw DomainError("corollary_ratio_check: at least two forms are required");
    if ((satake == nullptr) != (plus == nullptr))
        throw DomainError("corollary_ratio_check: Satake data and plus form must be given together");
    RatioReport report;
    for (const auto& xi : xis) {
        RatioEntry e{xi, weighted_average(genus, f, xi, enum_opts), std::nullopt};
        if (satake) e.A = ikeda_coefficient(xi, *satake, *plus, ikeda_opts);
        report.entries.push_back(std::move(e));
    }
    if (!satake) return report;
    bool ok = true;
    for (std::size_t a = 0; a < report.entries.size(); ++a)
        for (std::size_t b = a + 1; b < report.entries.size(); ++b) {
            const auto& x = report.entries[a];
            const auto& y = report.entries[b];
            if (QuadNumber(x.R) * y.A->value != QuadNumber(y.R) * x.A->value) {
                ok = false;
                report.failing_pairs.emplace_back(a, b);
            }
        }
    report.consistent = ok;
    return report;
}

}  // namespace siegelkit
