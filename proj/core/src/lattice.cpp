#include "siegelkit/lattice.hpp"

#include "enumeration_internal.hpp"
#include "siegelkit/errors.hpp"

namespace siegelkit {

std::map<long, BigInt> short_vectors(const EvenLattice& L, long bound) {
    if (bound <= 0 || bound % 2 != 0) throw DomainError("short_vectors: bound must be a positive even integer");
    std::map<long, BigInt> out;
    for (long N = 2; N <= bound; N += 2) out[N] = 0;
    const VectorList v = enumerate_short_vectors(L.gram(), bound);
    for (long N : v.norms) {
        if (N % 2 != 0) throw ConsistencyError("short_vectors: odd norm in an even lattice");
        out[N] += 1;
    }
    return out;
}

BigInt representation_count(const EvenLattice& L, const HalfIntegralForm& xi, const EnumerationOptions& opts) {
    if (xi.size() > L.rank())
        throw DomainError("representation_count: xi has size " + std::to_string(xi.size()) + " > rank " +
                          std::to_string(L.rank()));
    if (opts.threads == 0) throw DomainError("representation_count: threads must be positive");
    return detail::count_tuples(L.gram(), xi.two_xi(), opts);
}

BigInt automorphism_order(const EvenLattice& L, const EnumerationOptions& opts) {
    return representation_count(L, L.as_form(), opts);
}

std::vector<std::pair<HalfIntegralForm, BigInt>> theta_coefficients(const EvenLattice& L, int degree,
                                                                    const std::vector<HalfIntegralForm>& xis,
                                                                    const EnumerationOptions& opts) {
    std::vector<std::pair<HalfIntegralForm, BigInt>> out;
    for (const auto& xi : xis) {
        if (xi.size() != degree)
            throw DomainError("theta_coefficients: form " + xi.to_string() + " does not have size " +
                              std::to_string(degree));
        out.emplace_back(xi, representation_count(L, xi, opts));
    }
    return out;
}

GenusWithWeights::GenusWithWeights(std::vector<EvenLattice> lattices, const EnumerationOptions& opts)
    : lattices_(std::move(lattices)) {
    for (const auto& L : lattices_) aut_.push_back(automorphism_order(L, opts));
    validate();
}

GenusWithWeights::GenusWithWeights(std::vector<EvenLattice> lattices, std::vector<BigInt> aut_orders)
    : lattices_(std::move(lattices)), aut_(std::move(aut_orders)) {
    validate();
}

void GenusWithWeights::validate() {
    if (lattices_.empty()) throw DomainError("genus: no classes");
    if (aut_.size() != lattices_.size()) throw DomainError("genus: one automorphism order per class is required");
    const int r = lattices_.front().rank();
    const BigInt d = lattices_.front().det();
    mass_ = 0;
    for (std::size_t i = 0; i < lattices_.size(); ++i) {
        if (lattices_[i].rank() != r || lattices_[i].det() != d)
            throw DomainError("genus: class " + lattices_[i].name() + " differs in rank or determinant");
        if (aut_[i] <= 0) throw DomainError("genus: automorphism order of " + lattices_[i].name() + " not positive");
        for (std::size_t j = 0; j < i; ++j)
            if (lattices_[j].name() == lattices_[i].name())
                throw DomainError("genus: duplicate class name " + lattices_[i].name());
        mass_ += Rational(BigInt(1), aut_[i]);
    }
    mass_.canonicalize();
}

std::size_t GenusWithWeights::index_of(const std::string& n) const {
    for (std::size_t i = 0; i < lattices_.size(); ++i)
        if (lattices_[i].name() == n) return i;
    throw DataError("genus: no class named " + n);
}

ClassFunction constant_class_function(const GenusWithWeights& genus, const Rational& value) {
    ClassFunction f;
    for (const auto& L : genus.lattices()) f[L.name()] = value;
    return f;
}

Rational weighted_average(const GenusWithWeights& genus, const ClassFunction& f, const HalfIntegralForm& xi,
                          const EnumerationOptions& opts) {
    for (const auto& [name, value] : f) genus.index_of(name);
    Rational total = 0;
    for (std::size_t i = 0; i < genus.lattices().size(); ++i) {
        const auto& L = genus.lattices()[i];
        auto it = f.find(L.name());
        if (it == f.end()) throw DataError("weighted_average: class function has no value at " + L.name());
        if (it->second == 0) continue;
        total += it->second * Rational(representation_count(L, xi, opts), genus.aut_orders()[i]);
    }
    total.canonicalize();
    return total;
}

}  // namespace siegelkit
