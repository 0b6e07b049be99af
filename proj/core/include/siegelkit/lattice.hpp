#pragma once

#include "siegelkit/quadform.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace siegelkit {

struct EnumerationOptions {
    unsigned threads = 1;
    // Fix each column up to the reflection group of the roots orthogonal to
    // the columns already chosen. Off means plain backtracking.
    bool orbit_reduction = true;
};

// Lattice vectors in basis coordinates, stored contiguously.
struct VectorList {
    int rank = 0;
    std::vector<std::int32_t> coords;
    std::vector<long> norms;

    std::size_t size() const { return norms.size(); }
    const std::int32_t* at(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(rank); }
};

// All x != 0 with x^t G x <= bound, for a positive definite integral G. The
// pruning bounds are exact integer inequalities from the fraction-free
// LDL^t factorisation of G.
VectorList enumerate_short_vectors(const IntMatrix& gram, long bound);

// Counts of vectors with (x,x) = 2, 4, ..., bound (zero counts included).
std::map<long, BigInt> short_vectors(const EvenLattice& L, long bound);

// N(L, xi): ordered tuples (x_1..x_j) with (x_a, x_b) = 2 xi_ab.
BigInt representation_count(const EvenLattice& L, const HalfIntegralForm& xi, const EnumerationOptions& opts = {});

// #O(L) = N(L, Gram(L)/2).
BigInt automorphism_order(const EvenLattice& L, const EnumerationOptions& opts = {});

// Degree-j theta coefficients; the result is in the order of `xis`.
std::vector<std::pair<HalfIntegralForm, BigInt>> theta_coefficients(const EvenLattice& L, int degree,
                                                                    const std::vector<HalfIntegralForm>& xis,
                                                                    const EnumerationOptions& opts = {});

// Classes of one genus with their automorphism orders.
class GenusWithWeights {
public:
    GenusWithWeights() = default;
    // Computes every E(L) by enumeration.
    explicit GenusWithWeights(std::vector<EvenLattice> lattices, const EnumerationOptions& opts = {});
    // Uses supplied orders; each is checked to be positive.
    GenusWithWeights(std::vector<EvenLattice> lattices, std::vector<BigInt> aut_orders);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const std::vector<EvenLattice>& lattices() const { return lattices_; }
    const std::vector<BigInt>& aut_orders() const { return aut_; }
    const Rational& mass() const { return mass_; }
    int rank() const { return lattices_.empty() ? 0 : lattices_.front().rank(); }
    // Index of the class with this name; DataError if absent.
    std::size_t index_of(const std::string& name) const;

private:
    void validate();
    std::string name_;
    std::vector<EvenLattice> lattices_;
    std::vector<BigInt> aut_;
    Rational mass_;
};

// f: class name -> value.
using ClassFunction = std::map<std::string, Rational>;
ClassFunction constant_class_function(const GenusWithWeights& genus, const Rational& value);

// R(xi, f) = sum_L f(L) N(L, xi) / E(L).
Rational weighted_average(const GenusWithWeights& genus, const ClassFunction& f, const HalfIntegralForm& xi,
                          const EnumerationOptions& opts = {});

}  // namespace siegelkit
