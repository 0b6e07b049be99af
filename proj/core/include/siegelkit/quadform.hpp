#pragma once

#include "siegelkit/arith.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace siegelkit {

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols, std::int64_t fill = 0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const std::int64_t* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }

    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;
    IntMatrix transpose() const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;

    // u^t * this * u
    IntMatrix congruent(const IntMatrix& u) const;
    IntMatrix permuted(const std::vector<int>& perm) const;

    std::string to_string() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::int64_t> a_;
};

// Exact determinant by fraction-free elimination.
BigInt determinant(const IntMatrix& m);
// Leading principal minors Delta_1..Delta_n.
std::vector<BigInt> leading_minors(const IntMatrix& m);
bool is_positive_definite(const IntMatrix& m);
bool is_positive_semidefinite(const IntMatrix& m);

using RationalMatrix = std::vector<std::vector<Rational>>;

// Symmetric xi with integral diagonal and half-integral off-diagonal entries,
// stored as the even integral matrix 2*xi.
class HalfIntegralForm {
public:
    HalfIntegralForm() = default;
    static HalfIntegralForm from_two_xi(const IntMatrix& two_xi);
    static HalfIntegralForm from_xi(const RationalMatrix& xi);
    static HalfIntegralForm diagonal(const std::vector<std::int64_t>& d);
    static HalfIntegralForm identity(int n);

    int size() const { return t_.rows(); }
    const IntMatrix& two_xi() const { return t_; }
    Rational xi(int i, int j) const;
    RationalMatrix xi_matrix() const;
    BigInt det_two_xi() const { return determinant(t_); }
    bool is_positive_definite() const { return siegelkit::is_positive_definite(t_); }
    HalfIntegralForm congruent(const IntMatrix& u) const;

    // Row-major with ';' between rows, e.g. "1,1/2;1/2,1".
    std::string to_string() const;
    bool operator==(const HalfIntegralForm& o) const = default;

private:
    IntMatrix t_;
};

class EvenLattice {
public:
    EvenLattice() = default;
    EvenLattice(std::string name, IntMatrix gram);

    const std::string& name() const { return name_; }
    int rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    BigInt det() const { return determinant(gram_); }
    bool is_unimodular() const { return det() == 1; }
    // Gram(L)/2
    HalfIntegralForm as_form() const { return HalfIntegralForm::from_two_xi(gram_); }

private:
    std::string name_;
    IntMatrix gram_;
};

// Throws DomainError on non-square or non-symmetric input.
bool membership_Rj(const RationalMatrix& xi);

BigInt D_xi(const HalfIntegralForm& xi);

struct LocalInvariants {
    int delta;
    long f;
    Rational f_frak;
    bool operator==(const LocalInvariants&) const = default;
};

LocalInvariants xi_local_invariants(const HalfIntegralForm& xi, long p);

HalfIntegralForm direct_sum(const HalfIntegralForm& a, const HalfIntegralForm& b);
EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b, const std::string& name = "");

// Inline syntax: row-major rationals, ',' between entries and ';' between rows.
RationalMatrix parse_rational_rows(const std::string& text);
HalfIntegralForm parse_inline_form(const std::string& text);

}  // namespace siegelkit
