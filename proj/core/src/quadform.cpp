#include "siegelkit/quadform.hpp"

#include "siegelkit/errors.hpp"

#include <cctype>
#include <sstream>

namespace siegelkit {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw DomainError("IntMatrix: ragged rows");
        for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

bool IntMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("IntMatrix: dimension mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const std::int64_t a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

IntMatrix IntMatrix::congruent(const IntMatrix& u) const { return u.transpose() * (*this) * u; }

IntMatrix IntMatrix::permuted(const std::vector<int>& perm) const {
    IntMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(perm[i], perm[j]);
    return r;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        if (i) os << ';';
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
    }
    return os.str();
}

namespace {

// Bareiss elimination; returns the leading minors and leaves the
// fraction-free echelon form in `a`.
std::vector<BigInt> bareiss(std::vector<std::vector<BigInt>>& a, bool pivoting) {
    const int n = static_cast<int>(a.size());
    std::vector<BigInt> minors;
    BigInt prev = 1, sign = 1;
    for (int k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            if (!pivoting) {
                minors.resize(n, BigInt(0));
                return minors;
            }
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) {
                minors.resize(n, BigInt(0));
                return minors;
            }
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
        minors.push_back(sign * a[k][k]);
    }
    return minors;
}

std::vector<std::vector<BigInt>> to_big(const IntMatrix& m) {
    std::vector<std::vector<BigInt>> a(m.rows(), std::vector<BigInt>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a[i][j] = BigInt(static_cast<long>(m(i, j)));
    return a;
}

}  // namespace

BigInt determinant(const IntMatrix& m) {
    if (!m.is_square()) throw DomainError("determinant: matrix not square");
    if (m.rows() == 0) return 1;
    auto a = to_big(m);
    auto minors = bareiss(a, true);
    return minors.back();
}

std::vector<BigInt> leading_minors(const IntMatrix& m) {
    if (!m.is_square()) throw DomainError("leading_minors: matrix not square");
    // Each leading minor is computed from its own block so that a
    // vanishing minor does not hide the later ones.
    std::vector<BigInt> out;
    for (int k = 1; k <= m.rows(); ++k) {
        IntMatrix b(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) b(i, j) = m(i, j);
        out.push_back(determinant(b));
    }
    return out;
}

bool is_positive_definite(const IntMatrix& m) {
    if (!m.is_symmetric()) return false;
    if (m.rows() == 0) return true;
    auto a = to_big(m);
    auto minors = bareiss(a, false);
    for (const auto& d : minors)
        if (d <= 0) return false;
    return true;
}

bool is_positive_semidefinite(const IntMatrix& m) {
    if (!m.is_symmetric()) return false;
    // All principal minors nonnegative (sizes here are small).
    const int n = m.rows();
    if (n > 20) throw CapabilityError("is_positive_semidefinite: size too large for the minor test");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) idx.push_back(i);
        IntMatrix b(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = m(idx[i], idx[j]);
        if (determinant(b) < 0) return false;
    }
    return true;
}

HalfIntegralForm HalfIntegralForm::from_two_xi(const IntMatrix& two_xi) {
    if (!two_xi.is_square()) throw DomainError("HalfIntegralForm: matrix not square");
    if (!two_xi.is_symmetric()) throw DomainError("HalfIntegralForm: matrix not symmetric");
    for (int i = 0; i < two_xi.rows(); ++i)
        if (two_xi(i, i) % 2 != 0) throw DomainError("HalfIntegralForm: diagonal of 2*xi must be even");
    HalfIntegralForm f;
    f.t_ = two_xi;
    return f;
}

HalfIntegralForm HalfIntegralForm::from_xi(const RationalMatrix& xi) {
    if (!membership_Rj(xi)) throw DomainError("HalfIntegralForm: matrix is not half-integral");
    const int n = static_cast<int>(xi.size());
    IntMatrix t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v = 2 * xi[i][j];
            if (!v.get_num().fits_slong_p()) throw CapabilityError("HalfIntegralForm: entry too large");
            t(i, j) = v.get_num().get_si();
        }
    return from_two_xi(t);
}

HalfIntegralForm HalfIntegralForm::diagonal(const std::vector<std::int64_t>& d) {
    const int n = static_cast<int>(d.size());
    IntMatrix t(n, n);
    for (int i = 0; i < n; ++i) t(i, i) = 2 * d[i];
    return from_two_xi(t);
}

HalfIntegralForm HalfIntegralForm::identity(int n) { return diagonal(std::vector<std::int64_t>(n, 1)); }

Rational HalfIntegralForm::xi(int i, int j) const {
    Rational v(static_cast<long>(t_(i, j)), 2);
    v.canonicalize();
    return v;
}

RationalMatrix HalfIntegralForm::xi_matrix() const {
    RationalMatrix m(size(), std::vector<Rational>(size()));
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j) m[i][j] = xi(i, j);
    return m;
}

HalfIntegralForm HalfIntegralForm::congruent(const IntMatrix& u) const { return from_two_xi(t_.congruent(u)); }

std::string HalfIntegralForm::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < size(); ++i) {
        if (i) os << ';';
        for (int j = 0; j < size(); ++j) os << (j ? "," : "") << xi(i, j).get_str();
    }
    return os.str();
}

EvenLattice::EvenLattice(std::string name, IntMatrix gram) : name_(std::move(name)), gram_(std::move(gram)) {
    if (!gram_.is_symmetric()) throw DomainError("EvenLattice " + name_ + ": Gram matrix not symmetric");
    for (int i = 0; i < gram_.rows(); ++i)
        if (gram_(i, i) % 2 != 0) throw DomainError("EvenLattice " + name_ + ": odd diagonal entry");
    if (!siegelkit::is_positive_definite(gram_))
        throw DomainError("EvenLattice " + name_ + ": Gram matrix not positive definite");
}

bool membership_Rj(const RationalMatrix& xi) {
    const std::size_t n = xi.size();
    for (const auto& row : xi)
        if (row.size() != n) throw DomainError("membership_Rj: matrix not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (xi[i][j] != xi[j][i]) throw DomainError("membership_Rj: matrix not symmetric");
    for (std::size_t i = 0; i < n; ++i) {
        if (xi[i][i].get_den() != 1) return false;
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational v = 2 * xi[i][j];
            if (v.get_den() != 1) return false;
        }
    }
    return true;
}

BigInt D_xi(const HalfIntegralForm& xi) {
    if (xi.size() % 2 != 0) throw DomainError("D_xi: size must be even");
    const BigInt d = xi.det_two_xi();
    if (d == 0) throw DomainError("D_xi: form is singular");
    return (xi.size() / 2) % 2 ? BigInt(-d) : d;
}

LocalInvariants xi_local_invariants(const HalfIntegralForm& xi, long p) {
    const Rational D(D_xi(xi));
    return {delta_p(D, p), f_p_eta(D, p), f_frak_eta(D)};
}

HalfIntegralForm direct_sum(const HalfIntegralForm& a, const HalfIntegralForm& b) {
    const int n = a.size(), m = b.size();
    IntMatrix t(n + m, n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(i, j) = a.two_xi()(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) t(n + i, n + j) = b.two_xi()(i, j);
    return HalfIntegralForm::from_two_xi(t);
}

EvenLattice direct_sum(const EvenLattice& a, const EvenLattice& b, const std::string& name) {
    const HalfIntegralForm s = direct_sum(a.as_form(), b.as_form());
    return EvenLattice(name.empty() ? a.name() + "+" + b.name() : name, s.two_xi());
}

static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

RationalMatrix parse_rational_rows(const std::string& text) {
    RationalMatrix m;
    for (const auto& row : split(text, ';')) {
        std::vector<Rational> r;
        for (const auto& entry : split(row, ',')) {
            if (entry.empty()) throw DomainError("parse: empty entry in '" + text + "'");
            Rational v;
            if (v.set_str(entry, 10) != 0) throw DomainError("parse: bad rational '" + entry + "'");
            v.canonicalize();
            r.push_back(v);
        }
        m.push_back(std::move(r));
    }
    return m;
}

HalfIntegralForm parse_inline_form(const std::string& text) { return HalfIntegralForm::from_xi(parse_rational_rows(text)); }

}  // namespace siegelkit
