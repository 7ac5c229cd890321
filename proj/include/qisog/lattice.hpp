#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qisog/quat.hpp"

namespace qisog {

using ZRow = std::vector<mpz_class>;
using ZMat = std::vector<ZRow>;
using QMat = std::vector<std::vector<mpq_class>>;

// Row Hermite normal form: zero rows dropped, positive pivots, entries above
// each pivot reduced into [0, pivot).
ZMat hnf(ZMat rows);
// Basis of {x in Z^n : x * A = 0} for the n x m matrix A.
ZMat integer_kernel(const ZMat& a);
std::optional<QMat> rational_inverse(const QMat& a);
mpq_class rational_gcd(const std::vector<mpq_class>& xs);

using Basis4 = std::array<std::array<mpz_class, 4>, 4>;

// Full-rank lattice spanned by the rows of basis / den.  The basis is in row
// HNF (upper triangular) and gcd(content(basis), den) = 1.
class QLattice {
public:
    static QLattice from_generators(const std::vector<QuatElement>& gens);
    static QLattice from_basis(Form form, const Basis4& basis, const mpz_class& den);

    const Form& form() const { return form_; }
    const Basis4& basis() const { return basis_; }
    const mpz_class& den() const { return den_; }
    QuatElement element(int r) const;
    std::vector<QuatElement> elements() const;

    // Integer coordinates of x on the basis, if x lies in the lattice.
    std::optional<std::array<mpz_class, 4>> coordinates(const QuatElement& x) const;
    bool contains(const QuatElement& x) const { return coordinates(x).has_value(); }
    bool contains(const QLattice& m) const;

    QLattice operator+(const QLattice& m) const;
    QLattice operator*(const QLattice& m) const;
    QLattice intersect(const QLattice& m) const;
    QLattice scaled(const mpq_class& r) const;
    QLattice conj() const;
    QLattice dual() const;
    QLattice mul_left(const QuatElement& a) const;
    QLattice mul_right(const QuatElement& a) const;

    // Covolume relative to Z^4 in the coordinates 1, i, j, k.
    mpq_class covolume() const;
    std::string key() const;
    std::string to_string() const;

    friend bool operator==(const QLattice& x, const QLattice& y)
    {
        return x.form_ == y.form_ && x.den_ == y.den_ && x.basis_ == y.basis_;
    }
    friend bool operator<(const QLattice& x, const QLattice& y)
    {
        if (x.den_ != y.den_) return x.den_ < y.den_;
        return x.basis_ < y.basis_;
    }

private:
    Form form_;
    Basis4 basis_{};
    mpz_class den_ = 1;
};

// [L : M] for M a sublattice of L.
mpz_class index(const QLattice& l, const QLattice& m);
QLattice left_order(const QLattice& l);
QLattice right_order(const QLattice& l);
mpq_class reduced_norm(const QLattice& l);
// Gram matrix of (x, y) -> trd(x conj(y)) / 2 on the basis.
QMat gram_matrix(const QLattice& l);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// All nonzero elements with nrd <= bound, one of each pair +-x, sorted by
// norm and then by coordinates.
std::vector<QuatElement> min_norm_elements(const QLattice& l, const mpq_class& bound,
                                           std::size_t node_cap = kDefaultEnumerationCap);

} // namespace qisog
