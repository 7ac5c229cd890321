#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qisog/fl.hpp"
#include "qisog/lattice.hpp"

namespace qisog {

class QOrder {
public:
    explicit QOrder(QLattice lattice);

    const QLattice& lattice() const { return lattice_; }
    const Form& form() const { return lattice_.form(); }
    mpz_class discriminant() const;
    bool is_maximal() const;
    bool contains(const QuatElement& x) const { return lattice_.contains(x); }

    friend bool operator==(const QOrder& x, const QOrder& y) { return x.lattice_ == y.lattice_; }
    friend bool operator<(const QOrder& x, const QOrder& y) { return x.lattice_ < y.lattice_; }

private:
    QLattice lattice_;
};

class QIdeal {
public:
    explicit QIdeal(QLattice lattice);
    static QIdeal principal(const QOrder& o, const QuatElement& alpha);

    const QLattice& lattice() const { return lattice_; }
    const QOrder& left_order() const { return left_; }
    const QOrder& right_order() const { return right_; }
    mpq_class norm() const { return reduced_norm(lattice_); }
    bool is_integral() const { return left_.lattice().contains(lattice_); }
    bool is_two_sided() const { return left_ == right_; }

    friend bool operator==(const QIdeal& x, const QIdeal& y) { return x.lattice_ == y.lattice_; }
    friend bool operator<(const QIdeal& x, const QIdeal& y) { return x.lattice_ < y.lattice_; }

private:
    QLattice lattice_;
    QOrder left_;
    QOrder right_;
};

QOrder order_closure(const std::vector<QuatElement>& gens, int round_cap = 16);
mpz_class reduced_discriminant(const QOrder& o);
// (d1 d2 - (t1 t2 - 2 t)^2) / 4 for the order generated by two quadratic
// elements with discriminants d_u = trd^2 - 4 nrd and t = trd(a1 a2).
mpq_class two_generator_discriminant(const QuatElement& a1, const QuatElement& a2);

std::vector<QOrder> root_maximal_orders(const QuatAlgebra& alg);
// Maximal order of Q(u) inside the algebra, u = i or j.
QuatElement quadratic_generator(const QuatAlgebra& alg, char u);
bool contains_quadratic_maximal(const QOrder& o, const QuatAlgebra& alg, char u);

// Largest integer n with I contained in n O_L(I).
mpz_class content(const QIdeal& ideal);
bool is_primitive(const QIdeal& ideal);
bool is_locally_primitive(const QIdeal& ideal, i64 ell);
QIdeal primitive_part(const QIdeal& ideal);

QIdeal inverse(const QIdeal& ideal);
QIdeal colon_left(const QIdeal& i, const QIdeal& j);
QIdeal colon_right(const QIdeal& i, const QIdeal& j);
QIdeal connecting_ideal(const QOrder& o1, const QOrder& o2);
// Membership-set construction {x : x O' is in O} scaled to be primitive;
// slow, used as a test oracle.
QIdeal connecting_ideal_oracle(const QOrder& o1, const QOrder& o2);

std::optional<QuatElement> is_equivalent(const QIdeal& i, const QIdeal& j);
bool is_principal(const QIdeal& ideal);

// The two-sided ideal P of a maximal order with P^2 = pO.
QIdeal ramified_prime_ideal(const QOrder& o);

fl::Algebra4 quotient_algebra(const QOrder& o, i64 ell);
std::array<i64, 4> reduce_mod(const QOrder& o, const QuatElement& x, i64 ell);

// O / ell O as M_2(F_ell): images[r] is the 2x2 matrix of basis element r.
struct MatrixSplit {
    i64 ell = 0;
    std::array<fl::Mat, 4> images;
    fl::Mat entries;          // row r = (a, b, c, d) of images[r]
    fl::Mat entries_inverse;  // matrix entries -> coordinates
    fl::Mat image(const fl::Vec& coords) const;
    fl::Vec preimage(const fl::Mat& m) const;
};

MatrixSplit matrix_split(const QOrder& o, i64 ell, std::uint64_t seed = 0);

std::vector<QIdeal> ideals_of_norm_ell(const QOrder& o, i64 ell, std::uint64_t seed = 0);
std::vector<QIdeal> ideals_of_norm_ell_oracle(const QOrder& o, i64 ell);

} // namespace qisog
