#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "qisog/numth.hpp"

namespace qisog {

// (a, b | Q) with i^2 = a, j^2 = b, k = ij = -ji, ramified at p and infinity.
struct Form {
    i64 a = -1;
    i64 b = -1;
    i64 p = 0;
    bool operator==(const Form&) const = default;
};

class QuatElement {
public:
    QuatElement() = default;
    QuatElement(Form f, mpq_class x, mpq_class y, mpq_class z, mpq_class w);

    const Form& form() const { return form_; }
    const mpq_class& operator[](int t) const { return c_[t]; }
    const std::array<mpq_class, 4>& coords() const { return c_; }

    QuatElement conj() const;
    mpq_class nrd() const;
    mpq_class trd() const { return 2 * c_[0]; }
    QuatElement inverse() const;
    bool is_zero() const;
    mpz_class denominator() const;

    QuatElement operator-() const;
    friend QuatElement operator+(const QuatElement& x, const QuatElement& y);
    friend QuatElement operator-(const QuatElement& x, const QuatElement& y);
    friend QuatElement operator*(const QuatElement& x, const QuatElement& y);
    friend QuatElement operator*(const mpq_class& r, const QuatElement& x);
    friend QuatElement operator/(const QuatElement& x, const mpq_class& r);
    friend bool operator==(const QuatElement& x, const QuatElement& y);
    friend bool operator<(const QuatElement& x, const QuatElement& y);

    std::string to_string() const;

private:
    Form form_;
    std::array<mpq_class, 4> c_{};
};

std::ostream& operator<<(std::ostream& os, const QuatElement& x);

// Definite algebra ramified exactly at p and infinity with i, j perpendicular.
class QuatAlgebra {
public:
    QuatAlgebra(i64 p, i64 d_i, i64 d_j);
    static QuatAlgebra pizer(i64 p, std::optional<i64> q_bound = std::nullopt);

    i64 p() const { return p_; }
    i64 d_i() const { return form_.a; }
    i64 d_j() const { return form_.b; }
    i64 q() const { return q_; }
    const Form& form() const { return form_; }
    QuatAlgebra swapped() const;

    QuatElement element(const mpq_class& x, const mpq_class& y, const mpq_class& z, const mpq_class& w) const
    {
        return QuatElement(form_, x, y, z, w);
    }
    QuatElement scalar(const mpq_class& r) const { return element(r, 0, 0, 0); }
    QuatElement one() const { return element(1, 0, 0, 0); }
    QuatElement i() const { return element(0, 1, 0, 0); }
    QuatElement j() const { return element(0, 0, 1, 0); }
    QuatElement k() const { return element(0, 0, 0, 1); }

    bool operator==(const QuatAlgebra& o) const { return p_ == o.p_ && form_ == o.form_; }

private:
    i64 p_ = 0;
    i64 q_ = 0;
    Form form_;
};

bool is_ramified_exactly_at(i64 p, i64 a, i64 b);

struct EmbeddingCheck {
    bool fields_ok = false;
    bool maximal_orders_ok = false;
};

EmbeddingCheck simultaneous_embedding_check(i64 d1, i64 d2, i64 s, i64 p);

} // namespace qisog
