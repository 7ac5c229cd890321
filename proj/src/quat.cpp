#include "qisog/quat.hpp"

#include <ostream>
#include <set>
#include <sstream>

#include "qisog/error.hpp"

namespace qisog {

QuatElement::QuatElement(Form f, mpq_class x, mpq_class y, mpq_class z, mpq_class w)
    : form_(f), c_{std::move(x), std::move(y), std::move(z), std::move(w)}
{
    for (auto& t : c_) t.canonicalize();
}

QuatElement QuatElement::conj() const
{
    return QuatElement(form_, c_[0], -c_[1], -c_[2], -c_[3]);
}

mpq_class QuatElement::nrd() const
{
    const mpq_class a = form_.a, b = form_.b;
    return c_[0] * c_[0] - a * c_[1] * c_[1] - b * c_[2] * c_[2] + a * b * c_[3] * c_[3];
}

QuatElement QuatElement::inverse() const
{
    mpq_class n = nrd();
    require(n != 0, "QuatElement::inverse: zero element");
    return conj() / n;
}

bool QuatElement::is_zero() const
{
    return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

mpz_class QuatElement::denominator() const
{
    mpz_class d = 1;
    for (const auto& t : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.get_den_mpz_t());
    return d;
}

QuatElement QuatElement::operator-() const
{
    return QuatElement(form_, -c_[0], -c_[1], -c_[2], -c_[3]);
}

QuatElement operator+(const QuatElement& x, const QuatElement& y)
{
    ensure(x.form_ == y.form_, "quaternion algebra mismatch");
    return QuatElement(x.form_, x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]);
}

QuatElement operator-(const QuatElement& x, const QuatElement& y)
{
    return x + (-y);
}

QuatElement operator*(const QuatElement& x, const QuatElement& y)
{
    ensure(x.form_ == y.form_, "quaternion algebra mismatch");
    const mpq_class a = x.form_.a, b = x.form_.b;
    const auto& [x1, y1, z1, w1] = x.c_;
    const auto& [x2, y2, z2, w2] = y.c_;
    return QuatElement(x.form_,
                       x1 * x2 + a * y1 * y2 + b * z1 * z2 - a * b * w1 * w2,
                       x1 * y2 + y1 * x2 - b * z1 * w2 + b * w1 * z2,
                       x1 * z2 + z1 * x2 + a * y1 * w2 - a * w1 * y2,
                       x1 * w2 + w1 * x2 + y1 * z2 - z1 * y2);
}

QuatElement operator*(const mpq_class& r, const QuatElement& x)
{
    return QuatElement(x.form_, r * x.c_[0], r * x.c_[1], r * x.c_[2], r * x.c_[3]);
}

QuatElement operator/(const QuatElement& x, const mpq_class& r)
{
    require(r != 0, "QuatElement: division by zero");
    return QuatElement(x.form_, x.c_[0] / r, x.c_[1] / r, x.c_[2] / r, x.c_[3] / r);
}

bool operator==(const QuatElement& x, const QuatElement& y)
{
    return x.form_ == y.form_ && x.c_ == y.c_;
}

bool operator<(const QuatElement& x, const QuatElement& y)
{
    return x.c_ < y.c_;
}

std::string QuatElement::to_string() const
{
    static const char* names[4] = {"", "i", "j", "k"};
    std::ostringstream os;
    bool first = true;
    for (int t = 0; t < 4; ++t) {
        if (c_[t] == 0) continue;
        mpq_class v = c_[t];
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        mpq_class av = abs(v);
        if (t == 0) os << av;
        else if (av == 1) os << names[t];
        else os << av << "*" << names[t];
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuatElement& x)
{
    return os << x.to_string();
}

bool is_ramified_exactly_at(i64 p, i64 a, i64 b)
{
    if (hilbert_symbol(a, b, Place::infinity()) != -1) return false;
    std::set<i64> places{2, p};
    for (auto [r, e] : factor(a)) places.insert(r);
    for (auto [r, e] : factor(b)) places.insert(r);
    for (i64 v : places)
        if ((hilbert_symbol(a, b, Place::at(v)) == -1) != (v == p)) return false;
    return true;
}

QuatAlgebra::QuatAlgebra(i64 p, i64 d_i, i64 d_j) : p_(p), form_{d_i, d_j, p}
{
    require(p > 3 && is_prime(p), "QuatAlgebra: p must be a prime > 3");
    require(d_i < 0 && d_j < 0 && is_squarefree(d_i) && is_squarefree(d_j),
            "QuatAlgebra: d_i, d_j must be negative squarefree");
    require(is_ramified_exactly_at(p, d_i, d_j),
            "QuatAlgebra: (" + std::to_string(d_i) + "," + std::to_string(d_j) +
                ") is not ramified exactly at {p, inf}");
}

QuatAlgebra QuatAlgebra::pizer(i64 p, std::optional<i64> q_bound)
{
    i64 q = pizer_q(p, q_bound);
    QuatAlgebra alg(p, -q, -p);
    alg.q_ = q;
    return alg;
}

QuatAlgebra QuatAlgebra::swapped() const
{
    QuatAlgebra alg(*this);
    std::swap(alg.form_.a, alg.form_.b);
    return alg;
}

EmbeddingCheck simultaneous_embedding_check(i64 d1, i64 d2, i64 s, i64 p)
{
    require(d1 < 0 && d2 < 0 && is_squarefree(d1) && is_squarefree(d2),
            "simultaneous_embedding_check: d1, d2 must be negative squarefree");
    require(is_prime(p), "simultaneous_embedding_check: p must be prime");
    i64 n = s * s - 4 * d1 * d2;
    require(n < 0, "simultaneous_embedding_check: need s^2 < 4 d1 d2");
    EmbeddingCheck out;
    out.fields_ok = is_ramified_exactly_at(p, d1, n);
    bool r1 = mod(d1, 4) == 1, r2 = mod(d2, 4) == 1;
    i64 delta = (r1 && r2) ? 4 : (!r1 && !r2) ? 1 : 2;
    out.maximal_orders_ok = out.fields_ok && mod(s - 2, delta) == 0;
    return out;
}

} // namespace qisog
