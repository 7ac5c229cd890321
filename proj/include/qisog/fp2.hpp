#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qisog/numth.hpp"

namespace qisog {

// a + b t with t^2 = n, n the least quadratic nonresidue mod p.
struct Fp2 {
    i64 a = 0;
    i64 b = 0;
    bool operator==(const Fp2&) const = default;
    auto operator<=>(const Fp2&) const = default;
};

class Fp2Field {
public:
    explicit Fp2Field(i64 p);

    i64 p() const { return p_; }
    i64 nonresidue() const { return n_; }

    Fp2 from_int(i64 x) const { return {mod(x, p_), 0}; }
    Fp2 add(Fp2 x, Fp2 y) const { return {(x.a + y.a) % p_, (x.b + y.b) % p_}; }
    Fp2 sub(Fp2 x, Fp2 y) const { return {mod(x.a - y.a, p_), mod(x.b - y.b, p_)}; }
    Fp2 neg(Fp2 x) const { return {mod(-x.a, p_), mod(-x.b, p_)}; }
    Fp2 mul(Fp2 x, Fp2 y) const
    {
        return {(x.a * y.a + n_ * (x.b * y.b % p_)) % p_, (x.a * y.b + x.b * y.a) % p_};
    }
    Fp2 sqr(Fp2 x) const { return mul(x, x); }
    Fp2 inv(Fp2 x) const;
    Fp2 div(Fp2 x, Fp2 y) const { return mul(x, inv(y)); }
    Fp2 pow(Fp2 x, const mpz_class& e) const;
    Fp2 frobenius(Fp2 x) const { return {x.a, mod(-x.b, p_)}; }
    i64 norm(Fp2 x) const { return mod(x.a * x.a - n_ * (x.b * x.b % p_), p_); }
    // Quadratic character of F_{p^2}.
    int chi(Fp2 x) const { return legendre_[norm(x)]; }
    bool is_rational(Fp2 x) const { return x.b == 0; }
    std::string to_string(Fp2 x) const;

private:
    i64 p_;
    i64 n_;
    std::vector<int> legendre_;
};

// Dense polynomials over F_{p^2}, coefficients from degree 0 upwards, with
// no trailing zeros (the zero polynomial is empty).
using Poly = std::vector<Fp2>;

class PolyRing {
public:
    explicit PolyRing(const Fp2Field& f) : f_(f) {}
    const Fp2Field& field() const { return f_; }

    void trim(Poly& x) const;
    int degree(const Poly& x) const { return static_cast<int>(x.size()) - 1; }
    Poly add(const Poly& x, const Poly& y) const;
    Poly sub(const Poly& x, const Poly& y) const;
    Poly mul(const Poly& x, const Poly& y) const;
    std::pair<Poly, Poly> divmod(const Poly& x, const Poly& y) const;
    Poly rem(const Poly& x, const Poly& y) const { return divmod(x, y).second; }
    Poly monic(const Poly& x) const;
    Poly gcd(Poly x, Poly y) const;
    Poly powmod(const Poly& base, const mpz_class& e, const Poly& m) const;
    Fp2 eval(const Poly& x, Fp2 v) const;

    // Roots in F_{p^2} with multiplicities, sorted by field element.
    std::vector<std::pair<Fp2, int>> roots(const Poly& x, std::uint64_t seed = 0) const;

private:
    void split(const Poly& g, std::vector<Fp2>& out, std::uint64_t& state) const;
    const Fp2Field& f_;
};

} // namespace qisog
