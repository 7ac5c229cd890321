#include "qisog/fp2.hpp"

#include <algorithm>
#include <random>

#include "qisog/error.hpp"

namespace qisog {

Fp2Field::Fp2Field(i64 p) : p_(p), n_(0), legendre_(p, -1)
{
    require(p > 3 && is_prime(p), "Fp2Field: p must be a prime > 3");
    legendre_[0] = 0;
    for (i64 x = 1; x < p; ++x) legendre_[x * x % p] = 1;
    for (i64 x = 2; x < p; ++x)
        if (legendre_[x] == -1) { n_ = x; break; }
}

Fp2 Fp2Field::inv(Fp2 x) const
{
    i64 nx = norm(x);
    require(nx != 0, "Fp2Field::inv: zero");
    i64 ni = invmod(nx, p_);
    return {x.a * ni % p_, mod(-x.b, p_) * ni % p_};
}

Fp2 Fp2Field::pow(Fp2 x, const mpz_class& e) const
{
    require(e >= 0, "Fp2Field::pow: negative exponent");
    Fp2 r = from_int(1);
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        r = sqr(r);
        if (mpz_tstbit(e.get_mpz_t(), bit)) r = mul(r, x);
    }
    return r;
}

std::string Fp2Field::to_string(Fp2 x) const
{
    if (x.b == 0) return std::to_string(x.a);
    std::string s = x.a ? std::to_string(x.a) + "+" : "";
    return s + (x.b == 1 ? "" : std::to_string(x.b) + "*") + "t";
}

void PolyRing::trim(Poly& x) const
{
    while (!x.empty() && x.back() == Fp2{}) x.pop_back();
}

Poly PolyRing::add(const Poly& x, const Poly& y) const
{
    Poly r(std::max(x.size(), y.size()));
    for (std::size_t t = 0; t < r.size(); ++t)
        r[t] = f_.add(t < x.size() ? x[t] : Fp2{}, t < y.size() ? y[t] : Fp2{});
    trim(r);
    return r;
}

Poly PolyRing::sub(const Poly& x, const Poly& y) const
{
    Poly r(std::max(x.size(), y.size()));
    for (std::size_t t = 0; t < r.size(); ++t)
        r[t] = f_.sub(t < x.size() ? x[t] : Fp2{}, t < y.size() ? y[t] : Fp2{});
    trim(r);
    return r;
}

Poly PolyRing::mul(const Poly& x, const Poly& y) const
{
    if (x.empty() || y.empty()) return {};
    Poly r(x.size() + y.size() - 1);
    for (std::size_t s = 0; s < x.size(); ++s) {
        if (x[s] == Fp2{}) continue;
        for (std::size_t t = 0; t < y.size(); ++t) r[s + t] = f_.add(r[s + t], f_.mul(x[s], y[t]));
    }
    trim(r);
    return r;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& x, const Poly& y) const
{
    require(!y.empty(), "PolyRing::divmod: division by zero");
    Poly r = x;
    trim(r);
    if (r.size() < y.size()) return {{}, r};
    Poly q(r.size() - y.size() + 1);
    Fp2 lead_inv = f_.inv(y.back());
    for (std::size_t s = r.size(); s-- >= y.size();) {
        Fp2 c = f_.mul(r[s], lead_inv);
        q[s - (y.size() - 1)] = c;
        if (c == Fp2{}) continue;
        std::size_t off = s - (y.size() - 1);
        for (std::size_t t = 0; t < y.size(); ++t) r[off + t] = f_.sub(r[off + t], f_.mul(c, y[t]));
    }
    r.resize(y.size() - 1);
    trim(r);
    trim(q);
    return {q, r};
}

Poly PolyRing::monic(const Poly& x) const
{
    if (x.empty()) return x;
    Fp2 li = f_.inv(x.back());
    Poly r(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) r[t] = f_.mul(x[t], li);
    return r;
}

Poly PolyRing::gcd(Poly x, Poly y) const
{
    trim(x);
    trim(y);
    while (!y.empty()) {
        Poly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

Poly PolyRing::powmod(const Poly& base, const mpz_class& e, const Poly& m) const
{
    Poly r{f_.from_int(1)};
    r = rem(r, m);
    Poly b = rem(base, m);
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        r = rem(mul(r, r), m);
        if (mpz_tstbit(e.get_mpz_t(), bit)) r = rem(mul(r, b), m);
    }
    return r;
}

Fp2 PolyRing::eval(const Poly& x, Fp2 v) const
{
    Fp2 r{};
    for (std::size_t t = x.size(); t-- > 0;) r = f_.add(f_.mul(r, v), x[t]);
    return r;
}

void PolyRing::split(const Poly& g, std::vector<Fp2>& out, std::uint64_t& state) const
{
    if (degree(g) <= 0) return;
    if (degree(g) == 1) {
        out.push_back(f_.neg(f_.mul(g[0], f_.inv(g[1]))));
        return;
    }
    const i64 p = f_.p();
    mpz_class e = (mpz_class(p) * p - 1) / 2;
    std::mt19937_64 rng(state);
    for (;;) {
        Fp2 d{static_cast<i64>(rng() % static_cast<std::uint64_t>(p)), static_cast<i64>(rng() % static_cast<std::uint64_t>(p))};
        Poly h = powmod({d, f_.from_int(1)}, e, g);
        h = sub(h, {f_.from_int(1)});
        Poly c = gcd(g, h);
        if (degree(c) > 0 && degree(c) < degree(g)) {
            state = rng();
            split(c, out, state);
            split(divmod(g, c).first, out, state);
            return;
        }
    }
}

std::vector<std::pair<Fp2, int>> PolyRing::roots(const Poly& x, std::uint64_t seed) const
{
    Poly f = x;
    trim(f);
    require(!f.empty(), "PolyRing::roots: zero polynomial");
    std::vector<std::pair<Fp2, int>> out;
    if (degree(f) == 0) return out;
    const i64 p = f_.p();
    Poly X{Fp2{}, f_.from_int(1)};
    Poly xq = powmod(X, mpz_class(p) * p, f);
    Poly g = gcd(f, sub(xq, X));
    std::vector<Fp2> rs;
    std::uint64_t state = seed;
    split(g, rs, state);
    std::sort(rs.begin(), rs.end());
    for (Fp2 r : rs) {
        int m = 0;
        Poly cur = f;
        Poly lin{f_.neg(r), f_.from_int(1)};
        for (;;) {
            auto [q, rem] = divmod(cur, lin);
            if (!rem.empty()) break;
            ++m;
            cur = std::move(q);
        }
        ensure(m > 0, "PolyRing::roots: split produced a non-root");
        out.emplace_back(r, m);
    }
    return out;
}

} // namespace qisog
