#include "qisog/numth.hpp"

#include <cmath>
#include <map>
#include <string>

#include "qisog/error.hpp"

namespace qisog {

bool is_prime(i64 n)
{
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    if (n > (i64(1) << 40)) return mpz_probab_prime_p(mpz_class(std::to_string(n)).get_mpz_t(), 40) > 0;
    for (i64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<i64, int>> factor(i64 n)
{
    std::vector<std::pair<i64, int>> out;
    if (n < 0) n = -n;
    for (i64 d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> prime_divisors(const mpz_class& n)
{
    require(n != 0, "prime_divisors: zero");
    mpz_class m = abs(n);
    std::vector<i64> out;
    for (i64 d = 2; mpz_class(d) * d <= m; ++d) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            out.push_back(d);
            while (mpz_divisible_ui_p(m.get_mpz_t(), d)) m /= d;
        }
    }
    if (m > 1) {
        require(m.fits_slong_p(), "prime_divisors: cofactor too large");
        out.push_back(m.get_si());
    }
    return out;
}

int valuation(const mpz_class& n, i64 ell)
{
    require(n != 0 && ell > 1, "valuation: bad arguments");
    mpz_class m = n;
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), ell)) { m /= ell; ++v; }
    return v;
}

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 powmod(i64 b, i64 e, i64 m)
{
    __int128 r = 1 % m, x = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

i64 invmod(i64 a, i64 m)
{
    i64 t = 0, nt = 1, r = m, nr = mod(a, m);
    while (nr != 0) {
        i64 q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    require(r == 1, "invmod: not invertible");
    return mod(t, m);
}

bool is_squarefree(i64 n)
{
    if (n == 0) return false;
    for (auto [q, e] : factor(n))
        if (e > 1) return false;
    return true;
}

int kronecker(const mpz_class& a, const mpz_class& n)
{
    require(n != 0, "kronecker: n = 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

// Split a nonzero integer as p^v * u.
std::pair<int, mpz_class> split_at(const mpz_class& a, i64 p)
{
    int v = 0;
    mpz_class u = a;
    while (mpz_divisible_ui_p(u.get_mpz_t(), p)) { u /= p; ++v; }
    return {v, u};
}

int mod8(const mpz_class& u)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), 8);
    return static_cast<int>(r.get_si());
}

} // namespace

int hilbert_symbol(const mpq_class& a, const mpq_class& b, Place v)
{
    require(a != 0 && b != 0, "hilbert_symbol: zero argument");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    i64 p = v.prime;
    require(is_prime(p), "hilbert_symbol: place is not prime");
    mpz_class A = a.get_num() * a.get_den();
    mpz_class B = b.get_num() * b.get_den();
    auto [alpha, u] = split_at(A, p);
    auto [beta, w] = split_at(B, p);
    if (p != 2) {
        int s = ((alpha * beta) % 2 == 1 && p % 4 == 3) ? -1 : 1;
        if (beta % 2) s *= kronecker(u, mpz_class(p));
        if (alpha % 2) s *= kronecker(w, mpz_class(p));
        return s;
    }
    int u8 = mod8(u), w8 = mod8(w);
    auto eps = [](int x) { return ((x - 1) / 2) & 1; };
    auto omega = [](int x) { return ((x * x - 1) / 8) & 1; };
    int e = eps(u8) * eps(w8) + alpha * omega(w8) + beta * omega(u8);
    return (e & 1) ? -1 : 1;
}

int hilbert_symbol_search(i64 a, i64 b, Place v)
{
    require(a != 0 && b != 0, "hilbert_symbol_search: zero argument");
    if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
    i64 p = v.prime;
    auto strip = [p](i64 x) {
        while (x % (p * p) == 0) x /= p * p;
        return x;
    };
    a = strip(a);
    b = strip(b);
    // A primitive solution with partial-derivative valuation m lifts once it
    // holds modulo p^(2m+1); m <= 1 for odd p and m <= 2 at 2.
    int k = p == 2 ? 5 : 3;
    i64 pk = 1;
    for (int t = 0; t < k; ++t) pk *= p;
    std::vector<std::vector<i64>> roots(pk);
    for (i64 z = 0; z < pk; ++z) roots[z * z % pk].push_back(z);
    auto vp = [p, k](i64 x) {
        if (x == 0) return k;
        int r = 0;
        while (x % p == 0 && r < k) { x /= p; ++r; }
        return r;
    };
    for (i64 x = 0; x < pk; ++x) {
        for (i64 y = 0; y < pk; ++y) {
            i64 rhs = mod(mod(a, pk) * (x * x % pk) % pk + mod(b, pk) * (y * y % pk) % pk, pk);
            for (i64 z : roots[rhs]) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                int m = std::min({vp(mod(2 * z, pk)), vp(mod(2 * a * x, pk)), vp(mod(2 * b * y, pk))});
                if (2 * m + 1 <= k) return 1;
            }
        }
    }
    return -1;
}

QuadOrderDesc quad_order_info(i64 d)
{
    require(d < 0 && (mod(d, 4) == 0 || mod(d, 4) == 1),
            "quad_order_info: d must be negative and 0 or 1 mod 4");
    i64 s = -1, g = 1;
    for (auto [q, e] : factor(d)) {
        if (e % 2) s *= q;
        for (int t = 0; t < e / 2; ++t) g *= q;
    }
    QuadOrderDesc out;
    out.d = d;
    if (mod(s, 4) == 1) {
        out.d_K = s;
        out.f = g;
        out.gen = (g % 2) ? GeneratorCase::DK1Mod4FOdd : GeneratorCase::DK1Mod4FEven;
    } else {
        ensure(g % 2 == 0, "quad_order_info: inconsistent square part");
        out.d_K = 4 * s;
        out.f = g / 2;
        out.gen = GeneratorCase::DK0Mod4;
    }
    return out;
}

i64 fundamental_discriminant(i64 m)
{
    require(m < 0 && is_squarefree(m), "fundamental_discriminant: m must be negative squarefree");
    return mod(m, 4) == 1 ? m : 4 * m;
}

SplittingType splitting_type(i64 d_K, i64 ell)
{
    require(quad_order_info(d_K).f == 1, "splitting_type: d_K not fundamental");
    int k = kronecker(d_K, ell);
    return {k == 1 ? Splitting::Split : k == -1 ? Splitting::Inert : Splitting::Ramified, true};
}

SplittingType splitting_type(const QuadOrderDesc& order, i64 ell)
{
    SplittingType t = splitting_type(order.d_K, ell);
    t.ell_fundamental = order.f % ell != 0;
    return t;
}

const char* to_string(Splitting s)
{
    switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
    }
    return "?";
}

i64 pizer_q(i64 p, std::optional<i64> search_bound)
{
    require(p > 2 && is_prime(p), "pizer_q: p must be an odd prime");
    if (p % 4 == 3) return 1;
    if (p % 8 == 5) return 2;
    double lp = std::log(static_cast<double>(p));
    i64 bound = search_bound.value_or(static_cast<i64>(4.0 * lp * lp));
    for (i64 q = 3; q <= bound; q += 4)
        if (is_prime(q) && kronecker(p, q) == -1) return q;
    throw PreconditionError("pizer_q: no admissible q <= " + std::to_string(bound) + " for p = " + std::to_string(p));
}

} // namespace qisog
