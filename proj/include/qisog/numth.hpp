#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qisog {

using i64 = std::int64_t;

bool is_prime(i64 n);
std::vector<std::pair<i64, int>> factor(i64 n);
std::vector<i64> prime_divisors(const mpz_class& n);
int valuation(const mpz_class& n, i64 ell);
i64 mod(i64 a, i64 m);
i64 powmod(i64 b, i64 e, i64 m);
i64 invmod(i64 a, i64 m);
bool is_squarefree(i64 n);

int kronecker(const mpz_class& a, const mpz_class& n);
inline int kronecker(i64 a, i64 n) { return kronecker(mpz_class(a), mpz_class(n)); }

// place == 0 stands for the infinite place.
struct Place {
    i64 prime = 0;
    static Place infinity() { return {0}; }
    static Place at(i64 p) { return {p}; }
    bool is_infinite() const { return prime == 0; }
};

int hilbert_symbol(const mpq_class& a, const mpq_class& b, Place v);
// Search for a nontrivial zero of z^2 - a x^2 - b y^2 modulo a power of the
// prime (or by sign at infinity).  Slow; used as a test oracle.
int hilbert_symbol_search(i64 a, i64 b, Place v);

enum class GeneratorCase { DK0Mod4, DK1Mod4FOdd, DK1Mod4FEven };

struct QuadOrderDesc {
    i64 d = 0;
    i64 d_K = 0;
    i64 f = 1;
    GeneratorCase gen = GeneratorCase::DK0Mod4;
};

QuadOrderDesc quad_order_info(i64 d);
// Discriminant of the maximal order of Q(sqrt(m)) for squarefree m < 0.
i64 fundamental_discriminant(i64 m);

enum class Splitting { Split, Inert, Ramified };

struct SplittingType {
    Splitting kind = Splitting::Split;
    bool ell_fundamental = true;
};

SplittingType splitting_type(i64 d_K, i64 ell);
SplittingType splitting_type(const QuadOrderDesc& order, i64 ell);
const char* to_string(Splitting s);

i64 pizer_q(i64 p, std::optional<i64> search_bound = std::nullopt);

} // namespace qisog
