#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qisog/fp2.hpp"
#include "qisog/graph.hpp"
#include "qisog/modpoly.hpp"

namespace qisog {

inline constexpr i64 kMaxCurvePrime = 1000;

struct ShortWeierstrass {
    Fp2 a;
    Fp2 b;
};

ShortWeierstrass curve_from_j(const Fp2Field& f, Fp2 j);
Fp2 j_invariant(const Fp2Field& f, const ShortWeierstrass& e);
// #E(F_{p^2}) = p^2 + 1 + sum_x chi(x^3 + a x + b).
i64 count_points(const Fp2Field& f, const ShortWeierstrass& e);
bool is_supersingular(const Fp2Field& f, Fp2 j);

// Candidates from the roots of the Hasse invariant in Legendre form, each
// confirmed by point counting; sorted by field element.
std::vector<Fp2> supersingular_j_list(i64 p);
// Point count of every j in F_{p^2}; O(p^4), used as a test oracle.
std::vector<Fp2> supersingular_j_scan(i64 p);

// Phi_ell(j, Y) over F_{p^2}.
Poly modpoly_at(const PolyRing& ring, const ModPoly& phi, Fp2 j);

// Fixed-width "a,b" so that string order matches element order.
std::string fp2_key(Fp2 x);
MultiGraph build_isogeny_graph(i64 p, const ModPoly& phi, std::uint64_t seed = 0);
MultiGraph build_isogeny_graph(i64 p, i64 ell, std::uint64_t seed = 0);
// Quotient by j ~ j^p; each class keeps the out-edges of its smallest member.
MultiGraph reduce_graph(const MultiGraph& g);

} // namespace qisog
