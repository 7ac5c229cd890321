#pragma once

#include <cstddef>
#include <vector>

#include "qisog/ideals.hpp"

namespace qisog {

// Order generated by the maximal orders of Q(i) and Q(j).  Requires that not
// both d_i and d_j are 1 mod 4.
QOrder bass_order(const QuatAlgebra& alg);

enum class EichlerMethod { Auto, Formula, Radical };

// (O / ell) in {-1, 0, 1} for a prime ell dividing discrd(O).  The formula
// path needs a maximal quadratic order of Q(i) or Q(j) inside O; Auto uses it
// when available and the radical of O / ell O otherwise.
int eichler_symbol(const QOrder& o, i64 ell, EichlerMethod method = EichlerMethod::Auto);

// Basis over F_ell of the Jacobson radical of O / ell O.
fl::Mat radical_basis(const QOrder& o, i64 ell);

i64 local_embedding_number(const QOrder& o, i64 ell);
i64 global_embedding_number(const QOrder& o);

inline constexpr std::size_t kDefaultSuperorderCap = 100'000;

// All maximal orders containing o, by exhaustive search of superorders
// inside ell^-m o for every prime ell with ell^m || discrd(o) / p.
std::vector<QOrder> enumerate_maximal_superorders(const QOrder& o,
                                                  std::size_t cap = kDefaultSuperorderCap);

} // namespace qisog
