#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "qisog/ideals.hpp"

namespace qisog::test {

// Distinct maximal orders met by a random ell-neighbour walk from start.
inline std::vector<QOrder> walk_orders(const QOrder& start, i64 ell, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<QOrder> out{start};
    std::set<QLattice> seen{start.lattice()};
    QOrder cur = start;
    for (std::size_t step = 0; out.size() < count && step < 50 * count; ++step) {
        auto nb = ideals_of_norm_ell(cur, ell, seed);
        cur = nb[rng() % nb.size()].right_order();
        if (seen.insert(cur.lattice()).second) out.push_back(cur);
    }
    return out;
}

inline QuatElement random_element(const QuatAlgebra& alg, std::mt19937_64& rng, int range = 9, int den = 2)
{
    std::uniform_int_distribution<int> d(-range, range);
    return alg.element(mpq_class(d(rng), den), mpq_class(d(rng), den), mpq_class(d(rng), den), mpq_class(d(rng), den));
}

} // namespace qisog::test
