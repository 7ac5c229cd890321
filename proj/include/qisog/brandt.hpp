#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qisog/graph.hpp"
#include "qisog/ideals.hpp"

namespace qisog {

struct ClassSet {
    QOrder base;
    i64 ell = 0;
    std::vector<QIdeal> representatives;
    std::vector<i64> unit_sizes;  // |O_R(I_j)^x| / 2
    std::size_t size() const { return representatives.size(); }
};

// Index of the representative equivalent to the left base-ideal, if any.
std::optional<std::size_t> find_class(const ClassSet& cs, const QIdeal& ideal);

ClassSet enumerate_classes(const QOrder& base, i64 ell, std::uint64_t seed = 0,
                           std::optional<int> depth_cap = std::nullopt);

using IntMatrix = std::vector<std::vector<i64>>;

// b_ij = number of ell-neighbours J of I_i with J ~ I_j.
IntMatrix brandt_matrix(const ClassSet& cs, std::uint64_t seed = 0);
// b_ij = #{a in I_j^-1 I_i : nrd(a) nrd(I_j) = ell nrd(I_i)} / (2 a_j).
IntMatrix brandt_matrix_by_norms(const ClassSet& cs);

MultiGraph brandt_graph(const ClassSet& cs, const IntMatrix& b);
// Classes grouped by isomorphism type of their right orders; edges leave the
// smallest class of each type.
MultiGraph type_graph(const ClassSet& cs, const IntMatrix& b);
bool orders_isomorphic(const QOrder& o1, const QOrder& o2);

struct IsomorphismResult {
    bool isomorphic = false;
    std::vector<std::size_t> mapping;  // vertex of G -> vertex of H
    std::string reason;
};

IsomorphismResult check_graph_isomorphism(const MultiGraph& g, const MultiGraph& h);

} // namespace qisog
