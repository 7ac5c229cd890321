#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qisog/graph.hpp"
#include "qisog/ideals.hpp"

namespace qisog {

enum class EdgeClass { Ascending, Horizontal, Descending };

char to_char(EdgeClass c);

// Per-field classification of an edge, field i first.
struct EdgePair {
    EdgeClass i = EdgeClass::Horizontal;
    EdgeClass j = EdgeClass::Horizontal;
    std::string label() const;
    bool operator==(const EdgePair&) const = default;
};

struct OrientedVertex {
    QOrder order;
    QuadOrderDesc sub_i;  // order meet Q(i)
    QuadOrderDesc sub_j;  // order meet Q(j)
    i64 f_i() const { return sub_i.f; }
    i64 f_j() const { return sub_j.f; }
};

// The quadratic order O meet Q(u), u = 'i' or 'j'.
QuadOrderDesc optimal_suborder(const QOrder& o, char u);
OrientedVertex make_vertex(const QOrder& o);

// Classification of an ell-edge v -> w by conductor ratios, cross-checked by
// the membership of theta/ell and theta, theta = f_u(v) * omega_u.
EdgePair classify_edge(const QuatAlgebra& alg, const OrientedVertex& v, const OrientedVertex& w, i64 ell);

// Image of an order of (a, b | Q) in (b, a | Q) under i <-> j, k -> -k.
QOrder swap_order(const QOrder& o);

inline constexpr int kDefaultDepthCap = 6;
inline constexpr std::size_t kDefaultStateCap = 100'000;

struct OrientedArc {
    std::size_t src = 0;
    std::size_t dst = 0;
    EdgePair cls;
};

struct OrientedComponent {
    QuatAlgebra alg;
    i64 ell = 0;
    int depth = 0;
    std::vector<OrientedVertex> vertices;  // breadth-first discovery order
    std::vector<int> level;
    std::vector<OrientedArc> arcs;         // arcs between walked vertices
    // All ell + 1 neighbour classifications of each vertex, leaves included.
    std::vector<std::vector<EdgePair>> neighbor_classes;
    std::size_t loops = 0;
    std::size_t multi_edges = 0;

    std::size_t undirected_edge_count() const;
    bool arcs_symmetric() const;
    bool is_tree() const;
    MultiGraph to_graph() const;
};

OrientedComponent walk_component(const QuatAlgebra& alg, const QOrder& start, i64 ell, int depth,
                                 std::uint64_t seed = 0, int depth_cap = kDefaultDepthCap,
                                 std::size_t state_cap = kDefaultStateCap);

struct Roots {
    std::vector<std::size_t> local;
    std::vector<std::size_t> global;
};

Roots find_roots(const OrientedComponent& c);

struct AuditRow {
    std::string category;  // "HH", or "AH+HA" when the buckets are pooled
    i64 predicted = 0;
    i64 observed = 0;
};

struct AuditReport {
    int theorem_case = 0;  // 1..4
    std::vector<AuditRow> rows;
    bool match = false;
    // ell = 2 with a ramified ell-fundamental field: a configuration whose
    // proof excludes ell = 2.
    bool unproven = false;
    std::string verdict() const;  // "pass", "flagged" or "fail"
};

// Category counts of a list of edge classifications, in the order
// AA AH AD HA HH HD DA DH DD.
std::vector<i64> category_counts(const std::vector<EdgePair>& classes);
extern const char* const kCategories[9];

AuditReport structure_audit(const OrientedVertex& v, const std::vector<EdgePair>& neighbors, i64 ell);
std::vector<AuditReport> audit_component(const OrientedComponent& c);

} // namespace qisog
