#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qisog/numth.hpp"

namespace qisog {

struct GraphVertex {
    std::string key;    // canonical identity, also the sort key
    std::string label;
    i64 f_i = 0;        // conductors; 0 when the vertex is not oriented
    i64 f_j = 0;
    std::vector<std::vector<std::string>> basis;  // order basis rows, if any
    std::string den;
};

struct GraphEdge {
    std::size_t src = 0;
    std::size_t dst = 0;
    i64 multiplicity = 1;
    std::string cls;    // edge classification, empty when unlabelled
};

// Directed multigraph.  After canonicalize() vertices are sorted by key and
// edges by (src, dst, cls) with equal triples merged.
struct MultiGraph {
    i64 p = 0;
    i64 ell = 0;
    i64 d_i = 0;
    i64 d_j = 0;
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;

    std::size_t size() const { return vertices.size(); }
    void canonicalize();
    std::optional<std::size_t> find(const std::string& key) const;
    i64 multiplicity(std::size_t src, std::size_t dst) const;
    i64 out_degree(std::size_t v) const;
    i64 in_degree(std::size_t v) const;
    i64 total_edges() const;
    std::vector<std::vector<i64>> adjacency() const;
    bool is_strongly_connected() const;
    bool is_weakly_connected() const;
};

nlohmann::json to_json(const MultiGraph& g);
MultiGraph graph_from_json(const nlohmann::json& j);
std::string to_dot(const MultiGraph& g);
void export_graph(const MultiGraph& g, const std::string& format, const std::string& path);

} // namespace qisog
