#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "qisog/brandt.hpp"
#include "qisog/graph.hpp"

using namespace qisog;

namespace {

MultiGraph sample()
{
    MultiGraph g;
    g.p = 11;
    g.ell = 2;
    g.vertices = {{.key = "b", .label = "B"}, {.key = "a", .label = "A", .f_i = 2, .f_j = 1, .basis = {{"1", "0", "0", "0"}}, .den = "2"}};
    g.edges = {{0, 1, 2, "HD"}, {1, 0, 3, ""}, {1, 1, 1, ""}, {0, 1, 1, "HD"}};
    return g;
}

} // namespace

TEST_CASE("canonical form sorts vertices and merges edges")
{
    MultiGraph g = sample();
    g.canonicalize();
    CHECK(g.vertices[0].key == "a");
    CHECK(g.multiplicity(1, 0) == 3);
    CHECK(g.multiplicity(0, 1) == 3);
    CHECK(g.multiplicity(0, 0) == 1);
    CHECK(g.out_degree(0) == 4);
    CHECK(g.in_degree(0) == 4);
    CHECK(g.is_strongly_connected());
}

TEST_CASE("JSON round trip")
{
    MultiGraph g = sample();
    g.canonicalize();
    nlohmann::json j = to_json(g);
    MultiGraph h = graph_from_json(j);
    CHECK(to_json(h) == j);
    CHECK(j["vertices"][0]["f_i"] == 2);
    CHECK(j["vertices"][0]["den"] == "2");
    CHECK(j["edges"][0]["src"] == 0);
}

TEST_CASE("DOT export")
{
    MultiGraph empty;
    std::string dot = to_dot(empty);
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("->") == std::string::npos);
    MultiGraph g = sample();
    g.canonicalize();
    dot = to_dot(g);
    CHECK(dot.find("HD") != std::string::npos);
    const std::string path = "test_graph_export.dot";
    export_graph(g, "dot", path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == dot);
    std::remove(path.c_str());
}

TEST_CASE("isomorphism witness on relabelled graphs")
{
    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 3 + rng() % 6;
        MultiGraph g;
        for (std::size_t v = 0; v < n; ++v) g.vertices.push_back({.key = "v" + std::to_string(v)});
        for (int e = 0; e < 3 * static_cast<int>(n); ++e)
            g.edges.push_back({rng() % n, rng() % n, 1 + static_cast<i64>(rng() % 2), ""});
        g.canonicalize();
        std::vector<std::size_t> perm(n);
        for (std::size_t v = 0; v < n; ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        MultiGraph h;
        for (std::size_t v = 0; v < n; ++v) h.vertices.push_back({.key = "w" + std::to_string(perm[v] + 10)});
        for (const auto& e : g.edges) h.edges.push_back({e.src, e.dst, e.multiplicity, ""});
        h.canonicalize();
        auto r = check_graph_isomorphism(g, h);
        REQUIRE(r.isomorphic);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) CHECK(g.multiplicity(a, b) == h.multiplicity(r.mapping[a], r.mapping[b]));
        // Adding one edge breaks isomorphism.
        h.edges.push_back({0, 0, 1, ""});
        h.canonicalize();
        CHECK_FALSE(check_graph_isomorphism(g, h).isomorphic);
    }
}
