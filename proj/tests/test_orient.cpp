#include "doctest.h"

#include <set>

#include "qisog/bass.hpp"
#include "qisog/error.hpp"
#include "qisog/orient.hpp"

using namespace qisog;

namespace {

struct Setup {
    QuatAlgebra alg;
    QOrder root;
};

Setup pizer_root(i64 p)
{
    QuatAlgebra alg = QuatAlgebra::pizer(p);
    return {alg, root_maximal_orders(alg).front()};
}

} // namespace

TEST_CASE("optimal suborders of the p = 7 root")
{
    auto [alg, root] = pizer_root(7);
    REQUIRE(alg.d_i() == -1);
    REQUIRE(alg.d_j() == -7);
    OrientedVertex v = make_vertex(root);
    CHECK(v.f_i() == 1);
    CHECK(v.f_j() == 1);
    CHECK(v.sub_i.d == -4);
    CHECK(v.sub_j.d == -7);
    // Z + Z i + Z j + Z k meets Q(i) in Z[i] and Q(j) in Z[j], of conductor 2.
    QOrder z(QLattice::from_generators({alg.one(), alg.i(), alg.j(), alg.k()}));
    CHECK(optimal_suborder(z, 'i').f == 1);
    CHECK(optimal_suborder(z, 'j').f == 2);
}

TEST_CASE("descending neighbours at ell = 3")
{
    auto [alg, root] = pizer_root(7);
    OrientedVertex v = make_vertex(root);
    for (const auto& id : ideals_of_norm_ell(root, 3)) {
        OrientedVertex w = make_vertex(id.right_order());
        CHECK(w.f_i() == 3);
        CHECK(w.f_j() == 3);
        CHECK(classify_edge(alg, v, w, 3).label() == "DD");
        CHECK(classify_edge(alg, w, v, 3).label() == "AA");
    }
}

TEST_CASE("walks are trees with consistent labels")
{
    for (i64 p : {7, 13, 17})
        for (i64 ell : {2, 3}) {
            auto [alg, root] = pizer_root(p);
            OrientedComponent c = walk_component(alg, root, ell, 3);
            CHECK(c.is_tree());
            CHECK(c.loops == 0);
            CHECK(c.multi_edges == 0);
            CHECK(c.arcs_symmetric());
            for (std::size_t v = 0; v < c.vertices.size(); ++v) {
                CHECK(c.neighbor_classes[v].size() == static_cast<std::size_t>(ell + 1));
                if (c.vertices[v].f_i() == 1 && c.vertices[v].f_j() == 1)
                    for (const auto& e : c.neighbor_classes[v]) {
                        CHECK(e.i != EdgeClass::Ascending);
                        CHECK(e.j != EdgeClass::Ascending);
                    }
                // A vertex with ell | f_u has exactly one ascending edge in field u.
                int asc_i = 0, asc_j = 0;
                for (const auto& e : c.neighbor_classes[v]) {
                    asc_i += e.i == EdgeClass::Ascending;
                    asc_j += e.j == EdgeClass::Ascending;
                }
                CHECK(asc_i == (c.vertices[v].f_i() % ell == 0 ? 1 : 0));
                CHECK(asc_j == (c.vertices[v].f_j() % ell == 0 ? 1 : 0));
            }
            // Reverse arcs carry the reversed classification.
            for (const auto& a : c.arcs)
                for (const auto& b : c.arcs)
                    if (a.src == b.dst && a.dst == b.src) {
                        auto flip = [](EdgeClass x) {
                            return x == EdgeClass::Ascending ? EdgeClass::Descending
                                   : x == EdgeClass::Descending ? EdgeClass::Ascending
                                                                : x;
                        };
                        CHECK(b.cls.i == flip(a.cls.i));
                        CHECK(b.cls.j == flip(a.cls.j));
                    }
            auto levels = std::set<int>(c.level.begin(), c.level.end());
            CHECK(levels.size() == 4);
        }
}

TEST_CASE("local roots and embedding numbers")
{
    for (i64 p : {7, 13, 17, 29, 41})
        for (i64 ell : {2, 3}) {
            auto [alg, root] = pizer_root(p);
            OrientedComponent c = walk_component(alg, root, ell, 3);
            Roots r = find_roots(c);
            CHECK(static_cast<i64>(r.local.size()) == local_embedding_number(bass_order(alg), ell));
            if (r.local.size() == 2) {
                bool adjacent = false;
                for (const auto& a : c.arcs) adjacent = adjacent || (a.src == r.local[0] && a.dst == r.local[1]);
                CHECK(adjacent);
            }
            for (auto v : r.global) CHECK(std::find(r.local.begin(), r.local.end(), v) != r.local.end());
        }
}

TEST_CASE("structure audit")
{
    auto [alg, root] = pizer_root(7);
    OrientedComponent c3 = walk_component(alg, root, 3, 2);
    AuditReport r = structure_audit(c3.vertices[0], c3.neighbor_classes[0], 3);
    CHECK(r.theorem_case == 2);
    CHECK(r.verdict() == "pass");
    for (const auto& row : r.rows) CHECK(row.observed == (row.category == "DD" ? 4 : 0));
    for (const auto& rep : audit_component(c3)) CHECK(rep.verdict() == "pass");

    OrientedComponent c2 = walk_component(alg, root, 2, 2);
    AuditReport g = structure_audit(c2.vertices[0], c2.neighbor_classes[0], 2);
    CHECK(g.theorem_case == 1);
    CHECK(g.unproven);
    std::map<std::string, std::pair<i64, i64>> rows;
    for (const auto& row : g.rows) rows[row.category] = {row.predicted, row.observed};
    CHECK(rows["HH"] == std::pair<i64, i64>{1, 0});
    CHECK(rows["HD"] == std::pair<i64, i64>{0, 1});
    CHECK(rows["DH"] == std::pair<i64, i64>{1, 2});
    CHECK(rows["DD"] == std::pair<i64, i64>{1, 0});
    CHECK(g.verdict() == "flagged");

    // Vertices with ell dividing both conductors: one simultaneous ascent.
    for (std::size_t v = 0; v < c3.vertices.size(); ++v) {
        if (c3.vertices[v].f_i() % 3 || c3.vertices[v].f_j() % 3) continue;
        auto counts = category_counts(c3.neighbor_classes[v]);
        CHECK(counts[0] == 1);
        CHECK(counts[8] == 3);
    }
}

TEST_CASE("classification is symmetric under swapping i and j")
{
    auto [alg, root] = pizer_root(13);
    QuatAlgebra sw = alg.swapped();
    OrientedComponent c = walk_component(alg, root, 2, 2);
    for (const auto& a : c.arcs) {
        OrientedVertex v = make_vertex(swap_order(c.vertices[a.src].order));
        OrientedVertex w = make_vertex(swap_order(c.vertices[a.dst].order));
        EdgePair e = classify_edge(sw, v, w, 2);
        CHECK(e.i == a.cls.j);
        CHECK(e.j == a.cls.i);
    }
}

TEST_CASE("vertices of one ell-component are connected by ell-power ideals")
{
    auto [alg, root] = pizer_root(13);
    OrientedComponent c = walk_component(alg, root, 3, 2);
    for (std::size_t v = 1; v < c.vertices.size(); ++v) {
        QIdeal id = connecting_ideal(c.vertices[0].order, c.vertices[v].order);
        mpz_class n = id.norm().get_num();
        CHECK(id.norm().get_den() == 1);
        while (n % 3 == 0) n /= 3;
        CHECK(n == 1);
    }
}

TEST_CASE("graph export")
{
    auto [alg, root] = pizer_root(7);
    OrientedComponent c = walk_component(alg, root, 3, 1);
    MultiGraph g = c.to_graph();
    CHECK(g.size() == 5);
    CHECK(g.edges.size() == 8);
    nlohmann::json j = to_json(g);
    CHECK(to_json(graph_from_json(j)) == j);
    CHECK(j["d_i"] == -1);
    for (std::size_t v = 1; v < g.size(); ++v) CHECK(g.vertices[v - 1].key < g.vertices[v].key);
    CHECK(to_dot(g).find("DD") != std::string::npos);
    CHECK(to_dot(g).find("(3,3)") != std::string::npos);
}

TEST_CASE("walker preconditions")
{
    auto [alg, root] = pizer_root(7);
    CHECK_THROWS_AS(walk_component(alg, root, 7, 1), PreconditionError);
    CHECK_THROWS_AS(walk_component(alg, root, 2, 7), PreconditionError);
    CHECK_THROWS_AS(walk_component(alg, root, 3, 3, 0, 6, 10), CapExceeded);
    QOrder z = order_closure({alg.i(), alg.j()});
    CHECK_THROWS_AS(walk_component(alg, z, 2, 1), PreconditionError);
}
