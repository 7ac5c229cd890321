#include "qisog/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "qisog/error.hpp"

namespace qisog {

void MultiGraph::canonicalize()
{
    std::vector<std::size_t> order(vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vertices[a].key < vertices[b].key; });
    std::vector<std::size_t> where(vertices.size());
    std::vector<GraphVertex> vs;
    vs.reserve(vertices.size());
    for (std::size_t t = 0; t < order.size(); ++t) {
        where[order[t]] = t;
        vs.push_back(std::move(vertices[order[t]]));
    }
    vertices = std::move(vs);
    std::map<std::tuple<std::size_t, std::size_t, std::string>, i64> merged;
    for (const auto& e : edges) merged[{where[e.src], where[e.dst], e.cls}] += e.multiplicity;
    edges.clear();
    for (const auto& [k, m] : merged)
        if (m != 0) edges.push_back({std::get<0>(k), std::get<1>(k), m, std::get<2>(k)});
}

std::optional<std::size_t> MultiGraph::find(const std::string& key) const
{
    for (std::size_t t = 0; t < vertices.size(); ++t)
        if (vertices[t].key == key) return t;
    return std::nullopt;
}

i64 MultiGraph::multiplicity(std::size_t src, std::size_t dst) const
{
    i64 m = 0;
    for (const auto& e : edges)
        if (e.src == src && e.dst == dst) m += e.multiplicity;
    return m;
}

i64 MultiGraph::out_degree(std::size_t v) const
{
    i64 m = 0;
    for (const auto& e : edges)
        if (e.src == v) m += e.multiplicity;
    return m;
}

i64 MultiGraph::in_degree(std::size_t v) const
{
    i64 m = 0;
    for (const auto& e : edges)
        if (e.dst == v) m += e.multiplicity;
    return m;
}

i64 MultiGraph::total_edges() const
{
    i64 m = 0;
    for (const auto& e : edges) m += e.multiplicity;
    return m;
}

std::vector<std::vector<i64>> MultiGraph::adjacency() const
{
    std::vector<std::vector<i64>> a(size(), std::vector<i64>(size(), 0));
    for (const auto& e : edges) a[e.src][e.dst] += e.multiplicity;
    return a;
}

namespace {

std::vector<bool> reach(const std::vector<std::vector<i64>>& a, bool transpose)
{
    std::vector<bool> seen(a.size(), false);
    if (a.empty()) return seen;
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < a.size(); ++w) {
            i64 m = transpose ? a[w][v] : a[v][w];
            if (m > 0 && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

bool all_true(const std::vector<bool>& v)
{
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

} // namespace

bool MultiGraph::is_strongly_connected() const
{
    auto a = adjacency();
    return all_true(reach(a, false)) && all_true(reach(a, true));
}

bool MultiGraph::is_weakly_connected() const
{
    auto a = adjacency();
    for (std::size_t v = 0; v < a.size(); ++v)
        for (std::size_t w = 0; w < a.size(); ++w) a[v][w] += a[w][v];
    return all_true(reach(a, false));
}

nlohmann::json to_json(const MultiGraph& g)
{
    nlohmann::json j;
    j["p"] = g.p;
    j["ell"] = g.ell;
    j["d_i"] = g.d_i;
    j["d_j"] = g.d_j;
    j["vertices"] = nlohmann::json::array();
    for (std::size_t t = 0; t < g.vertices.size(); ++t) {
        const auto& v = g.vertices[t];
        nlohmann::json jv{{"id", t}, {"key", v.key}, {"label", v.label}};
        if (v.f_i) jv["f_i"] = v.f_i;
        if (v.f_j) jv["f_j"] = v.f_j;
        if (!v.basis.empty()) {
            jv["basis"] = v.basis;
            jv["den"] = v.den;
        }
        j["vertices"].push_back(std::move(jv));
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) {
        nlohmann::json je{{"src", e.src}, {"dst", e.dst}, {"multiplicity", e.multiplicity}};
        if (!e.cls.empty()) je["class"] = e.cls;
        j["edges"].push_back(std::move(je));
    }
    return j;
}

MultiGraph graph_from_json(const nlohmann::json& j)
{
    MultiGraph g;
    g.p = j.at("p").get<i64>();
    g.ell = j.at("ell").get<i64>();
    g.d_i = j.value("d_i", i64(0));
    g.d_j = j.value("d_j", i64(0));
    const auto& vs = j.at("vertices");
    g.vertices.resize(vs.size());
    for (const auto& jv : vs) {
        std::size_t id = jv.at("id").get<std::size_t>();
        require(id < vs.size(), "graph_from_json: vertex id out of range");
        GraphVertex& v = g.vertices[id];
        v.key = jv.at("key").get<std::string>();
        v.label = jv.value("label", std::string());
        v.f_i = jv.value("f_i", i64(0));
        v.f_j = jv.value("f_j", i64(0));
        if (jv.contains("basis")) {
            v.basis = jv.at("basis").get<std::vector<std::vector<std::string>>>();
            v.den = jv.at("den").get<std::string>();
        }
    }
    for (const auto& je : j.at("edges")) {
        GraphEdge e;
        e.src = je.at("src").get<std::size_t>();
        e.dst = je.at("dst").get<std::size_t>();
        require(e.src < g.size() && e.dst < g.size(), "graph_from_json: edge endpoint out of range");
        e.multiplicity = je.value("multiplicity", i64(1));
        e.cls = je.value("class", std::string());
        g.edges.push_back(std::move(e));
    }
    g.canonicalize();
    return g;
}

std::string to_dot(const MultiGraph& g)
{
    std::ostringstream os;
    os << "digraph G {\n";
    for (std::size_t t = 0; t < g.vertices.size(); ++t)
        os << "  v" << t << " [label=\"" << g.vertices[t].label << "\"];\n";
    for (const auto& e : g.edges) {
        os << "  v" << e.src << " -> v" << e.dst;
        std::string label = e.cls;
        if (e.multiplicity != 1) label += (label.empty() ? "" : " x") + std::to_string(e.multiplicity);
        if (!label.empty()) os << " [label=\"" << label << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

void export_graph(const MultiGraph& g, const std::string& format, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (format == "dot") out << to_dot(g);
    else if (format == "json") out << to_json(g).dump(2) << '\n';
    else throw PreconditionError("export_graph: unknown format " + format);
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace qisog
