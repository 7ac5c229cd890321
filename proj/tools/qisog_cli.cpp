// qisog: command-line front end.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qisog/bass.hpp"
#include "qisog/brandt.hpp"
#include "qisog/ecgraph.hpp"
#include "qisog/error.hpp"
#include "qisog/orient.hpp"
#include "qisog/parallel.hpp"

using nlohmann::json;
using namespace qisog;

namespace {

struct Config {
    i64 p = 0;
    i64 ell = 0;
    int depth = 4;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::optional<std::string> json_path;  // "" means standard output
    std::string dot_path;
    std::string out_path;
    std::size_t state_cap = kDefaultStateCap;
    std::size_t superorder_cap = kDefaultSuperorderCap;
};

json lattice_json(const QLattice& l)
{
    json basis = json::array();
    for (const auto& row : l.basis()) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.get_str());
        basis.push_back(r);
    }
    return {{"den", l.den().get_str()}, {"basis", basis}};
}

json order_json(const QOrder& o)
{
    json j = lattice_json(o.lattice());
    j["discrd"] = reduced_discriminant(o).get_str();
    j["maximal"] = o.is_maximal();
    return j;
}

void check_p(i64 p)
{
    require(p > 3 && is_prime(p), "--p must be a prime greater than 3");
}

void check_ell(i64 p, i64 ell)
{
    require(is_prime(ell) && ell != p, "--ell must be a prime different from p");
}

// Result of one subcommand: human-readable text and a JSON document.
struct Output {
    std::string text;
    json doc;
};

Output run_algebra(const Config& c)
{
    check_p(c.p);
    QuatAlgebra alg = QuatAlgebra::pizer(c.p);
    std::ostringstream os;
    os << "B = (" << alg.d_i() << ", " << alg.d_j() << " | Q), p = " << c.p << ", q = " << alg.q() << "\n";
    json roots = json::array();
    for (const auto& o : root_maximal_orders(alg)) {
        os << "root order " << o.lattice().to_string() << "  discrd " << reduced_discriminant(o) << "\n";
        roots.push_back(order_json(o));
    }
    json doc = {{"p", c.p}, {"q", alg.q()}, {"a", alg.d_i()}, {"b", alg.d_j()}, {"root_orders", roots}};
    QOrder b = bass_order(alg);
    os << "Bass order " << b.lattice().to_string() << "  discrd " << reduced_discriminant(b)
       << (b.is_maximal() ? " (maximal)" : "") << "  e = " << global_embedding_number(b) << "\n";
    doc["bass_order"] = order_json(b);
    doc["bass_order"]["e"] = global_embedding_number(b);
    return {os.str(), doc};
}

std::string matrix_text(const IntMatrix& m)
{
    std::ostringstream os;
    for (const auto& row : m) {
        for (std::size_t t = 0; t < row.size(); ++t) os << (t ? " " : "  ") << row[t];
        os << "\n";
    }
    return os.str();
}

Output run_brandt(const Config& c)
{
    check_p(c.p);
    check_ell(c.p, c.ell);
    QuatAlgebra alg = QuatAlgebra::pizer(c.p);
    QOrder base = root_maximal_orders(alg).front();
    ClassSet cs = enumerate_classes(base, c.ell, c.seed);
    IntMatrix b = brandt_matrix(cs, c.seed);
    std::ostringstream os;
    os << "class number " << cs.size() << " (p = " << c.p << ", ell = " << c.ell << ")\n";
    json classes = json::array();
    for (std::size_t t = 0; t < cs.size(); ++t) {
        const QIdeal& id = cs.representatives[t];
        os << "I" << t << ": nrd " << id.norm() << ", |O_R^x|/2 = " << cs.unit_sizes[t] << "\n";
        json e = lattice_json(id.lattice());
        e["nrd"] = id.norm().get_str();
        e["unit_size"] = cs.unit_sizes[t];
        classes.push_back(e);
    }
    os << "Brandt matrix:\n" << matrix_text(b);
    return {os.str(), {{"p", c.p}, {"ell", c.ell}, {"class_number", cs.size()}, {"classes", classes}, {"brandt_matrix", b}}};
}

Output run_ssgraph(const Config& c)
{
    check_p(c.p);
    check_ell(c.p, c.ell);
    MultiGraph g = build_isogeny_graph(c.p, c.ell, c.seed);
    MultiGraph r = reduce_graph(g);
    if (!c.dot_path.empty()) export_graph(g, "dot", c.dot_path);
    std::ostringstream os;
    os << "G(" << c.p << ", " << c.ell << "): " << g.size() << " vertices, " << g.total_edges() << " edges, "
       << (g.is_strongly_connected() ? "connected" : "not connected") << "\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
        os << "  " << g.vertices[v].label << " ->";
        for (const auto& e : g.edges)
            if (e.src == v) os << " " << g.vertices[e.dst].label << (e.multiplicity > 1 ? "^" + std::to_string(e.multiplicity) : "");
        os << "\n";
    }
    os << "reduced graph: " << r.size() << " vertices, " << r.total_edges() << " edges\n";
    return {os.str(), {{"graph", to_json(g)}, {"reduced", to_json(r)}, {"connected", g.is_strongly_connected()}}};
}

Output run_isocheck(const Config& c)
{
    check_p(c.p);
    check_ell(c.p, c.ell);
    MultiGraph g = build_isogeny_graph(c.p, c.ell, c.seed);
    QuatAlgebra alg = QuatAlgebra::pizer(c.p);
    ClassSet cs = enumerate_classes(root_maximal_orders(alg).front(), c.ell, c.seed);
    IntMatrix b = brandt_matrix(cs, c.seed);
    MultiGraph br = brandt_graph(cs, b);
    IsomorphismResult iso = check_graph_isomorphism(g, br);
    IsomorphismResult tiso = check_graph_isomorphism(reduce_graph(g), type_graph(cs, b));
    std::ostringstream os;
    if (iso.isomorphic) {
        os << "isomorphic, " << g.size() << " vertices\n";
        for (std::size_t v = 0; v < g.size(); ++v)
            os << "  " << g.vertices[v].label << " -> " << br.vertices[iso.mapping[v]].key << "\n";
    } else {
        os << "not isomorphic: " << iso.reason << "\n";
    }
    os << "reduced graph vs type graph: " << (tiso.isomorphic ? "isomorphic" : "not isomorphic: " + tiso.reason) << "\n";
    json mapping = json::object();
    if (iso.isomorphic)
        for (std::size_t v = 0; v < g.size(); ++v) mapping[g.vertices[v].label] = br.vertices[iso.mapping[v]].key;
    json doc = {{"p", c.p},
                {"ell", c.ell},
                {"vertices", g.size()},
                {"class_number", cs.size()},
                {"isomorphic", iso.isomorphic},
                {"mapping", mapping},
                {"reduced_isomorphic", tiso.isomorphic}};
    if (!iso.isomorphic) doc["reason"] = iso.reason;
    return {os.str(), doc};
}

Output run_oriented(const Config& c)
{
    check_p(c.p);
    check_ell(c.p, c.ell);
    require(c.depth >= 0, "--depth must be nonnegative");
    QuatAlgebra alg = QuatAlgebra::pizer(c.p);
    QOrder start = root_maximal_orders(alg).front();
    OrientedComponent comp = walk_component(alg, start, c.ell, c.depth, c.seed, kDefaultDepthCap, c.state_cap);
    Roots roots = find_roots(comp);
    auto reports = audit_component(comp);
    MultiGraph g = comp.to_graph();
    if (!c.dot_path.empty()) export_graph(g, "dot", c.dot_path);

    std::size_t fails = 0, flagged = 0;
    for (const auto& r : reports) {
        if (r.verdict() == "fail") ++fails;
        if (r.verdict() == "flagged") ++flagged;
    }
    auto count = [](std::size_t n) { return std::to_string(n) + (n == 1 ? " vertex" : " vertices"); };
    std::string audit = fails ? "fail (" + count(fails) + ")" : flagged ? "flagged (" + count(flagged) + ")" : "pass";
    std::ostringstream os;
    os << "component of depth " << c.depth << " at ell = " << c.ell << ": " << comp.vertices.size() << " vertices, "
       << comp.undirected_edge_count() << " edges, " << (comp.is_tree() ? "tree" : "not a tree") << "\n";
    const std::size_t nl = roots.local.size(), ng = roots.global.size();
    os << nl << " local root" << (nl == 1 ? "" : "s");
    if (ng == nl && ng > 0) os << (ng == 1 ? " (global)" : " (all global)");
    else os << " (" << ng << " global)";
    os << "; audit: " << audit << "\n";
    for (std::size_t v = 0; v < comp.vertices.size(); ++v) {
        if (comp.level[v] > 1 && reports[v].verdict() == "pass") continue;
        const auto& x = comp.vertices[v];
        os << "  v" << v << " (" << x.f_i() << "," << x.f_j() << ") level " << comp.level[v] << " case "
           << reports[v].theorem_case << " " << reports[v].verdict() << ":";
        for (const auto& row : reports[v].rows)
            if (row.predicted || row.observed) os << " " << row.category << " " << row.predicted << "/" << row.observed;
        os << "\n";
    }

    json doc = to_json(g);
    json jr = {{"local", json::array()}, {"global", json::array()}};
    for (auto v : roots.local) jr["local"].push_back(comp.vertices[v].order.lattice().key());
    for (auto v : roots.global) jr["global"].push_back(comp.vertices[v].order.lattice().key());
    doc["roots"] = jr;
    json aud = json::array();
    for (std::size_t v = 0; v < comp.vertices.size(); ++v) {
        json rows = json::object();
        for (const auto& row : reports[v].rows) rows[row.category] = {row.predicted, row.observed};
        aud.push_back({{"key", comp.vertices[v].order.lattice().key()},
                       {"case", reports[v].theorem_case},
                       {"verdict", reports[v].verdict()},
                       {"predicted_observed", rows}});
    }
    doc["audit"] = aud;
    doc["tree"] = comp.is_tree();
    return {os.str(), doc};
}

Output run_embed(const Config& c)
{
    check_p(c.p);
    QuatAlgebra alg = QuatAlgebra::pizer(c.p);
    QOrder o = bass_order(alg);
    const mpz_class d = reduced_discriminant(o);
    std::ostringstream os;
    os << "Bass order " << o.lattice().to_string() << "\ndiscrd = " << d << "\n";
    json primes = json::array();
    for (i64 ell : prime_divisors(d)) {
        int f = eichler_symbol(o, ell, EichlerMethod::Formula);
        int r = eichler_symbol(o, ell, EichlerMethod::Radical);
        i64 e = local_embedding_number(o, ell);
        os << "  ell = " << ell << ": v = " << valuation(d, ell) << ", symbol " << f << " (radical " << r << "), e_ell = " << e
           << "\n";
        primes.push_back({{"ell", ell}, {"valuation", valuation(d, ell)}, {"symbol", f}, {"symbol_radical", r}, {"e_ell", e}});
    }
    const i64 e = global_embedding_number(o);
    auto sup = enumerate_maximal_superorders(o, c.superorder_cap);
    os << "e = " << e << "; superorder search finds " << sup.size() << (static_cast<i64>(sup.size()) == e ? " (agree)" : " (DISAGREE)")
       << "\n";
    json js = json::array();
    for (const auto& s : sup) {
        os << "  " << s.lattice().to_string() << "\n";
        js.push_back(order_json(s));
    }
    return {os.str(),
            {{"p", c.p}, {"bass_order", order_json(o)}, {"primes", primes}, {"e", e}, {"superorders", js}}};
}

void emit(const Output& out, const Config& c)
{
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!c.out_path.empty()) {
        file.open(c.out_path);
        if (!file) throw PreconditionError("cannot open " + c.out_path);
        os = &file;
    }
    if (!c.json_path) {
        *os << out.text;
        return;
    }
    if (c.json_path->empty() || *c.json_path == "-") {
        *os << out.doc.dump(2) << "\n";
        return;
    }
    std::ofstream jf(*c.json_path);
    if (!jf) throw PreconditionError("cannot open " + *c.json_path);
    jf << out.doc.dump(2) << "\n";
    *os << out.text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quaternion orders, supersingular isogeny graphs and double orientations"};
    app.require_subcommand(1);
    Config c;
    std::string json_arg;
    app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker cap (0 = all cores)");
    app.add_option("--out", c.out_path, "Write output here instead of standard output");

    auto add_json = [&](CLI::App* s) {
        s->add_option("--json", json_arg, "Emit JSON (to FILE if given)")->expected(0, 1);
    };
    auto* algebra = app.add_subcommand("algebra", "Pizer algebra, root maximal orders, Bass order");
    auto* brandt = app.add_subcommand("brandt", "Left ideal classes and the Brandt matrix");
    auto* ssgraph = app.add_subcommand("ssgraph", "Supersingular ell-isogeny graph over F_p^2");
    auto* isocheck = app.add_subcommand("isocheck", "Isogeny graph vs Brandt graph isomorphism");
    auto* oriented = app.add_subcommand("oriented", "Double-oriented component, roots and edge audit");
    auto* embed = app.add_subcommand("embed", "Eichler symbols and embedding numbers of the Bass order");
    for (auto* s : {algebra, brandt, ssgraph, isocheck, oriented, embed}) {
        s->add_option("--p", c.p, "Prime p > 3")->required();
        add_json(s);
    }
    for (auto* s : {brandt, ssgraph, isocheck, oriented}) s->add_option("--ell", c.ell, "Prime ell != p")->required();
    for (auto* s : {ssgraph, oriented}) s->add_option("--dot", c.dot_path, "Write the graph as DOT");
    oriented->add_option("--depth", c.depth, "Walk depth")->capture_default_str();
    oriented->add_option("--state-cap", c.state_cap, "Vertex cap")->capture_default_str();
    embed->add_option("--cap", c.superorder_cap, "Candidate-order cap per prime")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    for (auto* s : app.get_subcommands())
        if (s->count("--json")) c.json_path = json_arg;
    set_max_threads(c.threads);

    try {
        Output out;
        if (algebra->parsed()) out = run_algebra(c);
        else if (brandt->parsed()) out = run_brandt(c);
        else if (ssgraph->parsed()) out = run_ssgraph(c);
        else if (isocheck->parsed()) out = run_isocheck(c);
        else if (oriented->parsed()) out = run_oriented(c);
        else out = run_embed(c);
        emit(out, c);
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
