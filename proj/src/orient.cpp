#include "qisog/orient.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qisog/error.hpp"
#include "qisog/parallel.hpp"

namespace qisog {

const char* const kCategories[9] = {"AA", "AH", "AD", "HA", "HH", "HD", "DA", "DH", "DD"};

char to_char(EdgeClass c)
{
    switch (c) {
    case EdgeClass::Ascending: return 'A';
    case EdgeClass::Horizontal: return 'H';
    case EdgeClass::Descending: return 'D';
    }
    return '?';
}

std::string EdgePair::label() const
{
    return std::string{to_char(i), to_char(j)};
}

QuadOrderDesc optimal_suborder(const QOrder& o, char u)
{
    require(u == 'i' || u == 'j', "optimal_suborder: tag must be i or j");
    const QLattice& l = o.lattice();
    // Coordinates that must vanish on Q + Q u.
    const int kill = u == 'i' ? 2 : 1;
    ZMat a(4, ZRow(2));
    for (int r = 0; r < 4; ++r) {
        a[r][0] = l.basis()[r][kill];
        a[r][1] = l.basis()[r][3];
    }
    ZMat ker = integer_kernel(a);
    ensure(ker.size() == 2, "optimal_suborder: intersection is not of rank 2");
    std::array<QuatElement, 2> e;
    for (int t = 0; t < 2; ++t) {
        QuatElement x(l.form(), 0, 0, 0, 0);
        for (int r = 0; r < 4; ++r) x = x + mpq_class(ker[t][r]) * l.element(r);
        e[t] = x;
    }
    mpq_class g00 = (e[0] * e[0]).trd(), g01 = (e[0] * e[1]).trd(), g11 = (e[1] * e[1]).trd();
    mpq_class d = g00 * g11 - g01 * g01;
    ensure(d.get_den() == 1 && d.get_num().fits_slong_p(), "optimal_suborder: bad discriminant");
    return quad_order_info(d.get_num().get_si());
}

OrientedVertex make_vertex(const QOrder& o)
{
    return OrientedVertex{o, optimal_suborder(o, 'i'), optimal_suborder(o, 'j')};
}

namespace {

EdgeClass by_ratio(i64 fv, i64 fw, i64 ell)
{
    if (fw * ell == fv) return EdgeClass::Ascending;
    if (fw == fv) return EdgeClass::Horizontal;
    if (fw == fv * ell) return EdgeClass::Descending;
    throw InternalError("classify_edge: conductor ratio " + std::to_string(fw) + "/" + std::to_string(fv) +
                        " is not ell^{-1, 0, 1}");
}

EdgeClass by_membership(const QuatAlgebra& alg, char u, i64 fv, const QOrder& w, i64 ell)
{
    QuatElement theta = mpq_class(fv) * quadratic_generator(alg, u);
    if (w.contains(theta / mpq_class(ell))) return EdgeClass::Ascending;
    if (w.contains(theta)) return EdgeClass::Horizontal;
    ensure(w.contains(mpq_class(ell) * theta), "classify_edge: ell * theta not in the neighbour");
    return EdgeClass::Descending;
}

} // namespace

EdgePair classify_edge(const QuatAlgebra& alg, const OrientedVertex& v, const OrientedVertex& w, i64 ell)
{
    EdgePair out{by_ratio(v.f_i(), w.f_i(), ell), by_ratio(v.f_j(), w.f_j(), ell)};
    ensure(out.i == by_membership(alg, 'i', v.f_i(), w.order, ell) &&
               out.j == by_membership(alg, 'j', v.f_j(), w.order, ell),
           "classify_edge: conductor and membership classifications disagree");
    return out;
}

QOrder swap_order(const QOrder& o)
{
    const Form& f = o.form();
    Form g{f.b, f.a, f.p};
    std::vector<QuatElement> gens;
    for (const auto& x : o.lattice().elements()) gens.emplace_back(g, x[0], x[2], x[1], -x[3]);
    return QOrder(QLattice::from_generators(gens));
}

std::size_t OrientedComponent::undirected_edge_count() const
{
    std::set<std::pair<std::size_t, std::size_t>> s;
    for (const auto& a : arcs)
        if (a.src != a.dst) s.emplace(std::min(a.src, a.dst), std::max(a.src, a.dst));
    return s.size();
}

bool OrientedComponent::arcs_symmetric() const
{
    std::multiset<std::pair<std::size_t, std::size_t>> fwd, rev;
    for (const auto& a : arcs) {
        fwd.emplace(a.src, a.dst);
        rev.emplace(a.dst, a.src);
    }
    return fwd == rev;
}

bool OrientedComponent::is_tree() const
{
    return loops == 0 && undirected_edge_count() + 1 == vertices.size();
}

MultiGraph OrientedComponent::to_graph() const
{
    MultiGraph g;
    g.p = alg.p();
    g.ell = ell;
    g.d_i = alg.d_i();
    g.d_j = alg.d_j();
    for (const auto& v : vertices) {
        GraphVertex gv;
        gv.key = v.order.lattice().key();
        gv.label = "(" + std::to_string(v.f_i()) + "," + std::to_string(v.f_j()) + ")";
        gv.f_i = v.f_i();
        gv.f_j = v.f_j();
        for (const auto& row : v.order.lattice().basis()) {
            std::vector<std::string> r;
            for (const auto& x : row) r.push_back(x.get_str());
            gv.basis.push_back(std::move(r));
        }
        gv.den = v.order.lattice().den().get_str();
        g.vertices.push_back(std::move(gv));
    }
    for (const auto& a : arcs) g.edges.push_back(GraphEdge{a.src, a.dst, 1, a.cls.label()});
    g.canonicalize();
    return g;
}

OrientedComponent walk_component(const QuatAlgebra& alg, const QOrder& start, i64 ell, int depth,
                                 std::uint64_t seed, int depth_cap, std::size_t state_cap)
{
    const i64 p = alg.p();
    require(is_prime(ell) && ell != p, "walk_component: ell must be a prime different from p");
    require(depth >= 0 && depth <= depth_cap,
            "walk_component: depth must lie in [0, " + std::to_string(depth_cap) + "]");
    require(start.form() == alg.form(), "walk_component: start order is in a different algebra");
    require(start.is_maximal(), "walk_component: start order must be maximal");
    for (i64 d : {alg.d_i(), alg.d_j()})
        require(kronecker(fundamental_discriminant(d), p) != 1,
                "walk_component: p splits in Q(sqrt(" + std::to_string(d) + "))");

    OrientedComponent c{alg, ell, depth, {}, {}, {}, {}, 0, 0};
    std::map<QLattice, std::size_t> registry;
    auto add = [&](OrientedVertex v, int lvl) {
        require(v.f_i() % p != 0 && v.f_j() % p != 0, "walk_component: p divides a conductor");
        if (c.vertices.size() >= state_cap)
            throw CapExceeded("walk_component: more than " + std::to_string(state_cap) + " vertices");
        registry.emplace(v.order.lattice(), c.vertices.size());
        c.vertices.push_back(std::move(v));
        c.level.push_back(lvl);
        c.neighbor_classes.emplace_back();
        return c.vertices.size() - 1;
    };
    add(make_vertex(start), 0);

    std::vector<std::size_t> frontier{0};
    for (int lvl = 0; lvl <= depth && !frontier.empty(); ++lvl) {
        struct Found {
            std::vector<OrientedVertex> nb;
            std::vector<EdgePair> cls;
        };
        std::vector<Found> found(frontier.size());
        parallel_for(frontier.size(), [&](std::size_t t) {
            const OrientedVertex& v = c.vertices[frontier[t]];
            for (const auto& ideal : ideals_of_norm_ell(v.order, ell, seed)) {
                OrientedVertex w = make_vertex(ideal.right_order());
                found[t].cls.push_back(classify_edge(alg, v, w, ell));
                found[t].nb.push_back(std::move(w));
            }
        });
        std::vector<std::size_t> next;
        for (std::size_t t = 0; t < frontier.size(); ++t) {
            const std::size_t v = frontier[t];
            std::set<QLattice> seen;
            for (std::size_t s = 0; s < found[t].nb.size(); ++s) {
                OrientedVertex& w = found[t].nb[s];
                const EdgePair cls = found[t].cls[s];
                c.neighbor_classes[v].push_back(cls);
                if (w.order == c.vertices[v].order) ++c.loops;
                if (!seen.insert(w.order.lattice()).second) ++c.multi_edges;
                auto it = registry.find(w.order.lattice());
                if (it != registry.end()) {
                    c.arcs.push_back({v, it->second, cls});
                } else if (lvl < depth) {
                    std::size_t idx = add(std::move(w), lvl + 1);
                    c.arcs.push_back({v, idx, cls});
                    next.push_back(idx);
                }
            }
        }
        frontier = std::move(next);
    }
    return c;
}

Roots find_roots(const OrientedComponent& c)
{
    Roots r;
    for (std::size_t v = 0; v < c.vertices.size(); ++v) {
        const auto& x = c.vertices[v];
        if ((x.f_i() * x.f_j()) % c.ell != 0) r.local.push_back(v);
        if (x.f_i() == 1 && x.f_j() == 1) r.global.push_back(v);
    }
    return r;
}

std::vector<i64> category_counts(const std::vector<EdgePair>& classes)
{
    std::vector<i64> out(9, 0);
    for (const auto& e : classes) out[3 * static_cast<int>(e.i) + static_cast<int>(e.j)]++;
    return out;
}

std::string AuditReport::verdict() const
{
    if (match) return "pass";
    return unproven ? "flagged" : "fail";
}

AuditReport structure_audit(const OrientedVertex& v, const std::vector<EdgePair>& neighbors, i64 ell)
{
    enum { AA, AH, AD, HA, HH, HD, DA, DH, DD };
    const bool div_i = v.f_i() % ell == 0, div_j = v.f_j() % ell == 0;
    const int chi_i = kronecker(v.sub_i.d_K, ell), chi_j = kronecker(v.sub_j.d_K, ell);
    const std::vector<i64> obs = category_counts(neighbors);
    std::vector<i64> pred(9, 0);

    AuditReport rep;
    if (!div_i && !div_j && chi_i != -1 && chi_j != -1) {
        rep.theorem_case = 1;
        pred[HH] = 1 - chi_i * chi_j;
        pred[HD] = chi_i * (chi_j + 1);
        pred[DH] = (chi_i + 1) * chi_j;
        rep.unproven = ell == 2 && (chi_i == 0 || chi_j == 0);
    } else if (!div_i && !div_j) {
        rep.theorem_case = 2;
        pred[HD] = chi_i + 1;
        pred[DH] = chi_j + 1;
    } else if (div_i != div_j) {
        rep.theorem_case = 3;
        pred[AH] = 1;  // pooled with HA below
        pred[HD] = std::max(kronecker(v.sub_i.d, ell), kronecker(v.sub_j.d, ell));
        const int chi_free = div_i ? chi_j : chi_i;
        rep.unproven = ell == 2 && chi_free == 0;
    } else {
        rep.theorem_case = 4;
        pred[AA] = 1;
    }
    i64 rest = ell + 1;
    for (int t = 0; t < 9; ++t) rest -= pred[t];
    pred[DD] = rest;

    auto row = [&](const std::string& name, i64 p, i64 o) { rep.rows.push_back({name, p, o}); };
    if (rep.theorem_case == 3) {
        for (int t : {AA, AD, DA, HH}) row(kCategories[t], pred[t], obs[t]);
        row("AH+HA", pred[AH] + pred[HA], obs[AH] + obs[HA]);
        row("HD+DH", pred[HD] + pred[DH], obs[HD] + obs[DH]);
        row(kCategories[DD], pred[DD], obs[DD]);
    } else {
        for (int t = 0; t < 9; ++t) row(kCategories[t], pred[t], obs[t]);
    }
    i64 total = 0;
    rep.match = rest >= 0;
    for (const auto& r : rep.rows) {
        rep.match = rep.match && r.predicted == r.observed && r.predicted >= 0;
        total += r.observed;
    }
    rep.match = rep.match && total == ell + 1;
    return rep;
}

std::vector<AuditReport> audit_component(const OrientedComponent& c)
{
    std::vector<AuditReport> out;
    for (std::size_t v = 0; v < c.vertices.size(); ++v)
        out.push_back(structure_audit(c.vertices[v], c.neighbor_classes[v], c.ell));
    return out;
}

} // namespace qisog
