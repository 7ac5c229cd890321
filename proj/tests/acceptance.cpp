// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [N ...]   (default: all criteria)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qisog/bass.hpp"
#include "qisog/brandt.hpp"
#include "qisog/ecgraph.hpp"
#include "qisog/modpoly.hpp"
#include "qisog/orient.hpp"
#include "support.hpp"

using namespace qisog;

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

// Records a sub-check; the first few failures are kept in the detail line.
struct Checker {
    Result r;
    int failures = 0;
    void check(bool ok, const std::string& what)
    {
        if (ok) return;
        r.pass = false;
        if (++failures <= 4) r.detail += (r.detail.empty() ? "" : "; ") + what;
    }
    void note(const std::string& s) { r.detail += (r.detail.empty() ? "" : "; ") + s; }
};

std::string str(const mpz_class& x) { return x.get_str(); }

Result root_orders()
{
    Checker c;
    for (i64 p : {7, 11, 19, 23}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        QOrder o = order_closure({alg.i(), (alg.one() + alg.j()) / 2});
        c.check(reduced_discriminant(o) == p && o.is_maximal(), "p=" + std::to_string(p) + ": Z<i,(1+j)/2> not maximal");
        c.check(contains_quadratic_maximal(o, alg, 'i') && contains_quadratic_maximal(o, alg, 'j'),
                "p=" + std::to_string(p) + ": missing a quadratic maximal order");
        c.check(root_maximal_orders(alg).front() == o, "p=" + std::to_string(p) + ": root order differs");
    }
    for (i64 p : {13, 29, 17, 41}) {
        auto roots = root_maximal_orders(QuatAlgebra::pizer(p));
        bool ok = roots.size() == 2 && roots[0] != roots[1];
        for (const auto& o : roots) ok = ok && o.is_maximal();
        c.check(ok, "p=" + std::to_string(p) + ": root orders not two distinct maximal orders");
    }
    QuatAlgebra a13 = QuatAlgebra::pizer(13);
    QOrder literal = order_closure({a13.i(), (a13.one() + a13.j() + a13.k()) / 2, (a13.i() + 2 * a13.j() - a13.k()) / 4});
    c.note("second p=5 mod 8 order uses the k -> -k image; the literal basis has discrd " + str(reduced_discriminant(literal)) +
           " at p=13");
    return c.r;
}

Result root_example()
{
    Checker c;
    struct Row {
        i64 p, discrd, ell, e_ell, e;
    };
    for (auto r : std::vector<Row>{{7, 7, 0, 1, 1}, {13, 104, 2, 2, 2}, {17, 51, 3, 2, 2}}) {
        QuatAlgebra alg = QuatAlgebra::pizer(r.p);
        QOrder o = bass_order(alg);
        const std::string tag = "p=" + std::to_string(r.p);
        c.check(reduced_discriminant(o) == r.discrd, tag + ": discrd " + str(reduced_discriminant(o)));
        if (r.ell) c.check(local_embedding_number(o, r.ell) == r.e_ell, tag + ": wrong e_ell");
        const i64 e = global_embedding_number(o);
        c.check(e == r.e, tag + ": e = " + std::to_string(e));
        auto sup = enumerate_maximal_superorders(o);
        c.check(static_cast<i64>(sup.size()) == e, tag + ": oracle finds " + std::to_string(sup.size()));
    }
    if (c.r.pass) c.note("discrd 7, 104 = 8p, 51 = pq; e = 1, 2, 2; oracle agrees");
    return c.r;
}

Result neighbours()
{
    Checker c;
    std::size_t orders = 0;
    for (i64 p : {13, 37}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        auto walk = test::walk_orders(root_maximal_orders(alg).front(), 2, 25, 1000 + p);
        for (const auto& o : walk) {
            ++orders;
            for (i64 ell : {2, 3, 5}) {
                auto fast = ideals_of_norm_ell(o, ell, 5);
                auto slow = ideals_of_norm_ell_oracle(o, ell);
                std::sort(fast.begin(), fast.end());
                std::sort(slow.begin(), slow.end());
                c.check(fast.size() == static_cast<std::size_t>(ell + 1), "wrong neighbour count");
                c.check(fast == slow, "fast and oracle paths differ");
                for (const auto& id : fast) c.check(!id.is_two_sided(), "two-sided ell-ideal");
            }
        }
    }
    c.check(orders >= 50, "only " + std::to_string(orders) + " orders");
    if (c.r.pass) c.note(std::to_string(orders) + " orders x ell in {2,3,5}");
    return c.r;
}

Result deuring()
{
    Checker c;
    struct Row {
        i64 p, ell, h;
    };
    for (auto r : std::vector<Row>{{37, 2, 3}, {37, 3, 3}, {101, 2, 9}}) {
        const std::string tag = "(" + std::to_string(r.p) + "," + std::to_string(r.ell) + ")";
        MultiGraph g = build_isogeny_graph(r.p, r.ell);
        c.check(supersingular_j_scan(r.p).size() == g.size(), tag + ": curve side disagrees with the scan");
        ClassSet cs = enumerate_classes(root_maximal_orders(QuatAlgebra::pizer(r.p)).front(), r.ell);
        c.check(g.size() == cs.size() && cs.size() == static_cast<std::size_t>(r.h), tag + ": vertex/class count");
        IntMatrix b = brandt_matrix(cs);
        for (const auto& row : b) {
            i64 s = 0;
            for (i64 x : row) s += x;
            c.check(s == r.ell + 1, tag + ": Brandt row sum");
        }
        auto iso = check_graph_isomorphism(g, brandt_graph(cs, b));
        c.check(iso.isomorphic, tag + ": no isomorphism (" + iso.reason + ")");
    }
    if (c.r.pass) c.note("class numbers 3, 3, 9; witnesses found");
    return c.r;
}

Result connectivity()
{
    Checker c;
    int graphs = 0;
    for (i64 p = 5; p <= 200; ++p) {
        if (!is_prime(p)) continue;
        for (i64 ell : {2, 3}) {
            MultiGraph g = build_isogeny_graph(p, ell);
            ++graphs;
            c.check(g.is_strongly_connected(), "G(" + std::to_string(p) + "," + std::to_string(ell) + ") disconnected");
        }
    }
    if (c.r.pass) c.note(std::to_string(graphs) + " graphs connected (5 <= p <= 200)");
    return c.r;
}

Result structure()
{
    Checker c;
    QuatAlgebra alg = QuatAlgebra::pizer(7);
    c.check(alg.d_i() == -1 && alg.d_j() == -7, "unexpected algebra for p=7");
    QOrder root = root_maximal_orders(alg).front();
    const i64 e_global = global_embedding_number(bass_order(alg));
    for (i64 ell : {2, 3}) {
        const std::string tag = "ell=" + std::to_string(ell);
        OrientedComponent comp = walk_component(alg, root, ell, 4);
        c.check(comp.is_tree() && comp.loops == 0 && comp.multi_edges == 0, tag + ": not a simple tree");
        auto reports = audit_component(comp);
        std::size_t bad = 0;
        for (const auto& r : reports) bad += !r.match;
        c.check(bad == 0, tag + ": " + std::to_string(bad) + " of " + std::to_string(reports.size()) +
                              " vertices differ from the predicted counts");
        Roots roots = find_roots(comp);
        c.check(static_cast<i64>(roots.local.size()) == local_embedding_number(bass_order(alg), ell),
                tag + ": local roots != e_ell");
        c.check(static_cast<i64>(roots.global.size()) <= e_global, tag + ": too many global roots");
        if (roots.local.size() == 2) {
            bool adj = false;
            for (const auto& a : comp.arcs) adj = adj || (a.src == roots.local[0] && a.dst == roots.local[1]);
            c.check(adj, tag + ": local roots not adjacent");
        }
        auto counts = category_counts(comp.neighbor_classes[0]);
        const i64 hh = counts[4], hd = counts[5], dh = counts[7], dd = counts[8];
        std::ostringstream obs;
        obs << "(" << hh << "," << hd << "," << dh << "," << dd << ")";
        if (ell == 3) c.check(dd == 4, tag + ": global root has " + obs.str());
        else
            c.check(hh == 1 && hd == 0 && dh == 1 && dd == 1,
                    tag + ": global root (HH,HD,DH,DD) = " + obs.str() + ", theorem gives (1,0,1,1)");
    }
    if (c.r.pass) c.note("trees, audits, roots and global-root counts as predicted");
    return c.r;
}

Result connecting_ideals()
{
    Checker c;
    std::size_t pairs = 0;
    for (i64 p : {37, 101}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        QOrder base = root_maximal_orders(alg).front();
        for (i64 ell : {2, 3}) {
            auto walk = test::walk_orders(base, ell, 14, 7 * p + ell);
            for (std::size_t a = 0; a < walk.size(); ++a)
                for (std::size_t b = a + 1; b < walk.size() && b < a + 4; ++b) {
                    const QOrder &o1 = walk[a], &o2 = walk[b];
                    ++pairs;
                    QIdeal i = connecting_ideal(o1, o2);
                    mpz_class idx = index(o1.lattice(), o1.lattice().intersect(o2.lattice()));
                    c.check(i.norm() == mpq_class(idx), "nrd != [O : O meet O']");
                    QIdeal back = connecting_ideal(o2, o1);
                    c.check(back.lattice() == i.lattice().conj() && is_primitive(back), "conj is not the reverse ideal");
                    for (const QIdeal& x : {i, QIdeal(i.lattice().scaled(ell)), QIdeal(i.lattice() * back.lattice())}) {
                        bool local = true;
                        for (i64 q : prime_divisors(x.norm().get_num())) local = local && is_locally_primitive(x, q);
                        c.check(local == is_primitive(x), "local/global primitivity disagree");
                    }
                }
        }
    }
    c.check(pairs >= 100, "only " + std::to_string(pairs) + " pairs");
    if (c.r.pass) c.note(std::to_string(pairs) + " pairs");
    return c.r;
}

Result properties()
{
    Checker c;
    std::mt19937_64 rng(8);
    int n = 0;
    // Norm multiplicativity and the involution.
    for (i64 p : {7, 13, 17, 37, 101}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        for (int t = 0; t < 200; ++t, ++n) {
            auto x = test::random_element(alg, rng), y = test::random_element(alg, rng);
            c.check((x * y).nrd() == x.nrd() * y.nrd(), "nrd not multiplicative");
            c.check((x * y).conj() == y.conj() * x.conj() && x.conj().conj() == x, "involution law");
        }
    }
    // nrd(I)^2 = [O_L(I) : I] and HNF round trips on walked ideals.
    for (i64 p : {13, 37}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        QOrder base = root_maximal_orders(alg).front();
        for (const auto& o : test::walk_orders(base, 2, 20, 80 + p)) {
            QIdeal i = connecting_ideal(base, o);
            for (const QIdeal& x : {i, QIdeal(i.lattice().mul_right(test::random_element(alg, rng, 4, 1) + alg.one()))}) {
                ++n;
                c.check(x.norm() * x.norm() == mpq_class(index(x.left_order().lattice(), x.lattice())),
                        "nrd(I)^2 != index");
                auto b = x.lattice().elements();
                std::shuffle(b.begin(), b.end(), rng);
                b[1] = b[1] + b[0] + b[2];
                c.check(QLattice::from_generators(b) == x.lattice(), "HNF not canonical");
            }
        }
    }
    // Hilbert product formula.
    std::uniform_int_distribution<i64> d(-1000, 1000);
    for (int t = 0; t < 300; ++t) {
        i64 a = d(rng), b = d(rng);
        if (a == 0 || b == 0) continue;
        ++n;
        std::set<i64> primes{2};
        for (auto q : prime_divisors(mpz_class(a))) primes.insert(q);
        for (auto q : prime_divisors(mpz_class(b))) primes.insert(q);
        int prod = hilbert_symbol(a, b, Place::infinity());
        for (auto q : primes) prod *= hilbert_symbol(a, b, Place::at(q));
        c.check(prod == 1, "Hilbert product formula");
    }
    // Modular polynomials: symmetry and Phi = (X^ell - Y)(X - Y^ell) mod ell.
    for (i64 ell : {2, 3, 5, 7}) {
        ModPoly phi = load_modpoly(ell);
        const int deg = static_cast<int>(ell + 1);
        for (int a = 0; a <= deg; ++a)
            for (int b = 0; b <= deg; ++b) {
                ++n;
                c.check(phi.coefficient(a, b) == phi.coefficient(b, a), "modular polynomial not symmetric");
                // (X^ell - Y)(X - Y^ell) = X^{ell+1} - X^ell Y^ell - X Y + Y^{ell+1}.
                int want = 0;
                if ((a == deg && b == 0) || (a == 0 && b == deg)) want = 1;
                if ((a == ell && b == ell) || (a == 1 && b == 1)) want = -1;
                mpz_class r = phi.coefficient(a, b) - want;
                c.check(r % ell == 0, "Kronecker congruence fails at ell=" + std::to_string(ell));
            }
    }
    if (c.r.pass) c.note(std::to_string(n) + " randomized and exhaustive instances");
    return c.r;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Result()> run;
};

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> all = {
        {1, "root orders", 1, root_orders},
        {2, "root example and embedding numbers", 10, root_example},
        {3, "ell-neighbours", 30, neighbours},
        {4, "Deuring graph isomorphism", 120, deuring},
        {5, "connectivity", 120, connectivity},
        {6, "double-orientation structure", 60, structure},
        {7, "connecting-ideal laws", 30, connecting_ideals},
        {8, "property suites", 30, properties},
    };
    std::set<int> wanted;
    for (int t = 1; t < argc; ++t) wanted.insert(std::stoi(argv[t]));
    int failed = 0;
    for (const auto& cr : all) {
        if (!wanted.empty() && !wanted.count(cr.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = cr.run();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > cr.limit_s) {
            r.pass = false;
            r.detail += "; exceeded the " + std::to_string(static_cast<int>(cr.limit_s)) + " s limit";
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f s", secs);
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << cr.id << " " << cr.name << " (" << buf << "): " << r.detail
                  << std::endl;
        failed += !r.pass;
    }
    return failed == 0 ? 0 : 1;
}
