#include "qisog/ecgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "qisog/error.hpp"
#include "qisog/parallel.hpp"

namespace qisog {

ShortWeierstrass curve_from_j(const Fp2Field& f, Fp2 j)
{
    if (j == Fp2{}) return {Fp2{}, f.from_int(1)};
    if (j == f.from_int(1728)) return {f.from_int(1), Fp2{}};
    Fp2 k = f.sub(f.from_int(1728), j);
    Fp2 jk = f.mul(j, k);
    return {f.mul(f.from_int(3), jk), f.mul(f.from_int(2), f.mul(jk, k))};
}

Fp2 j_invariant(const Fp2Field& f, const ShortWeierstrass& e)
{
    Fp2 a3 = f.mul(f.from_int(4), f.mul(e.a, f.sqr(e.a)));
    Fp2 d = f.add(a3, f.mul(f.from_int(27), f.sqr(e.b)));
    require(d != Fp2{}, "j_invariant: singular curve");
    return f.div(f.mul(f.from_int(1728), a3), d);
}

i64 count_points(const Fp2Field& f, const ShortWeierstrass& e)
{
    const i64 p = f.p();
    i64 s = 0;
    for (i64 x0 = 0; x0 < p; ++x0)
        for (i64 x1 = 0; x1 < p; ++x1) {
            Fp2 x{x0, x1};
            Fp2 y2 = f.add(f.mul(f.add(f.sqr(x), e.a), x), e.b);
            s += f.chi(y2);
        }
    return p * p + 1 + s;
}

bool is_supersingular(const Fp2Field& f, Fp2 j)
{
    const i64 p = f.p();
    i64 n = count_points(f, curve_from_j(f, j));
    return n == (p - 1) * (p - 1) || n == (p + 1) * (p + 1);
}

std::vector<Fp2> supersingular_j_list(i64 p)
{
    require(p > 3 && p <= kMaxCurvePrime && is_prime(p), "supersingular_j_list: need prime 3 < p <= 1000");
    Fp2Field f(p);
    PolyRing ring(f);
    const i64 m = (p - 1) / 2;
    Poly h(m + 1);
    i64 c = 1;
    for (i64 t = 0; t <= m; ++t) {
        h[t] = f.from_int(c * c % p);
        c = c * mod(m - t, p) % p * invmod(t + 1, p) % p;
    }
    std::set<Fp2> js;
    for (auto [lam, mult] : ring.roots(h)) {
        Fp2 l2 = f.sqr(lam);
        Fp2 num = f.sub(f.add(l2, f.from_int(1)), lam);
        Fp2 den = f.mul(l2, f.sqr(f.sub(lam, f.from_int(1))));
        js.insert(f.div(f.mul(f.from_int(256), f.mul(num, f.sqr(num))), den));
    }
    std::vector<Fp2> out(js.begin(), js.end());
    std::vector<char> ok(out.size(), 0);
    parallel_for(out.size(), [&](std::size_t t) { ok[t] = is_supersingular(f, out[t]); });
    for (std::size_t t = 0; t < out.size(); ++t)
        ensure(ok[t], "supersingular_j_list: Hasse root " + f.to_string(out[t]) + " fails the point count");
    return out;
}

std::vector<Fp2> supersingular_j_scan(i64 p)
{
    require(p > 3 && p <= kMaxCurvePrime && is_prime(p), "supersingular_j_scan: need prime 3 < p <= 1000");
    Fp2Field f(p);
    std::vector<char> ok(static_cast<std::size_t>(p * p), 0);
    parallel_for(ok.size(), [&](std::size_t t) {
        ok[t] = is_supersingular(f, Fp2{static_cast<i64>(t) / p, static_cast<i64>(t) % p});
    });
    std::vector<Fp2> out;
    for (std::size_t t = 0; t < ok.size(); ++t)
        if (ok[t]) out.push_back({static_cast<i64>(t) / p, static_cast<i64>(t) % p});
    return out;
}

Poly modpoly_at(const PolyRing& ring, const ModPoly& phi, Fp2 j)
{
    const Fp2Field& f = ring.field();
    const int n = phi.degree();
    std::vector<Fp2> jp(n + 1);
    jp[0] = f.from_int(1);
    for (int t = 1; t <= n; ++t) jp[t] = f.mul(jp[t - 1], j);
    Poly out(n + 1);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            mpz_class c = phi.coefficient(a, b);
            if (c == 0) continue;
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), f.p());
            out[b] = f.add(out[b], f.mul(f.from_int(r.get_si()), jp[a]));
        }
    ring.trim(out);
    return out;
}

std::string fp2_key(Fp2 x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%06lld,%06lld", static_cast<long long>(x.a), static_cast<long long>(x.b));
    return buf;
}

MultiGraph build_isogeny_graph(i64 p, const ModPoly& phi, std::uint64_t seed)
{
    require(phi.ell != p, "build_isogeny_graph: ell = p");
    Fp2Field f(p);
    PolyRing ring(f);
    auto js = supersingular_j_list(p);
    MultiGraph g;
    g.p = p;
    g.ell = phi.ell;
    std::map<Fp2, std::size_t> index;
    for (Fp2 j : js) {
        index[j] = g.vertices.size();
        g.vertices.push_back({.key = fp2_key(j), .label = "j=" + f.to_string(j)});
    }
    std::vector<std::vector<std::pair<Fp2, int>>> roots(js.size());
    parallel_for(js.size(), [&](std::size_t t) { roots[t] = ring.roots(modpoly_at(ring, phi, js[t]), seed + t); });
    for (std::size_t t = 0; t < js.size(); ++t) {
        int total = 0;
        for (auto [r, m] : roots[t]) {
            auto it = index.find(r);
            ensure(it != index.end(), "build_isogeny_graph: neighbor " + f.to_string(r) + " is not supersingular");
            g.edges.push_back({t, it->second, m, ""});
            total += m;
        }
        ensure(total == phi.ell + 1, "build_isogeny_graph: Phi(j, Y) does not split over F_{p^2}");
    }
    g.canonicalize();
    return g;
}

MultiGraph build_isogeny_graph(i64 p, i64 ell, std::uint64_t seed)
{
    return build_isogeny_graph(p, load_modpoly(ell), seed);
}

MultiGraph reduce_graph(const MultiGraph& g)
{
    require(g.p > 0, "reduce_graph: graph has no characteristic");
    Fp2Field f(g.p);
    std::map<std::string, std::string> cls;
    std::map<std::string, std::string> label;
    for (const auto& v : g.vertices) {
        long long a = 0, b = 0;
        require(std::sscanf(v.key.c_str(), "%lld,%lld", &a, &b) == 2, "reduce_graph: vertex key is not an F_{p^2} element");
        Fp2 x{a, b};
        std::string k1 = fp2_key(x), k2 = fp2_key(f.frobenius(x));
        std::string rep = std::min(k1, k2);
        cls[v.key] = rep;
        label[rep] = k1 == k2 ? "j=" + f.to_string(x) : "{j=" + f.to_string(x) + ", j^p}";
    }
    MultiGraph r;
    r.p = g.p;
    r.ell = g.ell;
    std::map<std::string, std::size_t> idx;
    for (const auto& [rep, lab] : label) {
        idx[rep] = r.vertices.size();
        r.vertices.push_back({.key = rep, .label = lab});
    }
    for (const auto& e : g.edges) {
        const std::string& src = g.vertices[e.src].key;
        if (cls[src] != src) continue;
        r.edges.push_back({idx[src], idx[cls[g.vertices[e.dst].key]], e.multiplicity, e.cls});
    }
    r.canonicalize();
    return r;
}

} // namespace qisog
