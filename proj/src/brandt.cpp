#include "qisog/brandt.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

#include "qisog/error.hpp"
#include "qisog/parallel.hpp"

namespace qisog {

std::optional<std::size_t> find_class(const ClassSet& cs, const QIdeal& ideal)
{
    for (std::size_t t = 0; t < cs.representatives.size(); ++t)
        if (is_equivalent(cs.representatives[t], ideal)) return t;
    return std::nullopt;
}

namespace {

std::vector<QIdeal> neighbours(const QIdeal& i, i64 ell, std::uint64_t seed)
{
    std::vector<QIdeal> out;
    for (const auto& j : ideals_of_norm_ell(i.right_order(), ell, seed))
        out.emplace_back(i.lattice() * j.lattice());
    return out;
}

i64 unit_count(const QOrder& o)
{
    i64 n = 0;
    for (const auto& a : min_norm_elements(o.lattice(), 1))
        if (a.nrd() == 1) ++n;
    return n;
}

} // namespace

ClassSet enumerate_classes(const QOrder& base, i64 ell, std::uint64_t seed, std::optional<int> depth_cap)
{
    require(base.is_maximal(), "enumerate_classes: base order is not maximal");
    const i64 p = base.form().p;
    require(ell != p && is_prime(ell), "enumerate_classes: ell must be a prime different from p");
    const int cap = depth_cap.value_or(static_cast<int>(2 * (p / 6 + 8)));
    ClassSet cs{base, ell, {QIdeal(base.lattice())}, {}};
    std::vector<std::size_t> frontier{0};
    int depth = 0;
    while (!frontier.empty()) {
        if (++depth > cap) throw CapExceeded("enumerate_classes: BFS depth cap exceeded");
        std::vector<std::vector<QIdeal>> found(frontier.size());
        parallel_for(frontier.size(), [&](std::size_t t) {
            for (auto& k : neighbours(cs.representatives[frontier[t]], ell, seed))
                found[t].push_back(primitive_part(k));
        });
        std::vector<std::size_t> next;
        for (auto& batch : found)
            for (auto& k : batch)
                if (!find_class(cs, k)) {
                    next.push_back(cs.representatives.size());
                    cs.representatives.push_back(std::move(k));
                }
        frontier = std::move(next);
    }
    cs.unit_sizes.resize(cs.size());
    parallel_for(cs.size(), [&](std::size_t t) { cs.unit_sizes[t] = unit_count(cs.representatives[t].right_order()); });
    return cs;
}

IntMatrix brandt_matrix(const ClassSet& cs, std::uint64_t seed)
{
    const std::size_t h = cs.size();
    IntMatrix b(h, std::vector<i64>(h, 0));
    parallel_for(h, [&](std::size_t i) {
        for (const auto& j : neighbours(cs.representatives[i], cs.ell, seed)) {
            auto c = find_class(cs, j);
            ensure(c.has_value(), "brandt_matrix: neighbour outside the class set");
            ++b[i][*c];
        }
    });
    return b;
}

IntMatrix brandt_matrix_by_norms(const ClassSet& cs)
{
    const std::size_t h = cs.size();
    IntMatrix b(h, std::vector<i64>(h, 0));
    parallel_for(h * h, [&](std::size_t t) {
        std::size_t i = t / h, j = t % h;
        const QIdeal& ii = cs.representatives[i];
        const QIdeal& ij = cs.representatives[j];
        QLattice l = inverse(ij).lattice() * ii.lattice();
        mpq_class target = cs.ell * ii.norm() / ij.norm();
        i64 n = 0;
        for (const auto& a : min_norm_elements(l, target))
            if (a.nrd() == target) ++n;
        // Each +-a pair is reported once; the formula counts both.
        ensure(n % cs.unit_sizes[j] == 0, "brandt_matrix_by_norms: count not divisible by 2 a_j");
        b[i][j] = n / cs.unit_sizes[j];
    });
    return b;
}

MultiGraph brandt_graph(const ClassSet& cs, const IntMatrix& b)
{
    MultiGraph g;
    g.p = cs.base.form().p;
    g.ell = cs.ell;
    char buf[32];
    for (std::size_t t = 0; t < cs.size(); ++t) {
        std::snprintf(buf, sizeof buf, "I%04zu", t);
        g.vertices.push_back({.key = buf, .label = std::string("[") + buf + "] nrd=" + cs.representatives[t].norm().get_str()});
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j)
            if (b[i][j]) g.edges.push_back({i, j, b[i][j], ""});
    g.canonicalize();
    return g;
}

bool orders_isomorphic(const QOrder& o1, const QOrder& o2)
{
    // Connecting ideals from o1 to o2 are c and c P up to scaling.
    QIdeal c = connecting_ideal(o1, o2);
    if (is_principal(c)) return true;
    return is_principal(QIdeal(c.lattice() * ramified_prime_ideal(o2).lattice()));
}

MultiGraph type_graph(const ClassSet& cs, const IntMatrix& b)
{
    const std::size_t h = cs.size();
    std::vector<std::size_t> type(h);
    std::vector<std::size_t> reps;
    for (std::size_t t = 0; t < h; ++t) {
        type[t] = t;
        for (std::size_t r : reps)
            if (orders_isomorphic(cs.representatives[r].right_order(), cs.representatives[t].right_order())) {
                type[t] = r;
                break;
            }
        if (type[t] == t) reps.push_back(t);
    }
    MultiGraph g;
    g.p = cs.base.form().p;
    g.ell = cs.ell;
    std::map<std::size_t, std::size_t> idx;
    char buf[32];
    for (std::size_t r : reps) {
        idx[r] = g.vertices.size();
        std::snprintf(buf, sizeof buf, "T%04zu", r);
        std::string members;
        for (std::size_t t = 0; t < h; ++t)
            if (type[t] == r) members += (members.empty() ? "" : ",") + std::to_string(t);
        g.vertices.push_back({.key = buf, .label = "type{" + members + "}"});
    }
    for (std::size_t r : reps)
        for (std::size_t j = 0; j < h; ++j)
            if (b[r][j]) g.edges.push_back({idx[r], idx[type[j]], b[r][j], ""});
    g.canonicalize();
    return g;
}

IsomorphismResult check_graph_isomorphism(const MultiGraph& g, const MultiGraph& h)
{
    IsomorphismResult res;
    const std::size_t n = g.size();
    if (n != h.size()) {
        res.reason = "vertex counts differ (" + std::to_string(n) + " vs " + std::to_string(h.size()) + ")";
        return res;
    }
    require(n <= 64, "check_graph_isomorphism: more than 64 vertices");
    auto ag = g.adjacency(), ah = h.adjacency();
    using Sig = std::tuple<i64, i64, i64>;
    auto sigs = [n](const std::vector<std::vector<i64>>& a) {
        std::vector<Sig> s(n);
        for (std::size_t v = 0; v < n; ++v) {
            i64 in = 0, out = 0;
            for (std::size_t w = 0; w < n; ++w) {
                out += a[v][w];
                in += a[w][v];
            }
            s[v] = {in, out, a[v][v]};
        }
        return s;
    };
    auto sg = sigs(ag), sh = sigs(ah);
    auto sg_sorted = sg, sh_sorted = sh;
    std::sort(sg_sorted.begin(), sg_sorted.end());
    std::sort(sh_sorted.begin(), sh_sorted.end());
    if (sg_sorted != sh_sorted) {
        res.reason = "(in, out, loop) degree signatures differ";
        return res;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t t = 0; t < n; ++t) order[t] = t;
    // Rare signatures first.
    std::map<Sig, int> freq;
    for (const auto& s : sg) ++freq[s];
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return freq[sg[a]] < freq[sg[b]]; });
    std::vector<std::size_t> map(n, n);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == n) return true;
        std::size_t v = order[depth];
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || sg[v] != sh[w]) continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                std::size_t u = order[d];
                ok = ag[v][u] == ah[w][map[u]] && ag[u][v] == ah[map[u]][w];
            }
            if (!ok) continue;
            map[v] = w;
            used[w] = true;
            if (extend(depth + 1)) return true;
            used[w] = false;
            map[v] = n;
        }
        return false;
    };
    if (extend(0)) {
        res.isomorphic = true;
        res.mapping = map;
        res.reason = "isomorphic";
    } else {
        res.reason = "no multiplicity-preserving bijection exists";
    }
    return res;
}

} // namespace qisog
