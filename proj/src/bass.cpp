#include "qisog/bass.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "qisog/error.hpp"
#include "qisog/parallel.hpp"

namespace qisog {

QOrder bass_order(const QuatAlgebra& alg)
{
    require(mod(alg.d_i(), 4) != 1 || mod(alg.d_j(), 4) != 1,
            "bass_order: d_i and d_j are both 1 mod 4, so no maximal order contains both quadratic maximal orders");
    QOrder o = order_closure({quadratic_generator(alg, 'i'), quadratic_generator(alg, 'j')});
    const i64 dk = fundamental_discriminant(alg.d_i()) * fundamental_discriminant(alg.d_j());
    ensure(reduced_discriminant(o) * 4 == dk, "bass_order: discriminant is not d_Ki d_Kj / 4");
    return o;
}

fl::Mat radical_basis(const QOrder& o, i64 ell)
{
    require(is_prime(ell), "radical_basis: ell must be prime");
    const fl::Algebra4 a = quotient_algebra(o, ell);
    if (ell <= 3) {
        // x is in the radical iff x y is nilpotent for every y.
        std::vector<fl::Vec> all;
        const i64 n = ell * ell * ell * ell;
        for (i64 t = 0; t < n; ++t) {
            fl::Vec v(4);
            for (i64 r = 0, u = t; r < 4; ++r, u /= ell) v[r] = u % ell;
            all.push_back(v);
        }
        fl::Mat rad;
        for (const auto& x : all) {
            bool nil = std::all_of(all.begin(), all.end(), [&](const fl::Vec& y) { return a.is_nilpotent(a.mul(x, y)); });
            if (nil) rad.push_back(x);
        }
        return fl::row_basis(rad, ell);
    }
    // Characteristic above the dimension: the radical is the kernel of the
    // trace form (x, y) -> tr(L_{xy}).
    fl::Mat t(4, fl::Vec(4));
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            fl::Vec e_r(4, 0), e_s(4, 0);
            e_r[r] = 1;
            e_s[s] = 1;
            fl::Mat m = a.left_mult(a.mul(e_r, e_s));
            i64 tr = 0;
            for (int u = 0; u < 4; ++u) tr += m[u][u];
            t[r][s] = mod(tr, ell);
        }
    return fl::row_basis(fl::left_kernel(t, ell), ell);
}

namespace {

int symbol_by_formula(const QOrder& o, i64 ell, const mpz_class& d)
{
    const i64 p = o.form().p;
    const QuatAlgebra alg(p, o.form().a, o.form().b);
    if (valuation(d, ell) == 1) return ell == p ? -1 : 1;
    std::optional<i64> dk;
    if (contains_quadratic_maximal(o, alg, 'i')) dk = fundamental_discriminant(alg.d_i());
    else if (contains_quadratic_maximal(o, alg, 'j')) dk = fundamental_discriminant(alg.d_j());
    require(dk.has_value(), "eichler_symbol: order contains neither quadratic maximal order");
    return kronecker(*dk, ell);
}

int symbol_by_radical(const QOrder& o, i64 ell)
{
    const fl::Algebra4 a = quotient_algebra(o, ell);
    const fl::Mat rad = radical_basis(o, ell);
    const int dim = 4 - static_cast<int>(rad.size());
    if (dim == 1) return 0;
    require(dim == 2, "eichler_symbol: O / rad has dimension " + std::to_string(dim) + ", not a Bass-type quotient");
    fl::Mat span = rad;
    span.push_back(a.one);
    std::optional<fl::Vec> x;
    for (int r = 0; r < 4 && !x; ++r) {
        fl::Vec e(4, 0);
        e[r] = 1;
        if (!fl::in_span(span, e, ell)) x = e;
    }
    ensure(x.has_value(), "eichler_symbol: quotient is spanned by 1");
    // x^2 = s x + t modulo the radical.
    fl::Mat rows = fl::row_basis(rad, ell);
    rows.insert(rows.begin(), a.one);
    rows.insert(rows.begin(), *x);
    auto c = fl::solve(rows, a.mul(*x, *x), ell);
    ensure(c.has_value(), "eichler_symbol: quotient is not 2-dimensional");
    const i64 s = (*c)[0], t = (*c)[1];
    int roots = 0;
    for (i64 z = 0; z < ell; ++z)
        if (mod(z * z - s * z - t, ell) == 0) ++roots;
    ensure(roots != 1, "eichler_symbol: quotient is not semisimple");
    return roots == 2 ? 1 : -1;
}

} // namespace

int eichler_symbol(const QOrder& o, i64 ell, EichlerMethod method)
{
    require(is_prime(ell), "eichler_symbol: ell must be prime");
    const mpz_class d = reduced_discriminant(o);
    require(valuation(d, ell) > 0, "eichler_symbol: ell does not divide discrd, the order is maximal at ell");
    if (method == EichlerMethod::Radical) return symbol_by_radical(o, ell);
    if (method == EichlerMethod::Formula) return symbol_by_formula(o, ell, d);
    const QuatAlgebra alg(o.form().p, o.form().a, o.form().b);
    if (contains_quadratic_maximal(o, alg, 'i') || contains_quadratic_maximal(o, alg, 'j'))
        return symbol_by_formula(o, ell, d);
    return symbol_by_radical(o, ell);
}

i64 local_embedding_number(const QOrder& o, i64 ell)
{
    const mpz_class d = reduced_discriminant(o);
    const int v = valuation(d, ell);
    if (v == 0 || ell == o.form().p) return 1;
    switch (eichler_symbol(o, ell)) {
    case 1: return v + 1;
    case 0: return 2;
    default: return 1;
    }
}

i64 global_embedding_number(const QOrder& o)
{
    i64 e = 1;
    for (i64 ell : prime_divisors(reduced_discriminant(o))) e *= local_embedding_number(o, ell);
    return e;
}

namespace {

// Smallest order containing l and x, if it stays inside box.
std::optional<QLattice> closure_within(const QLattice& l, const QuatElement& x, const QLattice& box)
{
    auto gens = l.elements();
    gens.push_back(x);
    QLattice m = QLattice::from_generators(gens);
    for (;;) {
        if (!box.contains(m)) return std::nullopt;
        QLattice n = m + m * m;
        if (n == m) return m;
        m = std::move(n);
    }
}

std::vector<QLattice> local_maximal_superorders(const QOrder& o, i64 ell, int m, std::size_t cap)
{
    const i64 p = o.form().p;
    const int target = ell == p ? 1 : 0;
    mpz_class scale = 1;
    for (int t = 0; t < m; ++t) scale *= ell;
    const QLattice outer = o.lattice().scaled(mpq_class(1, 1) / mpq_class(scale));

    // Representatives of the lines of F_ell^4.
    std::vector<fl::Vec> lines;
    for (int lead = 0; lead < 4; ++lead) {
        const int free = 3 - lead;
        i64 n = 1;
        for (int t = 0; t < free; ++t) n *= ell;
        for (i64 u = 0; u < n; ++u) {
            fl::Vec v(4, 0);
            v[lead] = 1;
            i64 w = u;
            for (int r = lead + 1; r < 4; ++r, w /= ell) v[r] = w % ell;
            lines.push_back(v);
        }
    }

    std::set<QLattice> seen{o.lattice()};
    std::vector<QLattice> frontier{o.lattice()}, out;
    while (!frontier.empty()) {
        std::vector<QLattice> next;
        for (const auto& l : frontier) {
            if (valuation(reduced_discriminant(QOrder(l)), ell) == target) {
                out.push_back(l);
                continue;
            }
            const auto b = l.elements();
            std::vector<std::optional<QLattice>> found(lines.size());
            parallel_for(lines.size(), [&](std::size_t t) {
                QuatElement x(l.form(), 0, 0, 0, 0);
                for (int r = 0; r < 4; ++r) x = x + mpq_class(lines[t][r], ell) * b[r];
                if (x.trd().get_den() != 1 || x.nrd().get_den() != 1) return;
                found[t] = closure_within(l, x, outer);
            });
            for (auto& f : found) {
                if (!f || !seen.insert(*f).second) continue;
                if (seen.size() > cap)
                    throw CapExceeded("enumerate_maximal_superorders: more than " + std::to_string(cap) +
                                      " candidate orders at ell = " + std::to_string(ell));
                next.push_back(std::move(*f));
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<QOrder> enumerate_maximal_superorders(const QOrder& o, std::size_t cap)
{
    const i64 p = o.form().p;
    const mpz_class d = reduced_discriminant(o);
    require(d % p == 0, "enumerate_maximal_superorders: p does not divide discrd");
    const mpz_class rest = d / p;
    std::vector<QLattice> acc{o.lattice()};
    for (i64 ell : prime_divisors(rest)) {
        auto local = local_maximal_superorders(o, ell, valuation(rest, ell), cap);
        std::vector<QLattice> next;
        for (const auto& a : acc)
            for (const auto& l : local) next.push_back(a + l);
        acc = std::move(next);
    }
    std::vector<QOrder> out;
    for (const auto& l : acc) {
        QOrder m(l);
        ensure(reduced_discriminant(m) == p, "enumerate_maximal_superorders: combined order is not maximal");
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace qisog
