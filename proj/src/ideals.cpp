#include "qisog/ideals.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "qisog/error.hpp"

namespace qisog {

namespace {

struct Module {
    ZMat rows;
    mpz_class den = 1;
    bool operator==(const Module&) const = default;
};

Module module_from(const std::vector<QuatElement>& gens)
{
    Module m;
    for (const auto& x : gens) mpz_lcm(m.den.get_mpz_t(), m.den.get_mpz_t(), x.denominator().get_mpz_t());
    for (const auto& x : gens) {
        ZRow r(4);
        for (int t = 0; t < 4; ++t) r[t] = x[t].get_num() * (m.den / x[t].get_den());
        m.rows.push_back(std::move(r));
    }
    m.rows = hnf(std::move(m.rows));
    mpz_class g = m.den;
    for (const auto& r : m.rows)
        for (const auto& e : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    for (auto& r : m.rows)
        for (auto& e : r) e /= g;
    m.den /= g;
    return m;
}

std::vector<QuatElement> module_elements(const Module& m, Form form)
{
    std::vector<QuatElement> out;
    for (const auto& r : m.rows)
        out.emplace_back(form, mpq_class(r[0], m.den), mpq_class(r[1], m.den), mpq_class(r[2], m.den),
                         mpq_class(r[3], m.den));
    return out;
}

mpq_class determinant(QMat a)
{
    const std::size_t n = a.size();
    mpq_class det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[c][c];
            for (std::size_t t = c; t < n; ++t) a[i][t] -= f * a[c][t];
        }
    }
    return det;
}

void require_maximal(const QOrder& o, const char* what)
{
    require(o.is_maximal(), std::string(what) + ": order is not maximal (unsupported)");
}

mpq_class fractional_content(const QLattice& l, const QOrder& o)
{
    auto b = o.lattice().elements();
    QMat bm(4, std::vector<mpq_class>(4));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) bm[r][c] = b[r][c];
    auto inv = rational_inverse(bm);
    ensure(inv.has_value(), "content: singular order basis");
    std::vector<mpq_class> coords;
    for (const auto& x : l.elements())
        for (int c = 0; c < 4; ++c) {
            mpq_class s = 0;
            for (int t = 0; t < 4; ++t) s += x[t] * (*inv)[t][c];
            coords.push_back(s);
        }
    return rational_gcd(coords);
}

} // namespace

QOrder::QOrder(QLattice lattice) : lattice_(std::move(lattice))
{
    const Form f = lattice_.form();
    require(lattice_.contains(QuatElement(f, 1, 0, 0, 0)), "QOrder: lattice does not contain 1");
    auto b = lattice_.elements();
    for (const auto& x : b)
        for (const auto& y : b) require(lattice_.contains(x * y), "QOrder: lattice is not multiplicatively closed");
}

mpz_class QOrder::discriminant() const
{
    return reduced_discriminant(*this);
}

bool QOrder::is_maximal() const
{
    return form().p != 0 && discriminant() == form().p;
}

QIdeal::QIdeal(QLattice lattice)
    : lattice_(std::move(lattice)), left_(qisog::left_order(lattice_)), right_(qisog::right_order(lattice_))
{
}

QIdeal QIdeal::principal(const QOrder& o, const QuatElement& alpha)
{
    return QIdeal(o.lattice().mul_right(alpha));
}

QOrder order_closure(const std::vector<QuatElement>& gens, int round_cap)
{
    require(!gens.empty(), "order_closure: no generators");
    const Form form = gens[0].form();
    std::vector<QuatElement> start{QuatElement(form, 1, 0, 0, 0)};
    start.insert(start.end(), gens.begin(), gens.end());
    Module cur = module_from(start);
    for (int round = 0; round < round_cap; ++round) {
        auto b = module_elements(cur, form);
        std::vector<QuatElement> next = b;
        for (const auto& x : b)
            for (const auto& y : b) next.push_back(x * y);
        Module m = module_from(next);
        if (m == cur) {
            require(cur.rows.size() == 4, "order_closure: generators do not span the algebra");
            Basis4 basis;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) basis[r][c] = cur.rows[r][c];
            return QOrder(QLattice::from_basis(form, basis, cur.den));
        }
        cur = std::move(m);
    }
    throw CapExceeded("order_closure: no stabilization within " + std::to_string(round_cap) + " rounds");
}

mpz_class reduced_discriminant(const QOrder& o)
{
    auto b = o.lattice().elements();
    QMat t(4, std::vector<mpq_class>(4));
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) t[r][s] = (b[r] * b[s]).trd();
    mpq_class det = abs(determinant(t));
    ensure(det.get_den() == 1, "reduced_discriminant: non-integral trace form");
    mpz_class root;
    ensure(mpz_perfect_square_p(det.get_num_mpz_t()) != 0, "reduced_discriminant: determinant is not a square");
    mpz_sqrt(root.get_mpz_t(), det.get_num_mpz_t());
    return root;
}

mpq_class two_generator_discriminant(const QuatElement& a1, const QuatElement& a2)
{
    mpq_class t1 = a1.trd(), t2 = a2.trd();
    mpq_class d1 = t1 * t1 - 4 * a1.nrd();
    mpq_class d2 = t2 * t2 - 4 * a2.nrd();
    mpq_class t = (a1 * a2).trd();
    mpq_class u = t1 * t2 - 2 * t;
    return abs(d1 * d2 - u * u) / 4;
}

QuatElement quadratic_generator(const QuatAlgebra& alg, char u)
{
    require(u == 'i' || u == 'j', "quadratic_generator: tag must be i or j");
    i64 d = u == 'i' ? alg.d_i() : alg.d_j();
    QuatElement x = u == 'i' ? alg.i() : alg.j();
    if (mod(d, 4) == 1) return (alg.one() + x) / 2;
    return x;
}

bool contains_quadratic_maximal(const QOrder& o, const QuatAlgebra& alg, char u)
{
    return o.contains(quadratic_generator(alg, u));
}

std::vector<QOrder> root_maximal_orders(const QuatAlgebra& alg)
{
    const i64 p = alg.p();
    require(alg.q() != 0 && alg.d_i() == -alg.q() && alg.d_j() == -p,
            "root_maximal_orders: expects the Pizer algebra (-q, -p)");
    const auto one = alg.one(), i = alg.i(), j = alg.j(), k = alg.k();
    std::vector<QOrder> out;
    if (p % 4 == 3) {
        out.push_back(order_closure({i, (one + j) / 2}));
        out.push_back(order_closure({i, (one + k) / 2}));
    } else if (p % 8 == 5) {
        out.push_back(order_closure({i, (one + j + k) / 2, (i + 2 * j + k) / 4}));
        // Image of the first order under the anti-automorphism k -> -k.
        out.push_back(order_closure({i, (one + j - k) / 2, (i + 2 * j - k) / 4}));
    } else {
        // (c i + k)/q is integral iff q | c^2 + p.
        const i64 q = alg.q();
        i64 c = 0;
        while (c < q && mod(c * c + p, q) != 0) ++c;
        if (c == q) throw PreconditionError("root_maximal_orders: no c with q | c^2 + p");
        out.push_back(order_closure({(one + i) / 2, j, (mpq_class(c) * i + k) / q}));
        out.push_back(order_closure({(one + i) / 2, j, (mpq_class(c) * i - k) / q}));
    }
    for (const auto& o : out)
        ensure(o.is_maximal(), "root_maximal_orders: constructed order is not maximal");
    return out;
}

mpq_class content_of(const QIdeal& ideal)
{
    return fractional_content(ideal.lattice(), ideal.left_order());
}

mpz_class content(const QIdeal& ideal)
{
    mpq_class c = content_of(ideal);
    require(c.get_den() == 1, "content: ideal is not integral");
    return c.get_num();
}

bool is_primitive(const QIdeal& ideal)
{
    return content(ideal) == 1;
}

bool is_locally_primitive(const QIdeal& ideal, i64 ell)
{
    // The image of I in O/ell O is nonzero.
    const QOrder& o = ideal.left_order();
    for (const auto& x : ideal.lattice().elements()) {
        auto c = o.lattice().coordinates(x);
        require(c.has_value(), "is_locally_primitive: ideal is not integral");
        for (const auto& e : *c)
            if (!mpz_divisible_ui_p(e.get_mpz_t(), ell)) return true;
    }
    return false;
}

QIdeal primitive_part(const QIdeal& ideal)
{
    mpz_class c = content(ideal);
    if (c == 1) return ideal;
    return QIdeal(ideal.lattice().scaled(mpq_class(1, c)));
}

QIdeal inverse(const QIdeal& ideal)
{
    require_maximal(ideal.left_order(), "inverse");
    require_maximal(ideal.right_order(), "inverse");
    return QIdeal(ideal.lattice().conj().scaled(1 / ideal.norm()));
}

QIdeal colon_left(const QIdeal& i, const QIdeal& j)
{
    return QIdeal(i.lattice() * inverse(j).lattice());
}

QIdeal colon_right(const QIdeal& i, const QIdeal& j)
{
    return QIdeal(inverse(j).lattice() * i.lattice());
}

QIdeal connecting_ideal(const QOrder& o1, const QOrder& o2)
{
    require_maximal(o1, "connecting_ideal");
    require_maximal(o2, "connecting_ideal");
    require(o1.form() == o2.form(), "connecting_ideal: algebra mismatch");
    QLattice prod = o1.lattice() * o2.lattice();
    mpq_class c = fractional_content(prod, o1);
    QIdeal out(prod.scaled(1 / c));
    ensure(out.left_order() == o1 && out.right_order() == o2, "connecting_ideal: orders do not match");
    ensure(out.norm() == index(o1.lattice(), o1.lattice().intersect(o2.lattice())),
           "connecting_ideal: norm differs from the Eichler index");
    return out;
}

QIdeal connecting_ideal_oracle(const QOrder& o1, const QOrder& o2)
{
    mpz_class n = index(o1.lattice(), o1.lattice().intersect(o2.lattice()));
    require(n.fits_slong_p() && n <= 16, "connecting_ideal_oracle: index too large");
    const i64 nn = n.get_si();
    const Form f = o1.form();
    auto b = o1.lattice().elements();
    auto b2 = o2.lattice().elements();
    QLattice target = o1.lattice().scaled(mpq_class(n));
    std::vector<QuatElement> gens;
    for (const auto& x : b) gens.push_back(mpq_class(n) * x);
    std::array<i64, 4> c{};
    for (c[0] = 0; c[0] < nn; ++c[0])
        for (c[1] = 0; c[1] < nn; ++c[1])
            for (c[2] = 0; c[2] < nn; ++c[2])
                for (c[3] = 0; c[3] < nn; ++c[3]) {
                    QuatElement a(f, 0, 0, 0, 0);
                    for (int t = 0; t < 4; ++t) a = a + mpq_class(c[t]) * b[t];
                    if (a.is_zero()) continue;
                    bool ok = true;
                    for (const auto& y : b2)
                        if (!target.contains(a * y * a.conj())) { ok = false; break; }
                    if (ok) gens.push_back(a);
                }
    return QIdeal(QLattice::from_generators(gens));
}

std::optional<QuatElement> is_equivalent(const QIdeal& i, const QIdeal& j)
{
    require(i.left_order() == j.left_order(), "is_equivalent: left orders differ");
    QLattice l = inverse(i).lattice() * j.lattice();
    mpq_class n = reduced_norm(l);
    for (const auto& a : min_norm_elements(l, n)) {
        if (a.nrd() != n) break;
        if (i.lattice().mul_right(a) == j.lattice()) return a;
    }
    return std::nullopt;
}

bool is_principal(const QIdeal& ideal)
{
    mpq_class n = ideal.norm();
    auto v = min_norm_elements(ideal.lattice(), n);
    return !v.empty() && v.front().nrd() == n;
}

QIdeal ramified_prime_ideal(const QOrder& o)
{
    require_maximal(o, "ramified_prime_ideal");
    const i64 p = o.form().p;
    // O x + pO for any x in O with p || nrd(x).
    for (mpq_class bound = p; bound <= mpq_class(p) * p * 64; bound *= 2)
        for (const auto& x : min_norm_elements(o.lattice(), bound)) {
            mpz_class n = x.nrd().get_num();
            if (valuation(n, p) != 1) continue;
            QIdeal pr(o.lattice().mul_right(x) + o.lattice().scaled(mpq_class(p)));
            ensure(pr.is_two_sided() && pr.norm() == p, "ramified_prime_ideal: not the prime over p");
            return pr;
        }
    throw InternalError("ramified_prime_ideal: no element of norm divisible exactly by p");
}

std::array<i64, 4> reduce_mod(const QOrder& o, const QuatElement& x, i64 ell)
{
    auto c = o.lattice().coordinates(x);
    require(c.has_value(), "reduce_mod: element not in order");
    std::array<i64, 4> out;
    for (int t = 0; t < 4; ++t) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), (*c)[t].get_mpz_t(), ell);
        out[t] = r.get_si();
    }
    return out;
}

fl::Algebra4 quotient_algebra(const QOrder& o, i64 ell)
{
    fl::Algebra4 a;
    a.ell = ell;
    auto b = o.lattice().elements();
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            auto c = reduce_mod(o, b[r] * b[s], ell);
            a.table[r][s] = fl::Vec(c.begin(), c.end());
        }
    auto one = reduce_mod(o, QuatElement(o.form(), 1, 0, 0, 0), ell);
    a.one = fl::Vec(one.begin(), one.end());
    return a;
}

fl::Mat MatrixSplit::image(const fl::Vec& coords) const
{
    fl::Vec e = fl::vec_mat(coords, entries, ell);
    return {{e[0], e[1]}, {e[2], e[3]}};
}

fl::Vec MatrixSplit::preimage(const fl::Mat& m) const
{
    return fl::vec_mat({m[0][0], m[0][1], m[1][0], m[1][1]}, entries_inverse, ell);
}

namespace {

QuatElement lift(const QOrder& o, const fl::Vec& c)
{
    auto b = o.lattice().elements();
    QuatElement x(o.form(), 0, 0, 0, 0);
    for (int t = 0; t < 4; ++t) x = x + mpq_class(c[t]) * b[t];
    return x;
}

i64 mod_q(const mpq_class& x, i64 ell)
{
    ensure(x.get_den() == 1, "non-integral value in order");
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_num_mpz_t(), ell);
    return r.get_si();
}

std::vector<QIdeal> ideals_from_subspaces(const QOrder& o, i64 ell, const std::vector<fl::Mat>& spaces)
{
    auto b = o.lattice().elements();
    std::vector<QIdeal> out;
    for (const auto& s : spaces) {
        std::vector<QuatElement> gens;
        for (const auto& x : b) gens.push_back(mpq_class(ell) * x);
        for (const auto& v : s) gens.push_back(lift(o, v));
        out.emplace_back(QLattice::from_generators(gens));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

MatrixSplit matrix_split(const QOrder& o, i64 ell, std::uint64_t seed)
{
    require(ell != o.form().p, "matrix_split: ell = p");
    require(is_prime(ell), "matrix_split: ell must be prime");
    fl::Algebra4 a = quotient_algebra(o, ell);
    std::mt19937_64 rng(seed);
    const i64 attempts = 4 * ell * ell * ell * ell;
    for (i64 at = 0; at < attempts; ++at) {
        fl::Vec x(4);
        for (auto& e : x) e = static_cast<i64>(rng() % static_cast<std::uint64_t>(ell));
        QuatElement lx = lift(o, x);
        i64 t = mod_q(lx.trd(), ell), n = mod_q(lx.nrd(), ell);
        std::vector<i64> roots;
        for (i64 z = 0; z < ell; ++z)
            if (mod(z * z - t * z + n, ell) == 0) roots.push_back(z);
        if (roots.size() != 2) continue;
        i64 l1 = roots[0], l2 = roots[1];
        fl::Vec e = a.scale(invmod(l1 - l2, ell), a.add(x, a.scale(-l2, a.one)));
        if (fl::is_zero(e) || e == a.one || a.mul(e, e) != e) continue;
        fl::Mat vs;
        for (int r = 0; r < 4; ++r) {
            fl::Vec er(4, 0);
            er[r] = 1;
            vs.push_back(a.mul(er, e));
        }
        fl::Mat v = fl::row_basis(vs, ell);
        if (v.size() != 2) continue;
        MatrixSplit ms;
        ms.ell = ell;
        ms.entries.assign(4, fl::Vec(4));
        for (int r = 0; r < 4; ++r) {
            fl::Vec er(4, 0);
            er[r] = 1;
            fl::Mat m(2, fl::Vec(2));
            for (int col = 0; col < 2; ++col) {
                auto c = fl::solve(v, a.mul(er, v[col]), ell);
                ensure(c.has_value(), "matrix_split: left ideal not stable");
                m[0][col] = (*c)[0];
                m[1][col] = (*c)[1];
            }
            ms.entries[r] = {m[0][0], m[0][1], m[1][0], m[1][1]};
            ms.images[r] = std::move(m);
        }
        auto inv = fl::inverse(ms.entries, ell);
        ensure(inv.has_value(), "matrix_split: images do not span M_2");
        ms.entries_inverse = std::move(*inv);
        return ms;
    }
    throw InternalError("matrix_split: no rank-one idempotent found");
}

std::vector<QIdeal> ideals_of_norm_ell(const QOrder& o, i64 ell, std::uint64_t seed)
{
    require_maximal(o, "ideals_of_norm_ell");
    MatrixSplit ms = matrix_split(o, ell, seed);
    std::vector<fl::Mat> spaces;
    auto add = [&](const fl::Mat& m1, const fl::Mat& m2) {
        spaces.push_back(fl::row_basis({ms.preimage(m1), ms.preimage(m2)}, ell));
    };
    add({{0, 1}, {0, 0}}, {{0, 0}, {0, 1}});
    for (i64 x = 0; x < ell; ++x) add({{1, x}, {0, 0}}, {{0, 0}, {1, x}});
    auto out = ideals_from_subspaces(o, ell, spaces);
    ensure(out.size() == static_cast<std::size_t>(ell + 1), "ideals_of_norm_ell: wrong count");
    return out;
}

std::vector<QIdeal> ideals_of_norm_ell_oracle(const QOrder& o, i64 ell)
{
    require(ell != o.form().p, "ideals_of_norm_ell_oracle: ell = p");
    fl::Algebra4 a = quotient_algebra(o, ell);
    std::vector<fl::Mat> spaces;
    for (int c1 = 0; c1 < 4; ++c1)
        for (int c2 = c1 + 1; c2 < 4; ++c2) {
            std::vector<std::pair<int, int>> free;
            for (int t = c1 + 1; t < 4; ++t)
                if (t != c2) free.emplace_back(0, t);
            for (int t = c2 + 1; t < 4; ++t) free.emplace_back(1, t);
            i64 total = 1;
            for (std::size_t t = 0; t < free.size(); ++t) total *= ell;
            for (i64 code = 0; code < total; ++code) {
                fl::Mat s(2, fl::Vec(4, 0));
                s[0][c1] = 1;
                s[1][c2] = 1;
                i64 cc = code;
                for (auto [row, col] : free) {
                    s[row][col] = cc % ell;
                    cc /= ell;
                }
                bool closed = true;
                for (int r = 0; r < 4 && closed; ++r) {
                    fl::Vec er(4, 0);
                    er[r] = 1;
                    for (const auto& v : s)
                        if (!fl::in_span(s, a.mul(er, v), ell)) { closed = false; break; }
                }
                if (closed) spaces.push_back(s);
            }
        }
    return ideals_from_subspaces(o, ell, spaces);
}

} // namespace qisog
