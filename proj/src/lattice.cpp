#include "qisog/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "qisog/error.hpp"

namespace qisog {

namespace {

void sub_mul(ZRow& dst, const ZRow& src, const mpz_class& q)
{
    for (std::size_t t = 0; t < dst.size(); ++t) dst[t] -= q * src[t];
}

mpz_class lcm_den(const std::vector<QuatElement>& xs)
{
    mpz_class d = 1;
    for (const auto& x : xs) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.denominator().get_mpz_t());
    return d;
}

} // namespace

ZMat hnf(ZMat a)
{
    if (a.empty()) return a;
    const std::size_t n = a.size(), m = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i) {
                if (sgn(a[i][c]) == 0) continue;
                if (best == n || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0) best = i;
            }
            if (best == n) break;
            std::swap(a[r], a[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (sgn(a[i][c]) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
                sub_mul(a[i], a[r], q);
                if (sgn(a[i][c]) != 0) done = false;
            }
            if (done) break;
        }
        if (sgn(a[r][c]) == 0) continue;
        if (sgn(a[r][c]) < 0)
            for (auto& e : a[r]) e = -e;
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
            if (sgn(q) != 0) sub_mul(a[i], a[r], q);
        }
        ++r;
    }
    a.resize(r);
    return a;
}

ZMat integer_kernel(const ZMat& a)
{
    const std::size_t n = a.size();
    if (n == 0) return {};
    const std::size_t m = a[0].size();
    ZMat aug(n, ZRow(m + n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < m; ++t) aug[i][t] = a[i][t];
        aug[i][m + i] = 1;
    }
    ZMat h = hnf(aug);
    ZMat out;
    for (const auto& row : h) {
        bool zero = std::all_of(row.begin(), row.begin() + m, [](const mpz_class& x) { return sgn(x) == 0; });
        if (zero) out.emplace_back(row.begin() + m, row.end());
    }
    return out;
}

std::optional<QMat> rational_inverse(const QMat& a)
{
    const std::size_t n = a.size();
    QMat m(n, std::vector<mpq_class>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[c], m[piv]);
        mpq_class inv = 1 / m[c][c];
        for (auto& e : m[c]) e *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            mpq_class f = m[i][c];
            for (std::size_t t = 0; t < 2 * n; ++t) m[i][t] -= f * m[c][t];
        }
    }
    QMat out(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

mpq_class rational_gcd(const std::vector<mpq_class>& xs)
{
    mpz_class d = 1;
    for (const auto& x : xs) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    mpz_class g = 0;
    for (const auto& x : xs) {
        mpz_class v = x.get_num() * (d / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    mpq_class r(g, d);
    r.canonicalize();
    return r;
}

QLattice QLattice::from_basis(Form form, const Basis4& basis, const mpz_class& den)
{
    require(den > 0, "QLattice: nonpositive denominator");
    ZMat rows;
    for (const auto& r : basis) rows.emplace_back(r.begin(), r.end());
    ZMat h = hnf(rows);
    require(h.size() == 4, "QLattice: rank-deficient span");
    QLattice l;
    l.form_ = form;
    mpz_class g = den;
    for (const auto& r : h)
        for (const auto& e : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) l.basis_[r][c] = h[r][c] / g;
    l.den_ = den / g;
    return l;
}

QLattice QLattice::from_generators(const std::vector<QuatElement>& gens)
{
    require(!gens.empty(), "QLattice: no generators");
    const Form form = gens[0].form();
    mpz_class d = lcm_den(gens);
    ZMat rows;
    rows.reserve(gens.size());
    for (const auto& x : gens) {
        ensure(x.form() == form, "QLattice: algebra mismatch");
        ZRow r(4);
        for (int t = 0; t < 4; ++t) r[t] = x[t].get_num() * (d / x[t].get_den());
        rows.push_back(std::move(r));
    }
    ZMat h = hnf(std::move(rows));
    require(h.size() == 4, "QLattice: generators do not span the algebra");
    Basis4 b;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) b[r][c] = h[r][c];
    return from_basis(form, b, d);
}

QuatElement QLattice::element(int r) const
{
    return QuatElement(form_, mpq_class(basis_[r][0], den_), mpq_class(basis_[r][1], den_),
                       mpq_class(basis_[r][2], den_), mpq_class(basis_[r][3], den_));
}

std::vector<QuatElement> QLattice::elements() const
{
    return {element(0), element(1), element(2), element(3)};
}

std::optional<std::array<mpz_class, 4>> QLattice::coordinates(const QuatElement& x) const
{
    std::array<mpz_class, 4> v;
    for (int t = 0; t < 4; ++t) {
        mpq_class s = x[t] * den_;
        if (s.get_den() != 1) return std::nullopt;
        v[t] = s.get_num();
    }
    std::array<mpz_class, 4> out;
    for (int r = 0; r < 4; ++r) {
        if (!mpz_divisible_p(v[r].get_mpz_t(), basis_[r][r].get_mpz_t())) return std::nullopt;
        out[r] = v[r] / basis_[r][r];
        for (int c = r; c < 4; ++c) v[c] -= out[r] * basis_[r][c];
    }
    return out;
}

bool QLattice::contains(const QLattice& m) const
{
    for (int r = 0; r < 4; ++r)
        if (!contains(m.element(r))) return false;
    return true;
}

QLattice QLattice::operator+(const QLattice& m) const
{
    auto gens = elements();
    auto more = m.elements();
    gens.insert(gens.end(), more.begin(), more.end());
    return from_generators(gens);
}

QLattice QLattice::operator*(const QLattice& m) const
{
    std::vector<QuatElement> gens;
    gens.reserve(16);
    auto xs = elements(), ys = m.elements();
    for (const auto& x : xs)
        for (const auto& y : ys) gens.push_back(x * y);
    return from_generators(gens);
}

QLattice QLattice::dual() const
{
    QMat b(4, std::vector<mpq_class>(4));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) b[r][c] = mpq_class(basis_[r][c], den_);
    auto inv = rational_inverse(b);
    ensure(inv.has_value(), "QLattice::dual: singular basis");
    std::vector<QuatElement> gens;
    for (int c = 0; c < 4; ++c)
        gens.emplace_back(form_, (*inv)[0][c], (*inv)[1][c], (*inv)[2][c], (*inv)[3][c]);
    return from_generators(gens);
}

QLattice QLattice::intersect(const QLattice& m) const
{
    ensure(form_ == m.form_, "QLattice: algebra mismatch");
    return (dual() + m.dual()).dual();
}

QLattice QLattice::scaled(const mpq_class& r) const
{
    require(r != 0, "QLattice::scaled: zero factor");
    std::vector<QuatElement> gens;
    for (int t = 0; t < 4; ++t) gens.push_back(r * element(t));
    return from_generators(gens);
}

QLattice QLattice::conj() const
{
    std::vector<QuatElement> gens;
    for (int t = 0; t < 4; ++t) gens.push_back(element(t).conj());
    return from_generators(gens);
}

QLattice QLattice::mul_left(const QuatElement& a) const
{
    std::vector<QuatElement> gens;
    for (int t = 0; t < 4; ++t) gens.push_back(a * element(t));
    return from_generators(gens);
}

QLattice QLattice::mul_right(const QuatElement& a) const
{
    std::vector<QuatElement> gens;
    for (int t = 0; t < 4; ++t) gens.push_back(element(t) * a);
    return from_generators(gens);
}

mpq_class QLattice::covolume() const
{
    mpz_class d = 1;
    for (int r = 0; r < 4; ++r) d *= basis_[r][r];
    mpz_class d4 = den_ * den_ * den_ * den_;
    mpq_class v(d, d4);
    v.canonicalize();
    return v;
}

std::string QLattice::key() const
{
    std::ostringstream os;
    os << den_;
    for (const auto& r : basis_)
        for (const auto& e : r) os << ',' << e;
    return os.str();
}

std::string QLattice::to_string() const
{
    std::ostringstream os;
    os << "(1/" << den_ << ")[";
    for (int r = 0; r < 4; ++r) {
        os << (r ? "; " : "");
        for (int c = 0; c < 4; ++c) os << (c ? " " : "") << basis_[r][c];
    }
    os << "]";
    return os.str();
}

mpz_class index(const QLattice& l, const QLattice& m)
{
    require(l.contains(m), "index: M is not contained in L");
    mpq_class r = m.covolume() / l.covolume();
    ensure(r.get_den() == 1, "index: non-integral determinant ratio");
    return r.get_num();
}

QLattice left_order(const QLattice& l)
{
    std::optional<QLattice> acc;
    for (const auto& b : l.elements()) {
        QLattice t = l.mul_right(b.inverse());
        acc = acc ? acc->intersect(t) : t;
    }
    return *acc;
}

QLattice right_order(const QLattice& l)
{
    std::optional<QLattice> acc;
    for (const auto& b : l.elements()) {
        QLattice t = l.mul_left(b.inverse());
        acc = acc ? acc->intersect(t) : t;
    }
    return *acc;
}

mpq_class reduced_norm(const QLattice& l)
{
    auto b = l.elements();
    std::vector<mpq_class> vals;
    for (int r = 0; r < 4; ++r) {
        vals.push_back(b[r].nrd());
        for (int s = r + 1; s < 4; ++s) vals.push_back((b[r] * b[s].conj()).trd());
    }
    return rational_gcd(vals);
}

QMat gram_matrix(const QLattice& l)
{
    auto b = l.elements();
    QMat g(4, std::vector<mpq_class>(4));
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) g[r][s] = (b[r] * b[s].conj()).trd() / 2;
    return g;
}

namespace {

mpz_class floor_q(const mpq_class& x)
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

mpz_class ceil_q(const mpq_class& x)
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

struct Enumerator {
    QMat q;
    std::size_t cap;
    std::size_t nodes = 0;
    std::array<mpz_class, 4> x;
    std::vector<std::array<mpz_class, 4>> found;

    void run(int i, const mpq_class& remaining, bool upper_zero)
    {
        if (i < 0) {
            if (!upper_zero) found.push_back(x);
            return;
        }
        mpq_class c = 0;
        for (int j = i + 1; j < 4; ++j) c -= q[i][j] * x[j];
        mpq_class r2 = remaining / q[i][i];
        mpz_class s = sqrt(floor_q(r2)) + 1;
        mpz_class lo = floor_q(c) - s, hi = ceil_q(c) + s;
        if (upper_zero && lo < 0) lo = 0;
        for (mpz_class xi = lo; xi <= hi; ++xi) {
            if (++nodes > cap) throw CapExceeded("min_norm_elements: enumeration cap exceeded");
            mpq_class d = xi - c;
            mpq_class t = q[i][i] * d * d;
            if (t > remaining) continue;
            x[i] = xi;
            run(i - 1, remaining - t, upper_zero && sgn(xi) == 0);
        }
        x[i] = 0;
    }
};

mpq_class inner(const QuatElement& x, const QuatElement& y)
{
    return (x * y.conj()).trd() / 2;
}

mpz_class round_q(const mpq_class& x)
{
    return floor_q(x + mpq_class(1, 2));
}

// Exact LLL (delta = 3/4) for the form (x, y) -> trd(x conj(y)) / 2.
std::vector<QuatElement> lll(std::vector<QuatElement> b)
{
    const int n = static_cast<int>(b.size());
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> bn(n);
    auto gso = [&] {
        std::vector<QuatElement> bs(b);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) {
                mu[i][j] = inner(b[i], bs[j]) / bn[j];
                bs[i] = bs[i] - mu[i][j] * bs[j];
            }
            bn[i] = inner(bs[i], bs[i]);
        }
    };
    gso();
    const mpq_class delta(3, 4);
    int k = 1;
    while (k < n) {
        for (int j = k - 1; j >= 0; --j) {
            mpz_class r = round_q(mu[k][j]);
            if (r == 0) continue;
            b[k] = b[k] - mpq_class(r) * b[j];
            gso();
        }
        if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso();
            k = std::max(k - 1, 1);
        }
    }
    return b;
}

} // namespace

std::vector<QuatElement> min_norm_elements(const QLattice& l, const mpq_class& bound, std::size_t node_cap)
{
    require(bound > 0, "min_norm_elements: bound must be positive");
    auto b = lll(l.elements());
    QMat q(4, std::vector<mpq_class>(4));
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) q[r][s] = inner(b[r], b[s]);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (int k = i + 1; k < 4; ++k)
            for (int m = k; m < 4; ++m) q[k][m] -= q[k][i] * q[i][m];
    }
    Enumerator en;
    en.q = std::move(q);
    en.cap = node_cap;
    for (auto& v : en.x) v = 0;
    en.run(3, bound, true);
    std::vector<std::pair<mpq_class, QuatElement>> out;
    out.reserve(en.found.size());
    for (const auto& c : en.found) {
        QuatElement e = mpq_class(c[0]) * b[0] + mpq_class(c[1]) * b[1] + mpq_class(c[2]) * b[2] + mpq_class(c[3]) * b[3];
        mpq_class n = e.nrd();
        ensure(n <= bound && n > 0, "min_norm_elements: enumeration bound violated");
        out.emplace_back(n, e);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& c) {
        if (a.first != c.first) return a.first < c.first;
        return a.second < c.second;
    });
    std::vector<QuatElement> res;
    res.reserve(out.size());
    for (auto& [n, e] : out) res.push_back(std::move(e));
    return res;
}

} // namespace qisog
