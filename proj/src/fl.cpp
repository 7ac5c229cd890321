#include "qisog/fl.hpp"

#include <algorithm>

#include "qisog/error.hpp"

namespace qisog::fl {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& a, i64 ell)
{
    std::vector<std::size_t> piv;
    if (a.empty()) return piv;
    const std::size_t n = a.size(), m = a[0].size();
    for (auto& row : a)
        for (auto& e : row) e = mod(e, ell);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[r], a[p]);
        i64 inv = invmod(a[r][c], ell);
        for (auto& e : a[r]) e = e * inv % ell;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || a[i][c] == 0) continue;
            i64 f = a[i][c];
            for (std::size_t t = 0; t < m; ++t) a[i][t] = mod(a[i][t] - f * a[r][t], ell);
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

} // namespace

Mat row_basis(Mat rows, i64 ell)
{
    rref(rows, ell);
    return rows;
}

int rank(const Mat& rows, i64 ell)
{
    return static_cast<int>(row_basis(rows, ell).size());
}

Mat left_kernel(const Mat& a, i64 ell)
{
    if (a.empty()) return {};
    const std::size_t n = a.size(), m = a[0].size();
    Mat t(m, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
    auto piv = rref(t, ell);
    Mat out;
    for (std::size_t free = 0; free < n; ++free) {
        if (std::find(piv.begin(), piv.end(), free) != piv.end()) continue;
        Vec x(n, 0);
        x[free] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = mod(-t[r][free], ell);
        out.push_back(std::move(x));
    }
    return out;
}

std::optional<Mat> inverse(const Mat& a, i64 ell)
{
    const std::size_t n = a.size();
    Mat m(n, Vec(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = 1;
    }
    auto piv = rref(m, ell);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Mat out(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

Vec vec_mat(const Vec& v, const Mat& a, i64 ell)
{
    Vec out(a.empty() ? 0 : a[0].size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = (out[j] + v[i] * a[i][j]) % ell;
    }
    for (auto& e : out) e = mod(e, ell);
    return out;
}

Mat mat_mul(const Mat& a, const Mat& b, i64 ell)
{
    Mat out;
    for (const auto& row : a) out.push_back(vec_mat(row, b, ell));
    return out;
}

std::optional<Vec> solve(const Mat& rows, const Vec& v, i64 ell)
{
    // Solve x * rows = v through the kernel of [rows; v].
    Mat aug = rows;
    aug.push_back(v);
    for (const auto& k : left_kernel(aug, ell)) {
        i64 last = k.back();
        if (last == 0) continue;
        i64 s = mod(-invmod(last, ell), ell);
        Vec x(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) x[i] = k[i] * s % ell;
        return x;
    }
    if (is_zero(v)) return Vec(rows.size(), 0);
    return std::nullopt;
}

bool in_span(const Mat& rows, const Vec& v, i64 ell)
{
    Mat aug = rows;
    aug.push_back(v);
    return rank(aug, ell) == rank(rows, ell);
}

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
}

Vec Algebra4::mul(const Vec& x, const Vec& y) const
{
    Vec out(4, 0);
    for (int r = 0; r < 4; ++r) {
        if (x[r] == 0) continue;
        for (int s = 0; s < 4; ++s) {
            if (y[s] == 0) continue;
            i64 c = x[r] * y[s] % ell;
            for (int t = 0; t < 4; ++t) out[t] = (out[t] + c * table[r][s][t]) % ell;
        }
    }
    return out;
}

Vec Algebra4::add(const Vec& x, const Vec& y) const
{
    Vec out(4);
    for (int t = 0; t < 4; ++t) out[t] = (x[t] + y[t]) % ell;
    return out;
}

Vec Algebra4::scale(i64 c, const Vec& x) const
{
    Vec out(4);
    for (int t = 0; t < 4; ++t) out[t] = mod(c * x[t], ell);
    return out;
}

Mat Algebra4::left_mult(const Vec& x) const
{
    Mat out;
    for (int r = 0; r < 4; ++r) {
        Vec e(4, 0);
        e[r] = 1;
        out.push_back(mul(x, e));
    }
    return out;
}

bool Algebra4::is_nilpotent(const Vec& x) const
{
    Vec y = x;
    for (int t = 0; t < 3; ++t) y = mul(y, x);
    return is_zero(y);
}

} // namespace qisog::fl
