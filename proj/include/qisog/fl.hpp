#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qisog/numth.hpp"

// Dense linear algebra over F_ell with vectors as rows.
namespace qisog::fl {

using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;

Mat row_basis(Mat rows, i64 ell);
int rank(const Mat& rows, i64 ell);
// Basis of {x : x * a = 0}.
Mat left_kernel(const Mat& a, i64 ell);
std::optional<Mat> inverse(const Mat& a, i64 ell);
Vec vec_mat(const Vec& v, const Mat& a, i64 ell);
Mat mat_mul(const Mat& a, const Mat& b, i64 ell);
// Coordinates of v on independent rows, if v lies in their span.
std::optional<Vec> solve(const Mat& rows, const Vec& v, i64 ell);
bool in_span(const Mat& rows, const Vec& v, i64 ell);
bool is_zero(const Vec& v);

// Four-dimensional associative algebra over F_ell given by structure
// constants on a basis e_0..e_3.
struct Algebra4 {
    i64 ell = 0;
    std::array<std::array<Vec, 4>, 4> table;
    Vec one;

    Vec mul(const Vec& x, const Vec& y) const;
    Vec add(const Vec& x, const Vec& y) const;
    Vec scale(i64 c, const Vec& x) const;
    // Matrix of y -> x*y with rows indexed by basis elements e_r -> x e_r.
    Mat left_mult(const Vec& x) const;
    bool is_nilpotent(const Vec& x) const;
};

} // namespace qisog::fl
