#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <random>

#include "qisog/ecgraph.hpp"
#include "qisog/error.hpp"
#include "qisog/modpoly.hpp"

using namespace qisog;

TEST_CASE("F_p^2 field axioms")
{
    std::mt19937_64 rng(51);
    for (i64 p : {5, 7, 11, 101, 997}) {
        Fp2Field f(p);
        std::uniform_int_distribution<i64> d(0, p - 1);
        for (int t = 0; t < 200; ++t) {
            Fp2 x{d(rng), d(rng)}, y{d(rng), d(rng)}, z{d(rng), d(rng)};
            CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
            CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
            CHECK(f.frobenius(f.mul(x, y)) == f.mul(f.frobenius(x), f.frobenius(y)));
            CHECK(f.pow(x, mpz_class(p)) == f.frobenius(x));
            if (x != Fp2{0, 0}) {
                CHECK(f.mul(x, f.inv(x)) == f.from_int(1));
                Fp2 s = f.sqr(x);
                CHECK(f.chi(s) == 1);
            }
        }
    }
}

TEST_CASE("roots with multiplicities")
{
    Fp2Field f(103);
    PolyRing r(f);
    std::mt19937_64 rng(52);
    std::uniform_int_distribution<i64> d(0, 102);
    for (int t = 0; t < 40; ++t) {
        std::map<Fp2, int> want;
        Poly x{f.from_int(1)};
        for (int s = 0; s < 5; ++s) {
            Fp2 a{d(rng), d(rng)};
            int m = 1 + static_cast<int>(rng() % 3);
            want[a] += m;
            for (int u = 0; u < m; ++u) x = r.mul(x, Poly{f.neg(a), f.from_int(1)});
        }
        // An irreducible quadratic factor contributes no roots.
        Fp2 c{1, 1};
        while (f.chi(c) != -1) c = f.add(c, f.from_int(1));
        x = r.mul(x, Poly{f.neg(c), f.from_int(0), f.from_int(1)});
        auto got = r.roots(x, t);
        CHECK(got.size() == want.size());
        for (auto [a, m] : got) CHECK(want[a] == m);
    }
}

TEST_CASE("modular polynomial files")
{
    for (i64 ell : {2, 3, 5, 7}) {
        ModPoly phi = load_modpoly(ell);
        CHECK_NOTHROW(validate_modpoly(phi));
        CHECK(phi.degree() == ell + 1);
        for (const auto& [ab, c] : phi.coeffs) CHECK(phi.coefficient(ab.second, ab.first) == c);
    }
    ModPoly phi2 = load_modpoly(2);
    CHECK(phi2.coefficient(3, 0) == 1);
    CHECK(phi2.coefficient(2, 0) == -162000);
    CHECK(phi2.coefficient(1, 1) == 40773375);
    CHECK(phi2.coefficient(0, 0) == mpz_class("-157464000000000"));
    CHECK(phi2.coefficient(2, 1) == 1488);
    CHECK(phi2.coefficient(2, 2) == -1);

    ModPoly bad = phi2;
    bad.coeffs[{1, 1}] += 1;
    CHECK_THROWS_AS(validate_modpoly(bad), PreconditionError);
    CHECK_THROWS_AS(parse_modpoly("ell 2\n3 0 1\n0 3 2\n"), PreconditionError);
    CHECK_THROWS_AS(load_modpoly(11, std::string("/nonexistent")), PreconditionError);
}

TEST_CASE("modular polynomial directory override")
{
    const char* old = std::getenv("QISOG_MODPOLY_DIR");
    std::string saved = old ? old : "";
    setenv("QISOG_MODPOLY_DIR", "/nonexistent-dir", 1);
    CHECK(modpoly_dir() == "/nonexistent-dir");
    CHECK_THROWS_AS(load_modpoly(2), PreconditionError);
    if (old) setenv("QISOG_MODPOLY_DIR", saved.c_str(), 1);
    else unsetenv("QISOG_MODPOLY_DIR");
    CHECK_NOTHROW(load_modpoly(2));
}

TEST_CASE("supersingular j-invariants agree with the exhaustive scan")
{
    for (i64 p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        auto fast = supersingular_j_list(p);
        CHECK(fast == supersingular_j_scan(p));
        // floor(p/12) + (0, 1, 1, 2) for p = 1, 5, 7, 11 mod 12.
        const i64 extra[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
        CHECK(static_cast<i64>(fast.size()) == p / 12 + extra[p % 12]);
        Fp2Field f(p);
        bool has1728 = std::find(fast.begin(), fast.end(), f.from_int(1728)) != fast.end();
        bool has0 = std::find(fast.begin(), fast.end(), f.from_int(0)) != fast.end();
        CHECK(has1728 == (p % 4 == 3));
        CHECK(has0 == (p % 3 == 2));
    }
}

TEST_CASE("curves and point counts")
{
    Fp2Field f(101);
    for (i64 j : {0, 1728, 5, 17, 66}) {
        auto e = curve_from_j(f, f.from_int(j));
        CHECK(j_invariant(f, e) == f.from_int(j));
        i64 n = count_points(f, e);
        CHECK(std::llabs(n - (101 * 101 + 1)) <= 2 * 101);
    }
    CHECK_THROWS_AS(supersingular_j_list(kMaxCurvePrime + 9), PreconditionError);
}

TEST_CASE("isogeny graphs")
{
    for (i64 p : {11, 37, 101})
        for (i64 ell : {2, 3, 5}) {
            MultiGraph g = build_isogeny_graph(p, ell);
            CHECK(g.size() == supersingular_j_list(p).size());
            for (std::size_t v = 0; v < g.size(); ++v) CHECK(g.out_degree(v) == ell + 1);
            CHECK(g.is_strongly_connected());
            MultiGraph r = reduce_graph(g);
            for (std::size_t v = 0; v < r.size(); ++v) CHECK(r.out_degree(v) == ell + 1);
            CHECK(build_isogeny_graph(p, ell, 99).edges.size() == g.edges.size());
        }
    CHECK(build_isogeny_graph(37, 2).size() == 3);
    CHECK(build_isogeny_graph(101, 2).size() == 9);
    CHECK_THROWS_AS(build_isogeny_graph(37, 37), PreconditionError);
}
