#include "doctest.h"

#include <algorithm>
#include <random>

#include "qisog/error.hpp"
#include "qisog/ideals.hpp"
#include "support.hpp"

using namespace qisog;

TEST_CASE("root maximal orders")
{
    for (i64 p : {7, 11, 13, 17, 19, 23, 29, 41, 73, 89, 97}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        auto roots = root_maximal_orders(alg);
        REQUIRE(roots.size() == 2);
        CHECK(roots[0] != roots[1]);
        for (const auto& o : roots) {
            CHECK(reduced_discriminant(o) == p);
            CHECK(o.is_maximal());
        }
        // The first order always contains O_{K_i}; for p = 3 mod 4 it also
        // contains O_{K_j}.
        CHECK(contains_quadratic_maximal(roots[0], alg, 'i'));
        if (p % 4 == 3) CHECK(contains_quadratic_maximal(roots[0], alg, 'j'));
    }
    CHECK_THROWS_AS(root_maximal_orders(QuatAlgebra(7, -1, -7).swapped()), PreconditionError);
}

TEST_CASE("order closure and discriminants")
{
    QuatAlgebra alg = QuatAlgebra::pizer(7);
    QOrder o = order_closure({alg.i(), (alg.one() + alg.j()) / 2});
    CHECK(reduced_discriminant(o) == 7);
    QOrder z = order_closure({alg.i(), alg.j()});
    CHECK(reduced_discriminant(z) == 28);
    CHECK(two_generator_discriminant(alg.i(), alg.j()) == 28);
    CHECK(two_generator_discriminant(alg.i(), (alg.one() + alg.j()) / 2) == 7);
    CHECK_THROWS_AS(order_closure({alg.i() / 2}), CapExceeded);
    CHECK_THROWS_AS(order_closure({alg.i()}), PreconditionError);
}

TEST_CASE("ell-neighbours: fast path equals the subspace oracle")
{
    for (i64 p : {13, 37}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        auto orders = test::walk_orders(root_maximal_orders(alg).front(), 2, 6, 41);
        for (const auto& o : orders)
            for (i64 ell : {2, 3, 5}) {
                auto fast = ideals_of_norm_ell(o, ell, 7);
                auto slow = ideals_of_norm_ell_oracle(o, ell);
                std::sort(fast.begin(), fast.end());
                std::sort(slow.begin(), slow.end());
                CHECK(fast.size() == static_cast<std::size_t>(ell + 1));
                CHECK(fast == slow);
                for (const auto& id : fast) {
                    CHECK(id.norm() == ell);
                    CHECK(id.left_order() == o);
                    CHECK(is_primitive(id));
                    CHECK_FALSE(id.is_two_sided());
                }
            }
    }
}

TEST_CASE("matrix splitting is an algebra isomorphism")
{
    QuatAlgebra alg = QuatAlgebra::pizer(37);
    QOrder o = root_maximal_orders(alg).front();
    std::mt19937_64 rng(42);
    for (i64 ell : {2, 3, 5, 7}) {
        MatrixSplit ms = matrix_split(o, ell, 3);
        fl::Algebra4 a = quotient_algebra(o, ell);
        for (int t = 0; t < 30; ++t) {
            fl::Vec x(4), y(4);
            for (auto& e : x) e = static_cast<i64>(rng() % ell);
            for (auto& e : y) e = static_cast<i64>(rng() % ell);
            CHECK(ms.image(a.mul(x, y)) == fl::mat_mul(ms.image(x), ms.image(y), ell));
            CHECK(ms.preimage(ms.image(x)) == x);
        }
    }
}

TEST_CASE("ideal norms, inverses and colon ideals")
{
    QuatAlgebra alg = QuatAlgebra::pizer(37);
    QOrder o = root_maximal_orders(alg).front();
    std::mt19937_64 rng(43);
    auto orders = test::walk_orders(o, 3, 8, 44);
    for (const auto& o2 : orders) {
        QIdeal i = connecting_ideal(o, o2);
        CHECK(i.left_order() == o);
        CHECK(i.right_order() == o2);
        CHECK(i.norm() * i.norm() == mpq_class(index(o.lattice(), i.lattice())));
        QIdeal inv = inverse(i);
        CHECK(inv.left_order() == o2);
        CHECK(inv.right_order() == o);
        CHECK(QLattice(i.lattice() * inv.lattice()) == o.lattice());
        CHECK(QLattice(inv.lattice() * i.lattice()) == o2.lattice());
        CHECK(colon_left(i, i).lattice() == o.lattice());
        CHECK(colon_right(i, i).lattice() == o2.lattice());
        QIdeal j = QIdeal(i.lattice().scaled(6));
        CHECK(content(j) == 6 * content(i));
        CHECK(primitive_part(j) == primitive_part(i));
        CHECK_FALSE(is_primitive(j));
        CHECK_FALSE(is_locally_primitive(j, 2));
        CHECK_FALSE(is_locally_primitive(j, 3));
        CHECK(is_locally_primitive(j, 5));
    }
}

TEST_CASE("connecting ideals match the membership oracle")
{
    for (i64 p : {13, 37}) {
        QuatAlgebra alg = QuatAlgebra::pizer(p);
        QOrder o = root_maximal_orders(alg).front();
        for (const auto& o2 : test::walk_orders(o, 2, 6, 45)) {
            QIdeal fast = connecting_ideal(o, o2);
            if (index(o.lattice(), o.lattice().intersect(o2.lattice())) > 16) continue;
            CHECK(fast == connecting_ideal_oracle(o, o2));
        }
    }
}

TEST_CASE("equivalence and principality")
{
    QuatAlgebra alg = QuatAlgebra::pizer(37);
    QOrder o = root_maximal_orders(alg).front();
    std::mt19937_64 rng(46);
    for (const auto& id : ideals_of_norm_ell(o, 2)) {
        QuatElement a = test::random_element(alg, rng, 5, 1);
        if (a.is_zero()) continue;
        QIdeal j(id.lattice().mul_right(a));
        auto w = is_equivalent(id, j);
        REQUIRE(w.has_value());
        CHECK(id.lattice().mul_right(*w) == j.lattice());
    }
    CHECK(is_principal(QIdeal::principal(o, alg.element(1, 1, 0, 0))));
    // Two of the three 2-neighbours of a p = 37 order are not principal.
    int principal = 0;
    for (const auto& id : ideals_of_norm_ell(o, 2)) principal += is_principal(id);
    CHECK(principal < 3);
}

TEST_CASE("ramified prime ideal")
{
    for (i64 p : {7, 13, 17, 37, 41}) {
        QOrder o = root_maximal_orders(QuatAlgebra::pizer(p)).front();
        QIdeal pp = ramified_prime_ideal(o);
        CHECK(pp.is_two_sided());
        CHECK(pp.norm() == p);
        CHECK(pp.lattice() * pp.lattice() == o.lattice().scaled(p));
    }
}
