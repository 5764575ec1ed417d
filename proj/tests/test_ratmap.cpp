#include "doctest.h"

#include <gmpxx.h>

#include <vector>

#include "orbitint/errors.hpp"
#include "orbitint/factor.hpp"
#include "orbitint/intpoly.hpp"
#include "orbitint/projpoint.hpp"
#include "orbitint/ratmap.hpp"
#include "orbitint/rng.hpp"

using namespace orbitint;

namespace {

rat_poly rp(std::vector<mpq_class> c) { return rat_poly(std::move(c)); }

rational_map make_map(std::initializer_list<long> f, std::initializer_list<long> g) {
    return rational_map(int_poly(f), int_poly(g));
}

int_poly random_poly(xoshiro256ss& rng, int max_deg, long bound) {
    std::vector<mpz_class> c(static_cast<size_t>(rng.below(static_cast<unsigned long>(max_deg) + 1)) + 1);
    for (auto& v : c) v = static_cast<long>(rng.range(-bound, bound));
    return int_poly(std::move(c));
}

rational_map random_map(xoshiro256ss& rng, int max_deg, long bound) {
    for (;;) {
        int_poly f = random_poly(rng, max_deg, bound);
        int_poly g = random_poly(rng, max_deg, bound);
        if (f.is_zero() || g.is_zero()) continue;
        if (std::max(f.degree(), g.degree()) < 2) continue;
        try {
            return rational_map(std::move(f), std::move(g));
        } catch (const error&) {
            continue;  // reduced below degree 2
        }
    }
}

proj_point random_point(xoshiro256ss& rng) {
    for (;;) {
        mpz_class x(static_cast<long>(rng.range(-20, 20)));
        mpz_class y(static_cast<long>(rng.range(-20, 20)));
        if (x == 0 && y == 0) continue;
        return proj_point::make(x, y);
    }
}

}  // namespace

TEST_CASE("map normalization removes content, factors, and fixes the sign") {
    rational_map a(rp({2, 0, 2}), rp({2}));
    CHECK(a.numerator() == int_poly{1, 0, 1});
    CHECK(a.denominator() == int_poly{1});
    CHECK(a.degree() == 2);

    CHECK_THROWS_AS(rational_map(rp({-1, 0, 1}), rp({-1, 1})), error);
    try {
        rational_map bad(rp({-1, 0, 1}), rp({-1, 1}));
    } catch (const error& e) {
        CHECK(e.code() == errc::degree_too_low);
    }

    rational_map b(rp({3, 0, 2}), rp({-7, 5}));
    CHECK(b.numerator() == int_poly{3, 0, 2});
    CHECK(b.denominator() == int_poly{-7, 5});

    // sign convention: leading denominator coefficient positive
    rational_map c(rp({0, 0, 1}), rp({-1}));
    CHECK(c.numerator() == int_poly{0, 0, -1});
    CHECK(c.denominator() == int_poly{1});

    // rational coefficients are cleared exactly
    rational_map d(rp({0, 0, mpq_class(1, 2)}), rp({3}));
    CHECK(d.numerator() == int_poly{0, 0, 1});
    CHECK(d.denominator() == int_poly{6});

    // equal maps from differently scaled inputs
    rational_map e1(rp({1, 0, mpq_class(1, 3)}), rp({0, 2}));
    rational_map e2(rp({3, 0, 1}), rp({0, 6}));
    CHECK(e1 == e2);

    CHECK_THROWS_AS(rational_map(rp({}), rp({})), error);
    try {
        rational_map bad(rp({}), rp({}));
    } catch (const error& e) {
        CHECK(e.code() == errc::zero_map);
    }
    CHECK_THROWS_AS(rational_map(rp({}), rp({0, 0, 1})), error);
    CHECK_THROWS_AS(rational_map(rp({0, 0, 1}), rp({})), error);
}

TEST_CASE("cached resultants on frozen maps") {
    CHECK(make_map({0, 0, 1}, {1}).resultant() == 1);          // z^2
    CHECK(make_map({1, 0, 1}, {0, 1}).resultant() == 1);       // (z^2+1)/z
    CHECK(make_map({3, 0, 2}, {1}).resultant() == 4);          // 2z^2+3
    CHECK(make_map({-2, 0, 1}, {1}).resultant() == 1);         // z^2-2
    CHECK(make_map({0, 1, 1}, {1}).resultant() == 1);          // z^2+z
    CHECK(make_map({2, 0, 1}, {0, 2}).resultant() == 8);       // (z^2+2)/(2z)
}

TEST_CASE("evaluation on frozen points") {
    rational_map sq_minus(rp({-1, 0, 1}), rp({1}));  // z^2 - 1
    CHECK(sq_minus.evaluate(proj_point::infinity()) == proj_point::infinity());
    CHECK(sq_minus.evaluate(proj_point::make(0, 1)) == proj_point::make(-1, 1));

    rational_map ratio(rp({-1, 0, 1}), rp({0, 1}));  // (z^2-1)/z
    CHECK(ratio.evaluate(proj_point::make(1, 1)) == proj_point::make(0, 1));
    CHECK(ratio.evaluate(proj_point::make(0, 1)) == proj_point::infinity());

    rational_map recip(rp({1}), rp({1, 0, 1}));  // 1/(z^2+1)
    CHECK(recip.evaluate(proj_point::make(2, 1)) == proj_point::make(1, 5));

    rational_map shift(rp({0, 1, 1}), rp({1}));  // z^2+z
    CHECK(shift.evaluate(proj_point::make(3, 1)) == proj_point::make(12, 1));

    rational_map newton(rp({2, 0, 1}), rp({0, 2}));  // (z^2+2)/(2z)
    CHECK(newton.evaluate(proj_point::make(1, 1)) == proj_point::make(3, 2));
    CHECK(newton.evaluate(proj_point::make(2, 3)) == proj_point::make(11, 6));
}

TEST_CASE("composition and iteration on frozen maps") {
    rational_map sq = make_map({0, 0, 1}, {1});
    rational_map sq_plus = make_map({1, 0, 1}, {1});

    rational_map c1 = compose(sq, sq_plus);  // (z^2+1)^2
    CHECK(c1.numerator() == int_poly{1, 0, 2, 0, 1});
    CHECK(c1.denominator() == int_poly{1});
    CHECK(c1.degree() == 4);

    rational_map c2 = compose(sq_plus, sq);  // z^4 + 1
    CHECK(c2.numerator() == int_poly{1, 0, 0, 0, 1});

    rational_map shift = make_map({0, 1, 1}, {1});
    rational_map it2 = iterate(shift, 2);
    CHECK(it2.numerator() == int_poly{0, 1, 2, 2, 1});
    CHECK(it2.denominator() == int_poly{1});

    rational_map recip_sq = make_map({1}, {0, 0, 1});  // 1/z^2
    rational_map r2 = iterate(recip_sq, 2);
    CHECK(r2.numerator() == int_poly{0, 0, 0, 0, 1});
    CHECK(r2.denominator() == int_poly{1});

    // hand-expanded second iterate of the square-root Newton map
    rational_map newton = make_map({2, 0, 1}, {0, 2});
    rational_map n2 = iterate(newton, 2);
    CHECK(n2.numerator() == int_poly{4, 0, 12, 0, 1});
    CHECK(n2.denominator() == int_poly{0, 8, 0, 4});
    CHECK(n2.resultant() == sylvester_resultant(n2.numerator(), n2.denominator(), 4));

    CHECK(iterate(shift, 1) == shift);
    CHECK_THROWS_AS(iterate(shift, 0), error);
    CHECK_THROWS_AS(iterate(shift, 11), error);  // degree 2048 > default budget
    try {
        iterate(shift, 11);
    } catch (const error& e) {
        CHECK(e.code() == errc::iterate_too_large);
    }
    CHECK_THROWS_AS(compose(sq, sq, 3), error);
}

TEST_CASE("orbit lists and the coordinate bit budget") {
    rational_map shift = make_map({0, 1, 1}, {1});
    auto o = orbit(shift, proj_point::make(3, 1), 3);
    REQUIRE(o.size() == 4);
    CHECK(o[0] == proj_point::make(3, 1));
    CHECK(o[1] == proj_point::make(12, 1));
    CHECK(o[2] == proj_point::make(156, 1));
    CHECK(o[3] == proj_point::make(24492, 1));

    rational_map sq_minus = make_map({-1, 0, 1}, {1});
    auto cyc = orbit(sq_minus, proj_point::make(0, 1), 4);
    REQUIRE(cyc.size() == 5);
    CHECK(cyc[0] == proj_point::make(0, 1));
    CHECK(cyc[1] == proj_point::make(-1, 1));
    CHECK(cyc[2] == proj_point::make(0, 1));
    CHECK(cyc[3] == proj_point::make(-1, 1));
    CHECK(cyc[4] == proj_point::make(0, 1));

    CHECK(orbit(shift, proj_point::make(5, 7), 0) ==
          std::vector<proj_point>{proj_point::make(5, 7)});

    CHECK_THROWS_AS(orbit(shift, proj_point::make(3, 1), 64, 1000), error);
    try {
        orbit(shift, proj_point::make(3, 1), 64, 1000);
    } catch (const error& e) {
        CHECK(e.code() == errc::height_budget_exceeded);
        // coordinates roughly double in bit length per step from ~1.8 bits
        CHECK(e.index() >= 9);
        CHECK(e.index() <= 11);
    }
}

TEST_CASE("ramification indices on frozen points") {
    rational_map sq = make_map({0, 0, 1}, {1});
    CHECK(ramification_index(sq, proj_point::make(0, 1)) == 2);
    CHECK(ramification_index(sq, proj_point::infinity()) == 2);
    CHECK(ramification_index(sq, proj_point::make(1, 1)) == 1);

    rational_map ratio = make_map({-1, 0, 1}, {0, 1});
    CHECK(ramification_index(ratio, proj_point::infinity()) == 1);

    rational_map cube = make_map({0, 0, 0, 1}, {1});
    CHECK(ramification_index(cube, proj_point::make(0, 1)) == 3);
    CHECK(ramification_index(cube, proj_point::infinity()) == 3);

    rational_map newton = make_map({2, 0, 1}, {0, 2});
    CHECK(ramification_index(newton, proj_point::make(0, 1)) == 1);
    CHECK(ramification_index(newton, proj_point::infinity()) == 1);

    rational_map shift = make_map({0, 1, 1}, {1});
    CHECK(ramification_index(shift, proj_point::infinity()) == 2);
}

TEST_CASE("fiber reports on frozen targets") {
    rational_map sq = make_map({0, 0, 1}, {1});

    auto f0 = fiber_data(sq, proj_point::make(0, 1));
    REQUIRE(f0.finite.size() == 1);
    CHECK(f0.finite[0].factor == int_poly{0, 1});
    CHECK(f0.finite[0].multiplicity == 2);
    CHECK(f0.infinity_multiplicity == 0);
    CHECK(f0.weighted_size() == 2);

    auto f1 = fiber_data(sq, proj_point::make(1, 1));
    REQUIRE(f1.finite.size() == 2);
    CHECK(f1.finite[0].factor == int_poly{-1, 1});
    CHECK(f1.finite[1].factor == int_poly{1, 1});
    CHECK(f1.finite[0].multiplicity == 1);
    CHECK(f1.finite[1].multiplicity == 1);
    CHECK(f1.all_rational());

    auto finf = fiber_data(sq, proj_point::infinity());
    CHECK(finf.finite.empty());
    CHECK(finf.infinity_multiplicity == 2);

    auto fneg = fiber_data(sq, proj_point::make(-1, 1));
    REQUIRE(fneg.finite.size() == 1);
    CHECK(fneg.finite[0].factor == int_poly{1, 0, 1});
    CHECK_FALSE(fneg.all_rational());

    rational_map shift = make_map({0, 1, 1}, {1});
    auto fs = fiber_data(shift, proj_point::make(0, 1));
    REQUIRE(fs.finite.size() == 2);
    CHECK(fs.finite[0].factor == int_poly{0, 1});
    CHECK(fs.finite[1].factor == int_poly{1, 1});

    rational_map ratio = make_map({-1, 0, 1}, {0, 1});
    auto fr = fiber_data(ratio, proj_point::infinity());
    REQUIRE(fr.finite.size() == 1);
    CHECK(fr.finite[0].factor == int_poly{0, 1});
    CHECK(fr.infinity_multiplicity == 1);
    CHECK(fr.weighted_size() == 2);

    rational_map recip = make_map({1}, {1, 0, 1});
    auto fq = fiber_data(recip, proj_point::make(1, 1));
    REQUIRE(fq.finite.size() == 1);
    CHECK(fq.finite[0].factor == int_poly{0, 1});
    CHECK(fq.finite[0].multiplicity == 2);
}

TEST_CASE("exceptional points on frozen maps") {
    auto e_sq = exceptional_points(make_map({0, 0, 1}, {1}));
    CHECK(e_sq.total_count() == 2);
    CHECK(e_sq.contains(proj_point::infinity()));
    CHECK(e_sq.contains(proj_point::make(0, 1)));
    CHECK(e_sq.conjugate_pairs.empty());

    auto e_shift = exceptional_points(make_map({0, 1, 1}, {1}));
    CHECK(e_shift.total_count() == 1);
    CHECK(e_shift.contains(proj_point::infinity()));
    CHECK_FALSE(e_shift.contains(proj_point::make(0, 1)));

    auto e_ratio = exceptional_points(make_map({-1, 0, 1}, {0, 1}));
    CHECK(e_ratio.empty());

    auto e_newton = exceptional_points(make_map({2, 0, 1}, {0, 2}));
    CHECK(e_newton.points.empty());
    REQUIRE(e_newton.conjugate_pairs.size() == 1);
    CHECK(e_newton.conjugate_pairs[0] == int_poly{-2, 0, 1});
    CHECK(e_newton.total_count() == 2);

    auto e_recip = exceptional_points(make_map({1}, {0, 0, 1}));
    CHECK(e_recip.total_count() == 2);
    CHECK(e_recip.contains(proj_point::infinity()));
    CHECK(e_recip.contains(proj_point::make(0, 1)));

    auto e_cheb = exceptional_points(make_map({-2, 0, 1}, {1}));
    CHECK(e_cheb.total_count() == 1);
    CHECK(e_cheb.contains(proj_point::infinity()));
}

TEST_CASE("polynomial second iterates") {
    CHECK(second_iterate_is_polynomial(make_map({-2, 0, 1}, {1})));
    CHECK(second_iterate_is_polynomial(make_map({1}, {0, 0, 1})));
    CHECK_FALSE(second_iterate_is_polynomial(make_map({-1, 0, 1}, {0, 1})));
    CHECK_FALSE(second_iterate_is_polynomial(make_map({2, 0, 1}, {0, 2})));
}

TEST_CASE("map rendering") {
    CHECK(make_map({0, 1, 1}, {1}).to_string() == "(z^2 + z)/(1)");
    CHECK(make_map({2, 0, 1}, {0, 2}).to_string() == "(z^2 + 2)/(2*z)");
}

TEST_CASE("composite resultants match direct determinants") {
    xoshiro256ss rng(0x5eed);
    for (int iter = 0; iter < 40; ++iter) {
        rational_map phi = random_map(rng, 3, 6);
        rational_map psi = random_map(rng, 3, 6);
        rational_map comp = compose(phi, psi);
        CHECK(comp.resultant() ==
              sylvester_resultant(comp.numerator(), comp.denominator(), comp.degree()));
    }
}

TEST_CASE("iterates compose associatively and agree with orbits") {
    xoshiro256ss rng(0x17e4);
    for (int iter = 0; iter < 15; ++iter) {
        rational_map phi = random_map(rng, 2, 4);
        rational_map p2 = iterate(phi, 2);
        rational_map p3 = iterate(phi, 3);
        CHECK(p3 == compose(phi, p2));
        CHECK(p3 == compose(p2, phi));

        proj_point P = random_point(rng);
        auto o = orbit(phi, P, 3);
        CHECK(p3.evaluate(P) == o.back());
        CHECK(p2.evaluate(P) == o[2]);
    }
}

TEST_CASE("fiber sizes, ramification sums, and multiplicativity on random maps") {
    xoshiro256ss rng(0xfeedbee5);
    for (int iter = 0; iter < 30; ++iter) {
        rational_map phi = random_map(rng, 4, 8);
        const int d = phi.degree();

        // multiplicity-weighted fiber size is the degree, for finite and
        // infinite targets alike
        for (int k = 0; k < 3; ++k)
            CHECK(fiber_data(phi, random_point(rng)).weighted_size() == d);
        CHECK(fiber_data(phi, proj_point::infinity()).weighted_size() == d);

        // total ramification drop equals 2d-2: finite critical points show up
        // as factor multiplicities of the wronskian numerator, the rest sits
        // at infinity
        int_poly w = phi.numerator().derivative() * phi.denominator() -
                     phi.numerator() * phi.denominator().derivative();
        REQUIRE_FALSE(w.is_zero());
        int finite_drop = 0;
        for (const auto& pf : factor_integer_poly(w).factors)
            finite_drop += pf.factor.degree() * pf.multiplicity;
        CHECK(finite_drop + (2 * d - 2 - w.degree()) == 2 * d - 2);

        // ramification indices at rational critical candidates agree with the
        // multiplicity of the matching fiber entry
        proj_point P = random_point(rng);
        int e = ramification_index(phi, P);
        auto fib = fiber_data(phi, phi.evaluate(P));
        if (P.is_infinity()) {
            CHECK(fib.infinity_multiplicity == e);
        } else {
            int_poly lin(std::vector<mpz_class>{-P.x(), P.y()});
            bool found = false;
            for (const auto& entry : fib.finite)
                if (entry.factor == lin) {
                    CHECK(entry.multiplicity == e);
                    found = true;
                }
            CHECK(found);
        }

        CHECK(exceptional_points(phi).total_count() <= 2);
    }
}

TEST_CASE("ramification is multiplicative under composition") {
    xoshiro256ss rng(0xabcd);
    for (int iter = 0; iter < 20; ++iter) {
        rational_map phi = random_map(rng, 2, 5);
        rational_map psi = random_map(rng, 2, 5);
        rational_map comp = compose(phi, psi);
        proj_point P = (iter % 5 == 0) ? proj_point::infinity() : random_point(rng);
        CHECK(ramification_index(comp, P) ==
              ramification_index(phi, psi.evaluate(P)) * ramification_index(psi, P));
    }
}
