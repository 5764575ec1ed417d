#include "doctest.h"

#include <gmpxx.h>

#include "orbitint/errors.hpp"
#include "orbitint/projpoint.hpp"

using namespace orbitint;

TEST_CASE("make normalizes to coprime coordinates with canonical sign") {
    auto p = proj_point::make(-2, -4);
    CHECK(p.x() == 1);
    CHECK(p.y() == 2);

    auto inf = proj_point::make(5, 0);
    CHECK(inf.is_infinity());
    CHECK(inf.x() == 1);

    auto neg_inf = proj_point::make(-3, 0);
    CHECK(neg_inf == proj_point::infinity());

    auto zero = proj_point::make(0, -7);
    CHECK(zero.x() == 0);
    CHECK(zero.y() == 1);

    CHECK_THROWS_AS(proj_point::make(0, 0), error);

    CHECK(proj_point::from_rational(mpq_class(6, -8)) == proj_point::make(-3, 4));
}

TEST_CASE("parsing and printing round-trip") {
    for (const char* s : {"3/2", "-7", "0", "inf", "-22/7"}) {
        auto p = proj_point::parse(s);
        CHECK(proj_point::parse(p.to_string()) == p);
    }
    CHECK(proj_point::parse("inf").is_infinity());
    CHECK(proj_point::parse("4/6").to_string() == "2/3");
    CHECK_THROWS_AS(proj_point::parse("abc"), error);
    CHECK(proj_point::parse("3/2").as_rational() == mpq_class(3, 2));
}

TEST_CASE("chordal_log at finite places counts wedge valuation") {
    auto P = proj_point::make(1, 1), Q = proj_point::make(4, 1);
    auto l = chordal_log(P, Q, place::finite(3));
    REQUIRE_FALSE(l.is_infinite());
    CHECK(l.finite_value().same_value(log_linear_real::log_term(mpq_class(3))));

    // Wedge not divisible by 5: lambda_5 = 0.
    auto l5 = chordal_log(P, Q, place::finite(5));
    CHECK(l5.finite_value().is_zero_form());
}

TEST_CASE("chordal_log at the archimedean place") {
    // lambda_inf([2:1], inf) = 1/2 * log 5.
    auto l = chordal_log(proj_point::make(2, 1), proj_point::infinity(),
                         place::archimedean());
    REQUIRE_FALSE(l.is_infinite());
    CHECK(l.finite_value().same_value(
        log_linear_real::scaled_log(mpq_class(1, 2), mpq_class(5))));
}

TEST_CASE("coincident points have infinite lambda") {
    auto P = proj_point::make(3, 7);
    CHECK(chordal_log(P, P, place::archimedean()).is_infinite());
    CHECK(chordal_log(P, P, place::finite(2)).is_infinite());
    CHECK(chordal_log(proj_point::infinity(), proj_point::infinity(), place::finite(3))
              .is_infinite());
}

TEST_CASE("lambda is symmetric and nonnegative") {
    const proj_point pts[] = {proj_point::make(3, 7), proj_point::make(-2, 5),
                              proj_point::infinity(), proj_point::make(0, 1),
                              proj_point::make(11, 4)};
    const place vs[] = {place::archimedean(), place::finite(2), place::finite(3),
                        place::finite(7)};
    for (const auto& P : pts)
        for (const auto& Q : pts) {
            if (P == Q) continue;
            for (const auto& v : vs) {
                auto a = chordal_log(P, Q, v).finite_value();
                auto b = chordal_log(Q, P, v).finite_value();
                CHECK(a.same_value(b));
                CHECK(a.sign() != sign_result::negative);
            }
        }
}

TEST_CASE("strong triangle inequality at finite places") {
    const proj_point pts[] = {proj_point::make(3, 7), proj_point::make(-2, 5),
                              proj_point::make(1, 1), proj_point::make(10, 1),
                              proj_point::infinity(), proj_point::make(5, 8)};
    const place vs[] = {place::finite(2), place::finite(3), place::finite(5)};
    for (const auto& x : pts)
        for (const auto& y : pts)
            for (const auto& z : pts) {
                if (x == y || x == z || y == z) continue;
                for (const auto& v : vs) {
                    auto xy = chordal_log(x, y, v).finite_value();
                    auto xz = chordal_log(x, z, v).finite_value();
                    auto yz = chordal_log(y, z, v).finite_value();
                    // lambda(x,y) >= min(lambda(x,z), lambda(y,z)) ...
                    const auto& m =
                        (xz - yz).sign() == sign_result::negative ? xz : yz;
                    CHECK((xy - m).sign() != sign_result::negative);
                    // ... with equality when the two branch values differ.
                    if ((xz - yz).sign() != sign_result::zero)
                        CHECK(xy.same_value(m));
                }
            }
}

TEST_CASE("naive height on normalized coordinates") {
    CHECK(naive_height(proj_point::make(3, 2))
              .same_value(log_linear_real::log_term(mpq_class(3))));
    CHECK(naive_height(proj_point::make(2, -5))
              .same_value(log_linear_real::log_term(mpq_class(5))));
    CHECK(naive_height(proj_point::infinity()).is_zero_form());
    CHECK(naive_height(proj_point::make(0, 3)).is_zero_form());
    CHECK(naive_height(proj_point::make(-1, 1)).is_zero_form());
}

TEST_CASE("height vs sum of lambdas against infinity") {
    // -1/2 log 2 <= h(P) - sum_v lambda_v(P, inf) <= 0, summing over the
    // archimedean place and the primes dividing the coordinates.
    struct Case {
        proj_point P;
        std::vector<long> support;
    };
    const Case cases[] = {
        {proj_point::make(10, 21), {2, 3, 5, 7}},
        {proj_point::make(-9, 20), {2, 3, 5}},
        {proj_point::make(1, 1), {}},
        {proj_point::make(7, 1), {7}},
        {proj_point::make(3, 1024), {2, 3}},
    };
    auto half_log2 = log_linear_real::scaled_log(mpq_class(1, 2), mpq_class(2));
    for (const auto& c : cases) {
        auto sum = chordal_log(c.P, proj_point::infinity(), place::archimedean())
                       .finite_value();
        for (long p : c.support)
            sum += chordal_log(c.P, proj_point::infinity(), place::finite(p))
                       .finite_value();
        auto diff = naive_height(c.P) - sum;
        CHECK(diff.sign() != sign_result::positive);
        CHECK((diff + half_log2).sign() != sign_result::negative);
    }
}

TEST_CASE("log-chordal identity through |x - y|_v") {
    // For finite rationals x != y and every place v:
    // lambda_v(x, y) = lambda_v(x, inf) + lambda_v(y, inf) - log|x - y|_v.
    const mpq_class xs[] = {mpq_class(3, 7), mpq_class(-2), mpq_class(10, 3),
                            mpq_class(1, 6)};
    const place vs[] = {place::archimedean(), place::finite(2), place::finite(3),
                        place::finite(7)};
    for (const auto& xq : xs)
        for (const auto& yq : xs) {
            if (xq == yq) continue;
            auto X = proj_point::from_rational(xq);
            auto Y = proj_point::from_rational(yq);
            for (const auto& v : vs) {
                auto lhs = chordal_log(X, Y, v).finite_value();
                auto rhs = chordal_log(X, proj_point::infinity(), v).finite_value() +
                           chordal_log(Y, proj_point::infinity(), v).finite_value() -
                           local_log_abs(xq - yq, v);
                CHECK(lhs.same_value(rhs));
            }
        }
}
