#include "doctest.h"

#include <gmpxx.h>

#include "orbitint/errors.hpp"
#include "orbitint/places.hpp"

using namespace orbitint;

TEST_CASE("place construction validates primality") {
    CHECK(place::finite(2).prime() == 2);
    CHECK(place::finite(97).prime() == 97);
    CHECK_THROWS_AS(place::finite(1), error);
    CHECK_THROWS_AS(place::finite(4), error);
    CHECK_THROWS_AS(place::finite(91), error); // 7*13
    try {
        place::finite(6);
        FAIL("expected not_prime");
    } catch (const error& e) {
        CHECK(e.code() == errc::not_prime);
    }
}

TEST_CASE("place parsing and ordering") {
    CHECK(place::parse("inf").is_archimedean());
    CHECK(place::parse("13").prime() == 13);
    CHECK_THROWS_AS(place::parse("-2"), error);
    CHECK_THROWS_AS(place::parse("x"), error);

    CHECK(place::archimedean() < place::finite(2));
    CHECK(place::finite(2) < place::finite(3));
    CHECK(place::archimedean().to_string() == "inf");
}

TEST_CASE("place_set parses, sorts, dedups") {
    auto S = place_set::parse("3, 2, inf, 3");
    CHECK(S.size() == 3);
    CHECK(S.has_archimedean());
    CHECK(S.to_string() == "inf,2,3");
    CHECK(S.contains(place::finite(3)));
    CHECK_FALSE(S.contains(place::finite(5)));

    auto F = place_set::parse("7");
    CHECK_FALSE(F.has_archimedean());
    CHECK(F.size() == 1);
}

TEST_CASE("padic_valuation on integers and rationals") {
    CHECK(padic_valuation(mpq_class(12), 2) == 2);
    CHECK(padic_valuation(mpq_class(12), 3) == 1);
    CHECK(padic_valuation(mpq_class(12), 5) == 0);
    CHECK(padic_valuation(mpq_class(3, 4), 2) == -2);
    CHECK(padic_valuation(mpq_class(-9, 5), 3) == 2);
    CHECK_THROWS_AS(padic_valuation(mpq_class(0), 2), error);
    CHECK_THROWS_AS(padic_valuation(mpq_class(1), 6), error);
}

TEST_CASE("local_log_abs matches hand values") {
    // |12|_3 = 1/3, so log|12|_3 = -log 3.
    auto a = local_log_abs(12, place::finite(3));
    CHECK(a.same_value(-log_linear_real::log_term(mpq_class(3))));

    // |-3/4| archimedean: log(3/4) = log 3 - log 4.
    auto b = local_log_abs(mpq_class(-3, 4), place::archimedean());
    CHECK(b.same_value(log_linear_real::log_term(mpq_class(3)) -
                       log_linear_real::log_term(mpq_class(4))));

    // |1|_v = 1 everywhere.
    CHECK(local_log_abs(1, place::archimedean()).is_zero_form());
    CHECK(local_log_abs(1, place::finite(5)).is_zero_form());

    CHECK_THROWS_AS(local_log_abs(0, place::archimedean()), error);
}

TEST_CASE("multiplicativity of local_log_abs") {
    const mpq_class xs[] = {mpq_class(6, 35), mpq_class(-14, 9), mpq_class(50),
                            mpq_class(1, 8)};
    const place vs[] = {place::archimedean(), place::finite(2), place::finite(3),
                        place::finite(5), place::finite(7)};
    for (const auto& x : xs)
        for (const auto& y : xs)
            for (const auto& v : vs) {
                auto lhs = local_log_abs(x * y, v);
                auto rhs = local_log_abs(x, v) + local_log_abs(y, v);
                CHECK(lhs.same_value(rhs));
            }
}

TEST_CASE("product formula over the support of x") {
    // x built from known primes so the support is explicit.
    struct Case {
        mpq_class x;
        std::vector<long> support;
    };
    const Case cases[] = {
        {mpq_class(12), {2, 3}},
        {mpq_class(-50, 21), {2, 3, 5, 7}},
        {mpq_class(1, 1024), {2}},
        {mpq_class(455, 323), {5, 7, 13, 17, 19}},
    };
    for (const auto& c : cases) {
        auto sum = local_log_abs(c.x, place::archimedean());
        for (long p : c.support) sum += local_log_abs(c.x, place::finite(p));
        CHECK(sum.sign() == sign_result::zero);
    }
}

TEST_CASE("compare_interval decides separated values and stalls on equality") {
    auto l2 = log_linear_real::log_term(mpq_class(2));

    // [1.0, 1.1] > log 2 immediately.
    auto a = real_interval::from_mpq(mpq_class(1), 64)
                 .max_with(real_interval::from_mpq(mpq_class(1), 64));
    auto wide = real_interval::from_mpq(mpq_class(1), 64)
                    .add(real_interval::from_mpq(mpq_class(1, 10), 64))
                    .max_with(a); // ~[1.0, 1.1]
    CHECK(compare_interval(wide, l2, nullptr, 1 << 12) == interval_order::greater);

    // [0, 1/2] < log 2.
    auto below = real_interval::exact_zero(64).add(
        real_interval::from_mpq(mpq_class(1, 2), 64).mul_2si(-1));
    CHECK(compare_interval(below, l2, nullptr, 1 << 12) == interval_order::less);

    // An enclosure of log 2 itself can never be separated from log 2:
    // unresolved at any cap, even with a genuine refiner.
    mpfr_prec_t p = 64;
    auto refiner = [&p, &l2](const real_interval& cur) {
        p *= 2;
        return cur.intersect(l2.enclose(p));
    };
    CHECK(compare_interval(l2.enclose(64), l2, refiner, 1 << 12) ==
          interval_order::unresolved);

    // The refiner lets an initially-overlapping but distinct value resolve.
    auto l2_eps = l2 + log_linear_real::scaled_log(mpq_class(1, 1000000), mpq_class(3));
    mpfr_prec_t q = 8;
    auto refiner2 = [&q, &l2_eps](const real_interval& cur) {
        q *= 2;
        return cur.intersect(l2_eps.enclose(q));
    };
    CHECK(compare_interval(l2_eps.enclose(8), l2, refiner2, 1 << 12) ==
          interval_order::greater);
}
