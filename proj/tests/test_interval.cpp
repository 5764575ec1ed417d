#include "doctest.h"

#include <gmpxx.h>

#include "orbitint/interval.hpp"

using orbitint::real_interval;

TEST_CASE("interval constructors enclose their exact values") {
    auto third = real_interval::from_mpq(mpq_class(1, 3), 64);
    CHECK(third.contains(mpq_class(1, 3)));
    CHECK(third.width_at_most(mpq_class(1, 1000000)));
    CHECK_FALSE(third.contains(mpq_class(1, 2)));

    auto z = real_interval::exact_zero();
    CHECK(z.is_exact_zero());
    CHECK(z.contains(0));

    auto n = real_interval::from_mpz(mpz_class("123456789123456789123456789"), 32);
    CHECK(n.contains(mpq_class("123456789123456789123456789")));
    CHECK_FALSE(n.is_exact_zero());
}

TEST_CASE("interval arithmetic is outward and sign-correct") {
    auto a = real_interval::from_mpq(mpq_class(1, 3), 96);
    auto b = real_interval::from_mpq(mpq_class(-2, 7), 96);
    CHECK(a.add(b).contains(mpq_class(1, 3) + mpq_class(-2, 7)));
    CHECK(a.sub(b).contains(mpq_class(1, 3) - mpq_class(-2, 7)));
    CHECK(a.mul(b).contains(mpq_class(1, 3) * mpq_class(-2, 7)));
    CHECK(a.neg().contains(mpq_class(-1, 3)));
    CHECK(b.abs().contains(mpq_class(2, 7)));
    CHECK(a.scale_q(mpq_class(-5, 2)).contains(mpq_class(-5, 6)));
    CHECK(a.scale_z(mpz_class(9)).contains(3));
    CHECK(a.mul_2si(3).contains(mpq_class(8, 3)));
    CHECK(a.mul_2si(-1).contains(mpq_class(1, 6)));

    auto den = real_interval::from_mpq(mpq_class(3, 2), 96);
    CHECK(b.div_pos(den).contains(mpq_class(-4, 21)));

    // Mixed-sign products exercise all four corners of mul.
    auto sym_a = real_interval::from_mpq_pair(mpq_class(-1, 3), mpq_class(1, 2), 96);
    auto sym_b = real_interval::from_mpq_pair(mpq_class(-2, 7), mpq_class(5), 96);
    auto prod = sym_a.mul(sym_b);
    CHECK(prod.contains(mpq_class(5, 2)));    // hi*hi
    CHECK(prod.contains(mpq_class(-5, 3)));   // lo*hi
    CHECK(prod.contains(mpq_class(2, 21)));   // lo*lo
    CHECK(prod.contains(mpq_class(-1, 7)));   // hi*lo
    CHECK_FALSE(prod.contains(mpq_class(3))); // outside [-5/3, 5/2]
    CHECK(sym_a.abs().contains(mpq_class(0)));
    CHECK(sym_a.abs().contains(mpq_class(1, 2)));
    CHECK(sym_a.abs().lo_sign() == 0);
}

TEST_CASE("log and exp enclosures bracket known rationals") {
    auto l2 = real_interval::log_of_mpq(mpq_class(2), 128);
    // 0.693147 < log 2 < 0.693148
    CHECK(l2.cmp_lo(mpq_class(693147, 1000000)) > 0);
    CHECK(l2.cmp_hi(mpq_class(693148, 1000000)) < 0);

    auto lq = real_interval::log_of_mpq(mpq_class(3, 4), 128);
    CHECK(lq.hi_sign() < 0); // log(3/4) < 0

    auto e1 = real_interval::from_long(1).exp();
    CHECK(e1.contains(mpq_class(27182818, 10000000)) == false);
    CHECK(e1.cmp_lo(mpq_class(2718281, 1000000)) > 0);
    CHECK(e1.cmp_hi(mpq_class(2718282, 1000000)) < 0);

    // log . exp containment
    auto x = real_interval::from_mpq(mpq_class(5, 4), 128);
    CHECK(x.exp().log().contains(mpq_class(5, 4)));
}

TEST_CASE("outward rounding: low-precision results enclose high-precision ones") {
    auto coarse = real_interval::log_of_mpq(mpq_class(10, 7), 64);
    auto fine = real_interval::log_of_mpq(mpq_class(10, 7), 640);
    CHECK(coarse.encloses(fine));
    CHECK(coarse.width_upper() >= fine.width_upper());

    auto ca = real_interval::from_mpq(mpq_class(22, 7), 48);
    auto fa = real_interval::from_mpq(mpq_class(22, 7), 480);
    CHECK(ca.mul(ca).encloses(fa.mul(fa)));
}

TEST_CASE("interval comparisons and floors") {
    auto a = real_interval::from_mpq(mpq_class(3, 2), 64);
    auto b = real_interval::from_mpq(mpq_class(7, 2), 64);
    CHECK(b.entirely_gt(a));
    CHECK(a.entirely_lt(b));
    CHECK_FALSE(a.entirely_gt(a));

    CHECK(a.floor_lo() == 1);
    CHECK(b.floor_hi() == 3);
    auto n = real_interval::from_long(-3);
    CHECK(n.floor_lo() == -3);

    auto m = a.intersect(real_interval::from_mpq(mpq_class(3, 2), 128));
    CHECK(m.contains(mpq_class(3, 2)));

    auto mid = b.midpoint_interval();
    CHECK(mid.width_at_most(0));
}

TEST_CASE("decimal rendering is directed") {
    auto l2 = real_interval::log_of_mpq(mpq_class(2), 128);
    std::string lo = l2.lo_string(20), hi = l2.hi_string(20);
    CHECK(lo.substr(0, 8) == "6.931471");
    CHECK(hi.substr(0, 8) == "6.931471");
    CHECK(lo <= hi);
}
