#include "doctest.h"

#include <gmpxx.h>

#include <algorithm>
#include <vector>

#include "orbitint/errors.hpp"
#include "orbitint/factor.hpp"
#include "orbitint/intpoly.hpp"
#include "orbitint/rng.hpp"

using namespace orbitint;

namespace {

int_poly rebuild(const factored_poly& fp) {
    int_poly acc = int_poly::constant(fp.unit);
    for (const auto& [fac, mult] : fp.factors)
        for (int i = 0; i < mult; ++i) acc = acc * fac;
    return acc;
}

bool well_formed(const factored_poly& fp) {
    for (const auto& [fac, mult] : fp.factors) {
        if (mult < 1) return false;
        if (fac.degree() < 1) return false;
        if (fac.content() != 1) return false;
        if (fac.leading() <= 0) return false;
    }
    for (size_t i = 1; i < fp.factors.size(); ++i)
        if (!poly_less(fp.factors[i - 1].factor, fp.factors[i].factor)) return false;
    return true;
}

} // namespace

TEST_CASE("squarefree decomposition splits by multiplicity") {
    // (z-1)^2 (z+2) = z^3 - 3z + 2
    auto parts = squarefree_decomposition(int_poly{2, -3, 0, 1});
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].factor == int_poly{2, 1});
    CHECK(parts[0].multiplicity == 1);
    CHECK(parts[1].factor == int_poly{-1, 1});
    CHECK(parts[1].multiplicity == 2);

    // squarefree input comes back whole
    auto sf = squarefree_decomposition(int_poly{-1, 0, 1});
    REQUIRE(sf.size() == 1);
    CHECK(sf[0].factor == int_poly{-1, 0, 1});
    CHECK(sf[0].multiplicity == 1);

    // constants decompose to nothing
    CHECK(squarefree_decomposition(int_poly{7}).empty());
    CHECK_THROWS_AS(squarefree_decomposition(int_poly()), error);
}

TEST_CASE("squarefree decomposition handles sign and content") {
    // -12 (z+1)^3: primitive part has negative leading coefficient
    int_poly f = (int_poly{1, 1} * int_poly{1, 1} * int_poly{1, 1}).scaled(-12);
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0].factor == int_poly{1, 1});
    CHECK(parts[0].multiplicity == 3);
}

TEST_CASE("factorization of frozen small cases") {
    auto f1 = factor_integer_poly(int_poly{-1, 0, 1}); // z^2 - 1
    CHECK(f1.unit == 1);
    REQUIRE(f1.factors.size() == 2);
    CHECK(f1.factors[0].factor == int_poly{-1, 1});
    CHECK(f1.factors[1].factor == int_poly{1, 1});
    CHECK(well_formed(f1));

    // z^4 + 2z^3 + 2z^2 + z = z (z+1) (z^2+z+1)
    auto f2 = factor_integer_poly(int_poly{0, 1, 2, 2, 1});
    CHECK(f2.unit == 1);
    REQUIRE(f2.factors.size() == 3);
    CHECK(f2.factors[0].factor == int_poly{0, 1});
    CHECK(f2.factors[1].factor == int_poly{1, 1});
    CHECK(f2.factors[2].factor == int_poly{1, 1, 1});
    CHECK(well_formed(f2));

    // -6z^3 + 18z - 12 = -6 (z-1)^2 (z+2)
    auto f3 = factor_integer_poly(int_poly{-12, 18, 0, -6});
    CHECK(f3.unit == -6);
    REQUIRE(f3.factors.size() == 2);
    CHECK(f3.factors[0].factor == int_poly{-1, 1});
    CHECK(f3.factors[0].multiplicity == 2);
    CHECK(f3.factors[1].factor == int_poly{2, 1});
    CHECK(f3.factors[1].multiplicity == 1);
    CHECK(well_formed(f3));

    CHECK_THROWS_AS(factor_integer_poly(int_poly()), error);
}

TEST_CASE("factorization of cyclotomic-rich polynomials") {
    // z^4 - 1 = (z-1)(z+1)(z^2+1)
    auto f = factor_integer_poly(int_poly{-1, 0, 0, 0, 1});
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].factor == int_poly{-1, 1});
    CHECK(f.factors[1].factor == int_poly{1, 1});
    CHECK(f.factors[2].factor == int_poly{1, 0, 1});

    // z^6 - 1 = (z-1)(z+1)(z^2-z+1)(z^2+z+1)
    auto g = factor_integer_poly(int_poly{-1, 0, 0, 0, 0, 0, 1});
    REQUIRE(g.factors.size() == 4);
    CHECK(g.factors[2].factor == int_poly{1, -1, 1});
    CHECK(g.factors[3].factor == int_poly{1, 1, 1});

    // z^8 - 1 adds z^4 + 1
    auto h = factor_integer_poly(int_poly{-1, 0, 0, 0, 0, 0, 0, 0, 1});
    REQUIRE(h.factors.size() == 4);
    CHECK(h.factors[3].factor == int_poly{1, 0, 0, 0, 1});
}

TEST_CASE("irreducibility needs full recombination") {
    // z^4 + 1 is irreducible over Q but splits modulo every prime
    auto f = factor_integer_poly(int_poly{1, 0, 0, 0, 1});
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].factor == int_poly{1, 0, 0, 0, 1});
    CHECK(f.factors[0].multiplicity == 1);

    // z^4 + 4 = (z^2 - 2z + 2)(z^2 + 2z + 2)
    auto g = factor_integer_poly(int_poly{4, 0, 0, 0, 1});
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0].factor == int_poly{2, -2, 1});
    CHECK(g.factors[1].factor == int_poly{2, 2, 1});
}

TEST_CASE("non-monic polynomials factor through the monic transform") {
    // 2z^2 + 3z + 1 = (z+1)(2z+1)
    auto f = factor_integer_poly(int_poly{1, 3, 2});
    CHECK(f.unit == 1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].factor == int_poly{1, 1});
    CHECK(f.factors[1].factor == int_poly{1, 2});

    // 4z^2 - 1 = (2z-1)(2z+1)
    auto g = factor_integer_poly(int_poly{-1, 0, 4});
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0].factor == int_poly{-1, 2});
    CHECK(g.factors[1].factor == int_poly{1, 2});

    // 6z^2 + 5z + 1 = (2z+1)(3z+1)
    auto h = factor_integer_poly(int_poly{1, 5, 6});
    REQUIRE(h.factors.size() == 2);
    CHECK(h.factors[0].factor == int_poly{1, 2});
    CHECK(h.factors[1].factor == int_poly{1, 3});
}

TEST_CASE("constants and pure powers") {
    auto c = factor_integer_poly(int_poly{6});
    CHECK(c.unit == 6);
    CHECK(c.factors.empty());

    auto n = factor_integer_poly(int_poly{-1});
    CHECK(n.unit == -1);

    auto z5 = factor_integer_poly(int_poly{0, 0, 0, 0, 0, 1});
    REQUIRE(z5.factors.size() == 1);
    CHECK(z5.factors[0].factor == int_poly{0, 1});
    CHECK(z5.factors[0].multiplicity == 5);

    auto big = factor_integer_poly(int_poly{1, 2, 1} * int_poly{1, 2, 1}); // (z+1)^4
    REQUIRE(big.factors.size() == 1);
    CHECK(big.factors[0].factor == int_poly{1, 1});
    CHECK(big.factors[0].multiplicity == 4);
}

TEST_CASE("factored_poly lookup helpers") {
    auto f = factor_integer_poly(int_poly{0, -1, 0, 1}); // z(z-1)(z+1)
    CHECK(f.has_factor(int_poly{0, 1}));
    CHECK(f.multiplicity_of(int_poly{-1, 1}) == 1);
    CHECK(f.multiplicity_of(int_poly{9, 1}) == 0);
    CHECK_FALSE(f.has_factor(int_poly{9, 1}));
}

TEST_CASE("random products round-trip through factorization") {
    xoshiro256ss rng(0xfac70);
    const std::vector<int_poly> atoms = {
        int_poly{0, 1},     int_poly{1, 1},    int_poly{-1, 1},  int_poly{2, 1},
        int_poly{-3, 2},    int_poly{1, 0, 1}, int_poly{1, 1, 1}, int_poly{2, -2, 1},
        int_poly{1, 0, 0, 0, 1},
    };
    for (int iter = 0; iter < 40; ++iter) {
        int_poly f = int_poly::constant(rng.coin() ? 1 : -2);
        int pieces = 1 + static_cast<int>(rng.below(4));
        for (int i = 0; i < pieces; ++i) {
            const int_poly& a = atoms[rng.below(atoms.size())];
            int mult = 1 + static_cast<int>(rng.below(3));
            for (int k = 0; k < mult; ++k) f = f * a;
        }
        auto fac = factor_integer_poly(f);
        CHECK(well_formed(fac));
        CHECK(rebuild(fac) == f); // also verified internally; kept independent
        for (const auto& [factor, mult] : fac.factors)
            CHECK(multiplicity(f, factor) == mult);
    }
}

TEST_CASE("random polynomials factor into verified irreducibles") {
    xoshiro256ss rng(0xfac71);
    int done = 0;
    while (done < 30) {
        std::vector<mpz_class> c(1 + rng.below(7));
        for (auto& v : c) v = static_cast<long>(rng.range(-50, 50));
        int_poly f(std::move(c));
        if (f.degree() < 1) continue;
        auto fac = factor_integer_poly(f);
        CHECK(well_formed(fac));
        CHECK(rebuild(fac) == f);
        ++done;
    }
}
