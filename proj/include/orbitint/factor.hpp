#pragma once

#include <gmpxx.h>

#include <vector>

#include "orbitint/intpoly.hpp"

namespace orbitint {

struct poly_factor {
    int_poly factor; // primitive, irreducible over Q, positive leading coefficient
    int multiplicity;
};

// f = unit * prod factor^multiplicity, with the factors pairwise distinct,
// sorted by poly_less, and the unit a (signed) integer constant.
struct factored_poly {
    mpz_class unit;
    std::vector<poly_factor> factors;

    // Largest multiplicity among factors of degree exactly 1, together with
    // the count of linear factors; convenience for ramification queries.
    bool has_factor(const int_poly& q) const;
    int multiplicity_of(const int_poly& q) const;
};

// Squarefree decomposition over Z (Yun's algorithm): returns pairwise coprime
// primitive squarefree parts with their multiplicities, positive leading
// coefficients, product matching f up to the signed content.
// Pre: f != 0.
std::vector<poly_factor> squarefree_decomposition(const int_poly& f);

// Complete factorization into irreducibles over Q, computed exactly:
// squarefree decomposition, then per squarefree part a small-prime modular
// factorization (distinct-degree plus equal-degree splitting with a
// deterministic seeded generator), Hensel lifting past the coefficient bound,
// and subset recombination.  The product of the returned factors times the
// unit is verified to reproduce f before returning.
// Pre: f != 0 (errc::zero_polynomial otherwise).
factored_poly factor_integer_poly(const int_poly& f);

} // namespace orbitint
