#pragma once

#include <gmpxx.h>

#include "orbitint/interval.hpp"
#include "orbitint/intpoly.hpp"
#include "orbitint/loglinear.hpp"
#include "orbitint/places.hpp"
#include "orbitint/projpoint.hpp"
#include "orbitint/ratmap.hpp"

namespace orbitint {

// log max_i |a_i|_v over the coefficients, exactly.  Errors: zero_polynomial.
log_linear_real poly_local_norm(const int_poly& f, const place& v);
log_linear_real poly_local_norm(const rat_poly& f, const place& v);

// Projective height of the coefficient vector: the sum of the local norms
// over all places, equal to log of the max absolute coefficient once the
// vector is scaled to a primitive integer one.  Scaling-invariant.
log_linear_real poly_height(const int_poly& f);
log_linear_real poly_height(const rat_poly& f);

// Height of the joint numerator/denominator coefficient vector of a
// normalized map; at least max(poly_height(f), poly_height(g)).
log_linear_real map_height(const rational_map& phi);

// Per-map certified constants bounding one application's height change:
//   -c_minus <= h(phi(Q)) - d*h(Q) <= c_plus   for every rational point Q.
// c_plus comes from the triangle inequality on the homogeneous forms;
// c_minus from integer cofactor forms u*F + v*G = Res * x^(2d-1) (and the
// y-companion) extracted from the Sylvester system by exact elimination.
struct height_gap {
    log_linear_real c_plus;
    log_linear_real c_minus;
};

height_gap height_gap_constants(const rational_map& phi);

// Resource ceilings for the certified-height computations.
struct compute_limits {
    long precision_cap_bits = 1L << 16;
    long height_budget_bits = 1L << 20;
    long degree_budget = 1024;
};

// Certified enclosure of the canonical height of P under phi with width at
// most target_width: the telescoped limit of h(phi^n P)/d^n with a tail bound
// from the gap constants.  The per-step gcd corrections are tracked exactly
// through residues modulo a power of the resultant, so orbit coordinates are
// never expanded.  Errors: height_budget_exceeded (residue modulus would
// outgrow the bit budget), precision_cap_exceeded, config_invalid.
real_interval canonical_height(const rational_map& phi, const proj_point& P,
                               const mpq_class& target_width,
                               const compute_limits& limits = {});

}  // namespace orbitint
