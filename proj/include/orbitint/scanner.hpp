#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "orbitint/heights.hpp"
#include "orbitint/interval.hpp"
#include "orbitint/loglinear.hpp"
#include "orbitint/places.hpp"
#include "orbitint/projpoint.hpp"
#include "orbitint/ratmap.hpp"

namespace orbitint {

// True iff sum_{v in S} log+ |x|_v >= eps * h(x), decided exactly; x = 0 is
// trivially true (both sides are zero).  Pre: 0 < eps <= 1 (config_invalid).
bool quasi_integral_test(const mpq_class& x, const place_set& s, const mpq_class& eps);

// Exact sum_{v in S} lambda_v(P, A); infinite iff P = A.
lambda_value lambda_sum(const proj_point& p, const proj_point& a, const place_set& s);

enum class scan_backend { exact_orbit, finite_place_modular };

enum class membership { in, out, unresolved };

const char* membership_name(membership m) noexcept;
const char* backend_name(scan_backend b) noexcept;

// One scan step: the proximity sum at orbit index n against the certified
// threshold interval.  in iff lambda_sum >= every point of the threshold,
// out iff <=, unresolved only when the sum lies strictly inside the interval
// at the precision cap.  An infinite sum (orbit point equals the target) is
// always in.
struct scan_verdict {
    long n = 0;
    membership verdict = membership::unresolved;
    bool lambda_infinite = false;
    log_linear_real lambda;      // meaningful when !lambda_infinite
    real_interval threshold;     // eps * d^n * (canonical-height interval)
};

// Full scan result plus the inputs it answers for.  The count bound that the
// underlying estimate provides has the shape
//   4^(#S) * C + log-term
// with C ineffective (never computed here); only the log-term enclosure is
// reported, alongside the symbolic form.
struct scan_report {
    std::vector<scan_verdict> verdicts;  // complete, ordered, n = 0..n_max
    long count_in = 0;
    long count_out = 0;
    long count_unresolved = 0;
    real_interval hhat_start;            // final canonical-height interval for P
    real_interval bound_log_term;        // log_d^+((h(phi)+hhat(A))/hhat(P))
    std::string count_bound_form;        // symbolic shape with the ineffective factor

    rational_map map;
    proj_point target;
    proj_point start;
    place_set places;
    mpq_class eps;
    long n_max = 0;
    scan_backend backend = scan_backend::exact_orbit;
};

// Membership scan of the orbit indices n = 0..n_max: is phi^n(P) quasi-(S,eps)-
// integral relative to A, measured against eps * d^n * hhat(P) with one master
// canonical-height interval refined on demand.  The exact_orbit backend
// evaluates orbit points exactly (any S); finite_place_modular tracks residue
// pairs modulo p^M per finite place, lifting M until every needed valuation is
// certified.  Errors: exceptional_target, preperiodic_start, config_invalid,
// height_budget_exceeded, backend_unsupported (archimedean place under the
// modular backend).
scan_report gamma_scan(const rational_map& phi, const proj_point& a, const proj_point& p,
                       const place_set& s, const mpq_class& eps, long n_max,
                       scan_backend backend, const compute_limits& limits = {});

// Same scan against the exact naive height of phi^n(P) instead of the
// canonical threshold; every verdict is decided (never unresolved) because
// both sides are exact.  Exact orbit only.
scan_report gamma_scan_naive(const rational_map& phi, const proj_point& a,
                             const proj_point& p, const place_set& s, const mpq_class& eps,
                             long n_max, const compute_limits& limits = {});

// Orbit indices n in [1, n_max] whose value z(phi^n P) is an S-integer
// (denominator supported on the finite places of S; points at infinity are
// never reported), plus the certified log_d^+(h(phi)/hhat(P)) term the
// underlying count estimate carries.  Pre: the second iterate is not a
// polynomial, P is wandering, and S contains the archimedean place.
struct census_report {
    std::vector<long> integral_indices;
    real_interval log_term;
};

census_report integral_census(const rational_map& phi, const proj_point& p,
                              const place_set& s, long n_max,
                              long height_budget_bits = default_height_budget_bits,
                              const compute_limits& limits = {});

// Certified enclosure of log_d^+((h(phi) + hhat(A)) / hhat(P)) of width at
// most tol.  Preperiodic targets contribute an exactly-zero canonical height,
// so all-zero numerators collapse to the exact [0, 0].  Errors:
// preperiodic_start (P preperiodic), config_invalid, precision_cap_exceeded.
real_interval bound_log_term(const rational_map& phi, const proj_point& a,
                             const proj_point& p, const mpq_class& tol,
                             const compute_limits& limits = {});

// Closed-form count for the family z^d + z^(d-1) scanned at A = 0, S = {p}:
//   max(0, floor( log((log p)/(eps*hhat)) / log(d/(d-1)) ) + 1)
// evaluated with certified rounding over the hhat interval; nullopt when the
// floor is ambiguous at the given width (caller refines hhat).  Errors:
// nonpositive_height, config_invalid, not_prime.
std::optional<long> remark_count(int d, const mpz_class& p, const mpq_class& eps,
                                 const real_interval& hhat);

// Diagnostic comparison of the proximity sum before and after one application
// of psi: lhs = sum_v max over rational preimages A' of e_{A'} * lambda_v(P, A'),
// rhs = sum_v lambda_v(psi(P), A).  No inequality is asserted (the implied
// constant is not explicit); the record carries the natural scale
// h(A) + h(psi) + 1 for reading the residual.  Errors: rational_fiber_required.
struct inv_fun_record {
    bool infinite = false;  // P lies in the fiber, so both sides are infinite
    log_linear_real lhs;
    log_linear_real rhs;
    log_linear_real residual;  // lhs - rhs, valid when !infinite
    real_interval scale;
    std::vector<proj_point> preimages;
    std::vector<int> indices;
};

inv_fun_record inv_fun_report(const rational_map& psi, const proj_point& a,
                              const proj_point& p, const place_set& s);

// Maximum fiber multiplicity of phi^m above Q for m = 1..m_max; flags the m
// whose multiplicity exceeds exp(2d-2) when Q is certified non-preperiodic
// (growth beyond that ceiling is the anomaly the underlying estimate rules
// out for wandering base points).  Errors: exceptional_target,
// iterate_too_large, config_invalid.
struct ram_growth_report {
    std::vector<int> max_multiplicity;  // index m-1 holds the value for m
    std::vector<int> flagged_m;
};

ram_growth_report ramification_growth(const rational_map& phi, const proj_point& q,
                                      int m_max, long degree_budget = default_degree_budget);

}  // namespace orbitint
