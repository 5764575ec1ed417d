#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "orbitint/errors.hpp"

namespace orbitint {

// Small exact-arithmetic helpers shared across the library.  Everything here
// is a thin veneer over GMP; no state, no rounding.

inline mpz_class abs_z(const mpz_class& a) { return a >= 0 ? a : mpz_class(-a); }

inline mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline mpz_class pow_z(const mpz_class& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline mpq_class pow_q(const mpq_class& base, unsigned long e) {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    r.canonicalize();
    return r;
}

inline mpq_class abs_q(const mpq_class& a) { return a >= 0 ? a : mpq_class(-a); }

// Number of bits in |a| (0 for a = 0).
inline size_t bit_length(const mpz_class& a) {
    if (a == 0) return 0;
    return mpz_sizeinbase(a.get_mpz_t(), 2);
}

// Exact exponent of p in a nonzero integer.  Pre: p >= 2, a != 0.
inline long valuation_z(const mpz_class& a, const mpz_class& p) {
    if (a == 0) raise(errc::zero_input, "valuation of zero");
    mpz_class r;
    return static_cast<long>(
        mpz_remove(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

// a with all factors of p divided out.
inline mpz_class remove_factor(const mpz_class& a, const mpz_class& p) {
    mpz_class r;
    mpz_remove(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

// Canonical residue in [0, m).  Pre: m > 0.
inline mpz_class mod_z(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Exact quotient.  Pre: b divides a.
inline mpz_class divexact_z(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Deterministic-in-practice primality test: small trial division plus GMP's
// BPSW/Miller-Rabin combination at 40 rounds.
inline bool is_prime(const mpz_class& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

inline std::string to_string(const mpz_class& a) { return a.get_str(); }

inline std::string to_string(const mpq_class& a) {
    if (a.get_den() == 1) return a.get_num().get_str();
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

} // namespace orbitint
