#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orbitint/interval.hpp"

namespace orbitint {

enum class sign_result { negative, zero, positive };

// Exact real number of the form  sum_i q_i * log(r_i)  with rational
// coefficients q_i and positive rational bases r_i.  The representation is
// kept canonical under addition (equal bases merged, zero coefficients and
// base 1 dropped), and the *value* admits an exact, always-terminating sign
// decision:
//
//   1. Rewrite the form over a "coprime basis": split numerators and
//      denominators of the bases by repeated gcd extraction until the basis
//      integers are pairwise coprime (no integer factorization involved).
//      Logarithms of pairwise-coprime integers >= 2 are linearly independent
//      over Q, so the value is zero iff every refined exponent is zero.
//   2. Otherwise the value is provably nonzero, and evaluating with interval
//      arithmetic at doubling precision must eventually exclude zero.
class log_linear_real {
  public:
    log_linear_real() = default;

    // log(r).  Pre: r > 0.  r = 1 yields the zero form.
    static log_linear_real log_term(const mpq_class& r);
    // coeff * log(r).  Pre: r > 0.
    static log_linear_real scaled_log(const mpq_class& coeff, const mpq_class& r);

    bool is_zero_form() const noexcept { return terms_.empty(); }

    log_linear_real& operator+=(const log_linear_real& o);
    log_linear_real& operator-=(const log_linear_real& o);
    log_linear_real operator-() const;
    friend log_linear_real operator+(log_linear_real a, const log_linear_real& b) {
        a += b;
        return a;
    }
    friend log_linear_real operator-(log_linear_real a, const log_linear_real& b) {
        a -= b;
        return a;
    }
    // Multiplies every coefficient by c (exact).
    log_linear_real scaled(const mpq_class& c) const;

    // Exact sign of the value.  Always terminates.
    sign_result sign() const;
    // Exact value equality (sign of the difference).
    bool same_value(const log_linear_real& o) const;

    // Outward-rounded enclosure of the value at the given precision.
    real_interval enclose(mpfr_prec_t prec = real_interval::default_prec) const;

    // base -> coefficient, sorted by base; for serialization and display.
    const std::map<mpq_class, mpq_class>& terms() const noexcept { return terms_; }

    // Symbolic rendering, e.g. "log(3) - 2*log(5/2)"; "0" for the zero form.
    std::string to_string() const;

  private:
    void add_term(const mpq_class& r, const mpq_class& coeff);

    std::map<mpq_class, mpq_class> terms_;
};

// The coprime-basis rewrite used by sign(); exposed for tests and for the
// census (which needs denominator S-unit checks with the same machinery).
// Returns pairwise-coprime integer bases >= 2 with nonzero rational
// exponents such that the input value equals  sum e_j * log(b_j).
std::vector<std::pair<mpz_class, mpq_class>>
coprime_basis(const std::vector<std::pair<mpz_class, mpq_class>>& entries);

} // namespace orbitint
