#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "orbitint/interval.hpp"
#include "orbitint/loglinear.hpp"

namespace orbitint {

// A place of Q: either the archimedean absolute value or a p-adic one.
class place {
  public:
    static place archimedean() { return place(mpz_class(0)); }
    // Validates primality (errc::not_prime).
    static place finite(const mpz_class& p);
    // "inf" or a prime written in decimal.
    static place parse(const std::string& text);

    bool is_archimedean() const noexcept { return p_ == 0; }
    // Pre: finite place.
    const mpz_class& prime() const;

    // Archimedean place first, then primes in increasing order.
    friend bool operator<(const place& a, const place& b) { return a.p_ < b.p_; }
    friend bool operator==(const place& a, const place& b) { return a.p_ == b.p_; }
    friend bool operator!=(const place& a, const place& b) { return a.p_ != b.p_; }

    std::string to_string() const;

  private:
    explicit place(mpz_class p) : p_(std::move(p)) {}
    mpz_class p_; // 0 encodes the archimedean place
};

// Finite, duplicate-free, deterministically ordered set of places
// (archimedean first, then primes ascending).
class place_set {
  public:
    place_set() = default;
    explicit place_set(std::vector<place> places);
    // Comma-separated list, e.g. "inf,2,3".
    static place_set parse(const std::string& text);

    bool contains(const place& v) const;
    bool has_archimedean() const;
    size_t size() const noexcept { return places_.size(); }
    bool empty() const noexcept { return places_.empty(); }
    auto begin() const noexcept { return places_.begin(); }
    auto end() const noexcept { return places_.end(); }
    const std::vector<place>& items() const noexcept { return places_; }

    std::string to_string() const;

  private:
    std::vector<place> places_;
};

// Exact exponent of p in x.  Errors: zero_input (x = 0), not_prime.
long padic_valuation(const mpq_class& x, const mpz_class& p);

// log |x|_v as an exact log-linear form.  Errors: zero_input (x = 0).
log_linear_real local_log_abs(const mpq_class& x, const place& v);

// Trichotomy outcome of comparing a refinable interval quantity against an
// exact log-linear form.
enum class interval_order { less, greater, unresolved };

// Compares the exact value enclosed by `a` with the exact value of `b`.
// `refiner` must return a narrower interval still containing the same exact
// value; it is invoked whenever the current enclosures overlap.  Gives up
// (unresolved) once the working precision exceeds cap_bits, which is the
// honest outcome when the two values are equal.
interval_order compare_interval(
    real_interval a,
    const log_linear_real& b,
    const std::function<real_interval(const real_interval&)>& refiner,
    long cap_bits);

} // namespace orbitint
