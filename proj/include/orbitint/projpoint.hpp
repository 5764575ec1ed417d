#pragma once

#include <gmpxx.h>

#include <string>

#include "orbitint/loglinear.hpp"
#include "orbitint/places.hpp"

namespace orbitint {

// A point of P^1(Q) in normalized integer coordinates [x : y]:
// gcd(x, y) = 1 and y > 0, or y = 0 and x = 1 (the point at infinity).
class proj_point {
  public:
    // Normalizes (num, den); errors: both_zero.
    static proj_point make(const mpz_class& num, const mpz_class& den);
    static proj_point from_rational(const mpq_class& q);
    static proj_point infinity() { return proj_point(1, 0); }
    // "inf", an integer, or "a/b".
    static proj_point parse(const std::string& text);

    const mpz_class& x() const noexcept { return x_; }
    const mpz_class& y() const noexcept { return y_; }
    bool is_infinity() const noexcept { return y_ == 0; }
    // Pre: finite point.
    mpq_class as_rational() const;

    friend bool operator==(const proj_point& a, const proj_point& b) {
        return a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const proj_point& a, const proj_point& b) { return !(a == b); }
    friend bool operator<(const proj_point& a, const proj_point& b) {
        int c = cmp(a.x_, b.x_);
        if (c != 0) return c < 0;
        return cmp(a.y_, b.y_) < 0;
    }

    std::string to_string() const;

  private:
    proj_point(mpz_class x, mpz_class y) : x_(std::move(x)), y_(std::move(y)) {}
    mpz_class x_, y_;
};

// Value of the logarithmic chordal distance: a log-linear form, or +infinity
// when the two points coincide.
class lambda_value {
  public:
    lambda_value(log_linear_real v) : infinite_(false), v_(std::move(v)) {} // NOLINT
    static lambda_value infinity() { return lambda_value(); }

    bool is_infinite() const noexcept { return infinite_; }
    // Pre: finite.
    const log_linear_real& finite_value() const;

    lambda_value& operator+=(const lambda_value& o);

    std::string to_string() const;

  private:
    lambda_value() : infinite_(true) {}
    bool infinite_;
    log_linear_real v_;
};

// lambda_v(P, Q) = -log rho_v(P, Q), exact; +infinity iff P = Q.
// At a finite place with normalized coordinates this is
// v_p(x_P y_Q - x_Q y_P) * log p; at the archimedean place it is
// -1/2 * log( (x_P y_Q - x_Q y_P)^2 / ((x_P^2+y_P^2)(x_Q^2+y_Q^2)) ).
lambda_value chordal_log(const proj_point& P, const proj_point& Q, const place& v);

// h(P) = log max(|x|, |y|) on normalized coordinates.
log_linear_real naive_height(const proj_point& P);

} // namespace orbitint
