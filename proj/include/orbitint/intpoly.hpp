#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace orbitint {

// Dense univariate polynomial over Z in the variable z, coefficient i being
// the coefficient of z^i.  The zero polynomial is the empty vector; nonzero
// polynomials never store trailing zero coefficients, so degree() is simply
// size-1 and the leading coefficient is back().
class int_poly {
  public:
    int_poly() = default;
    explicit int_poly(std::vector<mpz_class> coeffs);
    int_poly(std::initializer_list<long> coeffs);
    static int_poly constant(const mpz_class& c);
    // c * z^k
    static int_poly monomial(const mpz_class& c, int k);

    bool is_zero() const noexcept { return c_.empty(); }
    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    // Pre: nonzero.
    const mpz_class& leading() const;
    // Coefficient of z^i; 0 beyond the degree.
    mpz_class coeff(size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    const std::vector<mpz_class>& coeffs() const noexcept { return c_; }

    int_poly operator-() const;
    friend int_poly operator+(const int_poly& a, const int_poly& b);
    friend int_poly operator-(const int_poly& a, const int_poly& b);
    friend int_poly operator*(const int_poly& a, const int_poly& b);
    int_poly scaled(const mpz_class& c) const;
    // *this * z^k
    int_poly times_power(int k) const;

    int_poly derivative() const;

    // gcd of the coefficients, >= 0; 0 for the zero polynomial.
    mpz_class content() const;
    // *this / content(); keeps the sign of the leading coefficient.
    int_poly primitive_part() const;
    // Primitive part with positive leading coefficient.
    int_poly normalized_primitive() const;
    // Largest k with z^k dividing *this (0 for the zero polynomial).
    int trailing_zero_count() const;

    mpq_class eval(const mpq_class& t) const;
    mpz_class eval_z(const mpz_class& t) const;
    // Homogeneous evaluation sum_i c_i X^i Y^(D-i) of the degree-D
    // homogenization.  Pre: D >= degree().
    mpz_class eval_pair(const mpz_class& X, const mpz_class& Y, int D) const;
    // Homogeneous evaluation reduced modulo m.  Pre: D >= degree(), m > 0.
    mpz_class eval_pair_mod(const mpz_class& X, const mpz_class& Y, int D,
                            const mpz_class& m) const;
    // The same substitution with polynomial arguments: sum_i c_i P^i Q^(D-i).
    int_poly eval_pair_poly(const int_poly& P, const int_poly& Q, int D) const;

    friend bool operator==(const int_poly& a, const int_poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const int_poly& a, const int_poly& b) { return !(a == b); }

    // Rendering in descending powers, e.g. "2*z^3 - z + 5"; "0" when zero.
    std::string to_string() const;

  private:
    void trim();
    std::vector<mpz_class> c_;
};

// Deterministic total order used wherever factor lists must be reproducible:
// by degree, then by coefficients from the leading one down.
bool poly_less(const int_poly& a, const int_poly& b);

// Quotient of an exact division a = b * q over Z; returns false if b does not
// divide a in Z[z].  Pre: b != 0.
bool try_divide_exact(const int_poly& a, const int_poly& b, int_poly& q);
// As above but throws std::logic_error when the division is not exact; for
// call sites where divisibility is a proven invariant.
int_poly divide_exact(const int_poly& a, const int_poly& b);

// gcd in Z[z] (contents included), normalized to a positive leading
// coefficient; computed with the primitive pseudo-remainder sequence.
int_poly poly_gcd(const int_poly& a, const int_poly& b);

// Largest m with q^m dividing f.  Pre: f != 0, deg q >= 1.
int multiplicity(const int_poly& f, const int_poly& q);

// Resultant of the degree-d homogenizations of f and g, i.e. the determinant
// of the 2d x 2d Sylvester matrix of F(x,y) = y^d f(x/y), G(x,y) = y^d g(x/y).
// Evaluated exactly by fraction-free (Bareiss) elimination.
// Pre: d >= 1, d >= deg f, d >= deg g.
mpz_class sylvester_resultant(const int_poly& f, const int_poly& g, int d);

// Determinant of a square integer matrix by the same routine; exposed for
// the exact linear algebra in the height-gap construction and for tests.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m);

// Dense univariate polynomial over Q; the thin companion type used for
// expression parsing and for rational-coefficient inputs, converted to a
// primitive integer polynomial plus a scale as soon as exact work starts.
class rat_poly {
  public:
    rat_poly() = default;
    explicit rat_poly(std::vector<mpq_class> coeffs);
    static rat_poly constant(const mpq_class& c);
    static rat_poly from_int_poly(const int_poly& p);

    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    mpq_class coeff(size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }
    const std::vector<mpq_class>& coeffs() const noexcept { return c_; }

    rat_poly operator-() const;
    friend rat_poly operator+(const rat_poly& a, const rat_poly& b);
    friend rat_poly operator-(const rat_poly& a, const rat_poly& b);
    friend rat_poly operator*(const rat_poly& a, const rat_poly& b);
    rat_poly scaled(const mpq_class& c) const;
    rat_poly pow(unsigned e) const;

    // Writes *this = scale * primitive with primitive an integer polynomial
    // of content 1 and positive leading coefficient (zero polynomial: scale
    // 0, primitive 0).
    struct primitive_form {
        mpq_class scale;
        int_poly primitive;
    };
    primitive_form to_primitive() const;

  private:
    void trim();
    std::vector<mpq_class> c_;
};

} // namespace orbitint
