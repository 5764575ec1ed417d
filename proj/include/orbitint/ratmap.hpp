#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "orbitint/intpoly.hpp"
#include "orbitint/projpoint.hpp"

namespace orbitint {

inline constexpr long default_degree_budget = 1024;
inline constexpr long default_height_budget_bits = 1L << 20;

// A rational self-map of the projective line over Q, stored as a coprime pair
// of integer polynomials f, g with joint content 1, canonical sign (the
// leading coefficient of g is positive), and degree d = max(deg f, deg g) >= 2.
// The degree-d homogenizations F(x,y), G(x,y) then have a nonzero resultant,
// which is cached at construction.
class rational_map {
public:
    rational_map(const rat_poly& num, const rat_poly& den);
    rational_map(int_poly num, int_poly den);

    const int_poly& numerator() const { return f_; }
    const int_poly& denominator() const { return g_; }
    int degree() const { return d_; }
    const mpz_class& resultant() const { return res_; }

    proj_point evaluate(const proj_point& P) const;

    bool operator==(const rational_map& other) const {
        return f_ == other.f_ && g_ == other.g_;
    }
    bool operator!=(const rational_map& other) const { return !(*this == other); }

    // rendered as "(f)/(g)", reparseable by the expression grammar
    std::string to_string() const;

private:
    struct coprime_tag {};
    // fast path for composition results: the pair is known to be coprime and
    // the resultant of the normalized pair is supplied by the caller
    rational_map(int_poly num, int_poly den, mpz_class res, coprime_tag);

    void normalize_from(int_poly num, int_poly den);
    void finish(int d);

    friend rational_map compose(const rational_map&, const rational_map&, long);

    int_poly f_, g_;
    int d_ = 0;
    mpz_class res_;
};

rational_map compose(const rational_map& outer, const rational_map& inner,
                     long degree_budget = default_degree_budget);
rational_map iterate(const rational_map& phi, int n,
                     long degree_budget = default_degree_budget);

// [P, phi(P), ..., phi^N(P)] by repeated evaluation; raises
// height_budget_exceeded (with the offending index) when a coordinate's bit
// length passes the budget
std::vector<proj_point> orbit(const rational_map& phi, const proj_point& P,
                              int N,
                              long height_budget_bits = default_height_budget_bits);

// local multiplicity e of the map at P, in [1, d]
int ramification_index(const rational_map& phi, const proj_point& P);

struct fiber_entry {
    int_poly factor;   // irreducible, primitive, positive leading coefficient
    int multiplicity;  // common ramification index of the factor's roots
};

struct fiber_report {
    std::vector<fiber_entry> finite;
    int infinity_multiplicity = 0;  // 0 when infinity is not in the fiber

    // sum of deg(factor) * multiplicity plus the infinity contribution;
    // always equals the degree of the map
    int weighted_size() const;
    bool all_rational() const;  // every finite entry has a degree-1 factor
};

fiber_report fiber_data(const rational_map& phi, const proj_point& A);

struct exceptional_set {
    std::vector<proj_point> points;          // rational members
    std::vector<int_poly> conjugate_pairs;   // irreducible quadratics marking
                                             // a Galois-conjugate pair

    bool contains(const proj_point& P) const;
    size_t total_count() const {  // number of points over the algebraic closure
        return points.size() + 2 * conjugate_pairs.size();
    }
    bool empty() const { return points.empty() && conjugate_pairs.empty(); }
};

// the (at most two) points whose full forward and backward orbit is finite:
// exactly the totally ramified fixed points of the second iterate
exceptional_set exceptional_points(const rational_map& phi);

// true iff the normalized second iterate has a constant denominator,
// equivalently iff infinity is an exceptional point
bool second_iterate_is_polynomial(const rational_map& phi);

// exact decision via cycle detection plus the wandering-point height ceiling;
// defined alongside the height machinery
bool is_preperiodic(const rational_map& phi, const proj_point& P);

}  // namespace orbitint
