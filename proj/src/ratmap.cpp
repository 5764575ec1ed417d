#include "orbitint/ratmap.hpp"

#include <stdexcept>
#include <utility>

#include "orbitint/errors.hpp"
#include "orbitint/factor.hpp"
#include "orbitint/rational_util.hpp"

namespace orbitint {

namespace {

int_poly scale_down_exact(const int_poly& p, const mpz_class& c) {
    if (c == 1) return p;
    return divide_exact(p, int_poly::constant(c));
}

// Wronskian numerator f'g - fg'; vanishing-order bookkeeping only, so the
// constant homogenization factor d is dropped.  Nonzero for every map of
// degree >= 2 (it vanishes identically only for constant maps).
int_poly wronskian_poly(const rational_map& phi) {
    int_poly w = phi.numerator().derivative() * phi.denominator() -
                 phi.numerator() * phi.denominator().derivative();
    if (w.is_zero())
        throw std::logic_error("wronskian_poly: vanishing wronskian on a normalized map");
    return w;
}

}  // namespace

rational_map::rational_map(const rat_poly& num, const rat_poly& den) {
    if (num.is_zero() && den.is_zero()) raise(errc::zero_map, "0/0 is not a map");
    if (num.is_zero() || den.is_zero())
        raise(errc::degree_too_low, "constant map of degree 0");
    auto pn = num.to_primitive();
    auto pd = den.to_primitive();
    mpq_class q(pn.scale / pd.scale);
    q.canonicalize();
    normalize_from(pn.primitive.scaled(q.get_num()), pd.primitive.scaled(q.get_den()));
}

rational_map::rational_map(int_poly num, int_poly den) {
    if (num.is_zero() && den.is_zero()) raise(errc::zero_map, "0/0 is not a map");
    if (num.is_zero() || den.is_zero())
        raise(errc::degree_too_low, "constant map of degree 0");
    normalize_from(std::move(num), std::move(den));
}

rational_map::rational_map(int_poly num, int_poly den, mpz_class res, coprime_tag)
    : f_(std::move(num)), g_(std::move(den)), res_(std::move(res)) {
    d_ = std::max(f_.degree(), g_.degree());
    if (d_ < 2) throw std::logic_error("rational_map: composite degree below 2");
    if (res_ == 0) throw std::logic_error("rational_map: composite resultant zero");
}

void rational_map::normalize_from(int_poly num, int_poly den) {
    int_poly h = poly_gcd(num, den);
    f_ = divide_exact(num, h);
    g_ = divide_exact(den, h);
    mpz_class joint = gcd_z(f_.content(), g_.content());
    if (joint > 1) {
        f_ = scale_down_exact(f_, joint);
        g_ = scale_down_exact(g_, joint);
    }
    if (g_.leading() < 0) {
        f_ = -f_;
        g_ = -g_;
    }
    finish(std::max(f_.degree(), g_.degree()));
}

void rational_map::finish(int d) {
    if (d < 2) raise(errc::degree_too_low, "map has degree " + std::to_string(d < 0 ? 0 : d) + " after reduction");
    d_ = d;
    res_ = sylvester_resultant(f_, g_, d_);
    if (res_ == 0)
        throw std::logic_error("rational_map: zero resultant on a reduced pair");
}

proj_point rational_map::evaluate(const proj_point& P) const {
    return proj_point::make(f_.eval_pair(P.x(), P.y(), d_),
                            g_.eval_pair(P.x(), P.y(), d_));
}

std::string rational_map::to_string() const {
    return "(" + f_.to_string() + ")/(" + g_.to_string() + ")";
}

rational_map compose(const rational_map& outer, const rational_map& inner,
                     long degree_budget) {
    const int m = outer.degree();
    const int n = inner.degree();
    const long dprod = static_cast<long>(m) * static_cast<long>(n);
    if (dprod > degree_budget)
        raise(errc::iterate_too_large,
              "composite degree " + std::to_string(dprod) + " exceeds budget " +
                  std::to_string(degree_budget));

    int_poly A = outer.numerator().eval_pair_poly(inner.numerator(), inner.denominator(), m);
    int_poly B = outer.denominator().eval_pair_poly(inner.numerator(), inner.denominator(), m);

    // The composite pair is coprime: a common projective root of the composite
    // forms would give a nonzero common value of the inner pair that is a
    // common root of the outer forms, contradicting the nonzero resultants.
    // Only the integer content and the sign need normalizing.
    mpz_class joint = gcd_z(A.content(), B.content());
    if (joint > 1) {
        A = scale_down_exact(A, joint);
        B = scale_down_exact(B, joint);
    }
    if (B.leading() < 0) {
        A = -A;
        B = -B;
    }

    // Resultant of the composite forms: Res(F(P,Q), G(P,Q)) =
    // Res(F,G)^n * Res(P,Q)^(m^2); removing content c from a degree-mn pair
    // divides the resultant by c^(2mn), and the joint negation leaves it
    // unchanged (the exponent 2mn is even).
    mpz_class res = pow_z(outer.resultant(), static_cast<unsigned long>(n)) *
                    pow_z(inner.resultant(), static_cast<unsigned long>(m) * m);
    if (joint > 1) {
        mpz_class scale = pow_z(joint, 2 * static_cast<unsigned long>(dprod));
        mpz_class quot, rem;
        mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), res.get_mpz_t(), scale.get_mpz_t());
        if (rem != 0)
            throw std::logic_error("compose: content does not divide the resultant product");
        res = quot;
    }

    rational_map out(std::move(A), std::move(B), std::move(res),
                     rational_map::coprime_tag{});
    if (out.degree() != dprod)
        throw std::logic_error("compose: composite degree mismatch");
    return out;
}

rational_map iterate(const rational_map& phi, int n, long degree_budget) {
    if (n < 1) raise(errc::config_invalid, "iterate requires n >= 1");
    // check the final degree up front so the error does not depend on how far
    // the chain got
    long deg = phi.degree();
    for (int i = 1; i < n; ++i) {
        deg *= phi.degree();
        if (deg > degree_budget)
            raise(errc::iterate_too_large,
                  "iterate degree exceeds budget " + std::to_string(degree_budget));
    }
    rational_map out = phi;
    for (int i = 1; i < n; ++i) out = compose(phi, out, degree_budget);
    return out;
}

std::vector<proj_point> orbit(const rational_map& phi, const proj_point& P, int N,
                              long height_budget_bits) {
    if (N < 0) raise(errc::config_invalid, "orbit requires N >= 0");
    auto over_budget = [&](const proj_point& Q) {
        return bit_length(Q.x()) > static_cast<size_t>(height_budget_bits) ||
               bit_length(Q.y()) > static_cast<size_t>(height_budget_bits);
    };
    std::vector<proj_point> out;
    out.reserve(static_cast<size_t>(N) + 1);
    out.push_back(P);
    if (over_budget(P))
        raise(errc::height_budget_exceeded, "orbit start exceeds the coordinate bit budget", 0);
    for (int n = 1; n <= N; ++n) {
        out.push_back(phi.evaluate(out.back()));
        if (over_budget(out.back()))
            raise(errc::height_budget_exceeded,
                  "orbit coordinate bit budget exceeded at step " + std::to_string(n), n);
    }
    return out;
}

int ramification_index(const rational_map& phi, const proj_point& P) {
    int_poly w = wronskian_poly(phi);
    if (P.is_infinity()) return 1 + (2 * phi.degree() - 2 - w.degree());
    int_poly q(std::vector<mpz_class>{-P.x(), P.y()});
    return 1 + multiplicity(w, q);
}

int fiber_report::weighted_size() const {
    int total = infinity_multiplicity;
    for (const auto& e : finite) total += e.factor.degree() * e.multiplicity;
    return total;
}

bool fiber_report::all_rational() const {
    for (const auto& e : finite)
        if (e.factor.degree() != 1) return false;
    return true;
}

fiber_report fiber_data(const rational_map& phi, const proj_point& A) {
    int_poly h = phi.numerator().scaled(A.y()) - phi.denominator().scaled(A.x());
    if (h.is_zero()) throw std::logic_error("fiber_data: vanishing fiber polynomial");
    fiber_report out;
    out.infinity_multiplicity = phi.degree() - h.degree();
    if (h.degree() >= 1) {
        factored_poly fac = factor_integer_poly(h);
        out.finite.reserve(fac.factors.size());
        for (const auto& pf : fac.factors)
            out.finite.push_back({pf.factor, pf.multiplicity});
    }
    if (out.weighted_size() != phi.degree())
        throw std::logic_error("fiber_data: fiber multiplicities do not sum to the degree");
    return out;
}

bool exceptional_set::contains(const proj_point& P) const {
    // conjugate pairs are irrational, so a rational point can only match the
    // listed rational members
    for (const auto& q : points)
        if (q == P) return true;
    return false;
}

exceptional_set exceptional_points(const rational_map& phi) {
    const rational_map phi2 = iterate(phi, 2);
    const int d2 = phi2.degree();
    exceptional_set out;
    if (phi2.denominator().degree() == 0) out.points.push_back(proj_point::infinity());

    int_poly fixed = phi2.numerator() - phi2.denominator().times_power(1);
    if (fixed.degree() >= 1) {
        int_poly w2 = phi2.numerator().derivative() * phi2.denominator() -
                      phi2.numerator() * phi2.denominator().derivative();
        if (w2.is_zero())
            throw std::logic_error("exceptional_points: vanishing wronskian");
        factored_poly fac = factor_integer_poly(fixed);
        for (const auto& pf : fac.factors) {
            int deg = pf.factor.degree();
            if (deg > 2) continue;
            if (multiplicity(w2, pf.factor) != d2 - 1) continue;
            if (deg == 1)
                out.points.push_back(proj_point::make(-pf.factor.coeff(0), pf.factor.coeff(1)));
            else
                out.conjugate_pairs.push_back(pf.factor);
        }
    }
    if (out.total_count() > 2)
        throw std::logic_error("exceptional_points: more than two candidates certified");
    return out;
}

bool second_iterate_is_polynomial(const rational_map& phi) {
    return iterate(phi, 2).denominator().degree() == 0;
}

}  // namespace orbitint
