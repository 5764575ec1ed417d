#include "orbitint/heights.hpp"

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orbitint/errors.hpp"
#include "orbitint/rational_util.hpp"

namespace orbitint {

namespace {

mpz_class max_abs_coeff(const int_poly& f) {
    mpz_class m = 0;
    for (const auto& a : f.coeffs()) {
        mpz_class aa = abs_z(a);
        if (aa > m) m = std::move(aa);
    }
    return m;
}

// Rows of the Sylvester matrix of the degree-d homogenizations, in the
// monomial order x^(2d-1-j) y^j: row i < d is the coefficient vector of
// x^(d-1-i) y^i * F, row d+i the same shift of G.
std::vector<std::vector<mpz_class>> sylvester_row_vectors(const int_poly& f,
                                                          const int_poly& g, int d) {
    const size_t n = 2 * static_cast<size_t>(d);
    std::vector<std::vector<mpz_class>> s(n, std::vector<mpz_class>(n, mpz_class(0)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < 2 * d; ++j) {
            int k = d + i - j;
            if (k < 0 || k > d) continue;
            s[static_cast<size_t>(i)][static_cast<size_t>(j)] = f.coeff(static_cast<size_t>(k));
            s[static_cast<size_t>(d + i)][static_cast<size_t>(j)] = g.coeff(static_cast<size_t>(k));
        }
    return s;
}

// Integer weights w, w' with  sum_i w_i row_i = Res * e_first  and
// sum_i w'_i row_i = Res * e_last; the first d weights of each are the
// coefficients of the cofactor form multiplying F, the rest multiply G.
// Solutions are adjugate columns of the transposed system (the determinant
// is the resultant itself), hence integral.
struct cofactor_weights {
    std::vector<mpz_class> wx, wy;
};

cofactor_weights solve_cofactors(const rational_map& phi) {
    const int d = phi.degree();
    const size_t n = 2 * static_cast<size_t>(d);
    const auto rows = sylvester_row_vectors(phi.numerator(), phi.denominator(), d);

    // transposed system with two right-hand sides, solved by exact rational
    // elimination
    std::vector<std::vector<mpq_class>> t(n, std::vector<mpq_class>(n + 2, mpq_class(0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) t[j][i] = mpq_class(rows[i][j]);
    t[0][n] = mpq_class(phi.resultant());
    t[n - 1][n + 1] = mpq_class(phi.resultant());

    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && t[piv][col] == 0) ++piv;
        if (piv == n) throw std::logic_error("solve_cofactors: singular system");
        if (piv != col) std::swap(t[col], t[piv]);
        for (size_t r = col + 1; r < n; ++r) {
            if (t[r][col] == 0) continue;
            mpq_class factor = t[r][col] / t[col][col];
            for (size_t c = col; c < n + 2; ++c) t[r][c] -= factor * t[col][c];
        }
    }
    std::vector<mpq_class> wx(n), wy(n);
    for (size_t ri = n; ri-- > 0;) {
        mpq_class ax = t[ri][n], ay = t[ri][n + 1];
        for (size_t c = ri + 1; c < n; ++c) {
            ax -= t[ri][c] * wx[c];
            ay -= t[ri][c] * wy[c];
        }
        wx[ri] = ax / t[ri][ri];
        wy[ri] = ay / t[ri][ri];
    }

    cofactor_weights out;
    out.wx.resize(n);
    out.wy.resize(n);
    for (size_t i = 0; i < n; ++i) {
        if (wx[i].get_den() != 1 || wy[i].get_den() != 1)
            throw std::logic_error("solve_cofactors: non-integral solution");
        out.wx[i] = wx[i].get_num();
        out.wy[i] = wy[i].get_num();
    }

    // certify the two identities coefficient by coefficient
    for (size_t j = 0; j < n; ++j) {
        mpz_class accx = 0, accy = 0;
        for (size_t i = 0; i < n; ++i) {
            accx += out.wx[i] * rows[i][j];
            accy += out.wy[i] * rows[i][j];
        }
        const mpz_class wantx = (j == 0) ? phi.resultant() : mpz_class(0);
        const mpz_class wanty = (j == n - 1) ? phi.resultant() : mpz_class(0);
        if (accx != wantx || accy != wanty)
            throw std::logic_error("solve_cofactors: identity verification failed");
    }
    return out;
}

// Interval value of the degree-d homogenization at an interval pair.
real_interval eval_form_interval(const int_poly& f, const real_interval& x,
                                 const real_interval& y, int d, mpfr_prec_t prec) {
    std::vector<real_interval> xp, yp;
    xp.reserve(static_cast<size_t>(d) + 1);
    yp.reserve(static_cast<size_t>(d) + 1);
    xp.push_back(real_interval::from_long(1, prec));
    yp.push_back(real_interval::from_long(1, prec));
    for (int i = 1; i <= d; ++i) {
        xp.push_back(xp.back().mul(x));
        yp.push_back(yp.back().mul(y));
    }
    real_interval acc = real_interval::exact_zero(prec);
    for (int i = 0; i <= d; ++i) {
        mpz_class c = f.coeff(static_cast<size_t>(i));
        if (c == 0) continue;
        acc = acc.add(xp[static_cast<size_t>(i)].mul(yp[static_cast<size_t>(d - i)]).scale_z(c));
    }
    return acc;
}

// Exact power-of-two rescaling keeping the larger coordinate magnitude near
// one; the tracked quantity is scale-invariant, so only conditioning changes.
void rescale_pair(real_interval& x, real_interval& y) {
    long e = LONG_MIN;
    for (mpfr_srcptr v : {x.lo_raw(), x.hi_raw(), y.lo_raw(), y.hi_raw()})
        if (mpfr_regular_p(v)) e = std::max(e, static_cast<long>(mpfr_get_exp(v)));
    if (e == LONG_MIN)
        throw std::logic_error("rescale_pair: both coordinates vanished");
    if (e != 0) {
        x = x.mul_2si(-e);
        y = y.mul_2si(-e);
    }
}

// One full telescoping pass at fixed working precision; nullopt asks the
// caller to retry with more precision.
std::optional<real_interval> telescope_once(const rational_map& phi, const proj_point& P,
                                            long N, const mpz_class& rabs, bool track,
                                            long M, mpfr_prec_t prec,
                                            const real_interval& cmax,
                                            const mpq_class& target_width) {
    const int d = phi.degree();

    mpz_class m0 = std::max(abs_z(P.x()), abs_z(P.y()));
    real_interval acc = real_interval::log_of_mpz(m0, prec);

    real_interval xi = real_interval::from_mpz(P.x(), prec);
    real_interval yi = real_interval::from_mpz(P.y(), prec);
    rescale_pair(xi, yi);

    mpz_class modulus = track ? pow_z(rabs, static_cast<unsigned long>(M)) : mpz_class(1);
    mpz_class xr, yr;
    if (track) {
        xr = mod_z(P.x(), modulus);
        yr = mod_z(P.y(), modulus);
    }

    mpq_class coef(1);
    for (long n = 0; n < N; ++n) {
        coef /= d;

        real_interval fx = eval_form_interval(phi.numerator(), xi, yi, d, prec);
        real_interval gx = eval_form_interval(phi.denominator(), xi, yi, d, prec);
        real_interval mnew = fx.abs().max_with(gx.abs());
        real_interval mold = xi.abs().max_with(yi.abs());
        if (mnew.lo_sign() <= 0 || mold.lo_sign() <= 0) return std::nullopt;

        real_interval delta = mnew.log().sub(mold.log().scale_z(d));

        if (track) {
            mpz_class fr = phi.numerator().eval_pair_mod(xr, yr, d, modulus);
            mpz_class gr = phi.denominator().eval_pair_mod(xr, yr, d, modulus);
            // the coordinate gcd after one step divides the resultant, so it
            // is readable off the residues:
            // gcd(F mod m, G mod m, m) = gcd(F, G, m) = gcd(F, G) when
            // gcd(F, G) | R | m
            mpz_class gamma = gcd_z(gcd_z(fr, gr), modulus);
            if (gamma > 1) {
                delta = delta.sub(real_interval::log_of_mpz(gamma, prec));
                fr = divexact_z(fr, gamma);
                gr = divexact_z(gr, gamma);
                modulus = divexact_z(modulus, gamma);
                if (modulus % rabs != 0)
                    throw std::logic_error("telescope_once: residue headroom exhausted");
            }
            xr = mod_z(fr, modulus);
            yr = mod_z(gr, modulus);
        }

        acc = acc.add(delta.scale_q(coef));
        xi = fx;
        yi = gx;
        rescale_pair(xi, yi);
    }

    // symmetric tail enclosure: |sum of the remaining terms| is at most
    // max(c_plus, c_minus) / (d^N (d-1))
    const mpz_class tail_den = mpz_class(d - 1) * pow_z(mpz_class(d), static_cast<unsigned long>(N));
    real_interval tail = cmax.scale_q(mpq_class(mpz_class(1), tail_den));
    acc = acc.add(tail.hull_with(tail.neg()));

    if (!acc.width_at_most(target_width)) return std::nullopt;
    return acc;
}

}  // namespace

log_linear_real poly_local_norm(const int_poly& f, const place& v) {
    if (f.is_zero()) raise(errc::zero_polynomial, "local norm of the zero polynomial");
    if (v.is_archimedean()) return log_linear_real::log_term(mpq_class(max_abs_coeff(f)));
    const mpz_class& p = v.prime();
    bool first = true;
    long minv = 0;
    for (const auto& a : f.coeffs()) {
        if (a == 0) continue;
        long val = valuation_z(a, p);
        if (first || val < minv) minv = val;
        first = false;
    }
    return log_linear_real::scaled_log(mpq_class(-minv), mpq_class(p));
}

log_linear_real poly_local_norm(const rat_poly& f, const place& v) {
    if (f.is_zero()) raise(errc::zero_polynomial, "local norm of the zero polynomial");
    if (v.is_archimedean()) {
        mpq_class m = 0;
        for (const auto& a : f.coeffs()) {
            mpq_class aa = abs_q(a);
            if (aa > m) m = std::move(aa);
        }
        return log_linear_real::log_term(m);
    }
    const mpz_class& p = v.prime();
    bool first = true;
    long minv = 0;
    for (const auto& a : f.coeffs()) {
        if (a == 0) continue;
        long val = padic_valuation(a, p);
        if (first || val < minv) minv = val;
        first = false;
    }
    return log_linear_real::scaled_log(mpq_class(-minv), mpq_class(p));
}

log_linear_real poly_height(const int_poly& f) {
    if (f.is_zero()) raise(errc::zero_polynomial, "height of the zero polynomial");
    return log_linear_real::log_term(mpq_class(max_abs_coeff(f.primitive_part())));
}

log_linear_real poly_height(const rat_poly& f) {
    if (f.is_zero()) raise(errc::zero_polynomial, "height of the zero polynomial");
    return log_linear_real::log_term(mpq_class(max_abs_coeff(f.to_primitive().primitive)));
}

log_linear_real map_height(const rational_map& phi) {
    mpz_class m = std::max(max_abs_coeff(phi.numerator()), max_abs_coeff(phi.denominator()));
    return log_linear_real::log_term(mpq_class(m));
}

height_gap height_gap_constants(const rational_map& phi) {
    const int d = phi.degree();
    height_gap out;
    // upper side: every coefficient of the evaluated forms is a sum of d+1
    // products bounded by the coefficient maximum times max(|x|,|y|)^d
    out.c_plus = map_height(phi) + log_linear_real::log_term(mpq_class(d + 1));

    // lower side: with u1*F + v1*G = R*x^(2d-1) and u2*F + v2*G = R*y^(2d-1),
    // the coordinate gcd divides R while |R| max(|x|,|y|)^(2d-1) is at most
    // 2d * U * max(|x|,|y|)^(d-1) * max(|F|,|G|), so
    // h(phi(Q)) >= d h(Q) - log(2dU)
    const cofactor_weights cof = solve_cofactors(phi);
    mpz_class u = 0;
    for (const auto& w : cof.wx) u = std::max(u, abs_z(w));
    for (const auto& w : cof.wy) u = std::max(u, abs_z(w));
    if (u == 0) throw std::logic_error("height_gap_constants: vanishing cofactors");
    out.c_minus = log_linear_real::log_term(mpq_class(2 * d * u));
    return out;
}

real_interval canonical_height(const rational_map& phi, const proj_point& P,
                               const mpq_class& target_width, const compute_limits& limits) {
    if (target_width <= 0) raise(errc::config_invalid, "target width must be positive");
    const int d = phi.degree();

    const height_gap gap = height_gap_constants(phi);
    const real_interval cmax = gap.c_plus.enclose().max_with(gap.c_minus.enclose());

    // smallest N with  max(c_plus, c_minus) / (d^N (d-1)) <= width/4
    const mpq_class quarter = target_width / 4;
    long N = 0;
    mpz_class dpow = 1;
    while (true) {
        mpq_class rhs = quarter * (d - 1) * mpq_class(dpow);
        if (mpfr_cmp_q(cmax.hi_raw(), rhs.get_mpq_t()) <= 0) break;
        ++N;
        dpow *= d;
        if (N > 1000000) throw std::logic_error("canonical_height: tail bound fails to shrink");
    }

    const mpz_class rabs = abs_z(phi.resultant());
    const bool track = rabs != 1;
    const long M = N + 2;
    if (track && static_cast<long>(bit_length(rabs)) * M > limits.height_budget_bits)
        raise(errc::height_budget_exceeded,
              "gcd residue track needs " + std::to_string(bit_length(rabs) * static_cast<size_t>(M)) +
                  " bits against a budget of " + std::to_string(limits.height_budget_bits));

    long wbits = static_cast<long>(bit_length(target_width.get_den())) -
                 static_cast<long>(bit_length(target_width.get_num()));
    if (wbits < 0) wbits = 0;
    for (long prec = std::max<long>(192, wbits + 128); prec <= limits.precision_cap_bits;
         prec *= 2) {
        auto result = telescope_once(phi, P, N, rabs, track, M,
                                     static_cast<mpfr_prec_t>(prec), cmax, target_width);
        if (result) return *result;
    }
    raise(errc::precision_cap_exceeded,
          "canonical height did not reach width " + to_string(target_width) + " within " +
              std::to_string(limits.precision_cap_bits) + " bits");
}

// Declared with the map interface: exact preperiodicity decision.
bool is_preperiodic(const rational_map& phi, const proj_point& P) {
    const height_gap gap = height_gap_constants(phi);
    // A point with canonical height zero keeps naive height at most
    // max(c_plus, c_minus)/(d-1) (telescoping the gap bound), so an orbit
    // point above that ceiling certifies a wandering start; a bounded orbit
    // visits finitely many rationals and must repeat.
    const log_linear_real ceiling =
        (gap.c_plus - gap.c_minus).sign() == sign_result::negative ? gap.c_minus : gap.c_plus;
    std::set<proj_point> visited;
    proj_point cur = P;
    for (;;) {
        if (!visited.insert(cur).second) return true;
        log_linear_real excess = naive_height(cur).scaled(phi.degree() - 1) - ceiling;
        if (excess.sign() == sign_result::positive) return false;
        cur = phi.evaluate(cur);
    }
}

}  // namespace orbitint
