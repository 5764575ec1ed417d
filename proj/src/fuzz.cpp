#include "orbitint/fuzz.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orbitint/errors.hpp"
#include "orbitint/factor.hpp"
#include "orbitint/heights.hpp"
#include "orbitint/intpoly.hpp"
#include "orbitint/loglinear.hpp"
#include "orbitint/places.hpp"
#include "orbitint/projpoint.hpp"
#include "orbitint/ratmap.hpp"
#include "orbitint/rational_util.hpp"
#include "orbitint/rng.hpp"

namespace orbitint {

namespace {

constexpr long small_primes[] = {2, 3, 5, 7, 11, 13};

void note_failure(suite_result& out, std::string what) {
    ++out.failures;
    if (out.counterexamples.size() < 5) out.counterexamples.push_back(std::move(what));
}

bool nonneg(const log_linear_real& v) { return v.sign() != sign_result::negative; }

// Random coefficient with |value| < 2^bits; generators assert their declared
// bounds so a drifting generator fails loudly rather than weakening a suite.
mpz_class random_coeff(xoshiro256ss& rng, int bits) {
    long magnitude = static_cast<long>(rng.below(1UL << bits));
    mpz_class c(rng.coin() ? magnitude : -magnitude);
    if (bit_length(c) > static_cast<size_t>(bits))
        throw std::logic_error("random_coeff: bound violated");
    return c;
}

// Primitive (content 1) by construction: the height inequalities exercised
// below are theorems for primitive integer polynomials, while a summand with
// large content would enter with an artificially small height.
int_poly random_poly(xoshiro256ss& rng, int max_deg, int bits) {
    for (;;) {
        std::vector<mpz_class> c(rng.below(static_cast<unsigned long>(max_deg) + 1) + 1);
        for (auto& v : c) v = random_coeff(rng, bits);
        int_poly f{std::move(c)};
        if (f.is_zero()) continue;
        f = f.primitive_part();
        if (f.degree() > max_deg) throw std::logic_error("random_poly: degree bound violated");
        if (f.content() != 1) throw std::logic_error("random_poly: content bound violated");
        return f;
    }
}

rational_map random_map(xoshiro256ss& rng, int max_deg, int bits) {
    for (;;) {
        int_poly f = random_poly(rng, max_deg, bits);
        int_poly g = random_poly(rng, max_deg, bits);
        if (std::max(f.degree(), g.degree()) < 2) continue;
        try {
            rational_map phi(std::move(f), std::move(g));
            if (phi.degree() > max_deg)
                throw std::logic_error("random_map: degree bound violated");
            return phi;
        } catch (const error&) {
            continue;  // reduced below degree 2
        }
    }
}

mpq_class random_rational(xoshiro256ss& rng, int bits) {
    mpz_class num = random_coeff(rng, bits);
    mpz_class den(static_cast<long>(rng.below(1UL << bits)) + 1);
    mpq_class x(num, den);
    x.canonicalize();
    return x;
}

// Nonzero rational with known prime support, for exact product-formula sums.
mpq_class random_supported_rational(xoshiro256ss& rng) {
    mpq_class x(rng.coin() ? 1 : -1);
    for (long p : small_primes) {
        long e = static_cast<long>(rng.range(-5, 5));
        if (e > 0)
            x *= mpq_class(pow_z(mpz_class(p), static_cast<unsigned long>(e)));
        else if (e < 0)
            x /= mpq_class(pow_z(mpz_class(p), static_cast<unsigned long>(-e)));
    }
    return x;
}

place random_place(xoshiro256ss& rng, bool allow_archimedean) {
    if (allow_archimedean && rng.below(7) == 0) return place::archimedean();
    return place::finite(small_primes[rng.below(6)]);
}

std::string poly_pair_text(const int_poly& f, const int_poly& g) {
    return "f = " + f.to_string() + ", g = " + g.to_string();
}

}  // namespace

const char* fuzz_prng_id() noexcept { return "xoshiro256starstar-1.0"; }

suite_result fuzz_gauss_lemma(std::uint64_t seed, long cases) {
    suite_result out{"gauss-lemma-finite-multiplicativity", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        int_poly f = random_poly(rng, 8, 16);
        int_poly g = random_poly(rng, 8, 16);
        place v = place::finite(small_primes[rng.below(6)]);
        log_linear_real lhs = poly_local_norm(f * g, v);
        log_linear_real rhs = poly_local_norm(f, v) + poly_local_norm(g, v);
        ++out.cases_run;
        if (!lhs.same_value(rhs))
            note_failure(out, poly_pair_text(f, g) + ", v = " + v.to_string());
    }
    return out;
}

suite_result fuzz_archimedean_product_bound(std::uint64_t seed, long cases) {
    suite_result out{"archimedean-product-norm-bound", 0, 0, {}};
    xoshiro256ss rng(seed);
    const place v = place::archimedean();
    for (long i = 0; i < cases; ++i) {
        int_poly f = random_poly(rng, 8, 16);
        int_poly g = random_poly(rng, 8, 16);
        long d = f.degree() + g.degree() + 1;
        log_linear_real diff =
            poly_local_norm(f * g, v) - poly_local_norm(f, v) - poly_local_norm(g, v);
        log_linear_real slack = log_linear_real::log_term(mpq_class(4)).scaled(mpq_class(d));
        ++out.cases_run;
        if (!nonneg(slack - diff) || !nonneg(slack + diff))
            note_failure(out, poly_pair_text(f, g));
    }
    return out;
}

suite_result fuzz_product_height_bound(std::uint64_t seed, long cases, bound_mode mode) {
    const bool weakened = mode == bound_mode::weakened_self_test;
    suite_result out{weakened ? "product-height-bound (weakened)" : "product-height-bound",
                     0, 0, {}};
    xoshiro256ss rng(seed);
    // the self-test profile uses tiny coefficients, where coefficient
    // accumulation in the product routinely beats the un-padded bound
    const int bits = weakened ? 1 : 16;
    for (long i = 0; i < cases; ++i) {
        int r = static_cast<int>(rng.range(2, 4));
        int_poly prod = int_poly::constant(1);
        log_linear_real rhs;
        std::string text;
        for (int k = 0; k < r; ++k) {
            int_poly f = random_poly(rng, 8, bits);
            prod = prod * f;
            rhs += poly_height(f);
            if (!weakened)
                rhs += log_linear_real::log_term(mpq_class(2))
                           .scaled(mpq_class(f.degree() + 1));
            if (!text.empty()) text += ", ";
            text += "f" + std::to_string(k + 1) + " = " + f.to_string();
        }
        ++out.cases_run;
        if (!nonneg(rhs - poly_height(prod))) note_failure(out, text);
    }
    return out;
}

suite_result fuzz_sum_height_bound(std::uint64_t seed, long cases) {
    suite_result out{"sum-height-bound", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        int_poly sum;
        log_linear_real rhs;
        std::string text;
        do {  // redraw when the summands cancel: the zero sum has no height
            int r = static_cast<int>(rng.range(2, 4));
            sum = int_poly{};
            rhs = log_linear_real::log_term(mpq_class(r));
            text.clear();
            for (int k = 0; k < r; ++k) {
                int_poly f = random_poly(rng, 8, 16);
                sum = sum + f;
                rhs += poly_height(f);
                if (!text.empty()) text += ", ";
                text += "f" + std::to_string(k + 1) + " = " + f.to_string();
            }
        } while (sum.is_zero());
        ++out.cases_run;
        if (!nonneg(rhs - poly_height(sum))) note_failure(out, text);
    }
    return out;
}

suite_result fuzz_composition_height_bound(std::uint64_t seed, long cases) {
    suite_result out{"composition-height-bound", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        rational_map phi = random_map(rng, 4, 8);
        rational_map psi = random_map(rng, 4, 8);
        rational_map comp = compose(phi, psi);
        log_linear_real rhs = map_height(phi) + map_height(psi).scaled(mpq_class(phi.degree())) +
                              log_linear_real::log_term(mpq_class(8))
                                  .scaled(mpq_class(phi.degree() * psi.degree()));
        ++out.cases_run;
        if (!nonneg(rhs - map_height(comp)))
            note_failure(out, "phi = " + phi.to_string() + ", psi = " + psi.to_string());
    }
    return out;
}

suite_result fuzz_iterate_height_bound(std::uint64_t seed, long cases) {
    suite_result out{"iterate-height-bound", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        rational_map phi = random_map(rng, 4, 8);
        int n = static_cast<int>(rng.range(1, 3));
        const long d = phi.degree();
        rational_map phin = iterate(phi, n);
        mpz_class dn = pow_z(mpz_class(d), static_cast<unsigned long>(n));
        mpz_class dn1 = pow_z(mpz_class(d), static_cast<unsigned long>(n - 1));
        mpz_class num1 = dn - 1;
        mpz_class num2 = mpz_class(d * d) * (dn1 - 1);
        mpz_class den(d - 1);
        mpq_class q1(num1, den);
        mpq_class q2(num2, den);
        q1.canonicalize();
        q2.canonicalize();
        log_linear_real rhs = map_height(phi).scaled(q1) +
                              log_linear_real::log_term(mpq_class(8)).scaled(q2);
        ++out.cases_run;
        if (!nonneg(rhs - map_height(phin)))
            note_failure(out,
                         "phi = " + phi.to_string() + ", n = " + std::to_string(n));
    }
    return out;
}

suite_result fuzz_joint_height_bound(std::uint64_t seed, long cases) {
    suite_result out{"joint-height-dominates-components", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        rational_map phi = random_map(rng, 4, 16);
        log_linear_real h = map_height(phi);
        ++out.cases_run;
        if (!nonneg(h - poly_height(phi.numerator())) ||
            !nonneg(h - poly_height(phi.denominator())))
            note_failure(out, "phi = " + phi.to_string());
    }
    return out;
}

suite_result fuzz_product_formula(std::uint64_t seed, long cases) {
    suite_result out{"product-formula", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        mpq_class x = random_supported_rational(rng);
        log_linear_real total = local_log_abs(x, place::archimedean());
        for (long p : small_primes) total += local_log_abs(x, place::finite(p));
        ++out.cases_run;
        if (total.sign() != sign_result::zero)
            note_failure(out, "x = " + to_string(x));
    }
    return out;
}

suite_result fuzz_chordal_gap_lemma(std::uint64_t seed, long cases) {
    suite_result out{"chordal-gap-lemma", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        mpq_class x = random_rational(rng, 10);
        mpq_class y = random_rational(rng, 10);
        while (x == y) y = random_rational(rng, 10);
        place v = random_place(rng, true);
        proj_point px = proj_point::from_rational(x);
        proj_point py = proj_point::from_rational(y);
        log_linear_real lam_xy = chordal_log(px, py, v).finite_value();
        log_linear_real lam_yinf = chordal_log(py, proj_point::infinity(), v).finite_value();
        log_linear_real ell = v.is_archimedean() ? log_linear_real::log_term(mpq_class(2))
                                                 : log_linear_real{};
        ++out.cases_run;
        if ((lam_xy - lam_yinf - ell).sign() != sign_result::positive)
            continue;  // the implication's premise does not hold; vacuous pass
        log_linear_real mid = lam_xy + local_log_abs(x - y, v);
        bool lower_ok = nonneg(mid - lam_yinf);
        bool upper_ok = nonneg(lam_yinf.scaled(mpq_class(2)) + ell - mid);
        if (!lower_ok || !upper_ok)
            note_failure(out, "x = " + to_string(x) + ", y = " + to_string(y) +
                                  ", v = " + v.to_string());
    }
    return out;
}

suite_result fuzz_strong_triangle(std::uint64_t seed, long cases) {
    suite_result out{"strong-triangle-inequality", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        mpq_class x = random_rational(rng, 12);
        mpq_class y = random_rational(rng, 12);
        while (x == 0 || y == 0 || x + y == 0) {
            x = random_rational(rng, 12);
            y = random_rational(rng, 12);
        }
        mpz_class p(small_primes[rng.below(6)]);
        long vx = padic_valuation(x, p);
        long vy = padic_valuation(y, p);
        long vs = padic_valuation(x + y, p);
        ++out.cases_run;
        bool ok = vs >= std::min(vx, vy) && (vx == vy || vs == std::min(vx, vy));
        if (!ok)
            note_failure(out, "x = " + to_string(x) + ", y = " + to_string(y) +
                                  ", p = " + to_string(p));
    }
    return out;
}

suite_result fuzz_fiber_ramification(std::uint64_t seed, long cases) {
    suite_result out{"fiber-ramification-invariants", 0, 0, {}};
    xoshiro256ss rng(seed);
    for (long i = 0; i < cases; ++i) {
        rational_map phi = random_map(rng, 4, 8);
        const int d = phi.degree();
        ++out.cases_run;
        bool ok = true;

        for (int k = 0; k < 3 && ok; ++k) {
            mpq_class a = random_rational(rng, 8);
            ok = fiber_data(phi, proj_point::from_rational(a)).weighted_size() == d;
        }
        ok = ok && fiber_data(phi, proj_point::infinity()).weighted_size() == d;

        // ramification-divisor degree: factored multiplicities of the
        // wronskian numerator plus the infinity order sum to 2d-2
        int_poly w = phi.numerator().derivative() * phi.denominator() -
                     phi.numerator() * phi.denominator().derivative();
        if (w.is_zero()) {
            ok = false;
        } else {
            int finite_drop = 0;
            for (const auto& pf : factor_integer_poly(w).factors)
                finite_drop += pf.factor.degree() * pf.multiplicity;
            int inf_drop = 2 * d - 2 - w.degree();
            ok = ok && inf_drop >= 0 && finite_drop + inf_drop == 2 * d - 2;
            ok = ok && ramification_index(phi, proj_point::infinity()) == 1 + inf_drop;
        }

        // a rational point's index matches its fiber entry and stays in [1,d]
        mpq_class c = random_rational(rng, 6);
        proj_point p = proj_point::from_rational(c);
        int e = ramification_index(phi, p);
        ok = ok && e >= 1 && e <= d;
        fiber_report fib = fiber_data(phi, phi.evaluate(p));
        int_poly lin(std::vector<mpz_class>{mpz_class(-p.x()), p.y()});
        int found = 0;
        for (const auto& entry : fib.finite)
            if (entry.factor == lin.normalized_primitive()) found = entry.multiplicity;
        ok = ok && found == e;

        if (!ok) note_failure(out, "phi = " + phi.to_string());
    }
    return out;
}

std::vector<suite_result> run_fuzz_suites(std::uint64_t seed, const fuzz_sizes& sizes) {
    std::vector<suite_result> out;
    out.push_back(fuzz_gauss_lemma(seed, sizes.height));
    out.push_back(fuzz_archimedean_product_bound(seed + 1, sizes.height));
    out.push_back(fuzz_product_height_bound(seed + 2, sizes.height));
    out.push_back(fuzz_sum_height_bound(seed + 3, sizes.height));
    out.push_back(fuzz_composition_height_bound(seed + 4, sizes.height));
    out.push_back(fuzz_iterate_height_bound(seed + 5, sizes.iterate));
    out.push_back(fuzz_joint_height_bound(seed + 6, sizes.height));
    out.push_back(fuzz_product_formula(seed + 7, sizes.metric));
    out.push_back(fuzz_chordal_gap_lemma(seed + 8, sizes.metric));
    out.push_back(fuzz_strong_triangle(seed + 9, sizes.metric));
    out.push_back(fuzz_fiber_ramification(seed + 10, sizes.maps));
    return out;
}

}  // namespace orbitint
