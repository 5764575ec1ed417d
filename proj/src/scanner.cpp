#include "orbitint/scanner.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orbitint/errors.hpp"
#include "orbitint/rational_util.hpp"

namespace orbitint {

const char* membership_name(membership m) noexcept {
    switch (m) {
        case membership::in: return "In";
        case membership::out: return "Out";
        case membership::unresolved: return "Unresolved";
    }
    return "?";
}

const char* backend_name(scan_backend b) noexcept {
    switch (b) {
        case scan_backend::exact_orbit: return "exact";
        case scan_backend::finite_place_modular: return "modular";
    }
    return "?";
}

bool quasi_integral_test(const mpq_class& x, const place_set& s, const mpq_class& eps) {
    if (eps <= 0 || eps > 1) raise(errc::config_invalid, "eps must lie in (0, 1]");
    if (x == 0) return true;
    log_linear_real lhs;
    for (const place& v : s) {
        if (v.is_archimedean()) {
            mpq_class ax = abs_q(x);
            if (ax > 1) lhs += log_linear_real::log_term(ax);
        } else {
            long val = padic_valuation(x, v.prime());
            if (val < 0)
                lhs += log_linear_real::scaled_log(mpq_class(-val), mpq_class(v.prime()));
        }
    }
    mpz_class big = std::max(abs_z(x.get_num()), mpz_class(x.get_den()));
    log_linear_real rhs = log_linear_real::log_term(mpq_class(big)).scaled(eps);
    return (lhs - rhs).sign() != sign_result::negative;
}

lambda_value lambda_sum(const proj_point& p, const proj_point& a, const place_set& s) {
    if (p == a) return lambda_value::infinity();
    lambda_value acc{log_linear_real{}};
    for (const place& v : s) acc += chordal_log(p, a, v);
    return acc;
}

namespace {

// Certified enclosure of log_d^+((h(phi) [+ hhat(A)]) / hhat(P)) of width at
// most tol, refining the component heights until the quotient settles.
real_interval log_term_enclosure(const rational_map& phi, const proj_point* a,
                                 const proj_point& p, const mpq_class& tol,
                                 const compute_limits& limits) {
    if (tol <= 0) raise(errc::config_invalid, "tolerance must be positive");
    if (is_preperiodic(phi, p))
        raise(errc::preperiodic_start,
              "start " + p.to_string() + " has canonical height zero");
    const log_linear_real hphi = map_height(phi);
    // preperiodic targets contribute an exactly-zero canonical height
    const bool a_active = a != nullptr && !is_preperiodic(phi, *a);
    if (hphi.is_zero_form() && !a_active) return real_interval::exact_zero();

    const int d = phi.degree();
    mpq_class w = tol / 8;
    mpfr_prec_t prec = 256;
    for (;;) {
        real_interval hat_p = canonical_height(phi, p, w, limits);
        if (hat_p.lo_sign() > 0) {
            real_interval num = hphi.enclose(prec);
            if (a_active) num = num.add(canonical_height(phi, *a, w, limits));
            real_interval ratio = num.div_pos(hat_p).max_with(real_interval::from_long(1, prec));
            real_interval out =
                ratio.log().div_pos(real_interval::log_of_mpz(mpz_class(d), prec));
            if (out.width_at_most(tol)) return out;
        }
        w /= 16;
        prec *= 2;
        if (prec > limits.precision_cap_bits)
            raise(errc::precision_cap_exceeded,
                  "log-term enclosure did not reach the requested tolerance");
    }
}

constexpr long initial_master_width_den = 1000000;  // canonical-height width 1e-6

// Per-place modular orbit track: the cross-term valuation v_p(X_n b - Y_n a)
// for every n, or a certificate that the orbit point equals the target.
struct modular_lambda {
    std::vector<long> vals;
    std::vector<char> infinite;
};

modular_lambda run_modular_track(const rational_map& phi, const proj_point& a,
                                 const proj_point& p0, const mpz_class& prime, long n_max,
                                 const real_interval& master, const real_interval& gap_ceiling,
                                 const compute_limits& limits) {
    const int d = phi.degree();
    const long v_res = valuation_z(abs_z(phi.resultant()), prime);

    // A nonzero cross term X_n b - Y_n a has log size at most
    // d^n * hhat_hi + gap_ceiling + h(A) + log 2, so a residue still zero
    // beyond that order certifies a genuine orbit hit of the target.
    const mpfr_prec_t cprec = 192;
    const real_interval fixed_part =
        gap_ceiling.add(naive_height(a).enclose(cprec))
            .add(real_interval::log_of_mpz(mpz_class(2), cprec));
    const real_interval logp = real_interval::log_of_mpz(prime, cprec);
    auto equality_cap = [&](long n) -> long {
        real_interval b = master.scale_z(pow_z(mpz_class(d), static_cast<unsigned long>(n)))
                              .add(fixed_part)
                              .div_pos(logp);
        mpz_class f = b.floor_hi();
        if (!f.fits_slong_p()) return LONG_MAX / 2;
        return std::max(0L, f.get_si()) + 1;
    };

    long m_exp = 128 + n_max * v_res;
    for (;;) {
        if (m_exp * static_cast<long>(bit_length(prime)) > limits.height_budget_bits)
            raise(errc::height_budget_exceeded,
                  "modular modulus " + to_string(prime) + "^" + std::to_string(m_exp) +
                      " exceeds the bit budget");
        long k = m_exp;
        mpz_class modulus = pow_z(prime, static_cast<unsigned long>(m_exp));
        mpz_class x = mod_z(p0.x(), modulus);
        mpz_class y = mod_z(p0.y(), modulus);
        modular_lambda out;
        out.vals.assign(static_cast<size_t>(n_max) + 1, 0);
        out.infinite.assign(static_cast<size_t>(n_max) + 1, 0);
        bool restart = false;
        for (long n = 0; n <= n_max; ++n) {
            mpz_class t = mod_z(x * a.y() - y * a.x(), modulus);
            if (t == 0) {
                if (k > equality_cap(n)) {
                    out.infinite[static_cast<size_t>(n)] = 1;
                } else {
                    m_exp *= 2;
                    restart = true;
                    break;
                }
            } else {
                out.vals[static_cast<size_t>(n)] = valuation_z(t, prime);
            }
            if (n == n_max) break;
            if (k < v_res + 2) {  // not enough headroom to trust the next step
                m_exp *= 2;
                restart = true;
                break;
            }
            mpz_class fx = phi.numerator().eval_pair_mod(x, y, d, modulus);
            mpz_class gx = phi.denominator().eval_pair_mod(x, y, d, modulus);
            long m = -1;
            if (fx != 0) m = valuation_z(fx, prime);
            if (gx != 0) {
                long mg = valuation_z(gx, prime);
                if (m < 0 || mg < m) m = mg;
            }
            // the per-step coordinate gcd divides the resultant, so with
            // k > v_res at least one residue is nonzero and the minimum
            // valuation is exact
            if (m < 0 || m > v_res)
                throw std::logic_error("run_modular_track: step valuation out of range");
            if (m > 0) {
                mpz_class pm = pow_z(prime, static_cast<unsigned long>(m));
                fx = divexact_z(fx, pm);
                gx = divexact_z(gx, pm);
                modulus = divexact_z(modulus, pm);
                k -= m;
            }
            x = mod_z(fx, modulus);
            y = mod_z(gx, modulus);
        }
        if (!restart) return out;
    }
}

void validate_scan_inputs(const rational_map& phi, const proj_point& a, const proj_point& p,
                          const mpq_class& eps, long n_max) {
    if (eps <= 0 || eps > 1) raise(errc::config_invalid, "eps must lie in (0, 1]");
    if (n_max < 0) raise(errc::config_invalid, "n_max must be nonnegative");
    if (exceptional_points(phi).contains(a))
        raise(errc::exceptional_target, "target " + a.to_string() + " is exceptional");
    if (is_preperiodic(phi, p))
        raise(errc::preperiodic_start, "start " + p.to_string() + " is preperiodic");
}

std::string count_bound_shape(const place_set& s) {
    return "4^" + std::to_string(s.size()) + " * C_ineffective + log_term";
}

void tally(scan_report& rep) {
    rep.count_in = rep.count_out = rep.count_unresolved = 0;
    for (const scan_verdict& sv : rep.verdicts) {
        switch (sv.verdict) {
            case membership::in: ++rep.count_in; break;
            case membership::out: ++rep.count_out; break;
            case membership::unresolved: ++rep.count_unresolved; break;
        }
    }
}

}  // namespace

scan_report gamma_scan(const rational_map& phi, const proj_point& a, const proj_point& p,
                       const place_set& s, const mpq_class& eps, long n_max,
                       scan_backend backend, const compute_limits& limits) {
    if (backend == scan_backend::finite_place_modular && s.has_archimedean())
        raise(errc::backend_unsupported, "modular backend handles finite places only");
    validate_scan_inputs(phi, a, p, eps, n_max);

    const int d = phi.degree();
    mpq_class width(1, initial_master_width_den);
    real_interval master = canonical_height(phi, p, width, limits);

    std::vector<lambda_value> lams;
    lams.reserve(static_cast<size_t>(n_max) + 1);
    if (backend == scan_backend::exact_orbit) {
        std::vector<proj_point> pts =
            orbit(phi, p, static_cast<int>(n_max), limits.height_budget_bits);
        for (long n = 0; n <= n_max; ++n)
            lams.push_back(lambda_sum(pts[static_cast<size_t>(n)], a, s));
    } else {
        height_gap gap = height_gap_constants(phi);
        real_interval ceiling = gap.c_plus.enclose()
                                    .max_with(gap.c_minus.enclose())
                                    .scale_q(mpq_class(1, d - 1));
        std::vector<modular_lambda> tracks;
        tracks.reserve(s.size());
        for (const place& v : s)
            tracks.push_back(run_modular_track(phi, a, p, v.prime(), n_max, master,
                                               ceiling, limits));
        for (long n = 0; n <= n_max; ++n) {
            bool inf = false;
            log_linear_real sum;
            size_t i = 0;
            for (const place& v : s) {
                const modular_lambda& tr = tracks[i++];
                if (tr.infinite[static_cast<size_t>(n)]) {
                    inf = true;
                } else if (tr.vals[static_cast<size_t>(n)] > 0) {
                    sum += log_linear_real::scaled_log(mpq_class(tr.vals[static_cast<size_t>(n)]),
                                                       mpq_class(v.prime()));
                }
            }
            lams.push_back(inf ? lambda_value::infinity() : lambda_value(std::move(sum)));
        }
    }

    scan_report rep{{},    0, 0, 0, master, real_interval::exact_zero(), count_bound_shape(s),
                    phi,   a, p, s, eps,    n_max,                       backend};
    rep.verdicts.resize(static_cast<size_t>(n_max) + 1);
    mpq_class dn(1);
    for (long n = 0; n <= n_max; ++n, dn *= d) {
        const mpq_class scale = eps * dn;
        scan_verdict& sv = rep.verdicts[static_cast<size_t>(n)];
        sv.n = n;
        sv.threshold = master.scale_q(scale);
        if (lams[static_cast<size_t>(n)].is_infinite()) {
            sv.lambda_infinite = true;
            sv.verdict = membership::in;
            continue;
        }
        sv.lambda = lams[static_cast<size_t>(n)].finite_value();
        auto refine = [&](const real_interval&) -> real_interval {
            try {
                mpq_class next = width / 16;
                real_interval refined = canonical_height(phi, p, next, limits);
                width = next;
                master = refined;
            } catch (const error& e) {
                if (e.code() != errc::precision_cap_exceeded &&
                    e.code() != errc::height_budget_exceeded)
                    throw;  // refinement is best-effort; the cap ends the loop
            }
            sv.threshold = master.scale_q(scale);
            return sv.threshold;
        };
        interval_order ord =
            compare_interval(sv.threshold, sv.lambda, refine, limits.precision_cap_bits);
        sv.verdict = ord == interval_order::less      ? membership::in
                     : ord == interval_order::greater ? membership::out
                                                      : membership::unresolved;
    }
    tally(rep);
    rep.hhat_start = master;
    rep.bound_log_term = log_term_enclosure(phi, &a, p, mpq_class(1, initial_master_width_den), limits);
    return rep;
}

scan_report gamma_scan_naive(const rational_map& phi, const proj_point& a,
                             const proj_point& p, const place_set& s, const mpq_class& eps,
                             long n_max, const compute_limits& limits) {
    validate_scan_inputs(phi, a, p, eps, n_max);

    mpq_class width(1, initial_master_width_den);
    real_interval master = canonical_height(phi, p, width, limits);
    std::vector<proj_point> pts =
        orbit(phi, p, static_cast<int>(n_max), limits.height_budget_bits);

    scan_report rep{{},  0, 0, 0, master, real_interval::exact_zero(), count_bound_shape(s),
                    phi, a, p, s, eps,    n_max,                       scan_backend::exact_orbit};
    rep.verdicts.resize(static_cast<size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n) {
        scan_verdict& sv = rep.verdicts[static_cast<size_t>(n)];
        sv.n = n;
        lambda_value lam = lambda_sum(pts[static_cast<size_t>(n)], a, s);
        // the naive threshold eps * h(phi^n P) is exact, so the verdict is a
        // sign decision; the recorded interval is a display enclosure
        log_linear_real thr = naive_height(pts[static_cast<size_t>(n)]).scaled(eps);
        sv.threshold = thr.enclose(192);
        if (lam.is_infinite()) {
            sv.lambda_infinite = true;
            sv.verdict = membership::in;
            continue;
        }
        sv.lambda = lam.finite_value();
        sv.verdict = (sv.lambda - thr).sign() != sign_result::negative ? membership::in
                                                                       : membership::out;
    }
    tally(rep);
    rep.bound_log_term = log_term_enclosure(phi, &a, p, mpq_class(1, initial_master_width_den), limits);
    return rep;
}

census_report integral_census(const rational_map& phi, const proj_point& p,
                              const place_set& s, long n_max, long height_budget_bits,
                              const compute_limits& limits) {
    if (n_max < 0) raise(errc::config_invalid, "n_max must be nonnegative");
    if (!s.has_archimedean())
        raise(errc::config_invalid, "place set must contain the archimedean place");
    if (second_iterate_is_polynomial(phi))
        raise(errc::second_iterate_polynomial,
              "census undefined when the second iterate is a polynomial");
    if (is_preperiodic(phi, p))
        raise(errc::preperiodic_start, "start " + p.to_string() + " is preperiodic");

    std::vector<proj_point> pts = orbit(phi, p, static_cast<int>(n_max), height_budget_bits);
    census_report rep{{}, log_term_enclosure(phi, nullptr, p,
                                             mpq_class(1, initial_master_width_den), limits)};
    for (long n = 1; n <= n_max; ++n) {
        const proj_point& pt = pts[static_cast<size_t>(n)];
        if (pt.is_infinity()) continue;
        mpz_class den = pt.y();
        for (const place& v : s)
            if (!v.is_archimedean()) den = remove_factor(den, v.prime());
        if (den == 1) rep.integral_indices.push_back(n);
    }
    return rep;
}

real_interval bound_log_term(const rational_map& phi, const proj_point& a,
                             const proj_point& p, const mpq_class& tol,
                             const compute_limits& limits) {
    return log_term_enclosure(phi, &a, p, tol, limits);
}

std::optional<long> remark_count(int d, const mpz_class& p, const mpq_class& eps,
                                 const real_interval& hhat) {
    if (d < 2) raise(errc::config_invalid, "degree must be at least 2");
    if (eps <= 0 || eps > 1) raise(errc::config_invalid, "eps must lie in (0, 1]");
    if (!is_prime(p)) raise(errc::not_prime, to_string(p) + " is not prime");
    if (hhat.lo_sign() <= 0)
        raise(errc::nonpositive_height, "canonical-height interval must be positive");

    const mpfr_prec_t prec = std::max<mpfr_prec_t>(hhat.prec(), 256);
    real_interval w = real_interval::log_of_mpz(p, prec).div_pos(hhat.scale_q(eps));
    real_interval v =
        w.log().div_pos(real_interval::log_of_mpq(mpq_class(d, d - 1), prec));
    mpz_class lo = v.floor_lo(), hi = v.floor_hi();
    if (lo != hi) return std::nullopt;
    if (!lo.fits_slong_p()) throw std::logic_error("remark_count: count out of range");
    return std::max(0L, lo.get_si() + 1);
}

inv_fun_record inv_fun_report(const rational_map& psi, const proj_point& a,
                              const proj_point& p, const place_set& s) {
    fiber_report fib = fiber_data(psi, a);
    if (!fib.all_rational())
        raise(errc::rational_fiber_required,
              "fiber above " + a.to_string() + " contains irrational points");

    inv_fun_record rec;
    for (const fiber_entry& e : fib.finite) {
        rec.preimages.push_back(proj_point::make(-e.factor.coeff(0), e.factor.coeff(1)));
        rec.indices.push_back(e.multiplicity);
    }
    if (fib.infinity_multiplicity > 0) {
        rec.preimages.push_back(proj_point::infinity());
        rec.indices.push_back(fib.infinity_multiplicity);
    }
    rec.scale = (naive_height(a) + map_height(psi))
                    .enclose(192)
                    .add(real_interval::from_long(1, 192));

    const proj_point image = psi.evaluate(p);
    rec.infinite = image == a;
    if (rec.infinite) return rec;  // P lies in the fiber: both sides are infinite

    for (const place& v : s) {
        bool first = true;
        log_linear_real best;
        for (size_t i = 0; i < rec.preimages.size(); ++i) {
            lambda_value lv = chordal_log(p, rec.preimages[i], v);
            // p equal to a preimage would force psi(p) = a, excluded above
            log_linear_real cand =
                lv.finite_value().scaled(mpq_class(rec.indices[i]));
            if (first || (cand - best).sign() == sign_result::positive) {
                best = std::move(cand);
                first = false;
            }
        }
        if (!first) rec.lhs += best;
        rec.rhs += chordal_log(image, a, v).finite_value();
    }
    rec.residual = rec.lhs - rec.rhs;
    return rec;
}

ram_growth_report ramification_growth(const rational_map& phi, const proj_point& q,
                                      int m_max, long degree_budget) {
    if (m_max < 1) raise(errc::config_invalid, "m_max must be at least 1");
    if (exceptional_points(phi).contains(q))
        raise(errc::exceptional_target, "base point " + q.to_string() + " is exceptional");

    const int d = phi.degree();
    const bool wandering = !is_preperiodic(phi, q);
    const real_interval growth_ceiling = real_interval::from_long(2 * d - 2).exp();

    ram_growth_report rep;
    for (int m = 1; m <= m_max; ++m) {
        rational_map it = iterate(phi, m, degree_budget);
        fiber_report fib = fiber_data(it, q);
        int mx = fib.infinity_multiplicity;
        for (const fiber_entry& e : fib.finite) mx = std::max(mx, e.multiplicity);
        rep.max_multiplicity.push_back(mx);
        if (wandering && real_interval::from_long(mx).entirely_gt(growth_ceiling))
            rep.flagged_m.push_back(m);
    }
    return rep;
}

}  // namespace orbitint
