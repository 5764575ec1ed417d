#include "orbitint/loglinear.hpp"

#include <deque>
#include <stdexcept>

#include "orbitint/rational_util.hpp"

namespace orbitint {

log_linear_real log_linear_real::log_term(const mpq_class& r) {
    return scaled_log(1, r);
}

log_linear_real log_linear_real::scaled_log(const mpq_class& coeff, const mpq_class& r) {
    if (r <= 0) throw std::logic_error("scaled_log: base must be positive");
    log_linear_real e;
    e.add_term(r, coeff);
    return e;
}

void log_linear_real::add_term(const mpq_class& r, const mpq_class& coeff) {
    if (coeff == 0 || r == 1) return;
    auto it = terms_.find(r);
    if (it == terms_.end()) {
        terms_.emplace(r, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

log_linear_real& log_linear_real::operator+=(const log_linear_real& o) {
    for (const auto& [r, q] : o.terms_) add_term(r, q);
    return *this;
}

log_linear_real& log_linear_real::operator-=(const log_linear_real& o) {
    for (const auto& [r, q] : o.terms_) add_term(r, mpq_class(-q));
    return *this;
}

log_linear_real log_linear_real::operator-() const {
    log_linear_real e;
    for (const auto& [r, q] : terms_) e.terms_.emplace(r, mpq_class(-q));
    return e;
}

log_linear_real log_linear_real::scaled(const mpq_class& c) const {
    log_linear_real e;
    if (c == 0) return e;
    for (const auto& [r, q] : terms_) e.terms_.emplace(r, mpq_class(q * c));
    return e;
}

std::vector<std::pair<mpz_class, mpq_class>>
coprime_basis(const std::vector<std::pair<mpz_class, mpq_class>>& entries) {
    // Worklist factor refinement.  Splitting (B, E), (b, e) with g = gcd(B, b)
    // into (B/g, E), (b/g, e), (g, E + e) preserves the value and strictly
    // decreases the product of all bases in play, so the loop terminates
    // without ever factoring anything.
    std::vector<std::pair<mpz_class, mpq_class>> result;
    std::deque<std::pair<mpz_class, mpq_class>> work(entries.begin(), entries.end());
    while (!work.empty()) {
        auto [b, e] = work.front();
        work.pop_front();
        if (b <= 1 || e == 0) {
            if (b < 1) throw std::logic_error("coprime_basis: bases must be positive");
            continue;
        }
        bool collided = false;
        for (size_t i = 0; i < result.size(); ++i) {
            mpz_class g = gcd_z(b, result[i].first);
            if (g == 1) continue;
            auto [B, E] = result[i];
            result.erase(result.begin() + static_cast<long>(i));
            work.emplace_back(B / g, E);
            work.emplace_back(b / g, e);
            work.emplace_back(g, E + e);
            collided = true;
            break;
        }
        if (!collided) result.emplace_back(b, e);
    }
    return result;
}

sign_result log_linear_real::sign() const {
    if (terms_.empty()) return sign_result::zero;

    // Directional screen: if every term is strictly positive (or strictly
    // negative) no refinement is needed.  q*log(r) > 0 iff (q>0, r>1) or
    // (q<0, r<1).
    bool all_pos = true, all_neg = true;
    for (const auto& [r, q] : terms_) {
        int term_sign = (r > 1) ? sgn(q) : -sgn(q);
        if (term_sign <= 0) all_pos = false;
        if (term_sign >= 0) all_neg = false;
    }
    if (all_pos) return sign_result::positive;
    if (all_neg) return sign_result::negative;

    // Exact zero test over the coprime basis.
    std::vector<std::pair<mpz_class, mpq_class>> raw;
    raw.reserve(terms_.size() * 2);
    for (const auto& [r, q] : terms_) {
        if (r.get_num() != 1) raw.emplace_back(r.get_num(), q);
        if (r.get_den() != 1) raw.emplace_back(r.get_den(), mpq_class(-q));
    }
    auto basis = coprime_basis(raw);
    if (basis.empty()) return sign_result::zero;

    // Provably nonzero: interval evaluation at doubling precision decides.
    for (mpfr_prec_t prec = 256;; prec *= 2) {
        real_interval acc = real_interval::exact_zero(prec);
        for (const auto& [b, e] : basis)
            acc = acc.add(real_interval::log_of_mpz(b, prec).scale_q(e));
        if (acc.lo_sign() > 0) return sign_result::positive;
        if (acc.hi_sign() < 0) return sign_result::negative;
        if (prec > (1L << 26))
            throw std::logic_error("log_linear_real::sign: refinement did not "
                                   "separate a provably nonzero value");
    }
}

bool log_linear_real::same_value(const log_linear_real& o) const {
    return (*this - o).sign() == sign_result::zero;
}

real_interval log_linear_real::enclose(mpfr_prec_t prec) const {
    real_interval acc = real_interval::exact_zero(prec);
    for (const auto& [r, q] : terms_)
        acc = acc.add(real_interval::log_of_mpq(r, prec).scale_q(q));
    return acc;
}

std::string log_linear_real::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [r, q] : terms_) {
        mpq_class aq = abs_q(q);
        if (first) {
            if (q < 0) out += "-";
            first = false;
        } else {
            out += (q < 0) ? " - " : " + ";
        }
        if (aq != 1) out += orbitint::to_string(aq) + "*";
        out += "log(" + orbitint::to_string(mpq_class(r)) + ")";
    }
    return out;
}

} // namespace orbitint
