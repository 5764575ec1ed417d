#include "orbitint/interval.hpp"

#include <stdexcept>

#include "orbitint/errors.hpp"

namespace orbitint {

real_interval::real_interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

real_interval::real_interval(const real_interval& other) : prec_(other.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

real_interval::real_interval(real_interval&& other) noexcept : prec_(other.prec_) {
    mpfr_init2(lo_, 2);
    mpfr_init2(hi_, 2);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

real_interval& real_interval::operator=(const real_interval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec_);
        mpfr_set_prec(hi_, other.prec_);
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
        prec_ = other.prec_;
    }
    return *this;
}

real_interval& real_interval::operator=(real_interval&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
        prec_ = other.prec_;
    }
    return *this;
}

real_interval::~real_interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

real_interval real_interval::exact_zero(mpfr_prec_t prec) { return real_interval(prec); }

real_interval real_interval::from_long(long v, mpfr_prec_t prec) {
    real_interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

real_interval real_interval::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    real_interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

real_interval real_interval::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    real_interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

real_interval real_interval::from_mpq_pair(const mpq_class& lo, const mpq_class& hi,
                                           mpfr_prec_t prec) {
    if (lo > hi) throw std::logic_error("from_mpq_pair: lo > hi");
    real_interval r(prec);
    mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

real_interval real_interval::log_of_mpq(const mpq_class& q, mpfr_prec_t prec) {
    if (q <= 0) throw std::logic_error("log_of_mpq: argument must be positive");
    real_interval r(prec);
    // log is monotone, so rounding the argument in the same direction as the
    // final result keeps the enclosure valid.
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_log(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    mpfr_log(r.hi_, r.hi_, MPFR_RNDU);
    return r;
}

real_interval real_interval::log_of_mpz(const mpz_class& n, mpfr_prec_t prec) {
    if (n <= 0) throw std::logic_error("log_of_mpz: argument must be positive");
    real_interval r(prec);
    mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
    mpfr_log(r.lo_, r.lo_, MPFR_RNDD);
    mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
    mpfr_log(r.hi_, r.hi_, MPFR_RNDU);
    return r;
}

real_interval real_interval::add(const real_interval& o) const {
    real_interval r(result_prec(o));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

real_interval real_interval::sub(const real_interval& o) const {
    real_interval r(result_prec(o));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    return r;
}

real_interval real_interval::neg() const {
    real_interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

real_interval real_interval::mul(const real_interval& o) const {
    real_interval r(result_prec(o));
    // Min/max over the four endpoint products, each with directed rounding.
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

    mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

real_interval real_interval::div_pos(const real_interval& o) const {
    if (mpfr_sgn(o.lo_) <= 0)
        throw std::logic_error("div_pos: denominator must be strictly positive");
    real_interval r(result_prec(o));
    // Denominator positive: lo/hi pairing depends only on numerator signs,
    // handled uniformly by taking min/max over both endpoint quotients.
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_div(r.hi_, hi_, o.lo_, MPFR_RNDU);
    mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
}

real_interval real_interval::scale_q(const mpq_class& q) const {
    real_interval r(prec_);
    if (sgn(q) >= 0) {
        mpfr_mul_q(r.lo_, lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(r.hi_, hi_, q.get_mpq_t(), MPFR_RNDU);
    } else {
        mpfr_mul_q(r.lo_, hi_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(r.hi_, lo_, q.get_mpq_t(), MPFR_RNDU);
    }
    return r;
}

real_interval real_interval::scale_z(const mpz_class& z) const {
    real_interval r(prec_);
    if (sgn(z) >= 0) {
        mpfr_mul_z(r.lo_, lo_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, hi_, z.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(r.lo_, hi_, z.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_, lo_, z.get_mpz_t(), MPFR_RNDU);
    }
    return r;
}

real_interval real_interval::mul_2si(long k) const {
    real_interval r(prec_);
    mpfr_mul_2si(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_mul_2si(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

real_interval real_interval::max_with(const real_interval& o) const {
    real_interval r(result_prec(o));
    mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

real_interval real_interval::hull_with(const real_interval& o) const {
    real_interval r(result_prec(o));
    mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

real_interval real_interval::abs() const {
    real_interval r(prec_);
    if (mpfr_sgn(lo_) >= 0) {
        mpfr_set(r.lo_, lo_, MPFR_RNDD);
        mpfr_set(r.hi_, hi_, MPFR_RNDU);
    } else if (mpfr_sgn(hi_) <= 0) {
        mpfr_neg(r.lo_, hi_, MPFR_RNDD);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    } else {
        mpfr_set_zero(r.lo_, 1);
        mpfr_neg(r.hi_, lo_, MPFR_RNDU);
        mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
    }
    return r;
}

real_interval real_interval::log() const {
    if (mpfr_sgn(lo_) <= 0)
        throw std::logic_error("log: interval must be strictly positive");
    real_interval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

real_interval real_interval::exp() const {
    real_interval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

real_interval real_interval::intersect(const real_interval& o) const {
    real_interval r(result_prec(o));
    mpfr_max(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, hi_, o.hi_, MPFR_RNDU);
    if (mpfr_cmp(r.lo_, r.hi_) > 0)
        throw std::logic_error("intersect: empty intersection");
    return r;
}

bool real_interval::is_exact_zero() const noexcept {
    return mpfr_zero_p(lo_) && mpfr_zero_p(hi_);
}

bool real_interval::entirely_gt(const real_interval& o) const noexcept {
    return mpfr_cmp(lo_, o.hi_) > 0;
}

bool real_interval::entirely_lt(const real_interval& o) const noexcept {
    return mpfr_cmp(hi_, o.lo_) < 0;
}

int real_interval::cmp_lo(const mpq_class& q) const noexcept {
    return mpfr_cmp_q(lo_, q.get_mpq_t());
}

int real_interval::cmp_hi(const mpq_class& q) const noexcept {
    return mpfr_cmp_q(hi_, q.get_mpq_t());
}

bool real_interval::contains(const mpq_class& q) const noexcept {
    return cmp_lo(q) <= 0 && cmp_hi(q) >= 0;
}

bool real_interval::encloses(const real_interval& o) const noexcept {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
}

mpz_class real_interval::floor_lo() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDD);
    return z;
}

mpz_class real_interval::floor_hi() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDD);
    return z;
}

double real_interval::width_upper() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool real_interval::width_at_most(const mpq_class& q) const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    bool ok = mpfr_cmp_q(w, q.get_mpq_t()) <= 0;
    mpfr_clear(w);
    return ok;
}

real_interval real_interval::midpoint_interval() const {
    real_interval r(prec_);
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2si(m, m, 1, MPFR_RNDN);
    mpfr_set(r.lo_, m, MPFR_RNDD);
    mpfr_set(r.hi_, m, MPFR_RNDU);
    mpfr_clear(m);
    return r;
}

double real_interval::to_double_mid() const {
    mpfr_t m;
    mpfr_init2(m, prec_);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2si(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

static std::string format_endpoint(mpfr_srcptr x, int digits, bool round_up) {
    char buf[128];
    std::string fmt = "%." + std::to_string(digits) + (round_up ? "RUe" : "RDe");
    int n = mpfr_snprintf(buf, sizeof buf, fmt.c_str(), x);
    if (n < 0 || static_cast<size_t>(n) >= sizeof buf) {
        std::string big(static_cast<size_t>(digits) + 64, '\0');
        mpfr_snprintf(big.data(), big.size(), fmt.c_str(), x);
        big.resize(big.find('\0'));
        return big;
    }
    return std::string(buf);
}

std::string real_interval::lo_string(int digits) const { return format_endpoint(lo_, digits, false); }

std::string real_interval::hi_string(int digits) const { return format_endpoint(hi_, digits, true); }

} // namespace orbitint
