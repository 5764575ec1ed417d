#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace orbitint {

// Closed interval [lo, hi] with arbitrary-precision dyadic endpoints.
// Every operation rounds outward (lo toward -inf, hi toward +inf), so an
// interval computed from enclosures of exact quantities always contains the
// exact result.  Endpoint comparisons are exact (no rounding is involved in
// comparing two MPFR numbers).
class real_interval {
  public:
    static constexpr mpfr_prec_t default_prec = 128;

    real_interval() : real_interval(default_prec) {}
    explicit real_interval(mpfr_prec_t prec);
    real_interval(const real_interval& other);
    real_interval(real_interval&& other) noexcept;
    real_interval& operator=(const real_interval& other);
    real_interval& operator=(real_interval&& other) noexcept;
    ~real_interval();

    // --- constructors of enclosures -------------------------------------
    static real_interval exact_zero(mpfr_prec_t prec = default_prec);
    static real_interval from_long(long v, mpfr_prec_t prec = default_prec);
    static real_interval from_mpz(const mpz_class& v, mpfr_prec_t prec = default_prec);
    static real_interval from_mpq(const mpq_class& v, mpfr_prec_t prec = default_prec);
    // [lo, hi] with lo rounded down and hi rounded up.  Pre: lo <= hi.
    static real_interval from_mpq_pair(const mpq_class& lo, const mpq_class& hi,
                                       mpfr_prec_t prec = default_prec);
    // Enclosure of log(q).  Pre: q > 0.
    static real_interval log_of_mpq(const mpq_class& q, mpfr_prec_t prec = default_prec);
    static real_interval log_of_mpz(const mpz_class& n, mpfr_prec_t prec = default_prec);

    // --- arithmetic (outward-rounded) ------------------------------------
    real_interval add(const real_interval& o) const;
    real_interval sub(const real_interval& o) const;
    real_interval neg() const;
    real_interval mul(const real_interval& o) const;
    // Pre: o.lo > 0 (positive denominator).
    real_interval div_pos(const real_interval& o) const;
    real_interval scale_q(const mpq_class& q) const;
    real_interval scale_z(const mpz_class& z) const;
    // Exact scaling by 2^k.
    real_interval mul_2si(long k) const;
    // Enclosure of max / |.| of the represented quantities.
    real_interval max_with(const real_interval& o) const;
    real_interval abs() const;
    // Smallest interval containing both inputs (set union hull).
    real_interval hull_with(const real_interval& o) const;
    // Pre: lo > 0.
    real_interval log() const;
    real_interval exp() const;
    // Intersection; pre: the intervals overlap.
    real_interval intersect(const real_interval& o) const;

    // --- queries (exact) --------------------------------------------------
    mpfr_prec_t prec() const noexcept { return prec_; }
    int lo_sign() const noexcept { return mpfr_sgn(lo_); }
    int hi_sign() const noexcept { return mpfr_sgn(hi_); }
    bool is_exact_zero() const noexcept;
    // True iff every point of *this is strictly above/below every point of o.
    bool entirely_gt(const real_interval& o) const noexcept;
    bool entirely_lt(const real_interval& o) const noexcept;
    // Exact comparisons of endpoints against a rational.
    int cmp_lo(const mpq_class& q) const noexcept;
    int cmp_hi(const mpq_class& q) const noexcept;
    bool contains(const mpq_class& q) const noexcept;
    // True iff *this contains o (as sets).
    bool encloses(const real_interval& o) const noexcept;
    // floor of the endpoints as exact integers.
    mpz_class floor_lo() const;
    mpz_class floor_hi() const;

    // Upper bound on hi - lo, rounded up, returned as a double (+inf safe).
    double width_upper() const;
    // width <= q, decided exactly against the rational q via a directed bound.
    bool width_at_most(const mpq_class& q) const;
    // Degenerate interval [m, m] at the midpoint (rounded to nearest).
    real_interval midpoint_interval() const;
    double to_double_mid() const;

    // Decimal rendering, outward: lo rounded down, hi rounded up.
    std::string lo_string(int digits = 30) const;
    std::string hi_string(int digits = 30) const;

    // Raw endpoint access for the few algorithms that need directed MPFR
    // operations not worth wrapping.  Treat as read-only.
    mpfr_srcptr lo_raw() const noexcept { return lo_; }
    mpfr_srcptr hi_raw() const noexcept { return hi_; }

  private:
    mpfr_prec_t result_prec(const real_interval& o) const noexcept {
        return prec_ > o.prec_ ? prec_ : o.prec_;
    }

    mpfr_t lo_;
    mpfr_t hi_;
    mpfr_prec_t prec_;
};

} // namespace orbitint
