#include "orbitint/intpoly.hpp"

#include <stdexcept>

#include "orbitint/errors.hpp"
#include "orbitint/rational_util.hpp"

namespace orbitint {

// ---------------------------------------------------------------------------
// int_poly
// ---------------------------------------------------------------------------

void int_poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int_poly::int_poly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

int_poly::int_poly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

int_poly int_poly::constant(const mpz_class& c) {
    int_poly r;
    if (c != 0) r.c_.push_back(c);
    return r;
}

int_poly int_poly::monomial(const mpz_class& c, int k) {
    int_poly r;
    if (c != 0) {
        r.c_.assign(static_cast<size_t>(k) + 1, mpz_class(0));
        r.c_.back() = c;
    }
    return r;
}

const mpz_class& int_poly::leading() const {
    if (c_.empty()) raise(errc::zero_polynomial, "leading coefficient of 0");
    return c_.back();
}

int_poly int_poly::operator-() const {
    int_poly r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
}

int_poly operator+(const int_poly& a, const int_poly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return int_poly(std::move(c));
}

int_poly operator-(const int_poly& a, const int_poly& b) {
    std::vector<mpz_class> c(std::max(a.c_.size(), b.c_.size()), mpz_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return int_poly(std::move(c));
}

int_poly operator*(const int_poly& a, const int_poly& b) {
    if (a.is_zero() || b.is_zero()) return int_poly();
    std::vector<mpz_class> c(a.c_.size() + b.c_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return int_poly(std::move(c));
}

int_poly int_poly::scaled(const mpz_class& c) const {
    if (c == 0) return int_poly();
    int_poly r(*this);
    for (auto& v : r.c_) v *= c;
    return r;
}

int_poly int_poly::times_power(int k) const {
    if (is_zero()) return int_poly();
    int_poly r;
    r.c_.assign(static_cast<size_t>(k), mpz_class(0));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
}

int_poly int_poly::derivative() const {
    if (c_.size() <= 1) return int_poly();
    std::vector<mpz_class> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
    return int_poly(std::move(c));
}

mpz_class int_poly::content() const {
    mpz_class g = 0;
    for (const auto& v : c_) {
        g = gcd_z(g, v);
        if (g == 1) break;
    }
    return g;
}

int_poly int_poly::primitive_part() const {
    if (is_zero()) return int_poly();
    mpz_class g = content();
    int_poly r(*this);
    for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return r;
}

int_poly int_poly::normalized_primitive() const {
    int_poly r = primitive_part();
    if (!r.is_zero() && r.leading() < 0) r = -r;
    return r;
}

int int_poly::trailing_zero_count() const {
    if (is_zero()) return 0;
    int k = 0;
    while (c_[static_cast<size_t>(k)] == 0) ++k;
    return k;
}

mpq_class int_poly::eval(const mpq_class& t) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) {
        acc *= t;
        acc += c_[i];
    }
    return acc;
}

mpz_class int_poly::eval_z(const mpz_class& t) const {
    mpz_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) {
        acc *= t;
        acc += c_[i];
    }
    return acc;
}

mpz_class int_poly::eval_pair(const mpz_class& X, const mpz_class& Y, int D) const {
    if (D < degree()) throw std::logic_error("eval_pair: homogenization degree too small");
    // sum_i c_i X^i Y^(D-i)
    mpz_class acc = 0;
    mpz_class xp = 1;
    std::vector<mpz_class> ypow(static_cast<size_t>(D) + 1);
    ypow[0] = 1;
    for (size_t i = 1; i < ypow.size(); ++i) ypow[i] = ypow[i - 1] * Y;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) acc += c_[i] * xp * ypow[static_cast<size_t>(D) - i];
        xp *= X;
    }
    return acc;
}

mpz_class int_poly::eval_pair_mod(const mpz_class& X, const mpz_class& Y, int D,
                                  const mpz_class& m) const {
    if (D < degree()) throw std::logic_error("eval_pair_mod: homogenization degree too small");
    std::vector<mpz_class> xpow(static_cast<size_t>(D) + 1), ypow(static_cast<size_t>(D) + 1);
    xpow[0] = mod_z(mpz_class(1), m);
    ypow[0] = xpow[0];
    for (size_t i = 1; i <= static_cast<size_t>(D); ++i) {
        xpow[i] = mod_z(xpow[i - 1] * X, m);
        ypow[i] = mod_z(ypow[i - 1] * Y, m);
    }
    mpz_class acc = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        acc = mod_z(acc + c_[i] * xpow[i] * ypow[static_cast<size_t>(D) - i], m);
    }
    return acc;
}

int_poly int_poly::eval_pair_poly(const int_poly& P, const int_poly& Q, int D) const {
    if (D < degree()) throw std::logic_error("eval_pair_poly: homogenization degree too small");
    std::vector<int_poly> ppow(static_cast<size_t>(D) + 1), qpow(static_cast<size_t>(D) + 1);
    ppow[0] = int_poly::constant(1);
    qpow[0] = int_poly::constant(1);
    for (size_t i = 1; i <= static_cast<size_t>(D); ++i) {
        ppow[i] = ppow[i - 1] * P;
        qpow[i] = qpow[i - 1] * Q;
    }
    int_poly acc;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        acc = acc + (ppow[i] * qpow[static_cast<size_t>(D) - i]).scaled(c_[i]);
    }
    return acc;
}

std::string int_poly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c_.size(); i-- > 0;) {
        const mpz_class& a = c_[i];
        if (a == 0) continue;
        mpz_class mag = abs_z(a);
        bool negative = a < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        bool unit = mag == 1;
        if (i == 0) {
            out += mag.get_str();
        } else {
            if (!unit) out += mag.get_str() + "*";
            out += "z";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

bool poly_less(const int_poly& a, const int_poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.coeff(static_cast<size_t>(i)), b.coeff(static_cast<size_t>(i)));
        if (c != 0) return c < 0;
    }
    return false;
}

// ---------------------------------------------------------------------------
// division, gcd, multiplicity
// ---------------------------------------------------------------------------

bool try_divide_exact(const int_poly& a, const int_poly& b, int_poly& q) {
    if (b.is_zero()) raise(errc::division_by_zero_polynomial, "exact division by 0");
    if (a.is_zero()) {
        q = int_poly();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<mpz_class> rem(a.coeffs());
    std::vector<mpz_class> quot(static_cast<size_t>(a.degree() - b.degree()) + 1, mpz_class(0));
    const auto& bc = b.coeffs();
    const mpz_class& lead = b.leading();
    for (size_t k = quot.size(); k-- > 0;) {
        mpz_class& top = rem[k + bc.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return false;
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        quot[k] = c;
        for (size_t j = 0; j < bc.size(); ++j) rem[k + j] -= c * bc[j];
    }
    for (const auto& v : rem)
        if (v != 0) return false;
    q = int_poly(std::move(quot));
    return true;
}

int_poly divide_exact(const int_poly& a, const int_poly& b) {
    int_poly q;
    if (!try_divide_exact(a, b, q)) throw std::logic_error("divide_exact: division not exact");
    return q;
}

namespace {

// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
int_poly pseudo_remainder(int_poly a, const int_poly& b) {
    const mpz_class& lb = b.leading();
    int db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        int shift = a.degree() - db;
        mpz_class la = a.leading();
        a = a.scaled(lb) - b.times_power(shift).scaled(la);
    }
    return a;
}

} // namespace

int_poly poly_gcd(const int_poly& a, const int_poly& b) {
    if (a.is_zero() && b.is_zero()) return int_poly();
    if (a.is_zero()) return b.leading() < 0 ? -b : b;
    if (b.is_zero()) return a.leading() < 0 ? -a : a;
    mpz_class c = gcd_z(a.content(), b.content());
    int_poly A = a.normalized_primitive();
    int_poly B = b.normalized_primitive();
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.is_zero()) {
        int_poly R = pseudo_remainder(A, B).normalized_primitive();
        A = std::move(B);
        B = std::move(R);
    }
    return A.scaled(c);
}

int multiplicity(const int_poly& f, const int_poly& q) {
    if (f.is_zero()) raise(errc::zero_polynomial, "multiplicity in 0");
    if (q.degree() < 1) throw std::logic_error("multiplicity: constant divisor");
    int m = 0;
    int_poly cur = f, quot;
    while (try_divide_exact(cur, q, quot)) {
        ++m;
        cur = quot;
    }
    return m;
}

// ---------------------------------------------------------------------------
// determinants and resultants
// ---------------------------------------------------------------------------

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : mpz_class(-m[n - 1][n - 1]);
}

mpz_class sylvester_resultant(const int_poly& f, const int_poly& g, int d) {
    if (d < 1 || d < f.degree() || d < g.degree())
        throw std::logic_error("sylvester_resultant: bad homogenization degree");
    const size_t n = 2 * static_cast<size_t>(d);
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, mpz_class(0)));
    // Column j carries the monomial x^(2d-1-j) y^j.  Row i (i < d) is the
    // coefficient vector of x^(d-1-i) y^i * F, row d+i that of the same shift
    // of G, where F, G are the degree-d homogenizations.
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < 2 * d; ++j) {
            int k = d + i - j; // degree in x of the original coefficient
            if (k >= 0 && k <= d) {
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    f.coeff(static_cast<size_t>(k));
                m[static_cast<size_t>(d + i)][static_cast<size_t>(j)] =
                    g.coeff(static_cast<size_t>(k));
            }
        }
    }
    return bareiss_determinant(std::move(m));
}

// ---------------------------------------------------------------------------
// rat_poly
// ---------------------------------------------------------------------------

void rat_poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

rat_poly::rat_poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

rat_poly rat_poly::constant(const mpq_class& c) {
    rat_poly r;
    if (c != 0) r.c_.push_back(c);
    return r;
}

rat_poly rat_poly::from_int_poly(const int_poly& p) {
    std::vector<mpq_class> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return rat_poly(std::move(c));
}

rat_poly rat_poly::operator-() const {
    rat_poly r(*this);
    for (auto& v : r.c_) v = -v;
    return r;
}

rat_poly operator+(const rat_poly& a, const rat_poly& b) {
    std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return rat_poly(std::move(c));
}

rat_poly operator-(const rat_poly& a, const rat_poly& b) {
    std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return rat_poly(std::move(c));
}

rat_poly operator*(const rat_poly& a, const rat_poly& b) {
    if (a.is_zero() || b.is_zero()) return rat_poly();
    std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return rat_poly(std::move(c));
}

rat_poly rat_poly::scaled(const mpq_class& c) const {
    if (c == 0) return rat_poly();
    rat_poly r(*this);
    for (auto& v : r.c_) v *= c;
    return r;
}

rat_poly rat_poly::pow(unsigned e) const {
    rat_poly acc = rat_poly::constant(1);
    rat_poly base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

rat_poly::primitive_form rat_poly::to_primitive() const {
    if (is_zero()) return {mpq_class(0), int_poly()};
    mpz_class den = 1;
    for (const auto& v : c_) den = lcm_z(den, v.get_den());
    std::vector<mpz_class> ic(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        mpq_class scaled_coeff = c_[i] * mpq_class(den);
        ic[i] = scaled_coeff.get_num(); // denominator is 1 by construction
    }
    int_poly whole(std::move(ic));
    mpz_class cont = whole.content();
    int sign = whole.leading() < 0 ? -1 : 1;
    int_poly prim = whole.normalized_primitive();
    mpq_class scale(sign * cont, den);
    scale.canonicalize();
    return {scale, prim};
}

} // namespace orbitint
