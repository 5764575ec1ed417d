#include "orbitint/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "orbitint/errors.hpp"
#include "orbitint/rational_util.hpp"
#include "orbitint/rng.hpp"

namespace orbitint {

namespace {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[z] for small odd primes p (word-sized, p^2 fits a word).
// Coefficients live in [0, p); the vector has no trailing zeros.
// ---------------------------------------------------------------------------

using fpoly = std::vector<unsigned long>;

void fp_trim(fpoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const fpoly& a) { return static_cast<int>(a.size()) - 1; }

unsigned long fp_pow_scalar(unsigned long b, unsigned long e, unsigned long p) {
    unsigned long r = 1 % p;
    b %= p;
    while (e > 0) {
        if (e & 1ul) r = r * b % p;
        b = b * b % p;
        e >>= 1ul;
    }
    return r;
}

unsigned long fp_inv_scalar(unsigned long a, unsigned long p) {
    return fp_pow_scalar(a, p - 2, p); // p prime, a != 0
}

fpoly fp_add(const fpoly& a, const fpoly& b, unsigned long p) {
    fpoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % p;
    fp_trim(c);
    return c;
}

fpoly fp_sub(const fpoly& a, const fpoly& b, unsigned long p) {
    fpoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + p - b[i]) % p;
    fp_trim(c);
    return c;
}

fpoly fp_mul(const fpoly& a, const fpoly& b, unsigned long p) {
    if (a.empty() || b.empty()) return {};
    fpoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(c);
    return c;
}

fpoly fp_scale(const fpoly& a, unsigned long s, unsigned long p) {
    fpoly c(a);
    for (auto& v : c) v = v * (s % p) % p;
    fp_trim(c);
    return c;
}

// a = q*b + r with deg r < deg b.  Pre: b nonzero.
void fp_divmod(const fpoly& a, const fpoly& b, unsigned long p, fpoly& q, fpoly& r) {
    r = a;
    q.clear();
    if (fp_deg(r) < fp_deg(b)) return;
    q.assign(static_cast<size_t>(fp_deg(r) - fp_deg(b)) + 1, 0);
    unsigned long inv = fp_inv_scalar(b.back(), p);
    for (size_t k = q.size(); k-- > 0;) {
        if (r.size() < k + b.size()) continue;
        unsigned long top = r[k + b.size() - 1];
        if (top == 0) continue;
        unsigned long c = top * inv % p;
        q[k] = c;
        for (size_t j = 0; j < b.size(); ++j)
            r[k + j] = (r[k + j] + p - c * b[j] % p) % p;
    }
    fp_trim(r);
    fp_trim(q);
}

fpoly fp_mod(const fpoly& a, const fpoly& b, unsigned long p) {
    fpoly q, r;
    fp_divmod(a, b, p, q, r);
    return r;
}

fpoly fp_monic(const fpoly& a, unsigned long p) {
    if (a.empty() || a.back() == 1) return a;
    return fp_scale(a, fp_inv_scalar(a.back(), p), p);
}

fpoly fp_gcd(fpoly a, fpoly b, unsigned long p) {
    while (!b.empty()) {
        fpoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

// s*a + t*b = gcd(a, b) (monic).
void fp_xgcd(const fpoly& a, const fpoly& b, unsigned long p, fpoly& s, fpoly& t) {
    fpoly r0 = a, r1 = b;
    fpoly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        fpoly q, r;
        fp_divmod(r0, r1, p, q, r);
        fpoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        fpoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) throw std::logic_error("fp_xgcd of zero polynomials");
    unsigned long inv = fp_inv_scalar(r0.back(), p);
    s = fp_scale(s0, inv, p);
    t = fp_scale(t0, inv, p);
}

// base^e mod m in F_p[z], e an arbitrary-precision exponent.
fpoly fp_pow_mod(const fpoly& base, const mpz_class& e, const fpoly& m, unsigned long p) {
    fpoly acc = {1};
    fpoly b = fp_mod(base, m, p);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = fp_mod(fp_mul(acc, acc, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = fp_mod(fp_mul(acc, b, p), m, p);
    }
    return acc;
}

fpoly fp_derivative(const fpoly& a, unsigned long p) {
    if (a.size() <= 1) return {};
    fpoly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * (i % p) % p;
    fp_trim(d);
    return d;
}

fpoly reduce_mod_p(const int_poly& f, unsigned long p) {
    fpoly a(f.coeffs().size());
    for (size_t i = 0; i < a.size(); ++i)
        a[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
    fp_trim(a);
    return a;
}

// ---------------------------------------------------------------------------
// Factorization in F_p[z]: distinct-degree split, then equal-degree split
// (Cantor/Zassenhaus) driven by a deterministically seeded generator.
// ---------------------------------------------------------------------------

void equal_degree_split(const fpoly& g, int k, unsigned long p, xoshiro256ss& rng,
                        std::vector<fpoly>& out) {
    if (fp_deg(g) == k) {
        out.push_back(g);
        return;
    }
    mpz_class exponent = (pow_z(mpz_class(static_cast<long>(p)), static_cast<unsigned long>(k)) - 1) / 2;
    while (true) {
        fpoly r(static_cast<size_t>(fp_deg(g)), 0);
        for (auto& v : r) v = rng.below(p);
        fp_trim(r);
        if (r.empty()) continue;
        fpoly s = fp_pow_mod(r, exponent, g, p);
        if (s.empty()) continue;
        s[0] = (s[0] + p - 1) % p; // s - 1
        fp_trim(s);
        fpoly t = fp_gcd(s, g, p);
        if (fp_deg(t) > 0 && fp_deg(t) < fp_deg(g)) {
            equal_degree_split(t, k, p, rng, out);
            fpoly q, rm;
            fp_divmod(g, t, p, q, rm);
            equal_degree_split(fp_monic(q, p), k, p, rng, out);
            return;
        }
    }
}

// Pre: f monic squarefree mod p, deg >= 1.
std::vector<fpoly> factor_mod_p(const fpoly& f, unsigned long p) {
    // Seed from (p, coefficients) so repeated runs take identical paths.
    std::uint64_t h = 0x6f72626974696e74ull ^ (p * 0x100000001b3ull);
    for (unsigned long c : f) {
        h ^= c + 0x9e3779b97f4a7c15ull;
        splitmix64_next(h);
    }
    xoshiro256ss rng(h);

    std::vector<fpoly> out;
    fpoly v = f;
    fpoly x = {0, 1};
    fpoly frob = x; // z^(p^k) mod v, advanced per k
    for (int k = 1; 2 * k <= fp_deg(v); ++k) {
        frob = fp_pow_mod(frob, mpz_class(static_cast<long>(p)), v, p);
        fpoly diff = fp_sub(frob, x, p);
        fpoly g = fp_gcd(diff, v, p);
        if (fp_deg(g) > 0) {
            equal_degree_split(g, k, p, rng, out);
            fpoly q, r;
            fp_divmod(v, g, p, q, r);
            v = fp_monic(q, p);
            frob = fp_mod(frob, v, p);
        }
    }
    if (fp_deg(v) > 0) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Hensel lifting: pairwise linear lift organized as a factor tree.
// ---------------------------------------------------------------------------

mpz_class symmetric_residue(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()); // in [0, m)
    if (r * 2 > m) r -= m;
    return r;
}

int_poly symmetric_reduce(const int_poly& f, const mpz_class& m) {
    std::vector<mpz_class> c(f.coeffs());
    for (auto& v : c) v = symmetric_residue(v, m);
    return int_poly(std::move(c));
}

int_poly lift_symmetric(const fpoly& a, unsigned long p) {
    std::vector<mpz_class> c(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        c[i] = static_cast<long>(a[i]);
        if (2 * a[i] > p) c[i] -= static_cast<long>(p);
    }
    return int_poly(std::move(c));
}

// Lift T = G*H (mod p) to T = G*H (mod p^K) with G = gbar, H = hbar (mod p),
// all monic.  T is only meaningful modulo p^K itself.
void pair_lift(const int_poly& T, const fpoly& gbar, const fpoly& hbar, unsigned long p,
               int K, int_poly& G, int_poly& H) {
    fpoly s, t;
    fp_xgcd(gbar, hbar, p, s, t);
    G = lift_symmetric(gbar, p);
    H = lift_symmetric(hbar, p);
    mpz_class pk(static_cast<long>(p));
    for (int step = 1; step < K; ++step) {
        int_poly defect = T - G * H;
        std::vector<mpz_class> ec(defect.coeffs());
        for (auto& v : ec) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pk.get_mpz_t());
        fpoly ebar = reduce_mod_p(int_poly(std::move(ec)), p);
        if (!ebar.empty()) {
            fpoly q, u;
            fp_divmod(fp_mul(t, ebar, p), gbar, p, q, u);
            fpoly w = fp_add(fp_mul(s, ebar, p), fp_mul(q, hbar, p), p);
            G = G + lift_symmetric(u, p).scaled(pk);
            H = H + lift_symmetric(w, p).scaled(pk);
        }
        pk *= static_cast<long>(p);
    }
}

std::vector<int_poly> lift_tree(const int_poly& T, const std::vector<fpoly>& factors,
                                size_t lo, size_t hi, unsigned long p, int K,
                                const mpz_class& pK) {
    if (hi - lo == 1) return {symmetric_reduce(T, pK)};
    size_t mid = lo + (hi - lo) / 2;
    fpoly gbar = {1}, hbar = {1};
    for (size_t i = lo; i < mid; ++i) gbar = fp_mul(gbar, factors[i], p);
    for (size_t i = mid; i < hi; ++i) hbar = fp_mul(hbar, factors[i], p);
    int_poly G, H;
    pair_lift(T, gbar, hbar, p, K, G, H);
    std::vector<int_poly> left = lift_tree(G, factors, lo, mid, p, K, pK);
    std::vector<int_poly> right = lift_tree(H, factors, mid, hi, p, K, pK);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

// ---------------------------------------------------------------------------
// Zassenhaus recombination for a monic squarefree integer polynomial.
// ---------------------------------------------------------------------------

// Advances idx to the next k-subset of {0..n-1} in lexicographic order;
// false once exhausted.
bool next_combination(std::vector<size_t>& idx, size_t n) {
    size_t k = idx.size();
    for (size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Coefficient bound: any monic factor g of monic F satisfies
// ||g||_inf <= 2^deg(F) * ||F||_2.
mpz_class factor_coeff_bound(const int_poly& F) {
    mpz_class norm2sq = 0;
    for (const auto& c : F.coeffs()) norm2sq += c * c;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), norm2sq.get_mpz_t());
    root += 1;
    return root << static_cast<unsigned long>(F.degree());
}

std::vector<int_poly> factor_monic_squarefree(const int_poly& F) {
    if (F.degree() == 1) return {F};
    if (F.coeff(0) == 0) throw std::logic_error("factor_monic_squarefree: strip z first");

    // Prime selection: the smallest odd primes with squarefree reduction;
    // keep the one producing the fewest modular factors.
    std::vector<fpoly> best;
    unsigned long best_p = 0;
    int tried = 0;
    mpz_class prime(2);
    while (tried < 5) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        if (prime > 100000) {
            if (best_p != 0) break;
            throw std::logic_error("no usable factorization prime found");
        }
        unsigned long p = prime.get_ui();
        fpoly fbar = reduce_mod_p(F, p);
        if (fp_deg(fbar) != F.degree()) continue; // never for monic F, kept for clarity
        if (fp_deg(fp_gcd(fbar, fp_derivative(fbar, p), p)) != 0) continue;
        std::vector<fpoly> fac = factor_mod_p(fp_monic(fbar, p), p);
        ++tried;
        if (best_p == 0 || fac.size() < best.size()) {
            best = std::move(fac);
            best_p = p;
        }
        if (best.size() == 1) break;
    }
    if (best.size() == 1) return {F};
    unsigned long p = best_p;

    // Lift to p^K beyond twice the factor coefficient bound.
    mpz_class bound2 = 2 * factor_coeff_bound(F);
    int K = 1;
    mpz_class pK(static_cast<long>(p));
    while (pK <= bound2) {
        pK *= static_cast<long>(p);
        ++K;
    }
    std::vector<int_poly> pool = lift_tree(F, best, 0, best.size(), p, K, pK);
    std::sort(pool.begin(), pool.end(), poly_less);

    std::vector<int_poly> out;
    int_poly remaining = F;
    bool progress = true;
    while (progress && !pool.empty()) {
        progress = false;
        size_t limit = pool.size() / 2;
        for (size_t take = 1; take <= limit && !progress; ++take) {
            std::vector<size_t> idx(take);
            for (size_t i = 0; i < take; ++i) idx[i] = i;
            do {
                int_poly cand = int_poly::constant(1);
                for (size_t i : idx) cand = symmetric_reduce(cand * pool[i], pK);
                bool divides = false;
                int_poly quot;
                if (cand.coeff(0) == 0) {
                    // candidate divisible by z; the caller stripped z already
                } else if (!mpz_divisible_p(remaining.coeff(0).get_mpz_t(),
                                            cand.coeff(0).get_mpz_t())) {
                    // constant terms rule it out
                } else {
                    divides = try_divide_exact(remaining, cand, quot);
                }
                if (divides) {
                    out.push_back(cand);
                    remaining = quot;
                    for (size_t i = take; i-- > 0;)
                        pool.erase(pool.begin() + static_cast<long>(idx[i]));
                    progress = true;
                    break;
                }
            } while (next_combination(idx, pool.size()));
        }
    }
    if (remaining.degree() >= 1) out.push_back(remaining);
    return out;
}

// Monic transform: for f with leading coefficient c and degree n,
// F*(z) = c^(n-1) f(z/c) is monic with integer coefficients, and the
// irreducible factors of f are the primitive parts of g*(c z) over the
// irreducible factors g* of F*.
int_poly monic_transform(const int_poly& f) {
    int n = f.degree();
    const mpz_class& c = f.leading();
    std::vector<mpz_class> out(static_cast<size_t>(n) + 1);
    out[static_cast<size_t>(n)] = 1;
    mpz_class power = 1; // c^(n-1-i)
    for (int i = n - 1; i >= 0; --i) {
        out[static_cast<size_t>(i)] = f.coeff(static_cast<size_t>(i)) * power;
        power *= c;
    }
    return int_poly(std::move(out));
}

int_poly undo_monic_transform(const int_poly& gstar, const mpz_class& c) {
    std::vector<mpz_class> out(gstar.coeffs());
    mpz_class power = 1;
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] *= power;
        power *= c;
    }
    return int_poly(std::move(out)).normalized_primitive();
}

} // namespace

// ---------------------------------------------------------------------------
// public entry points
// ---------------------------------------------------------------------------

bool factored_poly::has_factor(const int_poly& q) const {
    for (const auto& pf : factors)
        if (pf.factor == q) return true;
    return false;
}

int factored_poly::multiplicity_of(const int_poly& q) const {
    for (const auto& pf : factors)
        if (pf.factor == q) return pf.multiplicity;
    return 0;
}

std::vector<poly_factor> squarefree_decomposition(const int_poly& f) {
    if (f.is_zero()) raise(errc::zero_polynomial, "squarefree decomposition of 0");
    int_poly pf = f.normalized_primitive();
    std::vector<poly_factor> out;
    if (pf.degree() == 0) return out;
    int_poly g = poly_gcd(pf, pf.derivative());
    int_poly c = divide_exact(pf, g);
    int_poly d = divide_exact(pf.derivative(), g) - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        int_poly a = poly_gcd(c, d);
        if (a.degree() > 0) out.push_back({a, i});
        c = divide_exact(c, a);
        d = divide_exact(d, a) - c.derivative();
        ++i;
    }
    return out;
}

factored_poly factor_integer_poly(const int_poly& f) {
    if (f.is_zero()) raise(errc::zero_polynomial, "factorization of 0");
    factored_poly result;
    result.unit = f.leading() < 0 ? mpz_class(-f.content()) : f.content();
    int_poly pf = f.normalized_primitive();

    for (auto& [part, mult] : squarefree_decomposition(pf)) {
        int_poly sf = part;
        if (sf.coeff(0) == 0) {
            // squarefree, so z divides exactly once
            result.factors.push_back({int_poly{0, 1}, mult});
            sf = divide_exact(sf, int_poly{0, 1});
        }
        if (sf.degree() == 0) continue;
        if (sf.degree() == 1) {
            result.factors.push_back({sf, mult});
            continue;
        }
        const mpz_class c = sf.leading();
        if (c == 1) {
            for (auto& g : factor_monic_squarefree(sf)) result.factors.push_back({g, mult});
        } else {
            for (auto& gstar : factor_monic_squarefree(monic_transform(sf)))
                result.factors.push_back({undo_monic_transform(gstar, c), mult});
        }
    }

    std::sort(result.factors.begin(), result.factors.end(),
              [](const poly_factor& a, const poly_factor& b) {
                  return poly_less(a.factor, b.factor);
              });

    // Exactness certificate: multiply everything back together.
    int_poly check = int_poly::constant(result.unit);
    for (const auto& [fac, mult] : result.factors)
        for (int k = 0; k < mult; ++k) check = check * fac;
    if (check != f) throw std::logic_error("factor_integer_poly: verification failed");
    return result;
}

} // namespace orbitint
