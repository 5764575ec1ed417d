#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orbitint {

// Randomized verification suites: each one generates bounded random inputs
// from a seeded, documented PRNG and asserts an exact library invariant on
// every case (no tolerances — all decisions are exact signs or integer
// equalities).  Failures are data, not exceptions: the result records the
// number of violated cases and the first few offending inputs verbatim.
struct suite_result {
    std::string name;
    long cases_run = 0;
    long failures = 0;
    std::vector<std::string> counterexamples;  // at most 5, verbatim inputs

    bool passed() const noexcept { return failures == 0; }
};

// certified runs the proved inequality; weakened_self_test drops its additive
// constant to confirm the harness actually detects violations.
enum class bound_mode { certified, weakened_self_test };

// Finite-place coefficient-norm multiplicativity |f*g|_p = |f|_p * |g|_p,
// as exact log-form equality.
suite_result fuzz_gauss_lemma(std::uint64_t seed, long cases);

// Archimedean coefficient-norm product bound: with d = deg f + deg g + 1,
// | log|fg| - log|f| - log|g| | <= d * log 4, both sides by exact sign.
suite_result fuzz_archimedean_product_bound(std::uint64_t seed, long cases);

// h(f_1...f_r) <= sum_i (h(f_i) + (deg f_i + 1) * log 2); the weakened mode
// drops the log 2 term and must report failures.
suite_result fuzz_product_height_bound(std::uint64_t seed, long cases,
                                       bound_mode mode = bound_mode::certified);

// h(f_1 + ... + f_r) <= sum_i h(f_i) + log r.
suite_result fuzz_sum_height_bound(std::uint64_t seed, long cases);

// h(phi o psi) <= h(phi) + deg(phi) h(psi) + deg(phi) deg(psi) log 8.
suite_result fuzz_composition_height_bound(std::uint64_t seed, long cases);

// h(phi^n) <= ((d^n-1)/(d-1)) h(phi) + d^2 ((d^(n-1)-1)/(d-1)) log 8, n <= 3.
suite_result fuzz_iterate_height_bound(std::uint64_t seed, long cases);

// max(h(f), h(g)) <= h(phi) for the normalized pair of a map.
suite_result fuzz_joint_height_bound(std::uint64_t seed, long cases);

// sum over the archimedean place and the supporting primes of log|x|_v is
// exactly zero for rationals built from a known prime support.
suite_result fuzz_product_formula(std::uint64_t seed, long cases);

// Proximity-gap implication: with l_v = 2 archimedean / 1 finite, whenever
// lambda_v(x,y) > lambda_v(y,inf) + log l_v, then
// lambda_v(y,inf) <= lambda_v(x,y) + log|x-y|_v <= 2 lambda_v(y,inf) + log l_v.
suite_result fuzz_chordal_gap_lemma(std::uint64_t seed, long cases);

// v_p(x+y) >= min(v_p(x), v_p(y)), with equality when the valuations differ.
suite_result fuzz_strong_triangle(std::uint64_t seed, long cases);

// Per random map: multiplicity-weighted fiber sizes equal d; the factored
// Wronskian's multiplicity total plus the infinity contribution equals 2d-2,
// cross-checked against ramification_index; rational-point indices match
// their fiber entries.
suite_result fuzz_fiber_ramification(std::uint64_t seed, long cases);

struct fuzz_sizes {
    long metric = 10000;   // product formula, chordal gap, strong triangle
    long height = 10000;   // gauss, archimedean, product/sum/composition/joint
    long iterate = 1000;   // iterate height bound
    long maps = 200;       // fiber/ramification invariants
};

// Every suite above (certified mode), deterministically seeded per suite.
std::vector<suite_result> run_fuzz_suites(std::uint64_t seed, const fuzz_sizes& sizes);

// Identifier of the generator algorithm, echoed in reports.
const char* fuzz_prng_id() noexcept;

}  // namespace orbitint
