#pragma once

#include <stdexcept>
#include <string>

namespace orbitint {

// Typed error conditions surfaced by the library.  Each carries an optional
// integer payload (an orbit index, a parse position, ...) so callers can
// report precisely where a computation gave up.
enum class errc {
    zero_input,                  // valuation/absolute value of 0 requested
    not_prime,                   // finite place constructed from a composite
    both_zero,                   // projective point from (0, 0)
    zero_polynomial,             // operation undefined on the zero polynomial
    division_by_zero_polynomial, // polynomial division by zero
    zero_map,                    // rational map from the zero pair
    degree_too_low,              // reduced map degree < 2
    iterate_too_large,           // d^n exceeds the configured degree budget
    height_budget_exceeded,      // orbit coordinate bits exceed the budget
    exceptional_target,          // scan target is an exceptional point
    preperiodic_start,           // scan start point is preperiodic
    backend_unsupported,         // backend cannot handle the requested places
    rational_fiber_required,     // operation needs a rational preimage
    second_iterate_polynomial,   // census undefined when phi^2 is polynomial
    nonpositive_height,          // positive canonical height required
    precision_cap_exceeded,      // refinement hit the precision cap
    syntax_error,                // expression parse failure
    config_invalid,              // experiment configuration rejected
};

// Human-readable tag used in error messages and JSON error reports.
inline const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::zero_input: return "ZeroInput";
        case errc::not_prime: return "NotPrime";
        case errc::both_zero: return "BothZero";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::division_by_zero_polynomial: return "DivisionByZeroPolynomial";
        case errc::zero_map: return "ZeroMap";
        case errc::degree_too_low: return "DegreeTooLow";
        case errc::iterate_too_large: return "IterateTooLarge";
        case errc::height_budget_exceeded: return "HeightBudgetExceeded";
        case errc::exceptional_target: return "ExceptionalTarget";
        case errc::preperiodic_start: return "PreperiodicStart";
        case errc::backend_unsupported: return "BackendUnsupported";
        case errc::rational_fiber_required: return "RationalFiberRequired";
        case errc::second_iterate_polynomial: return "SecondIteratePolynomial";
        case errc::nonpositive_height: return "NonpositiveHeight";
        case errc::precision_cap_exceeded: return "PrecisionCapExceeded";
        case errc::syntax_error: return "SyntaxError";
        case errc::config_invalid: return "ConfigInvalid";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what_arg, long index = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what_arg),
          code_(code),
          index_(index) {}

    errc code() const noexcept { return code_; }

    // Context-dependent position payload: orbit index for budget errors,
    // byte offset for parse errors, -1 when meaningless.
    long index() const noexcept { return index_; }

  private:
    errc code_;
    long index_;
};

[[noreturn]] inline void raise(errc code, const std::string& what_arg, long index = -1) {
    throw error(code, what_arg, index);
}

} // namespace orbitint
