#include "orbitint/mapexpr.hpp"

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "orbitint/errors.hpp"
#include "orbitint/intpoly.hpp"

namespace orbitint {

namespace {

// Values are carried as unreduced fractions of rational polynomials; the
// rational_map constructor performs the final cancellation and normalization.
struct poly_frac {
    rat_poly num;
    rat_poly den;  // never the zero polynomial
};

constexpr unsigned max_exponent = 4096;

class parser {
  public:
    explicit parser(const std::string& text) : text_(text) {}

    rational_map run() {
        poly_frac value = parse_expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return rational_map(value.num, value.den);
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        raise(errc::syntax_error, what + " at offset " + std::to_string(pos_),
              static_cast<long>(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    poly_frac parse_expr() {
        poly_frac acc = parse_term();
        for (;;) {
            if (eat('+')) {
                poly_frac rhs = parse_term();
                acc = {acc.num * rhs.den + rhs.num * acc.den, acc.den * rhs.den};
            } else if (eat('-')) {
                poly_frac rhs = parse_term();
                acc = {acc.num * rhs.den - rhs.num * acc.den, acc.den * rhs.den};
            } else {
                return acc;
            }
        }
    }

    poly_frac parse_term() {
        poly_frac acc = parse_factor();
        for (;;) {
            if (eat('*')) {
                poly_frac rhs = parse_factor();
                acc = {acc.num * rhs.num, acc.den * rhs.den};
            } else if (eat('/')) {
                size_t at = pos_;
                poly_frac rhs = parse_factor();
                if (rhs.num.is_zero())
                    raise(errc::division_by_zero_polynomial,
                          "division by an identically zero expression at offset " +
                              std::to_string(at),
                          static_cast<long>(at));
                acc = {acc.num * rhs.den, acc.den * rhs.num};
            } else {
                return acc;
            }
        }
    }

    poly_frac parse_factor() {
        if (eat('-')) {
            poly_frac v = parse_factor();
            return {-v.num, std::move(v.den)};
        }
        if (eat('+')) return parse_factor();
        return parse_power();
    }

    poly_frac parse_power() {
        poly_frac base = parse_atom();
        while (eat('^')) {
            unsigned e = parse_exponent();
            base = {base.num.pow(e), base.den.pow(e)};
        }
        return base;
    }

    unsigned parse_exponent() {
        skip_space();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a nonnegative integer exponent");
        size_t start = pos_;
        unsigned long e = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (e > max_exponent) {
                pos_ = start;
                fail("exponent exceeds " + std::to_string(max_exponent));
            }
            ++pos_;
        }
        return static_cast<unsigned>(e);
    }

    poly_frac parse_atom() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            poly_frac v = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (c == 'z') {
            ++pos_;
            return {rat_poly({mpq_class(0), mpq_class(1)}), rat_poly::constant(1)};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                digits += text_[pos_];
                ++pos_;
            }
            return {rat_poly::constant(mpq_class(mpz_class(digits))),
                    rat_poly::constant(1)};
        }
        fail("unexpected character");
    }

    const std::string& text_;
    size_t pos_ = 0;
};

}  // namespace

rational_map parse_map_expr(const std::string& text) { return parser(text).run(); }

}  // namespace orbitint
