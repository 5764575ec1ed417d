#include "orbitint/projpoint.hpp"

#include "orbitint/errors.hpp"
#include "orbitint/rational_util.hpp"

namespace orbitint {

proj_point proj_point::make(const mpz_class& num, const mpz_class& den) {
    if (num == 0 && den == 0)
        raise(errc::both_zero, "projective point needs a nonzero coordinate");
    mpz_class g = gcd_z(num, den); // g > 0
    mpz_class x = num / g, y = den / g;
    if (y < 0 || (y == 0 && x < 0)) {
        x = -x;
        y = -y;
    }
    return proj_point(std::move(x), std::move(y));
}

proj_point proj_point::from_rational(const mpq_class& q) {
    return make(q.get_num(), q.get_den());
}

proj_point proj_point::parse(const std::string& text) {
    if (text == "inf" || text == "oo" || text == "infinity") return infinity();
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return make(mpz_class(text), 1);
        return make(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        raise(errc::syntax_error, "cannot parse point '" + text + "'");
    }
}

mpq_class proj_point::as_rational() const {
    if (is_infinity())
        throw std::logic_error("as_rational called on the point at infinity");
    return mpq_class(x_) / mpq_class(y_);
}

std::string proj_point::to_string() const {
    if (is_infinity()) return "inf";
    if (y_ == 1) return x_.get_str();
    return x_.get_str() + "/" + y_.get_str();
}

const log_linear_real& lambda_value::finite_value() const {
    if (infinite_)
        throw std::logic_error("finite_value called on an infinite lambda");
    return v_;
}

lambda_value& lambda_value::operator+=(const lambda_value& o) {
    if (o.infinite_) infinite_ = true;
    if (!infinite_) v_ += o.v_;
    return *this;
}

std::string lambda_value::to_string() const {
    return infinite_ ? "+inf" : v_.to_string();
}

lambda_value chordal_log(const proj_point& P, const proj_point& Q, const place& v) {
    mpz_class w = P.x() * Q.y() - Q.x() * P.y();
    if (w == 0) return lambda_value::infinity(); // P = Q
    if (!v.is_archimedean()) {
        long val = valuation_z(w, v.prime());
        return lambda_value(
            log_linear_real::scaled_log(mpq_class(val), mpq_class(v.prime())));
    }
    mpq_class rho_sq =
        mpq_class(w * w) /
        mpq_class((P.x() * P.x() + P.y() * P.y()) * (Q.x() * Q.x() + Q.y() * Q.y()));
    return lambda_value(log_linear_real::scaled_log(mpq_class(-1, 2), rho_sq));
}

log_linear_real naive_height(const proj_point& P) {
    mpz_class m = std::max(abs_z(P.x()), abs_z(P.y()));
    return log_linear_real::log_term(mpq_class(m));
}

} // namespace orbitint
