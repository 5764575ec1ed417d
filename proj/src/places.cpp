#include "orbitint/places.hpp"

#include <algorithm>
#include <sstream>

#include "orbitint/errors.hpp"
#include "orbitint/rational_util.hpp"

namespace orbitint {

place place::finite(const mpz_class& p) {
    if (!is_prime(p))
        raise(errc::not_prime, "finite place requires a prime, got " + p.get_str());
    return place(p);
}

place place::parse(const std::string& text) {
    if (text == "inf" || text == "oo" || text == "infinity") return archimedean();
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        raise(errc::not_prime, "place must be 'inf' or a prime, got '" + text + "'");
    return finite(mpz_class(text));
}

const mpz_class& place::prime() const {
    if (is_archimedean())
        throw std::logic_error("place::prime called on the archimedean place");
    return p_;
}

std::string place::to_string() const {
    return is_archimedean() ? "inf" : p_.get_str();
}

place_set::place_set(std::vector<place> places) : places_(std::move(places)) {
    std::sort(places_.begin(), places_.end());
    places_.erase(std::unique(places_.begin(), places_.end()), places_.end());
}

place_set place_set::parse(const std::string& text) {
    std::vector<place> items;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        // permit surrounding whitespace
        size_t a = token.find_first_not_of(" \t");
        size_t b = token.find_last_not_of(" \t");
        if (a == std::string::npos) continue;
        items.push_back(place::parse(token.substr(a, b - a + 1)));
    }
    return place_set(std::move(items));
}

bool place_set::contains(const place& v) const {
    return std::binary_search(places_.begin(), places_.end(), v);
}

bool place_set::has_archimedean() const {
    return !places_.empty() && places_.front().is_archimedean();
}

std::string place_set::to_string() const {
    std::string out;
    for (const auto& v : places_) {
        if (!out.empty()) out += ",";
        out += v.to_string();
    }
    return out;
}

long padic_valuation(const mpq_class& x, const mpz_class& p) {
    if (x == 0) raise(errc::zero_input, "padic_valuation of 0");
    if (!is_prime(p)) raise(errc::not_prime, "padic_valuation at composite " + p.get_str());
    long vnum = valuation_z(x.get_num(), p);
    if (vnum > 0) return vnum;
    return -valuation_z(x.get_den(), p);
}

log_linear_real local_log_abs(const mpq_class& x, const place& v) {
    if (x == 0) raise(errc::zero_input, "local_log_abs of 0");
    if (v.is_archimedean()) return log_linear_real::log_term(abs_q(x));
    long val = padic_valuation(x, v.prime());
    // |x|_p = p^{-val}, so log|x|_p = -val * log p.
    return log_linear_real::scaled_log(mpq_class(-val), mpq_class(v.prime()));
}

interval_order compare_interval(
    real_interval a,
    const log_linear_real& b,
    const std::function<real_interval(const real_interval&)>& refiner,
    long cap_bits) {
    mpfr_prec_t prec = std::max<mpfr_prec_t>(a.prec(), real_interval::default_prec);
    for (;;) {
        real_interval bi = b.enclose(prec);
        if (a.entirely_gt(bi)) return interval_order::greater;
        if (a.entirely_lt(bi)) return interval_order::less;
        if (prec >= cap_bits) return interval_order::unresolved;
        prec = std::min<mpfr_prec_t>(prec * 2, cap_bits);
        if (refiner) a = refiner(a);
    }
}

} // namespace orbitint
