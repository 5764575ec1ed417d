#include "orbitint/experiment.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <future>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "orbitint/errors.hpp"
#include "orbitint/fuzz.hpp"
#include "orbitint/interval.hpp"
#include "orbitint/loglinear.hpp"
#include "orbitint/mapexpr.hpp"
#include "orbitint/places.hpp"
#include "orbitint/projpoint.hpp"
#include "orbitint/ratmap.hpp"
#include "orbitint/rational_util.hpp"

namespace orbitint {

namespace {

using nlohmann::ordered_json;

constexpr int decimal_digits = 30;

[[noreturn]] void bad_config(const std::string& what, long job_index = -1) {
    raise(errc::config_invalid, what, job_index);
}

std::string job_tag(long idx) { return "job " + std::to_string(idx) + ": "; }

// ---------------------------------------------------------------------------
// field access + primitive parsers

const ordered_json& require_field(const ordered_json& job, const char* key, long idx) {
    auto it = job.find(key);
    if (it == job.end()) bad_config(job_tag(idx) + "missing field '" + key + "'", idx);
    return *it;
}

std::string require_string(const ordered_json& job, const char* key, long idx) {
    const ordered_json& v = require_field(job, key, idx);
    if (!v.is_string()) bad_config(job_tag(idx) + "field '" + key + "' must be a string", idx);
    return v.get<std::string>();
}

long require_int(const ordered_json& job, const char* key, long idx) {
    const ordered_json& v = require_field(job, key, idx);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        bad_config(job_tag(idx) + "field '" + key + "' must be an integer", idx);
    return v.get<long>();
}

long optional_int(const ordered_json& job, const char* key, long fallback, long idx) {
    if (!job.contains(key)) return fallback;
    return require_int(job, key, idx);
}

mpq_class parse_rational_text(const std::string& text, const char* key, long idx) {
    mpq_class x;
    try {
        x = mpq_class(text, 10);
    } catch (const std::invalid_argument&) {
        bad_config(job_tag(idx) + "field '" + key + "' is not a rational: '" + text + "'", idx);
    }
    if (x.get_den() == 0)
        bad_config(job_tag(idx) + "field '" + key + "' has denominator zero", idx);
    x.canonicalize();
    return x;
}

mpq_class require_rational(const ordered_json& job, const char* key, long idx) {
    return parse_rational_text(require_string(job, key, idx), key, idx);
}

rational_map require_map(const ordered_json& job, const char* key, long idx) {
    std::string text = require_string(job, key, idx);
    try {
        return parse_map_expr(text);
    } catch (const error& e) {
        bad_config(job_tag(idx) + "field '" + key + "': " + e.what(), idx);
    }
}

proj_point require_point(const ordered_json& job, const char* key, long idx) {
    std::string text = require_string(job, key, idx);
    try {
        return proj_point::parse(text);
    } catch (const error& e) {
        bad_config(job_tag(idx) + "field '" + key + "': " + e.what(), idx);
    } catch (const std::invalid_argument& e) {
        bad_config(job_tag(idx) + "field '" + key + "': " + e.what(), idx);
    }
}

place_set require_places(const ordered_json& job, const char* key, long idx) {
    std::string text = require_string(job, key, idx);
    try {
        return place_set::parse(text);
    } catch (const error& e) {
        bad_config(job_tag(idx) + "field '" + key + "': " + e.what(), idx);
    } catch (const std::invalid_argument& e) {
        bad_config(job_tag(idx) + "field '" + key + "': " + e.what(), idx);
    }
}

scan_backend require_backend(const ordered_json& job, long idx) {
    std::string text = require_string(job, "backend", idx);
    if (text == "exact") return scan_backend::exact_orbit;
    if (text == "modular") return scan_backend::finite_place_modular;
    bad_config(job_tag(idx) + "backend must be 'exact' or 'modular', got '" + text + "'", idx);
}

void check_eps_range(const mpq_class& eps, const char* key, long idx) {
    if (eps <= 0 || eps > 1)
        bad_config(job_tag(idx) + "field '" + key + "' must lie in (0, 1]", idx);
}

void reject_unknown_keys(const ordered_json& obj, const std::vector<std::string>& allowed,
                         long idx, const std::string& what) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const auto& k : allowed)
            if (it.key() == k) known = true;
        if (!known) bad_config(what + "unknown field '" + it.key() + "'", idx);
    }
}

compute_limits job_limits(const ordered_json& job, const compute_limits& base, long idx) {
    compute_limits out = base;
    out.precision_cap_bits = optional_int(job, "precision_cap_bits", out.precision_cap_bits, idx);
    out.height_budget_bits = optional_int(job, "height_budget_bits", out.height_budget_bits, idx);
    out.degree_budget = optional_int(job, "degree_budget", out.degree_budget, idx);
    if (out.precision_cap_bits < 64 || out.height_budget_bits < 1 || out.degree_budget < 2)
        bad_config(job_tag(idx) + "resource limits out of range", idx);
    return out;
}

// ---------------------------------------------------------------------------
// result serialization

std::string decimal_of_double(double x) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

ordered_json interval_json(const real_interval& r) {
    ordered_json out;
    out["lo"] = r.lo_string(decimal_digits);
    out["hi"] = r.hi_string(decimal_digits);
    return out;
}

ordered_json loglin_json(const log_linear_real& v) {
    ordered_json out;
    out["exact"] = v.to_string();
    ordered_json terms = ordered_json::array();
    for (const auto& [base, coeff] : v.terms()) {
        ordered_json t;
        t["coeff"] = to_string(coeff);
        t["base"] = to_string(base);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    real_interval enc = v.enclose(192);
    out["decimal_lo"] = enc.lo_string(decimal_digits);
    out["decimal_hi"] = enc.hi_string(decimal_digits);
    return out;
}

ordered_json lambda_json(const scan_verdict& sv) {
    ordered_json out;
    out["infinite"] = sv.lambda_infinite;
    if (!sv.lambda_infinite) {
        ordered_json body = loglin_json(sv.lambda);
        for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
    }
    return out;
}

ordered_json scan_json(const scan_report& rep) {
    ordered_json out;
    out["map"] = rep.map.to_string();
    out["degree"] = rep.map.degree();
    out["target"] = rep.target.to_string();
    out["start"] = rep.start.to_string();
    out["places"] = rep.places.to_string();
    out["eps"] = to_string(rep.eps);
    out["n_max"] = rep.n_max;
    out["backend"] = backend_name(rep.backend);
    out["count_in"] = rep.count_in;
    out["count_out"] = rep.count_out;
    out["count_unresolved"] = rep.count_unresolved;
    out["hhat_start"] = interval_json(rep.hhat_start);
    out["bound_log_term"] = interval_json(rep.bound_log_term);
    out["count_bound_form"] = rep.count_bound_form;
    ordered_json rows = ordered_json::array();
    for (const auto& sv : rep.verdicts) {
        ordered_json row;
        row["n"] = sv.n;
        row["membership"] = membership_name(sv.verdict);
        row["lambda"] = lambda_json(sv);
        row["threshold"] = interval_json(sv.threshold);
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out;
}

ordered_json suite_json(const suite_result& s) {
    ordered_json out;
    out["name"] = s.name;
    out["cases_run"] = s.cases_run;
    out["failures"] = s.failures;
    ordered_json cex = ordered_json::array();
    for (const auto& c : s.counterexamples) cex.push_back(c);
    out["counterexamples"] = std::move(cex);
    out["passed"] = s.passed();
    return out;
}

// ---------------------------------------------------------------------------
// per-kind validation (schema only; domain errors surface when the job runs)

void validate_gamma_scan(const ordered_json& job, long idx, bool naive) {
    std::vector<std::string> allowed = {"kind",  "map",   "target", "places",
                                        "eps",   "n_max", "start",  "height_budget_bits"};
    if (!naive) {
        allowed.push_back("backend");
        allowed.push_back("precision_cap_bits");
        allowed.push_back("degree_budget");
    }
    reject_unknown_keys(job, allowed, idx, job_tag(idx));
    require_map(job, "map", idx);
    require_point(job, "target", idx);
    require_point(job, "start", idx);
    require_places(job, "places", idx);
    check_eps_range(require_rational(job, "eps", idx), "eps", idx);
    if (require_int(job, "n_max", idx) < 0)
        bad_config(job_tag(idx) + "n_max must be >= 0", idx);
    if (!naive) require_backend(job, idx);
}

void validate_census(const ordered_json& job, long idx) {
    reject_unknown_keys(job,
                        {"kind", "map", "start", "places", "n_max", "height_budget_bits",
                         "precision_cap_bits", "degree_budget"},
                        idx, job_tag(idx));
    require_map(job, "map", idx);
    require_point(job, "start", idx);
    require_places(job, "places", idx);
    if (require_int(job, "n_max", idx) < 0)
        bad_config(job_tag(idx) + "n_max must be >= 0", idx);
}

void validate_bound_term(const ordered_json& job, long idx) {
    reject_unknown_keys(job,
                        {"kind", "map", "target", "start", "tol", "precision_cap_bits",
                         "height_budget_bits", "degree_budget"},
                        idx, job_tag(idx));
    require_map(job, "map", idx);
    require_point(job, "target", idx);
    require_point(job, "start", idx);
    if (require_rational(job, "tol", idx) <= 0)
        bad_config(job_tag(idx) + "tol must be positive", idx);
}

void validate_remark_grid(const ordered_json& job, long idx) {
    reject_unknown_keys(job,
                        {"kind", "d", "p", "eps", "n_max", "width", "precision_cap_bits",
                         "height_budget_bits", "degree_budget"},
                        idx, job_tag(idx));
    const ordered_json& dv = require_field(job, "d", idx);
    if (!dv.is_array() || dv.empty())
        bad_config(job_tag(idx) + "field 'd' must be a nonempty array of degrees", idx);
    for (const auto& d : dv)
        if (!d.is_number_integer() || d.get<long>() < 2)
            bad_config(job_tag(idx) + "degrees must be integers >= 2", idx);
    const ordered_json& pv = require_field(job, "p", idx);
    if (!pv.is_array() || pv.empty())
        bad_config(job_tag(idx) + "field 'p' must be a nonempty array of primes", idx);
    for (const auto& p : pv) {
        if (!p.is_number_integer() || p.get<long>() < 2)
            bad_config(job_tag(idx) + "primes must be integers >= 2", idx);
        if (!is_prime(mpz_class(p.get<long>())))
            bad_config(job_tag(idx) + std::to_string(p.get<long>()) + " is not prime", idx);
    }
    const ordered_json& ev = require_field(job, "eps", idx);
    if (!ev.is_array() || ev.empty())
        bad_config(job_tag(idx) + "field 'eps' must be a nonempty array of rationals", idx);
    for (const auto& e : ev) {
        if (!e.is_string()) bad_config(job_tag(idx) + "eps entries must be strings", idx);
        check_eps_range(parse_rational_text(e.get<std::string>(), "eps", idx), "eps", idx);
    }
    if (optional_int(job, "n_max", 16, idx) < 0)
        bad_config(job_tag(idx) + "n_max must be >= 0", idx);
    if (job.contains("width") && require_rational(job, "width", idx) <= 0)
        bad_config(job_tag(idx) + "width must be positive", idx);
}

void validate_inv_fun(const ordered_json& job, long idx) {
    reject_unknown_keys(job, {"kind", "map", "target", "start", "places"}, idx, job_tag(idx));
    require_map(job, "map", idx);
    require_point(job, "target", idx);
    require_point(job, "start", idx);
    require_places(job, "places", idx);
}

void validate_ram_growth(const ordered_json& job, long idx) {
    reject_unknown_keys(job, {"kind", "map", "target", "m_max", "degree_budget"}, idx,
                        job_tag(idx));
    require_map(job, "map", idx);
    require_point(job, "target", idx);
    if (require_int(job, "m_max", idx) < 1)
        bad_config(job_tag(idx) + "m_max must be >= 1", idx);
}

void validate_fuzz_suite(const ordered_json& job, long idx) {
    reject_unknown_keys(job, {"kind", "seed", "sizes", "self_test"}, idx, job_tag(idx));
    if (job.contains("seed")) {
        const ordered_json& s = job["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            bad_config(job_tag(idx) + "seed must be a nonnegative integer", idx);
    }
    if (job.contains("sizes")) {
        const ordered_json& sz = job["sizes"];
        if (!sz.is_object()) bad_config(job_tag(idx) + "sizes must be an object", idx);
        reject_unknown_keys(sz, {"metric", "height", "iterate", "maps"}, idx,
                            job_tag(idx) + "sizes: ");
        for (const char* key : {"metric", "height", "iterate", "maps"})
            if (sz.contains(key) && optional_int(sz, key, 0, idx) < 0)
                bad_config(job_tag(idx) + "suite sizes must be >= 0", idx);
    }
    if (job.contains("self_test") && !job["self_test"].is_boolean())
        bad_config(job_tag(idx) + "self_test must be a boolean", idx);
}

void validate_job(const ordered_json& job, long idx) {
    if (!job.is_object()) bad_config(job_tag(idx) + "job must be an object", idx);
    std::string kind = require_string(job, "kind", idx);
    if (kind == "GammaScan")
        validate_gamma_scan(job, idx, false);
    else if (kind == "GammaScanNaive")
        validate_gamma_scan(job, idx, true);
    else if (kind == "Census")
        validate_census(job, idx);
    else if (kind == "BoundTerm")
        validate_bound_term(job, idx);
    else if (kind == "RemarkGrid")
        validate_remark_grid(job, idx);
    else if (kind == "InvFunReport")
        validate_inv_fun(job, idx);
    else if (kind == "RamGrowth")
        validate_ram_growth(job, idx);
    else if (kind == "FuzzSuite")
        validate_fuzz_suite(job, idx);
    else
        bad_config(job_tag(idx) + "unknown job kind '" + kind + "'", idx);
}

// ---------------------------------------------------------------------------
// per-kind execution

ordered_json run_gamma_scan(const ordered_json& job, const experiment_config& cfg, long idx,
                            bool naive) {
    rational_map phi = require_map(job, "map", idx);
    proj_point a = require_point(job, "target", idx);
    proj_point p = require_point(job, "start", idx);
    place_set s = require_places(job, "places", idx);
    mpq_class eps = require_rational(job, "eps", idx);
    long n_max = require_int(job, "n_max", idx);
    compute_limits limits = job_limits(job, cfg.limits, idx);
    scan_report rep = naive ? gamma_scan_naive(phi, a, p, s, eps, n_max, limits)
                            : gamma_scan(phi, a, p, s, eps, n_max,
                                         require_backend(job, idx), limits);
    return scan_json(rep);
}

ordered_json run_census(const ordered_json& job, const experiment_config& cfg, long idx) {
    rational_map phi = require_map(job, "map", idx);
    proj_point p = require_point(job, "start", idx);
    place_set s = require_places(job, "places", idx);
    long n_max = require_int(job, "n_max", idx);
    compute_limits limits = job_limits(job, cfg.limits, idx);
    census_report rep = integral_census(phi, p, s, n_max, limits.height_budget_bits, limits);
    ordered_json out;
    ordered_json ix = ordered_json::array();
    for (long n : rep.integral_indices) ix.push_back(n);
    out["integral_indices"] = std::move(ix);
    out["log_term"] = interval_json(rep.log_term);
    return out;
}

ordered_json run_bound_term(const ordered_json& job, const experiment_config& cfg, long idx) {
    rational_map phi = require_map(job, "map", idx);
    proj_point a = require_point(job, "target", idx);
    proj_point p = require_point(job, "start", idx);
    mpq_class tol = require_rational(job, "tol", idx);
    compute_limits limits = job_limits(job, cfg.limits, idx);
    ordered_json out;
    out["value"] = interval_json(bound_log_term(phi, a, p, tol, limits));
    return out;
}

ordered_json run_remark_grid(const ordered_json& job, const experiment_config& cfg, long idx) {
    long n_max = optional_int(job, "n_max", 16, idx);
    mpq_class width(1, 1000000);
    if (job.contains("width")) width = require_rational(job, "width", idx);
    compute_limits limits = job_limits(job, cfg.limits, idx);

    ordered_json cells = ordered_json::array();
    bool all_match = true;
    for (const auto& dj : job["d"]) {
        const int d = static_cast<int>(dj.get<long>());
        // z^d + z^(d-1) over the constant denominator 1
        std::vector<mpz_class> num(static_cast<size_t>(d) + 1, mpz_class(0));
        num[static_cast<size_t>(d)] = 1;
        num[static_cast<size_t>(d) - 1] = 1;
        rational_map phi{int_poly{num}, int_poly::constant(1)};
        for (const auto& pj : job["p"]) {
            const long p = pj.get<long>();
            proj_point start = proj_point::from_rational(mpq_class(p));
            place_set s({place::finite(mpz_class(p))});
            for (const auto& ej : job["eps"]) {
                mpq_class eps = parse_rational_text(ej.get<std::string>(), "eps", idx);
                scan_report rep =
                    gamma_scan(phi, proj_point::from_rational(mpq_class(0)), start, s, eps,
                               n_max, scan_backend::finite_place_modular, limits);
                real_interval hh = rep.hhat_start;
                std::optional<long> closed = remark_count(d, mpz_class(p), eps, hh);
                mpq_class w = width;
                for (int tries = 0; !closed && tries < 8; ++tries) {
                    w /= 16;
                    hh = canonical_height(phi, start, w, limits);
                    closed = remark_count(d, mpz_class(p), eps, hh);
                }
                ordered_json cell;
                cell["d"] = d;
                cell["p"] = p;
                cell["eps"] = ej.get<std::string>();
                cell["count_in"] = rep.count_in;
                cell["count_out"] = rep.count_out;
                cell["count_unresolved"] = rep.count_unresolved;
                if (closed)
                    cell["remark_count"] = *closed;
                else
                    cell["remark_count"] = nullptr;
                bool match = closed && *closed == rep.count_in && rep.count_unresolved == 0;
                cell["match"] = match;
                all_match = all_match && match;
                cells.push_back(std::move(cell));
            }
        }
    }
    ordered_json out;
    out["n_max"] = n_max;
    out["cells"] = std::move(cells);
    out["all_match"] = all_match;
    return out;
}

ordered_json run_inv_fun(const ordered_json& job, long idx) {
    rational_map psi = require_map(job, "map", idx);
    proj_point a = require_point(job, "target", idx);
    proj_point p = require_point(job, "start", idx);
    place_set s = require_places(job, "places", idx);
    inv_fun_record rec = inv_fun_report(psi, a, p, s);
    ordered_json out;
    out["infinite"] = rec.infinite;
    ordered_json pts = ordered_json::array();
    for (const auto& q : rec.preimages) pts.push_back(q.to_string());
    out["preimages"] = std::move(pts);
    ordered_json ix = ordered_json::array();
    for (int e : rec.indices) ix.push_back(e);
    out["indices"] = std::move(ix);
    if (!rec.infinite) {
        out["lhs"] = loglin_json(rec.lhs);
        out["rhs"] = loglin_json(rec.rhs);
        out["residual"] = loglin_json(rec.residual);
    }
    out["scale"] = interval_json(rec.scale);
    return out;
}

ordered_json run_ram_growth(const ordered_json& job, const experiment_config& cfg, long idx) {
    rational_map phi = require_map(job, "map", idx);
    proj_point q = require_point(job, "target", idx);
    int m_max = static_cast<int>(require_int(job, "m_max", idx));
    long budget = optional_int(job, "degree_budget", cfg.limits.degree_budget, idx);
    ram_growth_report rep = ramification_growth(phi, q, m_max, budget);
    ordered_json out;
    ordered_json mm = ordered_json::array();
    for (int m : rep.max_multiplicity) mm.push_back(m);
    out["max_multiplicity"] = std::move(mm);
    ordered_json fl = ordered_json::array();
    for (int m : rep.flagged_m) fl.push_back(m);
    out["flagged_m"] = std::move(fl);
    return out;
}

ordered_json run_fuzz_suite(const ordered_json& job, const experiment_config& cfg, long idx) {
    std::uint64_t seed = cfg.seed;
    if (job.contains("seed")) seed = job["seed"].get<std::uint64_t>();
    fuzz_sizes sizes;
    if (job.contains("sizes")) {
        const ordered_json& sz = job["sizes"];
        sizes.metric = optional_int(sz, "metric", sizes.metric, idx);
        sizes.height = optional_int(sz, "height", sizes.height, idx);
        sizes.iterate = optional_int(sz, "iterate", sizes.iterate, idx);
        sizes.maps = optional_int(sz, "maps", sizes.maps, idx);
    }
    std::vector<suite_result> suites = run_fuzz_suites(seed, sizes);
    ordered_json out;
    out["prng"] = fuzz_prng_id();
    out["seed"] = seed;
    {
        ordered_json sz;
        sz["metric"] = sizes.metric;
        sz["height"] = sizes.height;
        sz["iterate"] = sizes.iterate;
        sz["maps"] = sizes.maps;
        out["sizes"] = std::move(sz);
    }
    bool all_passed = true;
    ordered_json arr = ordered_json::array();
    for (const auto& s : suites) {
        all_passed = all_passed && s.passed();
        arr.push_back(suite_json(s));
    }
    out["suites"] = std::move(arr);
    out["all_passed"] = all_passed;
    if (job.value("self_test", false)) {
        long cases = std::min<long>(sizes.height, 300);
        suite_result weak =
            fuzz_product_height_bound(seed, cases, bound_mode::weakened_self_test);
        ordered_json st = suite_json(weak);
        st["detected"] = weak.failures > 0;
        out["self_test"] = std::move(st);
    }
    return out;
}

ordered_json run_job(const ordered_json& job, const experiment_config& cfg, long idx) {
    std::string kind = job["kind"].get<std::string>();
    if (kind == "GammaScan") return run_gamma_scan(job, cfg, idx, false);
    if (kind == "GammaScanNaive") return run_gamma_scan(job, cfg, idx, true);
    if (kind == "Census") return run_census(job, cfg, idx);
    if (kind == "BoundTerm") return run_bound_term(job, cfg, idx);
    if (kind == "RemarkGrid") return run_remark_grid(job, cfg, idx);
    if (kind == "InvFunReport") return run_inv_fun(job, idx);
    if (kind == "RamGrowth") return run_ram_growth(job, cfg, idx);
    if (kind == "FuzzSuite") return run_fuzz_suite(job, cfg, idx);
    bad_config(job_tag(idx) + "unknown job kind '" + kind + "'", idx);
}

}  // namespace

experiment_config parse_experiment_config(const std::string& json_text) {
    experiment_config cfg;
    try {
        cfg.doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        bad_config(std::string("configuration is not valid JSON: ") + e.what(),
                   static_cast<long>(e.byte));
    }
    if (!cfg.doc.is_object()) bad_config("configuration must be a JSON object");
    reject_unknown_keys(cfg.doc,
                        {"jobs", "seed", "precision_cap_bits", "height_budget_bits",
                         "degree_budget"},
                        -1, "configuration: ");
    if (cfg.doc.contains("seed")) {
        const ordered_json& s = cfg.doc["seed"];
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
            bad_config("seed must be a nonnegative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    cfg.limits.precision_cap_bits =
        optional_int(cfg.doc, "precision_cap_bits", cfg.limits.precision_cap_bits, -1);
    cfg.limits.height_budget_bits =
        optional_int(cfg.doc, "height_budget_bits", cfg.limits.height_budget_bits, -1);
    cfg.limits.degree_budget =
        optional_int(cfg.doc, "degree_budget", cfg.limits.degree_budget, -1);
    if (cfg.limits.precision_cap_bits < 64 || cfg.limits.height_budget_bits < 1 ||
        cfg.limits.degree_budget < 2)
        bad_config("resource limits out of range");

    auto it = cfg.doc.find("jobs");
    if (it == cfg.doc.end() || !it->is_array())
        bad_config("configuration requires a 'jobs' array");
    long idx = 0;
    for (const auto& job : *it) validate_job(job, idx++);
    return cfg;
}

nlohmann::ordered_json run_experiment_json(const experiment_config& cfg) {
    const ordered_json& jobs = cfg.doc.at("jobs");
    const long count = static_cast<long>(jobs.size());

    struct outcome {
        ordered_json body;
        bool failed = false;
        double millis = 0;
    };
    std::vector<std::future<outcome>> futures;
    futures.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
        futures.push_back(std::async(std::launch::async, [&jobs, &cfg, i]() -> outcome {
            outcome out;
            auto t0 = std::chrono::steady_clock::now();
            try {
                out.body = run_job(jobs[static_cast<size_t>(i)], cfg, i);
            } catch (const error& e) {
                out.failed = true;
                out.body["code"] = errc_name(e.code());
                out.body["what"] = e.what();
                if (e.index() >= 0) out.body["where"] = e.index();
            } catch (const std::exception& e) {
                out.failed = true;
                out.body["code"] = "Internal";
                out.body["what"] = e.what();
            }
            out.millis = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
            return out;
        }));
    }

    ordered_json report;
    report["report"] = "orbitint-experiment";
    report["format_version"] = 1;
    report["prng"] = fuzz_prng_id();
    report["seed"] = cfg.seed;
    report["config"] = cfg.doc;
    ordered_json entries = ordered_json::array();
    for (long i = 0; i < count; ++i) {
        outcome out = futures[static_cast<size_t>(i)].get();
        ordered_json entry;
        entry["index"] = i;
        entry["kind"] = jobs[static_cast<size_t>(i)]["kind"].get<std::string>();
        entry["status"] = out.failed ? "error" : "ok";
        entry[out.failed ? "error" : "result"] = std::move(out.body);
        entries.push_back(std::move(entry));
        // wall-clock stays out of the report so identical inputs give
        // identical bytes; surface it on stderr instead
        std::cerr << "[job " << i << "] "
                  << jobs[static_cast<size_t>(i)]["kind"].get<std::string>() << " "
                  << out.millis << " ms\n";
    }
    report["jobs"] = std::move(entries);
    return report;
}

std::string run_experiment(const experiment_config& cfg) {
    return run_experiment_json(cfg).dump(2) + "\n";
}

std::string scan_csv(const scan_report& rep) {
    std::string out = "n,membership,lambda_sum_decimal,threshold_lo,threshold_hi\n";
    for (const auto& sv : rep.verdicts) {
        out += std::to_string(sv.n);
        out += ',';
        out += membership_name(sv.verdict);
        out += ',';
        if (sv.lambda_infinite)
            out += "inf";
        else
            out += decimal_of_double(sv.lambda.enclose(192).to_double_mid());
        out += ',';
        out += sv.threshold.lo_string(decimal_digits);
        out += ',';
        out += sv.threshold.hi_string(decimal_digits);
        out += '\n';
    }
    return out;
}

}  // namespace orbitint
