#include <doctest.h>

#include <functional>
#include <string>

#include <json.hpp>

#include "orbitint/errors.hpp"
#include "orbitint/experiment.hpp"
#include "orbitint/mapexpr.hpp"
#include "orbitint/projpoint.hpp"
#include "orbitint/scanner.hpp"

using namespace orbitint;
using nlohmann::ordered_json;

namespace {

errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected a typed error");
    return errc::config_invalid;
}

long thrown_index(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.index();
    }
    FAIL("expected a typed error");
    return -2;
}

ordered_json run_text(const std::string& text) {
    return run_experiment_json(parse_experiment_config(text));
}

const std::string scan7_config = R"({
  "seed": 7,
  "jobs": [
    {"kind": "GammaScan", "map": "z^2 + z", "target": "0", "start": "3",
     "places": "3", "eps": "1/100", "n_max": 16, "backend": "modular"}
  ]
})";

}  // namespace

TEST_CASE("configs validate before anything runs") {
    CHECK(thrown_code([] { parse_experiment_config("not json at all"); }) ==
          errc::config_invalid);
    CHECK(thrown_code([] { parse_experiment_config("[1,2]"); }) == errc::config_invalid);
    CHECK(thrown_code([] { parse_experiment_config("{}"); }) == errc::config_invalid);
    CHECK(thrown_code([] { parse_experiment_config(R"({"jobs": 3})"); }) ==
          errc::config_invalid);
    CHECK(thrown_code([] { parse_experiment_config(R"({"jobs": [], "bogus": 1})"); }) ==
          errc::config_invalid);

    // unknown kind is rejected up front, and the index points at the job
    std::string two_jobs = R"({"jobs": [
      {"kind": "Census", "map": "(z^2+1)/z", "start": "1", "places": "inf", "n_max": 2},
      {"kind": "Nonsense"}
    ]})";
    CHECK(thrown_code([&] { parse_experiment_config(two_jobs); }) == errc::config_invalid);
    CHECK(thrown_index([&] { parse_experiment_config(two_jobs); }) == 1);

    // schema violations inside an otherwise known kind
    auto reject = [](const std::string& body) {
        std::string text = std::string(R"({"jobs": [)") + body + "]}";
        return thrown_code([&] { parse_experiment_config(text); });
    };
    const std::string scan_ok = R"("kind": "GammaScan", "map": "z^2 + z", "target": "0",
        "start": "3", "places": "3", "eps": "1/100", "n_max": 16, "backend": "modular")";
    CHECK(reject("{" + scan_ok + R"(, "extra": 1})") == errc::config_invalid);
    CHECK(reject(R"({"kind": "GammaScan", "map": "z^2 +", "target": "0", "start": "3",
        "places": "3", "eps": "1/100", "n_max": 16, "backend": "modular"})") ==
          errc::config_invalid);
    CHECK(reject(R"({"kind": "GammaScan", "map": "z^2 + z", "target": "0", "start": "3",
        "places": "3", "eps": "0", "n_max": 16, "backend": "modular"})") ==
          errc::config_invalid);
    CHECK(reject(R"({"kind": "GammaScan", "map": "z^2 + z", "target": "0", "start": "3",
        "places": "3", "eps": "1/100", "n_max": -1, "backend": "modular"})") ==
          errc::config_invalid);
    CHECK(reject(R"({"kind": "GammaScan", "map": "z^2 + z", "target": "0", "start": "3",
        "places": "3", "eps": "1/100", "n_max": 16, "backend": "quantum"})") ==
          errc::config_invalid);
    CHECK(reject(R"({"kind": "GammaScan", "map": "z^2 + z", "target": "0", "start": "3",
        "places": "3", "eps": "1/0", "n_max": 16, "backend": "modular"})") ==
          errc::config_invalid);
    CHECK(reject(R"({"kind": "RemarkGrid", "d": [2], "p": [4], "eps": ["1/2"]})") ==
          errc::config_invalid);
    CHECK(reject(R"({"kind": "RemarkGrid", "d": [1], "p": [3], "eps": ["1/2"]})") ==
          errc::config_invalid);
    CHECK(reject(R"({"kind": "RamGrowth", "map": "z^2 + z", "target": "1", "m_max": 0})") ==
          errc::config_invalid);

    // a valid config parses and carries its top-level fields
    experiment_config cfg = parse_experiment_config(scan7_config);
    CHECK(cfg.seed == 7);
    CHECK(cfg.doc["jobs"].size() == 1);
}

TEST_CASE("gamma scan job reproduces the known count") {
    ordered_json doc = run_text(scan7_config);
    CHECK(doc["prng"] == "xoshiro256starstar-1.0");
    CHECK(doc["seed"] == 7);
    // exact input echo
    CHECK(doc["config"]["jobs"][0]["map"] == "z^2 + z");

    const ordered_json& job = doc["jobs"][0];
    CHECK(job["index"] == 0);
    CHECK(job["kind"] == "GammaScan");
    CHECK(job["status"] == "ok");
    const ordered_json& res = job["result"];
    CHECK(res["count_in"] == 7);
    CHECK(res["count_out"] == 10);
    CHECK(res["count_unresolved"] == 0);
    CHECK(res["degree"] == 2);
    CHECK(res["backend"] == "modular");
    CHECK(res["count_bound_form"] == "4^1 * C_ineffective + log_term");
    REQUIRE(res["rows"].size() == 17);
    CHECK(res["rows"][0]["n"] == 0);
    CHECK(res["rows"][0]["membership"] == "In");
    CHECK(res["rows"][16]["membership"] == "Out");
    // the proximity sum at S = {3} is exactly log 3 for every index
    CHECK(res["rows"][4]["lambda"]["infinite"] == false);
    CHECK(res["rows"][4]["lambda"]["exact"] == "log(3)");
    CHECK(res["rows"][4]["lambda"]["terms"].size() == 1);
    CHECK(res["rows"][4]["lambda"]["terms"][0]["coeff"] == "1");
    CHECK(res["rows"][4]["lambda"]["terms"][0]["base"] == "3");
    // enclosure endpoints are decimal strings
    CHECK(res["hhat_start"]["lo"].get<std::string>().find('.') != std::string::npos);
}

TEST_CASE("per-job errors are captured without aborting the batch") {
    std::string text = R"({"jobs": [
      {"kind": "Census", "map": "z^2 - 2", "start": "3", "places": "inf", "n_max": 3},
      {"kind": "Census", "map": "(z^2+1)/z", "start": "1", "places": "inf", "n_max": 3},
      {"kind": "RamGrowth", "map": "z^2 + z", "target": "1", "m_max": 4},
      {"kind": "BoundTerm", "map": "z^2 + 2", "target": "0", "start": "1",
       "tol": "1/100000000"}
    ]})";
    ordered_json doc = run_text(text);
    REQUIRE(doc["jobs"].size() == 4);

    CHECK(doc["jobs"][0]["status"] == "error");
    CHECK(doc["jobs"][0]["error"]["code"] == "SecondIteratePolynomial");

    CHECK(doc["jobs"][1]["status"] == "ok");
    CHECK(doc["jobs"][1]["result"]["integral_indices"] == ordered_json::array({1}));

    CHECK(doc["jobs"][2]["status"] == "ok");
    CHECK(doc["jobs"][2]["result"]["max_multiplicity"] ==
          ordered_json::array({1, 1, 1, 1}));
    CHECK(doc["jobs"][2]["result"]["flagged_m"].empty());

    CHECK(doc["jobs"][3]["status"] == "ok");
    CHECK(doc["jobs"][3]["result"]["value"].contains("lo"));
    CHECK(doc["jobs"][3]["result"]["value"].contains("hi"));
}

TEST_CASE("remark grid job certifies the closed-form count") {
    std::string text = R"({"jobs": [
      {"kind": "RemarkGrid", "d": [2], "p": [3], "eps": ["1/100", "1"], "n_max": 16}
    ]})";
    ordered_json doc = run_text(text);
    const ordered_json& res = doc["jobs"][0]["result"];
    REQUIRE(res["cells"].size() == 2);
    CHECK(res["cells"][0]["count_in"] == 7);
    CHECK(res["cells"][0]["remark_count"] == 7);
    CHECK(res["cells"][0]["count_unresolved"] == 0);
    CHECK(res["cells"][0]["match"] == true);
    CHECK(res["cells"][1]["count_in"] == 0);
    CHECK(res["cells"][1]["remark_count"] == 0);
    CHECK(res["all_match"] == true);
}

TEST_CASE("inverse-function job serializes both sides") {
    std::string text = R"({"jobs": [
      {"kind": "InvFunReport", "map": "z^2", "target": "4", "start": "3", "places": "inf"}
    ]})";
    ordered_json doc = run_text(text);
    const ordered_json& res = doc["jobs"][0]["result"];
    CHECK(res["infinite"] == false);
    CHECK(res["preimages"].size() == 2);
    CHECK(res["indices"] == ordered_json::array({1, 1}));
    CHECK(res["lhs"]["terms"].size() >= 1);
    CHECK(res["residual"].contains("exact"));
    CHECK(res["scale"].contains("lo"));
}

TEST_CASE("fuzz suite job reports per-suite outcomes") {
    std::string text = R"({"seed": 11, "jobs": [
      {"kind": "FuzzSuite",
       "sizes": {"metric": 150, "height": 150, "iterate": 30, "maps": 8},
       "self_test": true}
    ]})";
    ordered_json doc = run_text(text);
    const ordered_json& res = doc["jobs"][0]["result"];
    CHECK(res["prng"] == "xoshiro256starstar-1.0");
    CHECK(res["seed"] == 11);
    REQUIRE(res["suites"].size() == 11);
    for (const auto& s : res["suites"]) {
        CAPTURE(s["name"].get<std::string>());
        CHECK(s["passed"] == true);
    }
    CHECK(res["all_passed"] == true);
    CHECK(res["self_test"]["detected"] == true);
    CHECK(res["self_test"]["failures"].get<long>() > 0);
}

TEST_CASE("identical config and seed give identical report bytes") {
    std::string text = R"({"seed": 99, "jobs": [
      {"kind": "GammaScan", "map": "z^2 + z", "target": "0", "start": "3",
       "places": "3", "eps": "1/10", "n_max": 8, "backend": "exact"},
      {"kind": "FuzzSuite", "sizes": {"metric": 60, "height": 60, "iterate": 10, "maps": 4}},
      {"kind": "Census", "map": "(z^2+1)/z", "start": "1", "places": "inf,2", "n_max": 3}
    ]})";
    experiment_config cfg = parse_experiment_config(text);
    std::string r1 = run_experiment(cfg);
    std::string r2 = run_experiment(parse_experiment_config(text));
    CHECK(r1 == r2);
    CHECK(r1.size() > 100);
    CHECK(r1.back() == '\n');
}

TEST_CASE("scan csv renders one row per orbit index") {
    rational_map phi = parse_map_expr("z^2 + z");
    scan_report rep = gamma_scan(phi, proj_point::from_rational(mpq_class(0)),
                                 proj_point::from_rational(mpq_class(3)),
                                 place_set::parse("3"), mpq_class(1, 100), 4,
                                 scan_backend::exact_orbit);
    std::string csv = scan_csv(rep);
    CHECK(csv.find("n,membership,lambda_sum_decimal,threshold_lo,threshold_hi\n") == 0);
    size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 6);  // header + n = 0..4
    CHECK(csv.find("0,In,") != std::string::npos);

    // an infinite proximity sum (start equals target) prints "inf"
    scan_report hit = gamma_scan_naive(phi, proj_point::from_rational(mpq_class(3)),
                                       proj_point::from_rational(mpq_class(3)),
                                       place_set::parse("inf"), mpq_class(1), 1);
    std::string csv2 = scan_csv(hit);
    CHECK(csv2.find("0,In,inf,") != std::string::npos);
}
