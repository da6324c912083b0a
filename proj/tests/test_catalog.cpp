#include "rmt/catalog.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

using namespace rmt;
using catalog::CatalogEntry;
using catalog::Provenance;
using catalog::RunReport;
using catalog::RunStatus;

TEST_SUITE("catalog") {

TEST_CASE("census and id uniqueness") {
    const auto& entries = catalog::list_entries();
    CHECK(entries.size() >= 15);
    std::set<std::string> ids;
    for (const auto& e : entries)
        ids.insert(e.id);
    CHECK(ids.size() == entries.size());
}

TEST_CASE("every rule operation is covered by an entry") {
    const auto& entries = catalog::list_entries();
    for (const auto& rule : catalog::known_rules()) {
        bool covered = std::any_of(
            entries.begin(), entries.end(),
            [&](const CatalogEntry& e) { return e.rule == rule; });
        CHECK_MESSAGE(covered, "rule not covered: ", rule);
    }
}

TEST_CASE("literature-sourced entries carry a citation") {
    for (const auto& e : catalog::list_entries()) {
        if (e.expected_provenance != Provenance::paper)
            continue;
        bool cited = e.description.find("Gradshteyn") != std::string::npos ||
                     e.description.find("Ramanujan") != std::string::npos ||
                     e.description.find("Riemann") != std::string::npos ||
                     e.description.find("Glaisher") != std::string::npos ||
                     e.description.find("classical") != std::string::npos;
        CHECK_MESSAGE(cited, "uncited paper-provenance entry: ", e.id);
    }
}

TEST_CASE("closed forms reproduce the frozen expected values") {
    for (const auto& e : catalog::list_entries()) {
        if (!e.expected)
            continue;
        RunReport r = catalog::run_entry(e.id, {}, false);
        REQUIRE_MESSAGE(r.status == RunStatus::ok, "entry ", e.id);
        double tol = 1e-9 * std::max(1.0, std::fabs(*e.expected));
        CHECK_MESSAGE(std::fabs(r.closed.value - *e.expected) <= tol,
                      "entry ", e.id, " closed=", r.closed.value,
                      " expected=", *e.expected);
    }
}

TEST_CASE("run_entry: oracle route and gap") {
    RunReport r = catalog::run_entry("gamma_s_basic", {{"s", 3.0}}, true);
    REQUIRE(r.status == RunStatus::ok);
    REQUIRE(r.oracle_result.has_value());
    CHECK(r.closed.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(*r.rel_gap <= 1e-9);
}

TEST_CASE("run_entry: error paths") {
    CHECK(catalog::run_entry("no_such_entry", {}, false).status ==
          RunStatus::unknown_id);
    CHECK(catalog::run_entry("gamma_s_basic", {{"zz", 1.0}}, false).status ==
          RunStatus::unknown_param);
    CHECK(catalog::run_entry("gamma_s_basic", {{"s", 999.0}}, false).status ==
          RunStatus::param_out_of_range);
    // zeta pole surfaces as a closed-form error
    CHECK(catalog::run_entry("zeta_bose_integral", {{"s", 1.0}}, false)
              .status == RunStatus::closed_form_error);
    // divergent oracle integral surfaces as oracle_failure
    CHECK(catalog::run_entry("beta_integral_plain", {{"s", 1.5}}, true)
              .status == RunStatus::oracle_failure);
}

TEST_CASE("run_entry: soft range flag still computes") {
    RunReport r = catalog::run_entry("pi_over_4_sum", {{"theta", 2.0}}, false);
    CHECK(r.status == RunStatus::ok);
    bool flagged = false;
    for (const auto& n : r.notes)
        flagged |= n.find("flagged") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("run_entry: hankel override agrees with the oracle") {
    RunReport r = catalog::run_entry("hankel_exp", {{"s", 0.5}}, true);
    REQUIRE(r.status == RunStatus::ok);
    CHECK(r.closed.value ==
          doctest::Approx(0.71554175279993270285).epsilon(1e-10));
    CHECK(*r.rel_gap <= 1e-8);
}

TEST_CASE("build_spec rejects unknown keys") {
    series::SeriesSpec spec;
    std::string err;
    CHECK_FALSE(catalog::build_spec("nope", {}, &spec, &err));
    CHECK_FALSE(err.empty());
}

TEST_CASE("user catalog: strict parsing") {
    std::vector<CatalogEntry> out;
    std::string err;

    CHECK(catalog::parse_user_catalog(
        R"([{"id":"u1","spec_key":"exp_one","rule":"rmt_general",
             "params":{"s":2.5},"expected":1.3293403881791370,
             "oracle_route":"mellin","tolerance":1e-8}])",
        &out, &err));
    REQUIRE(out.size() == 1);
    CHECK(out[0].id == "u1");

    CHECK_FALSE(catalog::parse_user_catalog(
        R"([{"id":"u2","spec_key":"exp_one","rule":"rmt_general","bogus":1}])",
        &out, &err));
    CHECK(err.find("strict") != std::string::npos);

    CHECK_FALSE(catalog::parse_user_catalog(
        R"([{"id":"u3","spec_key":"exp_one","rule":"no_rule"}])", &out, &err));
    CHECK_FALSE(catalog::parse_user_catalog(
        R"([{"id":"u4","spec_key":"who","rule":"rmt_general"}])", &out, &err));
    CHECK_FALSE(catalog::parse_user_catalog("not json at all", &out, &err));
}

TEST_CASE("user catalog: merged through the environment") {
    std::string path = "/tmp/rmt_user_catalog_test.json";
    {
        std::ofstream f(path);
        f << R"([{"id":"user_exp_mellin","description":"user entry",
                  "spec_key":"exp_one","rule":"rmt_general",
                  "params":{"s":2.5},"ranges":{"s":[0.1,10.0]},
                  "expected":1.3293403881791370205,
                  "oracle_route":"mellin","tolerance":1e-8}])";
    }
    setenv("RMT_CATALOG_PATH", path.c_str(), 1);
    std::string load_err;
    auto entries = catalog::all_entries(&load_err);
    CHECK(load_err.empty());
    bool found = std::any_of(entries.begin(), entries.end(),
                             [](const CatalogEntry& e) {
                                 return e.id == "user_exp_mellin";
                             });
    CHECK(found);
    RunReport r = catalog::run_entry("user_exp_mellin", {}, true);
    CHECK(r.status == RunStatus::ok);
    CHECK(*r.rel_gap <= 1e-8);

    // duplicate ids are rejected with a load error, builtin wins
    {
        std::ofstream f(path);
        f << R"([{"id":"gamma_s_basic","spec_key":"exp_one","rule":"rmt_general"}])";
    }
    entries = catalog::all_entries(&load_err);
    CHECK_FALSE(load_err.empty());
    long n = std::count_if(entries.begin(), entries.end(),
                           [](const CatalogEntry& e) {
                               return e.id == "gamma_s_basic";
                           });
    CHECK(n == 1);
    unsetenv("RMT_CATALOG_PATH");
    std::remove(path.c_str());
}

} // TEST_SUITE
