#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kbsym/report.hpp"

using namespace kbsym;

TEST_CASE("scope selection") {
    CHECK(checks_in_scope("all").size() >= 120);
    CHECK(checks_in_scope("nosuch").empty());
    CHECK(checks_in_scope("darboux").size() >= 5);
    // family ids resolve to their catalog check
    auto f = checks_in_scope("F2.D");
    REQUIRE(f.size() == 1);
    CHECK(f[0].id == "catalog.F2.D");
}

TEST_CASE("reports are deterministic and serial equals parallel") {
    RunConfig cfg;
    cfg.scope = "negative";
    cfg.trials = 10;
    auto checks = checks_in_scope(cfg.scope);
    REQUIRE_FALSE(checks.empty());
    VerificationReport a = run_checks_serial(checks, cfg);
    VerificationReport b = run_checks_serial(checks, cfg);
    CHECK(a.to_json() == b.to_json());
    RunConfig pc = cfg;
    pc.jobs = 2;
    VerificationReport c = run_checks(checks, pc);
    c.cfg = cfg;  // normalize the config echo before comparing bytes
    CHECK(a.to_json() == c.to_json());
    CHECK(a.to_markdown() == c.to_markdown());
    CHECK(a.to_csv() == c.to_csv());
}

TEST_CASE("report formats carry the summary") {
    RunConfig cfg;
    cfg.scope = "negative";
    auto rep = run_checks_serial(checks_in_scope(cfg.scope), cfg);
    CHECK(rep.to_json().find("report-v1") != std::string::npos);
    CHECK(rep.to_markdown().find("pass") != std::string::npos);
    CHECK(rep.to_csv().find("id,status") != std::string::npos);
    CHECK(rep.n_pass + rep.n_fail == static_cast<int>(rep.records.size()));
}
