// Acceptance suite: runs each criterion at its stated tolerance and time
// budget and prints one pass/fail line per criterion.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "kbsym/catalog.hpp"
#include "kbsym/report.hpp"

using namespace kbsym;

namespace {

struct Criterion {
    int number;
    std::string name;
    double limit_s;
    std::function<bool(std::string&)> run;
};

bool run_scope(const std::string& scope, const RunConfig& cfg, std::string& detail,
               size_t min_checks = 1) {
    auto checks = checks_in_scope(scope);
    if (checks.size() < min_checks) {
        detail = "only " + std::to_string(checks.size()) + " checks in scope " + scope;
        return false;
    }
    VerificationReport rep = run_checks_serial(checks, cfg);
    double worst = 0;
    for (const auto& r : rep.records) worst = std::max(worst, r.max_resid);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%zu checks, max residual %.3e", checks.size(), worst);
    detail = buf;
    if (rep.n_fail) {
        for (const auto& r : rep.records)
            if (!r.pass) {
                detail += "; FIRST FAIL " + r.id + ": " + r.witness;
                break;
            }
        return false;
    }
    return true;
}

}  // namespace

int main() {
    RunConfig cfg;  // pinned defaults: 1e-9 relative, 1e-7 for Whittaker-backed checks
    std::vector<Criterion> criteria;

    criteria.push_back({1, "catalog verification across the stated exponents", 60.0,
                        [&](std::string& d) {
                            size_t fams = Catalog::instance().ids().size();
                            if (fams < 25) {
                                d = "catalog holds only " + std::to_string(fams) + " families";
                                return false;
                            }
                            return run_scope("catalog", cfg, d, 25);
                        }});
    criteria.push_back({2, "Lie symmetry criterion incl. negative control", 10.0,
                        [&](std::string& d) {
                            if (!run_scope("symmetry", cfg, d, 20)) return false;
                            std::string d2;
                            bool neg = run_scope("negative.non-symmetry", cfg, d2);
                            if (!neg) d += "; negative control failed: " + d2;
                            return neg;
                        }});
    criteria.push_back({3, "structure constants, exact", 5.0, [&](std::string& d) {
                            bool a = run_scope("algebra.gess-beta.constants", cfg, d);
                            std::string d2;
                            bool b = run_scope("algebra.gess0.heisenberg-sl2", cfg, d2);
                            d += "; " + d2;
                            return a && b;
                        }});
    criteria.push_back({4, "automorphism families and megaideal stability, exact", 10.0,
                        [&](std::string& d) {
                            bool a = run_scope("algebra.gsimF.aut", cfg, d);
                            std::string d2, d3, d4;
                            bool b = run_scope("algebra.gsimF.megaideals", cfg, d2);
                            bool c = run_scope("algebra.gsimFp.aut", cfg, d3);
                            bool e = run_scope("algebra.gsimFp.megaideals", cfg, d4);
                            d += "; " + d2 + "; " + d3 + "; " + d4;
                            return a && b && c && e;
                        }});
    criteria.push_back({5, "equivalence mappings of the two classes", 10.0, [&](std::string& d) {
                            bool a = run_scope("equivalence.S.maps-F-to-Fp", cfg, d);
                            std::string d2;
                            bool b = run_scope("equivalence.J.maps-beta-pairs", cfg, d2);
                            d += "; " + d2;
                            return a && b;
                        }});
    criteria.push_back({6, "pseudogroup actions on catalog solutions", 30.0, [&](std::string& d) {
                            return run_scope("pseudogroup", cfg, d, 6);
                        }});
    criteria.push_back({7, "operator identities and the diamond basis", 30.0, [&](std::string& d) {
                            return run_scope("operators", cfg, d, 8);
                        }});
    criteria.push_back({8, "solution ladders", 60.0, [&](std::string& d) {
                            std::vector<std::string> lads = {"F0.lad.P1", "F0.lad.P2", "F0.lad.P3",
                                                             "F1.lad.D1", "Fm1.lad.Dm1"};
                            for (const auto& id : lads) {
                                std::string dd;
                                if (!run_scope(id, cfg, dd)) {
                                    d = id + ": " + dd;
                                    return false;
                                }
                            }
                            d = std::to_string(lads.size()) + " ladder families verified";
                            return true;
                        }});
    criteria.push_back({9, "Darboux suite", 30.0, [&](std::string& d) {
                            bool a = run_scope("darboux", cfg, d, 5);
                            std::string d2;
                            bool b = run_scope("F2.D", cfg, d2);  // bridge family
                            d += "; bridge " + d2;
                            return a && b;
                        }});
    criteria.push_back({10, "duality with the swapped exponents", 20.0, [&](std::string& d) {
                            return run_scope("duality", cfg, d, 10);
                        }});
    criteria.push_back({11, "byte-identical reports under a fixed config", 240.0,
                        [&](std::string& d) {
                            RunConfig fast = cfg;
                            fast.trials = 8;
                            auto checks = checks_in_scope("all");
                            VerificationReport a = run_checks_serial(checks, fast);
                            VerificationReport b = run_checks_serial(checks, fast);
                            bool same = a.to_json() == b.to_json();
                            RunConfig par = fast;
                            par.jobs = 2;
                            VerificationReport c = run_checks(checks, par);
                            c.cfg = fast;
                            bool same_par = a.to_json() == c.to_json();
                            d = std::to_string(checks.size()) + " checks compared twice" +
                                (same_par ? ", parallel run identical" : ", PARALLEL DIFFERS");
                            return same && same_par;
                        }});
    criteria.push_back({12, "negative controls fail with witnesses", 30.0, [&](std::string& d) {
                            return run_scope("negative", cfg, d, 3);
                        }});

    int failures = 0;
    double total = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(t1 - t0).count();
        total += secs;
        bool in_budget = secs <= c.limit_s;
        if (!pass || !in_budget) ++failures;
        std::printf("%s criterion-%02d %-52s %6.1fs [limit %4.0fs]%s\n",
                    pass && in_budget ? "PASS" : "FAIL", c.number, c.name.c_str(), secs,
                    c.limit_s, in_budget ? "" : " (over budget)");
        std::printf("     %s\n", detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%s: %d/%zu criteria passed in %.1fs\n", failures ? "FAIL" : "PASS",
                static_cast<int>(criteria.size()) - failures, criteria.size(), total);
    return failures ? 1 : 0;
}
