#include "kbsym/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

namespace kbsym {

namespace {
std::string fmt_resid(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    return buf;
}

CheckRecord run_one(const Check& c, const RunConfig& cfg) {
    CheckRecord r;
    r.id = c.id;
    r.citation = c.citation;
    auto t0 = std::chrono::steady_clock::now();
    CheckOutcome o = c.run(cfg);
    auto t1 = std::chrono::steady_clock::now();
    r.pass = o.pass;
    r.max_resid = o.max_resid;
    r.witness = o.witness;
    r.duration_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}
}  // namespace

VerificationReport run_checks_serial(const std::vector<Check>& checks, const RunConfig& cfg) {
    VerificationReport rep;
    rep.cfg = cfg;
    rep.records.resize(checks.size());
    for (size_t i = 0; i < checks.size(); ++i) rep.records[i] = run_one(checks[i], cfg);
    for (const auto& r : rep.records) (r.pass ? rep.n_pass : rep.n_fail)++;
    return rep;
}

VerificationReport run_checks(const std::vector<Check>& checks, const RunConfig& cfg) {
    if (cfg.jobs <= 1) return run_checks_serial(checks, cfg);
    VerificationReport rep;
    rep.cfg = cfg;
    rep.records.resize(checks.size());
#ifdef _OPENMP
    omp_set_num_threads(cfg.jobs);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(checks.size()); ++i)
        rep.records[i] = run_one(checks[i], cfg);
#else
    for (size_t i = 0; i < checks.size(); ++i) rep.records[i] = run_one(checks[i], cfg);
#endif
    for (const auto& r : rep.records) (r.pass ? rep.n_pass : rep.n_fail)++;
    return rep;
}

std::string VerificationReport::to_json() const {
    nlohmann::json root;
    root["schema"] = "report-v1";
    root["config"] = {{"seed", cfg.seed},
                      {"trials", cfg.trials},
                      {"rel_tol", fmt_resid(cfg.rel_tol)},
                      {"whittaker_tol", fmt_resid(cfg.whittaker_tol)},
                      {"scope", cfg.scope},
                      {"jobs", cfg.jobs}};
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j;
        j["id"] = r.id;
        j["citation"] = r.citation;
        j["status"] = r.pass ? "pass" : "fail";
        j["max_residual"] = fmt_resid(r.max_resid);
        if (!r.pass) j["witness"] = r.witness;
        if (cfg.timings) j["duration_ms"] = r.duration_ms;
        list.push_back(j);
    }
    root["checks"] = list;
    root["summary"] = {{"pass", n_pass}, {"fail", n_fail}};
    return root.dump(2);
}

std::string VerificationReport::to_markdown() const {
    std::ostringstream os;
    os << "# verification report\n\n";
    os << "seed " << cfg.seed << ", trials " << cfg.trials << ", scope " << cfg.scope << "\n\n";
    os << "| check | status | max residual |\n|---|---|---|\n";
    for (const auto& r : records) {
        os << "| " << r.id << " | " << (r.pass ? "pass" : "FAIL") << " | " << fmt_resid(r.max_resid)
           << " |\n";
        if (!r.pass) os << "|   witness | " << r.witness << " | |\n";
    }
    os << "\n" << n_pass << " pass, " << n_fail << " fail\n";
    return os.str();
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os << "id,status,max_residual\n";
    for (const auto& r : records)
        os << r.id << "," << (r.pass ? "pass" : "fail") << "," << fmt_resid(r.max_resid) << "\n";
    return os.str();
}

std::string VerificationReport::format(const std::string& fmt) const {
    if (fmt == "json") return to_json();
    if (fmt == "csv") return to_csv();
    return to_markdown();
}

}  // namespace kbsym
