#pragma once

#include <string>
#include <vector>

#include "kbsym/checks.hpp"

namespace kbsym {

struct CheckRecord {
    std::string id;
    std::string citation;
    bool pass = false;
    double max_resid = 0.0;
    std::string witness;
    double duration_ms = 0.0;
};

struct VerificationReport {
    RunConfig cfg;
    std::vector<CheckRecord> records;  // ordered by check id
    int n_pass = 0;
    int n_fail = 0;

    std::string to_json() const;      // schema report-v1
    std::string to_markdown() const;
    std::string to_csv() const;
    std::string format(const std::string& fmt) const;
};

// Runs the checks, in parallel when cfg.jobs > 1 (OpenMP) and serially
// otherwise.  Records are aggregated in id order, so the two paths produce
// identical reports; the serial path is the reference the tests compare
// against.
VerificationReport run_checks(const std::vector<Check>& checks, const RunConfig& cfg);
VerificationReport run_checks_serial(const std::vector<Check>& checks, const RunConfig& cfg);

}  // namespace kbsym
