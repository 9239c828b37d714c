#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kbsym/zerotest.hpp"

namespace kbsym {

struct RunConfig {
    uint64_t seed = 20240817ULL;
    int trials = 16;
    double rel_tol = 1e-9;
    double whittaker_tol = 1e-7;
    int jobs = 1;
    std::string format = "markdown";
    std::string scope = "all";
    bool timings = false;

    SamplingSpec base_spec() const {
        SamplingSpec s;
        s.seed = seed;
        s.trials = trials;
        s.exact_trials = 4;
        s.rel_tol = rel_tol;
        return s;
    }
};

struct CheckOutcome {
    bool pass = false;
    double max_resid = 0.0;
    std::string witness;
};

struct Check {
    std::string id;
    std::string citation;
    std::function<CheckOutcome(const RunConfig&)> run;
};

// The full suite, ordered by id.
const std::vector<Check>& all_checks();

// "all", a module prefix ("catalog", "symmetry", "algebra", "equivalence",
// "pseudogroup", "operators", "darboux", "reduction", "duality", "negative"),
// a family id, or a full check id.
std::vector<Check> checks_in_scope(const std::string& scope);

}  // namespace kbsym
