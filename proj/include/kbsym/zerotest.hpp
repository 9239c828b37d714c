#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbsym/eval.hpp"
#include "kbsym/expr.hpp"

namespace kbsym {

// Deterministic splitmix64 stream.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next();
    double uniform();                    // [0,1)
    double in(double lo, double hi);
    long long int_in(long long lo, long long hi);
};

uint64_t derive_seed(uint64_t global_seed, const std::string& op_id);

struct Interval {
    double lo = -2.5;
    double hi = 2.5;
};

struct SamplingSpec {
    std::map<std::string, Interval> boxes;
    double exclusion = 0.1;  // reject |v| < exclusion when the box straddles 0
    std::map<std::string, std::vector<double>> avoid;
    double avoid_radius = 0.05;
    int trials = 32;
    int exact_trials = 8;
    uint64_t seed = 20240817ULL;
    double rel_tol = 1e-9;
    double abs_floor = 1e-12;

    SamplingSpec& box(const std::string& name, double lo, double hi) {
        boxes[name] = {lo, hi};
        return *this;
    }
    SamplingSpec& avoid_points(const std::string& name, std::vector<double> pts) {
        avoid[name] = std::move(pts);
        return *this;
    }
    SamplingSpec& tol(double rel) {
        rel_tol = rel;
        return *this;
    }

    double sample(Rng& rng, const std::string& name) const;
    Rational sample_exact(Rng& rng, const std::string& name) const;
};

struct IsZeroResult {
    bool zero = false;
    double max_resid = 0.0;
    std::string witness;  // failing point, empty on success
    explicit operator bool() const { return zero; }
};

// Probabilistic zero test: numeric sampling trials, plus exact rational
// evaluation at random rational points whenever the expression admits it.
// Placeholder derivative values not fixed by constraints are assigned
// independent random values per trial.
IsZeroResult is_zero(const ExprPtr& e, const SamplingSpec& spec, const std::string& op_id);

struct RankDeficientBasis : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// target = sum c_k basis_k componentwise with shared exact rational
// coefficients; nullopt when the target is not in the span.
std::optional<std::vector<Rational>> decompose_in_span(
    const std::vector<ExprPtr>& target_components,
    const std::vector<std::vector<ExprPtr>>& basis_components,
    const std::vector<std::string>& vars, const SamplingSpec& spec, const std::string& op_id);

std::optional<std::vector<Rational>> decompose_linear(const ExprPtr& target,
                                                      const std::vector<ExprPtr>& basis,
                                                      const std::vector<std::string>& vars,
                                                      const SamplingSpec& spec,
                                                      const std::string& op_id);

// Exact rational linear solve A c = b; nullopt when inconsistent, throws
// RankDeficientBasis when the columns are dependent.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> A,
                                                 std::vector<Rational> b);

}  // namespace kbsym
