#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbsym/expr.hpp"

namespace kbsym {

using cplx = std::complex<double>;

struct EvalError : std::runtime_error {
    enum class Code { MissingBinding, SingularPoint, NotReal };
    Code code;
    EvalError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// A concrete placeholder instance: body in formal argument variables.
struct PlaceholderInstance {
    ExprPtr body;
    std::vector<std::string> formals;
    // derivative cache keyed by multi-index
    mutable std::map<std::vector<int>, ExprPtr> dcache;
    const ExprPtr& derivative(const std::vector<int>& idx) const;
};

struct EvaluationContext {
    std::map<std::string, cplx> symbols;
    // indeterminate values keyed by "name[i,j]"
    std::map<std::string, cplx> placeholder_values;
    std::map<std::string, PlaceholderInstance> placeholder_instances;
    bool real_mode = false;  // rejects ln of nonpositive reals, complex residues

    void set(const std::string& name, cplx v) { symbols[name] = v; }
};

struct EvalResult {
    cplx value;
    double scale;  // magnitude of the largest subterm encountered
};

cplx evaluate(const ExprPtr& e, const EvaluationContext& ctx);
EvalResult evaluate_scaled(const ExprPtr& e, const EvaluationContext& ctx);

struct NotExact : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact rational evaluation; throws NotExact on transcendental nodes and
// EvalError on division by zero / missing bindings.
Rational evaluate_exact(const ExprPtr& e, const std::map<std::string, Rational>& symbols);

}  // namespace kbsym
