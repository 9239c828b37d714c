#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbsym/expr.hpp"
#include "kbsym/zerotest.hpp"

namespace kbsym {

// A PDE/ODE family member: residual template written in jet symbols of the
// unknown.  Jet symbols are named u, u_t, u_xx, ... for single-letter
// variables and w_1, w_12, ... (variable ordinals) otherwise.
struct Equation {
    std::string id;
    std::vector<std::string> vars;
    std::string unknown;
    ExprPtr residual;
    std::string solved_jet;  // jet symbol the equation is solved for ("" if none)
    ExprPtr solved_rhs;
    std::vector<std::string> free_params;
    std::string citation;
    SamplingSpec spec;  // default sampling away from the singular loci
};

std::string jet_name(const std::string& unknown, const std::vector<std::string>& vars,
                     const std::vector<int>& J);
// Recognizes jet symbols of `unknown` over `vars`; fills the multi-index.
bool parse_jet(const std::string& name, const std::string& unknown,
               const std::vector<std::string>& vars, std::vector<int>& J);

// Total derivative with respect to vars[i] acting on expressions in jet
// symbols (unknown and its derivatives treated as functions of vars).
ExprPtr total_derivative(const ExprPtr& e, size_t var_idx, const std::string& unknown,
                         const std::vector<std::string>& vars);

// Eliminates the solved-for jet symbol and all its derivatives.
ExprPtr eliminate_solved(ExprPtr e, const Equation& eq);

struct UnboundPlaceholder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Residual template with jet symbols replaced by symbolic derivatives of the
// candidate, then simplified.
ExprPtr residual(const Equation& eq, const ExprPtr& candidate);

// theta constrained by theta_1 = theta_22 + mu z2^-2 theta.
struct PlaceholderConstraint {
    std::string name;
    ExprPtr mu;
};

// Rewrites every placeholder derivative with first-argument index >= 1 into
// pure second-argument derivatives via the governing equation.
ExprPtr normalize_placeholders(const ExprPtr& e, const std::vector<PlaceholderConstraint>& cs);

struct ParametricSolution {
    std::string id;
    std::string eq_id;
    ExprPtr expr;
    std::vector<PlaceholderConstraint> constraints;
    std::string citation;
};

struct VerifyReport {
    bool pass = false;
    double max_resid = 0.0;
    std::string witness;
};

// Residual -> placeholder normalization -> probabilistic zero test with
// surviving placeholder derivatives as independent indeterminates.
VerifyReport verify_solution(const Equation& eq, const ParametricSolution& sol,
                             const SamplingSpec& spec, const std::string& op_id);

struct ReductionAnsatz {
    ExprPtr z1, z2;      // invariant variables as expressions in eq.vars
    ExprPtr multiplier;  // u = multiplier * w(z1, z2)
    ExprPtr claimed;     // reduced residual in jet symbols w, w_1, w_2, w_11, w_12, w_22
    std::string subalgebra;
    std::string citation;
};

// Substitutes the ansatz, extracts the residual's coefficient vector over the
// w-jet and compares it (up to a pointwise conformal factor) with the claimed
// reduced equation at sampled base points.
bool verify_reduction(const Equation& eq, const ReductionAnsatz& ansatz, const SamplingSpec& spec,
                      const std::string& op_id, double tol = 1e-9);

// Superclass machinery: u_t + B u_y = A2 u_xx + A1 u_x + A0 u + C.
struct SuperclassCoeffs {
    ExprPtr B, A2, A1, A0, C;
};
struct TransComponents {
    ExprPtr T, X, Y, U1, U0;  // functions of (t, x, y)
};

// Target coefficients expressed in source coordinates.
SuperclassCoeffs transform_coefficients(const TransComponents& tc, const SuperclassCoeffs& src);

// ODE residual check: expression route (exact derivatives) or callable route
// (4th-order central differences).
VerifyReport verify_ode_solution(const Equation& eq, const ExprPtr& candidate, double lo, double hi,
                                 double tol, const std::string& op_id);
VerifyReport verify_ode_solution_callable(const Equation& eq,
                                          const std::function<cplx(double)>& f, double lo,
                                          double hi, double tol,
                                          const std::map<std::string, cplx>& params);

// Copy of eq with parameters substituted into the residual and solved form.
Equation at_params(const Equation& eq, const std::map<std::string, ExprPtr>& params);

class EquationRegistry {
  public:
    static const EquationRegistry& instance();
    const Equation& get(const std::string& id) const;
    std::vector<std::string> ids() const;
    std::string to_json() const;  // versioned document for the CLI

  private:
    EquationRegistry();
    std::map<std::string, Equation> eqs_;
};

// Fresh heat-with-potential equation u_t - u_xx + V u = 0 over (t, x).
Equation heat_with_potential(const ExprPtr& V);

}  // namespace kbsym
