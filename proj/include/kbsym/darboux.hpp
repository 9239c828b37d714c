#pragma once

#include <string>
#include <vector>

#include "kbsym/pde.hpp"

namespace kbsym {

struct SingularWronskian : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SeedNotSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Wronskian with respect to x of the given functions of (t, x).
ExprPtr wronskian(const std::vector<ExprPtr>& fs, const std::string& xvar = "x");

// W(f1,...,fk,u) / W(f1,...,fk); u may contain placeholder nodes.
ExprPtr darboux_transform(const std::vector<ExprPtr>& fs, const ExprPtr& u,
                          const std::string& xvar = "x");

// V - 2 (W_x / W)_x; checks that every seed solves u_t - u_xx + V u = 0.
ExprPtr transformed_potential(const ExprPtr& V, const std::vector<ExprPtr>& fs,
                              const SamplingSpec& spec, const std::string& op_id);

// Canonical heat polynomial P_k(t, x), built from (2^k / k!) G^k 1 and
// cross-checked against the explicit odd-degree formula.
ExprPtr heat_polynomial(int k);

// R_m R_{m-1} ... R_1 P_{2m-1} = 0, exact.
bool ladder_identity_check(int m);
// d/dx P_k = P_{k-1} for 1 <= k <= kmax, exact.
bool heat_polynomial_derivative_check(int kmax);

struct MuShiftResult {
    Rational mu_tilde_oracle;  // computed by the transformed-potential oracle
    Rational mu_tilde_claim;   // mu - 2 alpha
    bool agrees = false;
};

// alpha must solve alpha^2 - alpha + mu = 0 (so |x|^alpha solves the
// mu-equation); compares the oracle-transformed potential against the claim.
MuShiftResult mu_shift_check(const Rational& alpha, const Rational& mu, const SamplingSpec& spec,
                             const std::string& op_id);

}  // namespace kbsym
