#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kbsym/pde.hpp"
#include "kbsym/pointtrans.hpp"

namespace kbsym {

// Polynomial in commuting total-derivative symbols D_t, D_x, D_y with
// expression coefficients in (t, x, y).
struct TotalDiffOperator {
    std::map<std::array<int, 3>, ExprPtr> terms;

    static TotalDiffOperator identity();
    static TotalDiffOperator monomial(int a, int b, int c, ExprPtr coeff);
    TotalDiffOperator& add_term(int a, int b, int c, ExprPtr coeff);
    bool is_zero_op() const;
    std::string str() const;
};

TotalDiffOperator op_add(const TotalDiffOperator& a, const TotalDiffOperator& b);
TotalDiffOperator op_scale(const ExprPtr& s, const TotalDiffOperator& a);
TotalDiffOperator op_sub(const TotalDiffOperator& a, const TotalDiffOperator& b);
// Leibniz-expanded composition: a acts after b, (a.b)f = a(b(f)).
TotalDiffOperator op_compose(const TotalDiffOperator& a, const TotalDiffOperator& b);
TotalDiffOperator op_commutator(const TotalDiffOperator& a, const TotalDiffOperator& b);

ExprPtr op_apply(const TotalDiffOperator& op, const ExprPtr& e);

// Coefficientwise zero test, plus action agreement on a few random
// polynomial test functions.
bool check_operator_identity(const TotalDiffOperator& lhs, const TotalDiffOperator& rhs,
                             const SamplingSpec& spec, const std::string& op_id);

// (op1 - op2) annihilates the battery of solutions of eq.
bool on_solution_equiv(const TotalDiffOperator& op1, const TotalDiffOperator& op2,
                       const Equation& eq, const std::vector<ParametricSolution>& battery,
                       const SamplingSpec& spec, const std::string& op_id);

// ---- named operators ----
TotalDiffOperator rop_Pt();
TotalDiffOperator rop_Py();
TotalDiffOperator rop_Dbeta(const ExprPtr& beta);      // (2-b)t D_t + x D_x + (3-b)y D_y
TotalDiffOperator rop_Pt_hat(const ExprPtr& beta);     // -x D_y + |x|^b D_x^2
TotalDiffOperator rop_Dbeta_hat(const ExprPtr& beta);  // (2-b)t Pt_hat + x D_x + (3-b)y D_y
TotalDiffOperator rop_D1_hat();   // x(t D_x + 1) D_x + (2y - tx) D_y
TotalDiffOperator rop_D4_hat();   // -2t x^4 D_x^2 + x D_x + (2tx - y) D_y
TotalDiffOperator rop_Dm1_hat();  // 3t x^-1 D_x^2 + x D_x + (4y - 3tx) D_y
TotalDiffOperator rop_D6_hat();   // -4t x^6 D_x^2 + x D_x + (4tx - 3y) D_y
// beta = 0 family
TotalDiffOperator rop_P0();
TotalDiffOperator rop_P1();
TotalDiffOperator rop_P2();
TotalDiffOperator rop_P3();
TotalDiffOperator rop_D0();
TotalDiffOperator rop_K0();
// beta = 2 Lie-symmetry operator
TotalDiffOperator rop_K2();
// Darboux building blocks on (t, x)
TotalDiffOperator rop_G();             // t D_x + x/2
TotalDiffOperator rop_R(long long l);  // D_x - l/x

// ---- noncommutative words over a fixed alphabet ----
struct NCPolynomial {
    // word (letter indices) -> coefficient
    std::map<std::vector<int>, ExprPtr> coeffs;

    static NCPolynomial word(std::vector<int> w, ExprPtr c);
    bool is_zero_poly() const;
    NCPolynomial& prune();
};

NCPolynomial nc_add(const NCPolynomial& a, const NCPolynomial& b);
NCPolynomial nc_scale(const ExprPtr& s, const NCPolynomial& a);
NCPolynomial nc_mul(const NCPolynomial& a, const NCPolynomial& b);
bool nc_equal(const NCPolynomial& a, const NCPolynomial& b, const SamplingSpec& spec,
              const std::string& op_id);

struct NonConfluent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rewrite system with two-letter left-hand sides: for hi > lo, the word
// (hi lo) rewrites to (lo hi) + bracket-terms.  Letters are ordered by index,
// extended degree-lexicographically to words.
struct ReductionSystem {
    std::vector<std::string> alphabet;
    std::map<std::pair<int, int>, NCPolynomial> rules;  // key (hi, lo), hi > lo

    // resolves every overlap ambiguity (c b a) both ways; throws NonConfluent
    void check_confluence(const SamplingSpec& spec, const std::string& op_id) const;
};

NCPolynomial normal_form(NCPolynomial p, const ReductionSystem& sys);

// The general-beta system on (Dbeta_hat < Py < Pt_hat).
ReductionSystem system_general_beta(const ExprPtr& beta);
// The beta = 0 system on (P3 < P2 < P1 < P0) with [P1,P2]=1, [P0,P3]=-3.
ReductionSystem system_beta0();

// Word action through a letter -> operator table.
ExprPtr apply_word(const std::vector<int>& word, const std::vector<TotalDiffOperator>& table,
                   const ExprPtr& e);
ExprPtr apply_ncpoly(const NCPolynomial& p, const std::vector<TotalDiffOperator>& table,
                     const ExprPtr& e);

struct LadderStep {
    ExprPtr expr;
    VerifyReport report;
};

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// k iterates of op on a seed solution, each verified on eq.
std::vector<LadderStep> ladder(const TotalDiffOperator& op, const ParametricSolution& seed, int k,
                               const Equation& eq, const SamplingSpec& spec,
                               const std::string& op_id);

}  // namespace kbsym
