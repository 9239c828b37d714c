#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbsym/pde.hpp"
#include "kbsym/vecfield.hpp"

namespace kbsym {

struct DomainMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invertible coordinate + arbitrary-element map.  Both directions are stored
// explicitly: fwd[i] is the i-th target coordinate as a function of the
// source coordinates, inv[i] the i-th source coordinate as a function of the
// target coordinates (same symbol names on both sides).
struct PointTransformation {
    std::string id;
    std::string citation;
    std::vector<std::string> coords;
    std::vector<ExprPtr> fwd;
    std::vector<ExprPtr> inv;
    std::string src_eq, tgt_eq;
    std::map<std::string, ExprPtr> src_params, tgt_params;  // e.g. beta -> 5 - beta
    std::string domain;                                     // "", "x>0", "x<0"

    ExprPtr fwd_of(const std::string& coord) const;
    ExprPtr inv_of(const std::string& coord) const;
};

// Builds a transformation whose u-component is affine, u -> U1*u + U0, from
// the variable part and its hand-derived inverse; the u-inverse is assembled
// mechanically.
PointTransformation make_affine_transformation(
    const std::string& id, const std::vector<std::string>& vars,
    const std::vector<ExprPtr>& var_fwd, const std::vector<ExprPtr>& var_inv, const ExprPtr& U1,
    const ExprPtr& U0);

// Apply t1 first, then t2.
PointTransformation compose(const PointTransformation& t1, const PointTransformation& t2);
PointTransformation inverse_of(const PointTransformation& t);

IsZeroResult check_round_trip(const PointTransformation& t, const SamplingSpec& spec,
                              const std::string& op_id);

// New solution from a seed solution of the source equation.
ExprPtr pushforward_solution(const PointTransformation& t, const ExprPtr& h);

// Pushforward of a vector field on the variable coordinates.
VectorField pushforward_vf(const PointTransformation& t, const VectorField& Q);

// (a) coefficient route via the superclass formulas and (b) solution route
// over a battery of source solutions.
bool verify_maps_equation(const PointTransformation& t, const Equation& src, const Equation& tgt,
                          const std::vector<ParametricSolution>& battery, const SamplingSpec& spec,
                          const std::string& op_id);

struct ClassifiedForm {
    bool recognized = false;
    std::string family;  // "groupA" (4.1) or "groupB" (4.2)
    std::map<std::string, Rational> params;
};

// Pattern-match against the two equivalence-group forms of the gauged class,
// on the x > 0 chart by default.
ClassifiedForm classify_form(const PointTransformation& t, int orthant = +1);

// ---- registry constructors (parameters are expressions; rational inputs) ----
PointTransformation trans_identity();
PointTransformation trans_S(const ExprPtr& c1);                 // shift of the ungauged class
PointTransformation trans_equivF(int eps, const std::vector<ExprPtr>& c);  // Thm equivalence group of F
PointTransformation trans_formA(const ExprPtr& c0, int eps, const std::vector<ExprPtr>& c);
PointTransformation trans_formB(int epsp, const std::vector<ExprPtr>& c, int orthant);
PointTransformation trans_Jprime(int orthant);
PointTransformation trans_Jsimple();  // no-absolute-value involution
PointTransformation trans_Iu();
PointTransformation trans_Is();
PointTransformation trans_G0(const ExprPtr& ma, const ExprPtr& mb, const ExprPtr& mc,
                             const ExprPtr& md, const std::vector<ExprPtr>& lambda,
                             const ExprPtr& sigma, const ExprPtr& f);
PointTransformation trans_G5(const ExprPtr& ma, const ExprPtr& mb, const ExprPtr& mc,
                             const ExprPtr& md, const std::vector<ExprPtr>& lambda,
                             const ExprPtr& sigma);
PointTransformation trans_G2(const ExprPtr& lambda, const ExprPtr& ma, const ExprPtr& mb,
                             const ExprPtr& mc, const ExprPtr& md, const ExprPtr& sigma,
                             const ExprPtr& f);
PointTransformation trans_G3(const ExprPtr& lambda, const ExprPtr& ma, const ExprPtr& mb,
                             const ExprPtr& mc, const ExprPtr& md, const ExprPtr& sigma);
PointTransformation trans_Gbeta(const ExprPtr& alpha, const ExprPtr& l0, const ExprPtr& l1,
                                const ExprPtr& sigma, const ExprPtr& beta, const ExprPtr& f);
PointTransformation trans_G52(const ExprPtr& alpha, const ExprPtr& l0, const ExprPtr& l1,
                              const ExprPtr& sigma, int orthant);
// (1+1)-dimensional changes of variables of the reduction analysis
PointTransformation trans_red_canonical(const Rational& beta);       // 1.3 -> canonical form
PointTransformation trans_beta1_tan();   // tan map, mu = -3/4 potential
PointTransformation trans_beta1_exp();   // exp map, mu = -3/4 potential

}  // namespace kbsym
