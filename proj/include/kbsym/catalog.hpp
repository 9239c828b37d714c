#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kbsym/pde.hpp"
#include "kbsym/darboux.hpp"
#include "kbsym/recursionops.hpp"

namespace kbsym {

// Concrete solution of theta_1 = theta_22 + mu z2^-2 theta, in (z1, z2).
struct ThetaInstance {
    std::string name;
    ExprPtr mu;
    ExprPtr body;  // expression in z1, z2
    // validity box for (z1, z2)
    Interval z1_box = {0.3, 2.2};
    Interval z2_box = {0.3, 2.2};
};

std::vector<ThetaInstance> theta0_instances();

struct ResonantLadder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stationary powers and z1-polynomial ladder instances for rational mu;
// oscillatory real/imaginary parts when mu > 1/4.
std::vector<ThetaInstance> theta_mu_instances(const Rational& mu);

struct SolutionFamily {
    std::string id;
    std::string eq_id;  // "Fp" or "Fp_noabs"
    std::optional<Rational> beta;         // fixed exponent
    std::vector<Rational> beta_samples;   // general families
    ExprPtr expr;                         // template; may contain theta placeholders
    std::vector<PlaceholderConstraint> constraints;  // mu may depend on beta
    std::map<std::string, std::vector<Rational>> param_samples;
    SamplingSpec spec;
    std::string citation;
    bool whittaker = false;  // relaxed tolerance path
    // ladder families: expr is the seed, iterated by op for k = 1..ladder_k
    int ladder_k = 0;
    TotalDiffOperator ladder_op;
    std::string dual_id;  // J-counterpart family, when listed
};

struct FamilyCheck {
    std::string family_id;
    std::string detail;  // parameter choice
    bool pass = false;
    double max_resid = 0.0;
    std::string witness;
};

class Catalog {
  public:
    static const Catalog& instance();

    const SolutionFamily& get(const std::string& id) const;
    std::vector<std::string> ids() const;
    // filter: families whose beta (or sample list) matches the value
    std::vector<const SolutionFamily*> list_families(const std::optional<Rational>& beta) const;

    std::string to_json() const;

  private:
    Catalog();
    std::vector<SolutionFamily> families_;
    std::map<std::string, size_t> index_;
};

// Every (beta sample x parameter combination): the indeterminate-placeholder
// check plus at least two concrete theta instances.  `corrupt_id` flips the
// sign of one term of that family (fault injection for the negative control).
std::vector<FamilyCheck> verify_family(const SolutionFamily& fam, const SamplingSpec& base,
                                       uint64_t seed, bool corrupt = false);

// Instantiates the family at fixed parameters with a concrete theta instance;
// used by the CLI sample/generate paths.
ExprPtr instantiate_family(const SolutionFamily& fam, const std::map<std::string, Rational>& params,
                           int instance_index);

// Whittaker expression helpers (a, b constants; z any expression).
ExprPtr whittakerM_expr(const ExprPtr& a, const ExprPtr& b, const ExprPtr& z);
ExprPtr whittakerW_expr(const ExprPtr& a, const ExprPtr& b, const ExprPtr& z);

// Equation instance for a family at a concrete beta.
Equation family_equation(const SolutionFamily& fam, const Rational& beta);

}  // namespace kbsym
