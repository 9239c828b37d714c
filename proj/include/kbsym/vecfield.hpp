#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbsym/pde.hpp"

namespace kbsym {

// First-order differential operator with expression coefficients over an
// ordered coordinate list.
struct VectorField {
    std::vector<std::pair<std::string, ExprPtr>> comps;

    ExprPtr coeff(const std::string& coord) const;
    std::vector<std::string> coords() const;
    bool is_zero_field() const;
};

VectorField make_vf(std::vector<std::pair<std::string, ExprPtr>> comps);
ExprPtr vf_apply(const VectorField& Q, const ExprPtr& f);
VectorField vf_add(const VectorField& a, const VectorField& b);
VectorField vf_scale(const ExprPtr& c, const VectorField& a);
VectorField commutator(const VectorField& a, const VectorField& b);

// Second-prolongation invariance criterion for a registry equation,
// with the solved-for jet eliminated.
ExprPtr prolong2_apply(const VectorField& Q, const Equation& eq);

// is_zero of the criterion with the surviving jet coordinates treated as
// independent indeterminates.
IsZeroResult check_lie_symmetry(const VectorField& Q, const Equation& eq, SamplingSpec spec,
                                const std::string& op_id);

// Componentwise decomposition with shared exact rational coefficients.
std::optional<std::vector<Rational>> decompose_in_basis(const VectorField& Q,
                                                        const std::vector<VectorField>& basis,
                                                        const SamplingSpec& spec,
                                                        const std::string& op_id);

struct PointTransformation;  // pointtrans.hpp
VectorField pushforward_vectorfield(const PointTransformation& T, const VectorField& Q);

// Named generators of the Lie invariance algebras.
class GeneratorRegistry {
  public:
    struct Entry {
        std::string name;
        VectorField field;
        std::vector<std::string> eq_ids;  // equations it is claimed to leave invariant
        std::map<std::string, ExprPtr> eq_params;  // fixed parameter values (e.g. beta)
        std::string citation;
    };

    static const GeneratorRegistry& instance();
    const Entry& get(const std::string& name) const;
    std::vector<std::string> names() const;
    // Ordered bases of the named algebras: "gess_beta" (P^t, P^y, D^beta, I),
    // "gess_0", "gess_2", "gess_5", "gess_3", "kernel", "gsim_F", "gsim_Fp",
    // "f0" (sl2 Levi factor), "r0" (radical of gess_0).
    std::vector<VectorField> basis(const std::string& algebra_id) const;
    std::vector<std::string> basis_labels(const std::string& algebra_id) const;

  private:
    GeneratorRegistry();
    std::map<std::string, Entry> entries_;
    std::map<std::string, std::vector<std::string>> bases_;
};

}  // namespace kbsym
