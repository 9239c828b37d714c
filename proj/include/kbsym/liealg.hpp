#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kbsym/vecfield.hpp"
#include "kbsym/zerotest.hpp"

namespace kbsym {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<std::vector<Rational>>;

struct NotClosed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structure constants over exact rationals: c[i][j] is the coordinate vector
// of [e_i, e_j] in the fixed basis.
struct FiniteLieAlgebra {
    std::vector<std::string> labels;
    std::vector<std::vector<RatVec>> c;

    size_t dim() const { return labels.size(); }
    RatVec bracket_basis(size_t i, size_t j) const { return c[i][j]; }
    RatVec bracket(const RatVec& x, const RatVec& y) const;
    bool check_antisymmetry() const;
    bool check_jacobi() const;  // exact, all triples
    static RatVec unit(size_t i, size_t n);
};

FiniteLieAlgebra from_vectorfields(const std::vector<VectorField>& basis,
                                   const std::vector<std::string>& labels,
                                   const SamplingSpec& spec, const std::string& op_id);

// Exact subspace in reduced row-echelon form.
struct Subspace {
    RatMat rows;

    static Subspace span(RatMat vecs);
    static Subspace zero(size_t ambient);
    size_t dim() const { return rows.size(); }
    size_t ambient() const { return rows.empty() ? 0 : rows[0].size(); }
    bool contains(const RatVec& v) const;
    bool contains(const Subspace& s) const;
    bool equals(const Subspace& s) const;
    Subspace sum(const Subspace& o) const;
};

Subspace whole_space(size_t dim);
Subspace bracket_space(const FiniteLieAlgebra& g, const Subspace& a, const Subspace& b);
std::vector<Subspace> derived_series(const FiniteLieAlgebra& g);
std::vector<Subspace> lower_central_series(const FiniteLieAlgebra& g, const Subspace& start);
Subspace center(const FiniteLieAlgebra& g);
Subspace centralizer(const FiniteLieAlgebra& g, const Subspace& s);
bool is_ideal(const FiniteLieAlgebra& g, const Subspace& s);
bool is_subalgebra_nilpotent(const FiniteLieAlgebra& g, const Subspace& s);
// candidate is a nilpotent ideal containing every listed nilpotent ideal
bool nilradical_check(const FiniteLieAlgebra& g, const Subspace& candidate,
                      const std::vector<Subspace>& listed);

// Parameterized matrix family with admissibility constraints; entries are
// expressions in the named parameters.
struct MatrixFamily {
    std::vector<std::string> params;
    std::vector<std::string> sign_params;  // restricted to {-1, +1}
    std::vector<std::vector<ExprPtr>> entries;
    std::vector<std::vector<std::string>> nonzero;  // products that must not vanish

    size_t dim() const { return entries.size(); }
    // admissible exact sample; retries until the matrix is nonsingular
    RatMat sample(Rng& rng) const;
};

// Column action: (M v)_i = sum_j M[i][j] v[j]; automorphism means
// M [e_i, e_j] = [M e_i, M e_j] for all pairs, exactly.
bool check_automorphism(const RatMat& M, const FiniteLieAlgebra& g);
bool check_automorphism_family(const MatrixFamily& fam, const FiniteLieAlgebra& g, int samples,
                               uint64_t seed);
bool is_megaideal_under(const MatrixFamily& fam, const Subspace& sub, int samples, uint64_t seed);

RatMat ad_matrix(const FiniteLieAlgebra& g, const RatVec& elem);
RatMat mat_mul(const RatMat& a, const RatMat& b);
RatVec mat_apply(const RatMat& m, const RatVec& v);
Rational mat_det(RatMat m);
RatMat mat_identity(size_t n);

struct NonNilpotentAd : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exp(s ad(elem)): exact finite series when ad is nilpotent, otherwise throws
// NonNilpotentAd (use inner_automorphism_numeric then).
RatMat inner_automorphism(const FiniteLieAlgebra& g, const RatVec& elem, const Rational& s);
std::vector<std::vector<double>> inner_automorphism_numeric(const FiniteLieAlgebra& g,
                                                            const RatVec& elem, double s);

std::string algebra_to_json(const FiniteLieAlgebra& g);

// Appendix A data: the automorphism matrix families of the equivalence
// algebras and the megaideal lists, in the fixed bases of GeneratorRegistry
// ("gsim_F", "gsim_Fp").
MatrixFamily aut_family_gsim_F();
MatrixFamily inn_family_gsim_F();
MatrixFamily aut_family_gsim_Fp();
MatrixFamily aut_family_gess_beta(const Rational& beta);  // 4x4, basis (P^t,P^y,D^beta,I)
std::vector<std::pair<std::string, Subspace>> megaideals_gsim_F();
std::vector<std::pair<std::string, Subspace>> megaideals_gsim_Fp();

}  // namespace kbsym
