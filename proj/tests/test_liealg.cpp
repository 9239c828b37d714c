#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kbsym/liealg.hpp"

using namespace kbsym;

namespace {
FiniteLieAlgebra gsimF() {
    const auto& G = GeneratorRegistry::instance();
    SamplingSpec spec;
    return from_vectorfields(G.basis("gsim_F"), G.basis_labels("gsim_F"), spec, "la.gsimF");
}
}  // namespace

TEST_CASE("from_vectorfields detects non-closure") {
    SamplingSpec spec;
    VectorField pt = make_vf({{"t", num(1)}, {"x", num(0)}});
    VectorField xdx = make_vf({{"t", num(0)}, {"x", sym("x")}});
    // [Pt, x dx] = 0: closed
    auto ok = from_vectorfields({pt, xdx}, {"Pt", "xdx"}, spec, "closed");
    CHECK(ok.check_jacobi());
    VectorField txdx = make_vf({{"t", num(0)}, {"x", simplify(sym("t") * sym("x"))}});
    CHECK_THROWS_AS(from_vectorfields({pt, txdx}, {"Pt", "txdx"}, spec, "open"), NotClosed);
}

TEST_CASE("derived series and center of the equivalence algebra") {
    auto g = gsimF();
    auto ds = derived_series(g);
    REQUIRE(ds.size() >= 3);
    CHECK(ds[1].dim() == 4);
    CHECK(ds[2].dim() == 1);
    // g'' = <du>, the first basis direction
    RatVec du(7, Rational(0));
    du[0] = Rational(1);
    CHECK(ds[2].contains(du));
    // center of an abelian algebra is everything
    FiniteLieAlgebra ab;
    ab.labels = {"a", "b"};
    ab.c.assign(2, std::vector<RatVec>(2, RatVec(2, Rational(0))));
    CHECK(center(ab).dim() == 2);
}

TEST_CASE("megaideal stability and a non-ideal line") {
    auto fam = aut_family_gsim_F();
    for (const auto& [name, sub] : megaideals_gsim_F())
        CHECK(is_megaideal_under(fam, sub, 6, 1234 + sub.dim()));
    // a random non-characteristic line fails
    RatMat line = {{Rational(0), Rational(0), Rational(0), Rational(1), Rational(0), Rational(1),
                    Rational(0)}};
    CHECK_FALSE(is_megaideal_under(fam, Subspace::span(line), 6, 99));
}

TEST_CASE("automorphism families") {
    auto g = gsimF();
    CHECK(check_automorphism(mat_identity(7), g));
    CHECK(check_automorphism_family(aut_family_gsim_F(), g, 20, 7));
    CHECK(check_automorphism_family(inn_family_gsim_F(), g, 10, 8));
    const auto& G = GeneratorRegistry::instance();
    SamplingSpec spec;
    auto gp = from_vectorfields(G.basis("gsim_Fp"), G.basis_labels("gsim_Fp"), spec, "la.gsimFp");
    CHECK(check_automorphism_family(aut_family_gsim_Fp(), gp, 20, 9));
    for (const auto& [name, sub] : megaideals_gsim_Fp())
        CHECK(is_megaideal_under(aut_family_gsim_Fp(), sub, 6, 55));
}

TEST_CASE("inner automorphisms") {
    auto g = gsimF();
    RatVec zero(7, Rational(0));
    RatMat id = inner_automorphism(g, zero, Rational(1));
    for (size_t i = 0; i < 7; ++i)
        for (size_t j = 0; j < 7; ++j) CHECK(id[i][j] == (i == j ? Rational(1) : Rational(0)));
    RatVec du = zero;
    du[0] = Rational(1);
    RatMat e = inner_automorphism(g, du, Rational(1));
    CHECK(e[0][4] == Rational(1));  // u du picks up du
    CHECK(check_automorphism(e, g));
    // non-nilpotent direction raises
    RatVec udu = zero;
    udu[4] = Rational(1);
    CHECK_THROWS_AS(inner_automorphism(g, udu, Rational(1)), NonNilpotentAd);
    auto numiv = inner_automorphism_numeric(g, udu, 1.0);
    CHECK(numiv[0][0] == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("nilradical checks") {
    const auto& G = GeneratorRegistry::instance();
    SamplingSpec spec;
    auto n = from_vectorfields(G.basis("nsim_F"), G.basis_labels("nsim_F"), spec, "la.n");
    CHECK(nilradical_check(n, whole_space(6), {}));
    auto lcs = lower_central_series(n, whole_space(6));
    std::vector<size_t> dims;
    for (const auto& s : lcs) dims.push_back(s.dim());
    CHECK(dims == std::vector<size_t>{6, 3, 1, 0});
    // whole gsim_F is not nilpotent
    auto g = gsimF();
    CHECK_FALSE(is_subalgebra_nilpotent(g, whole_space(7)));
}

TEST_CASE("subspace arithmetic") {
    RatMat rows = {{Rational(1), Rational(2), Rational(0)}, {Rational(2), Rational(4), Rational(1)}};
    Subspace s = Subspace::span(rows);
    CHECK(s.dim() == 2);
    CHECK(s.contains(RatVec{Rational(3), Rational(6), Rational(1)}));
    CHECK_FALSE(s.contains(RatVec{Rational(0), Rational(1), Rational(0)}));
    Subspace t = Subspace::span({{Rational(0), Rational(1), Rational(0)}});
    CHECK(s.sum(t).dim() == 3);
}

TEST_CASE("algebra serialization") {
    auto g = gsimF();
    std::string j = algebra_to_json(g);
    CHECK(j.find("liealgebra-v1") != std::string::npos);
    CHECK(j.find("structure_constants") != std::string::npos);
}
