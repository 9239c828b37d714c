#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kbsym/catalog.hpp"
#include "kbsym/recursionops.hpp"

using namespace kbsym;

namespace {
SamplingSpec spec3() {
    SamplingSpec s;
    s.box("t", 0.3, 2.0).box("x", 0.35, 2.2).box("y", 0.3, 2.0).box("beta", -1.0, 2.4);
    return s;
}
}  // namespace

TEST_CASE("operator application") {
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    ExprPtr txy = simplify(t * x - y);
    CHECK(identical(op_apply(rop_Pt(), txy), x));
    CHECK(identical(op_apply(rop_Pt_hat(num(0)), txy), x));
    CHECK(is_zero_expr(op_apply(rop_R(1), x)));
    // G^3 1 scaled by 2^3/3! gives the cubic heat polynomial
    ExprPtr g3 = op_apply(rop_G(), op_apply(rop_G(), op_apply(rop_G(), num(1))));
    ExprPtr p3 = expand(simplify(mul({num(8, 6), g3})));
    CHECK(is_zero_expr(simplify(p3 - heat_polynomial(3))));
}

TEST_CASE("composition expands by Leibniz") {
    // Dx . (x id) = x Dx + id
    auto dx = TotalDiffOperator::monomial(0, 1, 0, num(1));
    auto xid = TotalDiffOperator::monomial(0, 0, 0, sym("x"));
    auto comp = op_compose(dx, xid);
    TotalDiffOperator expect;
    expect.add_term(0, 1, 0, sym("x"));
    expect.add_term(0, 0, 0, num(1));
    CHECK(check_operator_identity(comp, expect, spec3(), "t.leibniz"));
    CHECK(check_operator_identity(op_commutator(dx, rop_P0()), TotalDiffOperator{}, spec3(),
                                  "t.dxdy"));
}

TEST_CASE("the stated commutation relations") {
    SamplingSpec s = spec3();
    CHECK(check_operator_identity(op_commutator(rop_P1(), rop_P2()), TotalDiffOperator::identity(),
                                  s, "t.c12"));
    CHECK(check_operator_identity(op_commutator(rop_P0(), rop_P3()),
                                  op_scale(num(-3), TotalDiffOperator::identity()), s, "t.c03"));
    ExprPtr b = num(1, 2);
    CHECK(check_operator_identity(op_commutator(rop_Py(), rop_Dbeta_hat(b)),
                                  op_scale(simplify(num(3) - b), rop_Py()), s, "t.pyd"));
}

TEST_CASE("normal forms") {
    auto sys = system_general_beta(sym("beta"));
    SamplingSpec s = spec3();
    sys.check_confluence(s, "t.conf");
    // Pt_hat Dbeta_hat rewrites to the ordered word plus the weight term
    auto nf = normal_form(NCPolynomial::word({2, 0}, num(1)), sys);
    REQUIRE(nf.coeffs.size() == 2);
    CHECK(nf.coeffs.count({0, 2}) == 1);
    CHECK(nf.coeffs.count({2}) == 1);
    CHECK(identical(nf.coeffs.at({2}), simplify(num(2) - sym("beta"))));
    // already-normal words stay put
    auto stay = normal_form(NCPolynomial::word({0, 1, 2}, num(1)), sys);
    CHECK(stay.coeffs.size() == 1);
    CHECK(stay.coeffs.count({0, 1, 2}) == 1);
    auto sys0 = system_beta0();
    sys0.check_confluence(s, "t.conf0");
}

TEST_CASE("beta0 monomial basis resolves the overlap both ways") {
    auto sys0 = system_beta0();
    // P0 P1 P3 type word with two rewrites available
    auto n1 = normal_form(NCPolynomial::word({3, 2, 1, 0}, num(1)), sys0);
    // all letters commute except the two bracket pairs; result is ordered
    for (const auto& [w, c] : n1.coeffs) {
        for (size_t i = 0; i + 1 < w.size(); ++i) CHECK(w[i] <= w[i + 1]);
    }
}

TEST_CASE("ladder with the identity operator repeats the seed") {
    const auto& reg = EquationRegistry::instance();
    Equation Fp0 = at_params(reg.get("Fp"), {{"beta", num(0)}});
    ParametricSolution seed{"s", "Fp", func("theta", {0, 0}, {sym("t"), sym("x")}),
                            {{"theta", num(0)}}, ""};
    auto steps = ladder(TotalDiffOperator::identity(), seed, 2, Fp0, spec3(), "t.idlad");
    REQUIRE(steps.size() == 2);
    CHECK(identical(steps[0].expr, seed.expr));
    CHECK(identical(steps[1].expr, seed.expr));
}

TEST_CASE("failing iterate aborts with diagnostics") {
    const auto& reg = EquationRegistry::instance();
    Equation Fp0 = at_params(reg.get("Fp"), {{"beta", num(0)}});
    // t Dx is not a Lie-symmetry operator of the equation
    TotalDiffOperator bad = TotalDiffOperator::monomial(0, 1, 0, sym("t"));
    ParametricSolution seed{"s", "Fp", func("theta", {0, 0}, {sym("t"), sym("x")}),
                            {{"theta", num(0)}}, ""};
    CHECK_THROWS_AS(ladder(bad, seed, 1, Fp0, spec3(), "t.badlad"), VerificationFailed);
}

TEST_CASE("P0 on a y-independent seed flags the trivial zero") {
    ExprPtr u = func("theta", {0, 0}, {sym("t"), sym("x")});
    CHECK(is_zero_expr(op_apply(rop_P0(), u)));
}
