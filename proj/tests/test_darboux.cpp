#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kbsym/darboux.hpp"
#include "kbsym/recursionops.hpp"

using namespace kbsym;

namespace {
SamplingSpec spec2() {
    SamplingSpec s;
    s.box("t", 0.3, 2.0).box("x", 0.35, 2.2);
    return s;
}
}  // namespace

TEST_CASE("wronskians") {
    ExprPtr x = sym("x");
    CHECK(identical(wronskian({x}), x));
    CHECK(identical(wronskian({num(1), x, pw(x, 2)}), num(2)));
    ExprPtr w = wronskian({heat_polynomial(1), heat_polynomial(3)});
    CHECK(is_zero_expr(simplify(w - simplify(num(1, 3) * pw(x, 3)))));
}

TEST_CASE("heat polynomials") {
    CHECK(identical(heat_polynomial(0), num(1)));
    CHECK(identical(heat_polynomial(1), sym("x")));
    ExprPtr p3 = heat_polynomial(3);
    ExprPtr expect = expand(simplify(num(1, 6) * pw(sym("x"), 3) + sym("t") * sym("x")));
    CHECK(is_zero_expr(simplify(p3 - expect)));
    CHECK(heat_polynomial_derivative_check(9));
}

TEST_CASE("darboux transform forms") {
    ExprPtr x = sym("x");
    ExprPtr u = func("u", {0, 0}, {sym("t"), x});
    // DT[x] u = u_x - u/x
    ExprPtr got = darboux_transform({x}, u);
    ExprPtr expect = simplify(func("u", {0, 1}, {sym("t"), x}) - pw(x, -1) * u);
    CHECK(is_zero(simplify(got - expect), spec2(), "t.dt1").zero);
    // DT[1] u = u_x
    CHECK(is_zero(simplify(darboux_transform({num(1)}, u) - func("u", {0, 1}, {sym("t"), x})),
                  spec2(), "t.dtconst")
              .zero);
    CHECK_THROWS_AS(darboux_transform({num(0)}, u), SingularWronskian);
}

TEST_CASE("transformed potentials and seed validation") {
    SamplingSpec s = spec2();
    CHECK(is_zero_expr(simplify(transformed_potential(num(0), {num(1)}, s, "t.tp0"))));
    ExprPtr vt = transformed_potential(num(0), {sym("x")}, s, "t.tp1");
    CHECK(is_zero_expr(simplify(vt - simplify(num(2) * pw(sym("x"), -2)))));
    // x^2 does not solve the potential-free equation
    CHECK_THROWS_AS(transformed_potential(num(0), {pw(sym("x"), 2)}, s, "t.tpbad"),
                    SeedNotSolution);
}

TEST_CASE("ladder identity") {
    for (int m = 1; m <= 5; ++m) CHECK(ladder_identity_check(m));
}

TEST_CASE("mu shifts from the oracle") {
    SamplingSpec s = spec2();
    auto r0 = mu_shift_check(Rational(0), Rational(0), s, "t.ms0");
    CHECK(r0.agrees);
    CHECK(r0.mu_tilde_oracle == Rational(0));
    auto r1 = mu_shift_check(Rational(1), Rational(0), s, "t.ms1");
    CHECK(r1.agrees);
    CHECK(r1.mu_tilde_oracle == Rational(-2));
    auto r2 = mu_shift_check(Rational(1, 6), Rational(5, 36), s, "t.ms2");
    CHECK(r2.agrees);
    CHECK(r2.mu_tilde_oracle == Rational(-7, 36));
    CHECK_THROWS(mu_shift_check(Rational(1, 2), Rational(5, 36), s, "t.msbad"));
}

TEST_CASE("seventh-section bridge family at n = 1") {
    // e^{mu_1 t} |x|^{3/4} (d_x - 1/(2x)) theta0(sgn(x) y, 2 sqrt|x|) on the beta = 2 equation
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    ExprPtr seed = func("theta", {0, 0},
                        {simplify(esgn(x) * y), simplify(num(2) * pw(eabs(x), num(1, 2)))});
    ExprPtr g = simplify(differentiate(seed, "x") - num(1, 2) * pw(x, -1) * seed);
    Rational mu1 = Rational(1) * Rational(2) / Rational(4) - Rational(3, 16);
    ExprPtr u = simplify(eexp(simplify(num(mu1) * t)) * pw(eabs(x), num(3, 4)) * g);
    Equation eq = at_params(EquationRegistry::instance().get("Fp"), {{"beta", num(2)}});
    SamplingSpec s = spec2();
    s.box("y", 0.3, 2.0);
    ParametricSolution sol{"bridge1", "Fp", u, {{"theta", num(0)}}, ""};
    CHECK(verify_solution(eq, sol, s, "t.bridge").pass);
}
