#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kbsym/catalog.hpp"
#include "kbsym/pde.hpp"
#include "kbsym/special.hpp"

using namespace kbsym;

namespace {
ExprPtr T() { return sym("t"); }
ExprPtr X() { return sym("x"); }
ExprPtr Y() { return sym("y"); }
SamplingSpec box3() {
    SamplingSpec s;
    s.box("t", 0.3, 2.0).box("x", 0.35, 2.2).box("y", 0.3, 2.0);
    return s;
}
}  // namespace

TEST_CASE("residuals of kernel and non-solutions") {
    const auto& reg = EquationRegistry::instance();
    CHECK(is_zero_expr(residual(reg.get("Fp"), simplify(T() * X() - Y()))));
    Equation Fp2 = at_params(reg.get("Fp"), {{"beta", num(2)}});
    CHECK(is_zero_expr(residual(Fp2, X())));
    ExprPtr r = residual(Fp2, pw(X(), 2));
    // u = x^2: residual is -2x^2
    CHECK(identical(simplify(r), simplify(num(-2) * pw(X(), 2))));
}

TEST_CASE("placeholder normalization matches the two-step rewrite") {
    PlaceholderConstraint c{"theta", sym("mu")};
    ExprPtr z1 = sym("z1"), z2 = sym("z2"), mu = sym("mu");
    ExprPtr got = normalize_placeholders(func("theta", {2, 0}, {z1, z2}), {c});
    ExprPtr expect = expand(simplify(
        func("theta", {0, 4}, {z1, z2}) +
        num(2) * mu * pw(z2, -2) * func("theta", {0, 2}, {z1, z2}) -
        num(4) * mu * pw(z2, -3) * func("theta", {0, 1}, {z1, z2}) +
        (num(6) * mu + pw(mu, 2)) * pw(z2, -4) * func("theta", {0, 0}, {z1, z2})));
    CHECK(is_zero_expr(simplify(got - expect)));
    // untouched second-argument derivatives
    ExprPtr th03 = func("theta", {0, 3}, {z1, z2});
    CHECK(identical(normalize_placeholders(th03, {c}), th03));
}

TEST_CASE("heat kernel residual is exactly zero") {
    ExprPtr hk = simplify(pw(eabs(sym("z1")), num(-1, 2)) *
                          eexp(simplify(num(-1, 4) * pw(sym("z2"), 2) * pw(sym("z1"), -1))));
    const Equation& heat = EquationRegistry::instance().get("heat");
    CHECK(is_zero_expr(residual(heat, hk)));
}

TEST_CASE("verify_solution on the main family and a negative control") {
    const auto& reg = EquationRegistry::instance();
    for (Rational b : {Rational(-1), Rational(1, 2), Rational(4), Rational(7)}) {
        Equation eq = at_params(reg.get("Fp"), {{"beta", num(b)}});
        Rational mu = b * (b - Rational(4)) / (Rational(4) * (b - Rational(2)) * (b - Rational(2)));
        ExprPtr fam = simplify(
            pw(eabs(X()), num(b / Rational(4))) *
            func("theta", {0, 0},
                 {T(), simplify(num(2) * pw(num(b) - num(2), -1) * X() *
                                pw(eabs(X()), num(-b / Rational(2))))}));
        ParametricSolution sol{"gen", "Fp", fam, {{"theta", num(mu)}}, ""};
        CHECK(verify_solution(eq, sol, box3(), "genmain" + b.str()).pass);
    }
    Equation eq = at_params(reg.get("Fp"), {{"beta", num(7)}});
    ParametricSolution bad{"bad", "Fp", simplify(X() * (T() * X() - Y())), {}, ""};
    auto rep = verify_solution(eq, bad, box3(), "neg");
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("verify_solution drift family") {
    const auto& reg = EquationRegistry::instance();
    Equation Fp0 = at_params(reg.get("Fp"), {{"beta", num(0)}});
    ExprPtr u = func("theta", {0, 0}, {simplify(num(1, 3) * pw(T(), 3)), simplify(Y() - T() * X())});
    ParametricSolution sol{"drift", "Fp", u, {{"theta", num(0)}}, ""};
    CHECK(verify_solution(Fp0, sol, box3(), "drift").pass);
}

TEST_CASE("reductions 1.1, 1.2, 1.3 at the stated exponents") {
    const auto& reg = EquationRegistry::instance();
    for (Rational b : {Rational(-1), Rational(1, 2), Rational(1), Rational(4), Rational(7)}) {
        Equation eq = at_params(reg.get("Fp"), {{"beta", num(b)}});
        ExprPtr be = num(b);
        // case 1.3
        {
            ReductionAnsatz a;
            a.z1 = T();
            a.z2 = X();
            a.multiplier = eexp(simplify(sym("delta") * Y()));
            a.claimed = substitute(reg.get("red13").residual, {{"beta", be}});
            SamplingSpec s = box3();
            s.box("delta", -1.2, 1.2);
            CHECK(verify_reduction(eq, a, s, "t13." + b.str()));
        }
        // case 1.2
        {
            ReductionAnsatz a;
            a.z1 = simplify(Y() - T());
            a.z2 = X();
            a.multiplier = eexp(simplify(sym("kappa") * T()));
            a.claimed = substitute(reg.get("red12").residual, {{"beta", be}, {"eps", num(1)}});
            SamplingSpec s = box3();
            s.box("x", 1.4, 2.4).box("kappa", -1.5, 1.5);
            CHECK(verify_reduction(eq, a, s, "t12." + b.str()));
        }
        // case 1.1 on t > 0
        {
            ExprPtr e1 = simplify((be - num(3)) * pw(be - num(2), -1));
            ReductionAnsatz a;
            a.z1 = simplify(Y() * pw(eabs(T()), simplify(num(-1) * e1)));
            a.z2 = simplify(X() * pw(eabs(T()), simplify(pw(be - num(2), -1))));
            a.multiplier = pw(eabs(T()), simplify(sym("kappa") * e1));
            a.claimed = substitute(reg.get("red11").residual, {{"beta", be}, {"eps", num(1)}});
            SamplingSpec s = box3();
            s.box("kappa", -1.5, 1.5);
            CHECK(verify_reduction(eq, a, s, "t11." + b.str()));
        }
    }
}

TEST_CASE("a wrong reduced equation is rejected") {
    const auto& reg = EquationRegistry::instance();
    Equation eq = at_params(reg.get("Fp"), {{"beta", num(1, 2)}});
    ReductionAnsatz a;
    a.z1 = T();
    a.z2 = X();
    a.multiplier = eexp(simplify(sym("delta") * Y()));
    // flipped sign on the potential term
    a.claimed = substitute(
        simplify(sym("w_1") - pw(eabs(sym("z2")), sym("beta")) * sym("w_22") -
                 sym("delta") * sym("z2") * sym("w")),
        {{"beta", num(1, 2)}});
    SamplingSpec s = box3();
    s.box("delta", 0.4, 1.2);
    CHECK_FALSE(verify_reduction(eq, a, s, "t13bad"));
}

TEST_CASE("coefficient transform: identity and the shift") {
    SamplingSpec s = box3();
    s.box("alpha", -0.8, 0.8).box("beta", -1.0, 2.4);
    SuperclassCoeffs src{X(), pw(eabs(simplify(X() - sym("alpha"))), sym("beta")), num(0), num(0),
                         num(0)};
    // identity transformation keeps the coefficients
    TransComponents id{T(), X(), Y(), num(1), num(0)};
    SuperclassCoeffs out = transform_coefficients(id, src);
    CHECK(is_zero(simplify(out.B - src.B), s, "cid.B").zero);
    CHECK(is_zero(simplify(out.A2 - src.A2), s, "cid.A2").zero);
    CHECK(is_zero_expr(simplify(out.C)));
}

TEST_CASE("kummer series oracle values") {
    CHECK(std::abs(kummer_M(cplx(0.7, 0), cplx(1.3, 0), cplx(0, 0)) - cplx(1.0)) < 1e-14);
    // M(1,1,z) = e^z
    CHECK(std::abs(kummer_M(cplx(1, 0), cplx(1, 0), cplx(1, 0)) - std::exp(cplx(1.0))) < 1e-12);
    CHECK_THROWS_AS(kummer_M(cplx(1, 0), cplx(-2, 0), cplx(1, 0)), PoleParameter);
    CHECK_THROWS_AS(kummer_M(cplx(1, 0), cplx(1, 0), cplx(40, 0)), NoConvergence);
}

TEST_CASE("whittaker numeric checks") {
    // ODE residual through finite differences
    const auto& reg = EquationRegistry::instance();
    cplx a(0.0625, 0), b(0.25, 0);
    auto fM = [&](double x) { return whittaker(WhittakerKind::M, a, b, cplx(x, 0)); };
    auto rep = verify_ode_solution_callable(reg.get("whittaker"), fM, 0.5, 2.0, 1e-7,
                                            {{"a", a}, {"b", b}});
    CHECK(rep.pass);
    auto fW = [&](double x) { return whittaker(WhittakerKind::W, a, b, cplx(x, 0)); };
    auto repW = verify_ode_solution_callable(reg.get("whittaker"), fW, 0.5, 2.0, 1e-7,
                                             {{"a", a}, {"b", b}});
    CHECK(repW.pass);
    // W decays relative to M
    double ratio10 = std::abs(fW(10.0)) / std::abs(fM(10.0));
    double ratio20 = std::abs(fW(20.0)) / std::abs(fM(20.0));
    CHECK(ratio20 < ratio10);
    CHECK_THROWS_AS(whittaker(WhittakerKind::W, a, cplx(0.5, 0), cplx(1, 0)), PoleParameter);
    CHECK_THROWS_AS(whittaker(WhittakerKind::M, a, b, cplx(-1, 0)), BranchCut);
}

TEST_CASE("leading Whittaker behaviour solves the equation exactly") {
    // a = b + 1/2 collapses the series to e^{-z/2} z^{b+1/2}
    ExprPtr b = num(1, 4);
    ExprPtr a = simplify(b + num(1, 2));
    ExprPtr z = sym("z");
    ExprPtr phi = whittakerM_expr(a, b, z);
    Equation weq = at_params(EquationRegistry::instance().get("whittaker"), {{"a", a}, {"b", b}});
    auto rep = verify_ode_solution(weq, phi, 0.5, 2.5, 1e-9, "lead");
    CHECK(rep.pass);
    // phi = z is not a solution
    auto bad = verify_ode_solution(weq, z, 0.5, 2.5, 1e-7, "leadbad");
    CHECK_FALSE(bad.pass);
}

TEST_CASE("equation registry serializes") {
    std::string j = EquationRegistry::instance().to_json();
    CHECK(j.find("equations-v1") != std::string::npos);
    CHECK(j.find("Fp") != std::string::npos);
}
