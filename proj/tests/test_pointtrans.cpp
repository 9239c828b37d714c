#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kbsym/catalog.hpp"
#include "kbsym/pointtrans.hpp"

using namespace kbsym;

namespace {
SamplingSpec spec3() {
    SamplingSpec s;
    s.box("t", 0.3, 1.6).box("x", 0.4, 1.8).box("y", 0.3, 1.6).box("beta", -1.0, 2.4);
    return s;
}
}  // namespace

TEST_CASE("shift composition law") {
    auto a = trans_S(num(1, 3));
    auto b = trans_S(num(1, 4));
    auto ab = compose(a, b);
    auto expect = trans_S(num(7, 12));
    SamplingSpec s = spec3();
    s.box("alpha", -0.8, 0.8);
    for (const auto& c : ab.coords) {
        CHECK(is_zero(simplify(ab.fwd_of(c) - expect.fwd_of(c)), s, "ss" + c).zero);
    }
}

TEST_CASE("involutions and round trips") {
    SamplingSpec s = spec3();
    for (auto t : {trans_Jprime(+1), trans_Jprime(-1), trans_Jsimple(), trans_Iu(), trans_Is()})
        CHECK(check_round_trip(t, s, "rt." + t.id).zero);
    // J' is an involution
    auto cf = classify_form(compose(trans_Jprime(+1), trans_Jprime(+1)), +1);
    CHECK(cf.recognized);
    CHECK(cf.family == "groupA");
    CHECK(cf.params["c2"] == Rational(1));
}

TEST_CASE("classify recognizes the swap family") {
    auto cf = classify_form(compose(trans_Jprime(+1), trans_Is()), +1);
    CHECK(cf.recognized);
    CHECK(cf.family == "groupB");
    // an unknown quadratic map is not recognized
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    PointTransformation q = make_affine_transformation(
        "quad", {"t", "x", "y"}, {t, simplify(x + pw(y, 2)), y}, {t, simplify(x - pw(y, 2)), y},
        num(1), num(0));
    q.coords.insert(q.coords.begin() + 3, "beta");
    q.fwd.insert(q.fwd.begin() + 3, sym("beta"));
    q.inv.insert(q.inv.begin() + 3, sym("beta"));
    CHECK_FALSE(classify_form(q, +1).recognized);
}

TEST_CASE("pushforward of kernel solutions through the swap") {
    auto J = trans_Jprime(+1);
    CHECK(identical(pushforward_solution(J, sym("x")), num(1)));
    // beta components never mix: the swap flips 5 - beta exactly
    CHECK(identical(simplify(J.fwd_of("beta")), simplify(num(5) - sym("beta"))));
    auto A = trans_formA(num(1, 2), -1, {num(1), num(2), num(0), num(1), num(0)});
    CHECK(identical(simplify(A.fwd_of("beta")), sym("beta")));
}

TEST_CASE("verify_maps_equation for the gauge shift and the swap") {
    const auto& reg = EquationRegistry::instance();
    auto battery = std::vector<ParametricSolution>{
        {"k1", "F", num(1), {}, ""},
        {"kx", "F", sym("x"), {}, ""},
        {"ktxy", "F", simplify(sym("t") * sym("x") - sym("y")), {}, ""}};
    PointTransformation S = trans_S(num(-1, 2));
    S.src_params = {{"alpha", num(1, 2)}, {"beta", num(3, 2)}};
    S.tgt_params = {{"alpha", num(0)}, {"beta", num(3, 2)}};
    Equation src = at_params(reg.get("F"), S.src_params);
    Equation tgt = at_params(reg.get("Fp"), {{"beta", num(3, 2)}});
    SamplingSpec s = spec3();
    s.box("x", 0.9, 2.0);
    CHECK(verify_maps_equation(S, src, tgt, battery, s, "t.smaps"));

    PointTransformation J = trans_Jprime(+1);
    J.src_params = {{"beta", num(1)}};
    J.tgt_params = {{"beta", num(4)}};
    CHECK(verify_maps_equation(J, at_params(reg.get("Fp"), J.src_params),
                               at_params(reg.get("Fp"), J.tgt_params),
                               std::vector<ParametricSolution>{
                                   {"k1", "Fp", num(1), {}, ""},
                                   {"kx", "Fp", sym("x"), {}, ""}},
                               s, "t.jmaps"));
}

TEST_CASE("pseudogroup elements move catalog seeds to solutions") {
    const auto& reg = EquationRegistry::instance();
    SamplingSpec s;
    s.box("t", 0.2, 0.7).box("x", 0.35, 1.4).box("y", 0.25, 0.8);
    // G0 with superposition part injected from the kernel set
    auto G0 = trans_G0(num(2), num(1), num(1), num(1), {num(1, 5), num(1, 3), num(-1, 4), num(0)},
                       num(3), simplify(sym("t") * sym("x") - sym("y")));
    Equation Fp0 = at_params(reg.get("Fp"), {{"beta", num(0)}});
    ExprPtr seed = func("theta", {0, 0}, {sym("t"), sym("x")});
    ExprPtr moved = pushforward_solution(G0, seed);
    ParametricSolution sol{"g0", "Fp", moved, {{"theta", num(0)}}, ""};
    CHECK(verify_solution(Fp0, sol, s, "t.g0push").pass);

    auto G2 = trans_G2(num(1, 3), num(2), num(1), num(1), num(1), num(2), num(0));
    Equation Fp2 = at_params(reg.get("Fp"), {{"beta", num(2)}});
    ExprPtr seed2 = simplify(eexp(simplify(num(-1, 4) * sym("t"))) * pw(eabs(sym("x")), num(1, 2)) *
                             func("theta", {0, 0}, {sym("t"), eln(eabs(sym("x")))}));
    ExprPtr moved2 = pushforward_solution(G2, seed2);
    ParametricSolution sol2{"g2", "Fp", moved2, {{"theta", num(0)}}, ""};
    CHECK(verify_solution(Fp2, sol2, s, "t.g2push").pass);
}

TEST_CASE("self-dual exponent extra symmetry") {
    const auto& reg = EquationRegistry::instance();
    auto T = trans_G52(num(3, 2), num(1, 3), num(-1, 4), num(2), +1);
    Equation eq = at_params(reg.get("Fp"), {{"beta", num(5, 2)}});
    SamplingSpec s;
    s.box("t", 0.2, 0.8).box("x", 0.4, 1.5).box("y", 0.25, 0.9);
    CHECK(verify_maps_equation(T, eq, eq,
                               std::vector<ParametricSolution>{
                                   {"k1", "Fp", num(1), {}, ""},
                                   {"kx", "Fp", sym("x"), {}, ""},
                                   {"ktxy", "Fp", simplify(sym("t") * sym("x") - sym("y")), {}, ""}},
                               s, "t.g52"));
}

TEST_CASE("composition rejects mismatched coordinate lists") {
    auto J = trans_Jprime(+1);            // (t, x, y, beta, u)
    auto G2 = trans_G2(num(1, 3), num(2), num(1), num(1), num(1), num(1), num(0));  // (t, x, y, u)
    CHECK_THROWS_AS(compose(J, G2), DomainMismatch);
}

TEST_CASE("reduced-equation changes of variables") {
    SamplingSpec s;
    s.box("z1", 0.3, 1.2).box("z2", 0.4, 1.6);
    CHECK(check_round_trip(trans_beta1_exp(), s, "rt.b1exp").zero);
    SamplingSpec st;
    st.box("z1", 0.2, 1.0).box("z2", 0.4, 1.6);
    CHECK(check_round_trip(trans_beta1_tan(), st, "rt.b1tan").zero);
    CHECK(check_round_trip(trans_red_canonical(Rational(7)), s, "rt.canon7").zero);
}
