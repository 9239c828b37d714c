#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kbsym/catalog.hpp"

using namespace kbsym;

TEST_CASE("theta instances solve their governing equations") {
    const auto& reg = EquationRegistry::instance();
    SamplingSpec s;
    s.box("z1", 0.35, 2.0).box("z2", 0.4, 2.0);
    for (const auto& inst : theta0_instances()) {
        ParametricSolution sol{inst.name, "heat", inst.body, {}, ""};
        CHECK_MESSAGE(verify_solution(reg.get("heat"), sol, s, "ti." + inst.name).pass, inst.name);
    }
    for (Rational mu : {Rational(5, 36), Rational(-3, 4), Rational(3, 4), Rational(1, 4),
                        Rational(9, 100)}) {
        Equation eq = at_params(reg.get("invsq"), {{"mu", num(mu)}});
        auto insts = theta_mu_instances(mu);
        CHECK(insts.size() >= 2);
        for (const auto& inst : insts) {
            ParametricSolution sol{inst.name, "invsq", inst.body, {}, ""};
            CHECK_MESSAGE(verify_solution(eq, sol, s, "ti." + inst.name).pass, inst.name);
        }
    }
}

TEST_CASE("stationary exponents") {
    // mu = 5/36 -> alpha in {1/6, 5/6}; mu = -3/4 -> {3/2, -1/2}; mu = 0 -> {0, 1}
    auto i536 = theta_mu_instances(Rational(5, 36));
    bool has16 = false, has56 = false;
    for (const auto& in : i536) {
        std::string s = to_string(in.body);
        has16 |= s == "pow(z2, 1/6)";
        has56 |= s == "pow(z2, 5/6)";
    }
    CHECK(has56);
    CHECK(has16);
    auto im34 = theta_mu_instances(Rational(-3, 4));
    bool has32 = false, hasm12 = false;
    for (const auto& in : im34) {
        std::string s = to_string(in.body);
        has32 |= s == "pow(z2, 3/2)";
        hasm12 |= s == "pow(z2, -1/2)";
    }
    CHECK(has32);
    CHECK(hasm12);
}

TEST_CASE("catalog inventory") {
    const Catalog& cat = Catalog::instance();
    CHECK(cat.ids().size() >= 25);
    // beta = 1 has at least the three stated families
    auto b1 = cat.list_families(Rational(1));
    int fixed1 = 0;
    for (const auto* f : b1)
        if (f->beta) ++fixed1;
    CHECK(fixed1 >= 3);
    // beta = 0 has at least seven entries (four base plus three ladders)
    auto b0 = cat.list_families(Rational(0));
    int fixed0 = 0;
    for (const auto* f : b0)
        if (f->beta) ++fixed0;
    CHECK(fixed0 >= 7);
    // a generic exponent still matches the general families
    auto bpi = cat.list_families(Rational(355, 113));
    bool has_main = false;
    for (const auto* f : bpi) has_main |= f->id == "GEN.main";
    CHECK(has_main);
    CHECK(cat.to_json().find("catalog-v1") != std::string::npos);
}

TEST_CASE("fault injection fails exactly where expected") {
    const Catalog& cat = Catalog::instance();
    SamplingSpec base;
    base.trials = 12;
    base.exact_trials = 4;
    auto bad = verify_family(cat.get("F0.drift"), base, 4242, /*corrupt=*/true);
    bool some_fail = false;
    for (const auto& fc : bad) some_fail |= !fc.pass;
    CHECK(some_fail);
    auto good = verify_family(cat.get("F0.drift"), base, 4242, /*corrupt=*/false);
    for (const auto& fc : good) CHECK(fc.pass);
}

TEST_CASE("instantiate_family produces closed-form members") {
    const Catalog& cat = Catalog::instance();
    std::map<std::string, Rational> params{{"beta", Rational(0)}};
    ExprPtr e = instantiate_family(cat.get("F0.heatkernel"), params, 1);
    CHECK_FALSE(has_placeholder(e));
    CHECK(free_symbols(e).size() <= 3);
}
