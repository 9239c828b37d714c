// Command-line front end: verification runs, solution generation, algebra
// checks, sampling and Darboux transforms.
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "kbsym/catalog.hpp"
#include "kbsym/darboux.hpp"
#include "kbsym/liealg.hpp"
#include "kbsym/pointtrans.hpp"
#include "kbsym/recursionops.hpp"
#include "kbsym/report.hpp"

using namespace kbsym;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream os(out_path);
    os << text;
}

std::optional<TotalDiffOperator> operator_by_name(const std::string& name, const Rational& beta) {
    if (name == "P0") return rop_P0();
    if (name == "P1") return rop_P1();
    if (name == "P2") return rop_P2();
    if (name == "P3") return rop_P3();
    if (name == "Pt") return rop_Pt();
    if (name == "Py") return rop_Py();
    if (name == "D0") return rop_D0();
    if (name == "K0") return rop_K0();
    if (name == "K2") return rop_K2();
    if (name == "D1hat") return rop_D1_hat();
    if (name == "D4hat") return rop_D4_hat();
    if (name == "Dm1hat") return rop_Dm1_hat();
    if (name == "D6hat") return rop_D6_hat();
    if (name == "Pthat") return rop_Pt_hat(num(beta));
    if (name == "Dbetahat") return rop_Dbeta_hat(num(beta));
    return std::nullopt;
}

std::optional<PointTransformation> transformation_by_name(const std::string& name) {
    if (name == "J'" || name == "Jprime") return trans_Jprime(+1);
    if (name == "Jsimple") return trans_Jsimple();
    if (name == "Iu") return trans_Iu();
    if (name == "Is") return trans_Is();
    return std::nullopt;
}

int cmd_verify(const RunConfig& cfg, const std::string& out_path) {
    auto checks = checks_in_scope(cfg.scope);
    if (checks.empty()) {
        std::cerr << "unknown scope: " << cfg.scope << "\n";
        return 2;
    }
    VerificationReport rep = run_checks(checks, cfg);
    emit(rep.format(cfg.format), out_path);
    return rep.n_fail == 0 ? 0 : 1;
}

int cmd_generate(const std::string& family_id, const std::string& op_name,
                 const std::string& trans_name, int k, const RunConfig& cfg) {
    const Catalog& cat = Catalog::instance();
    const SolutionFamily* fam = nullptr;
    try {
        fam = &cat.get(family_id);
    } catch (const std::out_of_range&) {
        std::cerr << "unknown seed family: " << family_id << "\n";
        return 2;
    }
    Rational beta = fam->beta ? *fam->beta : fam->beta_samples.front();
    std::map<std::string, Rational> params;
    params["beta"] = beta;
    for (const auto& [key, v] : fam->param_samples) params[key] = v.front();

    std::map<std::string, ExprPtr> psub;
    for (const auto& [key, v] : params) psub[key] = num(v);
    ExprPtr seed_expr = substitute(fam->expr, psub);
    std::vector<PlaceholderConstraint> cs;
    for (const auto& c : fam->constraints) cs.push_back({c.name, substitute(c.mu, psub)});

    SamplingSpec spec = fam->spec;
    spec.seed = cfg.seed;
    spec.trials = cfg.trials;
    Equation eq = family_equation(*fam, beta);

    if (!trans_name.empty()) {
        auto T = transformation_by_name(trans_name);
        if (!T) {
            std::cerr << "unknown transformation: " << trans_name << "\n";
            return 2;
        }
        Rational tbeta = Rational(5) - beta;
        std::string tgt_eq = (T->id == "Jsimple") ? "Fp_noabs" : "Fp";
        if (fam->eq_id == "Fp_noabs" && T->id == "Jsimple") tgt_eq = "Fp_noabs";
        Equation tgt = at_params(EquationRegistry::instance().get(tgt_eq), {{"beta", num(tbeta)}});
        ExprPtr moved = pushforward_solution(*T, seed_expr);
        ParametricSolution sol{family_id + "->" + trans_name, tgt_eq, moved, cs, ""};
        VerifyReport rep = verify_solution(tgt, sol, spec, "cli.generate");
        std::cout << "target exponent: " << tbeta.str() << "\n";
        std::cout << "solution: " << to_string(moved) << "\n";
        std::cout << "verdict: " << (rep.pass ? "verified" : "FAILED " + rep.witness)
                  << " (max residual " << rep.max_resid << ")\n";
        return rep.pass ? 0 : 1;
    }

    auto op = operator_by_name(op_name, beta);
    if (!op) {
        std::cerr << "unknown operator: " << op_name << "\n";
        return 2;
    }
    ParametricSolution seed{family_id, fam->eq_id, seed_expr, cs, fam->citation};
    try {
        auto steps = ladder(*op, seed, k, eq, spec, "cli.ladder");
        for (size_t i = 0; i < steps.size(); ++i) {
            ExprPtr e = simplify(steps[i].expr);
            std::cout << "k=" << (i + 1) << ": " << to_string(e) << "\n";
            std::cout << "   verdict: verified (max residual " << steps[i].report.max_resid
                      << ")";
            if (is_zero_expr(e)) std::cout << "  [trivial zero output]";
            std::cout << "\n";
        }
    } catch (const VerificationFailed& ex) {
        std::cerr << "verification failed: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}

int cmd_algebra(const std::string& target, const Rational& beta, const RunConfig& cfg,
                const std::string& out_path) {
    std::string scope;
    if (target == "gsim-F")
        scope = "algebra.gsimF";
    else if (target == "gsim-Fp")
        scope = "algebra.gsimFp";
    else if (target == "gess-beta")
        scope = "algebra.gess";
    else if (target == "gess-0")
        scope = "algebra.gess0";
    else if (target == "dihedral")
        scope = "algebra.dihedral";
    else if (target == "all")
        scope = "algebra";
    else {
        std::cerr << "unknown algebra target: " << target << "\n";
        return 2;
    }
    (void)beta;
    RunConfig c = cfg;
    c.scope = scope;
    return cmd_verify(c, out_path);
}

int cmd_sample(const std::string& family_id, const Rational& beta, const std::string& grid,
               const std::string& out_path, const RunConfig& cfg) {
    const Catalog& cat = Catalog::instance();
    const SolutionFamily* fam = nullptr;
    try {
        fam = &cat.get(family_id);
    } catch (const std::out_of_range&) {
        std::cerr << "unknown family: " << family_id << "\n";
        return 2;
    }
    int nt = 8, nx = 8, ny = 1;
    if (std::sscanf(grid.c_str(), "%dx%dx%d", &nt, &nx, &ny) != 3) {
        std::cerr << "bad grid spec (expected NxMxK): " << grid << "\n";
        return 2;
    }
    std::map<std::string, Rational> params;
    params["beta"] = fam->beta ? *fam->beta : beta;
    for (const auto& [key, v] : fam->param_samples) params[key] = v.front();
    ExprPtr e = instantiate_family(*fam, params, 0);

    std::ostringstream os;
    os << "t,x,y,u_re,u_im\n";
    int skipped = 0;
    Interval tb{0.4, 2.0}, xb{0.5, 2.0}, yb{0.4, 2.0};
    auto itb = fam->spec.boxes.find("t");
    if (itb != fam->spec.boxes.end()) tb = itb->second;
    auto ixb = fam->spec.boxes.find("x");
    if (ixb != fam->spec.boxes.end()) xb = ixb->second;
    auto iyb = fam->spec.boxes.find("y");
    if (iyb != fam->spec.boxes.end()) yb = iyb->second;
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nx; ++j)
            for (int l = 0; l < ny; ++l) {
                double tv = tb.lo + (tb.hi - tb.lo) * (nt == 1 ? 0.5 : double(i) / (nt - 1));
                double xv = xb.lo + (xb.hi - xb.lo) * (nx == 1 ? 0.5 : double(j) / (nx - 1));
                double yv = yb.lo + (yb.hi - yb.lo) * (ny == 1 ? 0.5 : double(l) / (ny - 1));
                EvaluationContext ctx;
                ctx.set("t", tv);
                ctx.set("x", xv);
                ctx.set("y", yv);
                try {
                    cplx u = evaluate(e, ctx);
                    char buf[160];
                    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g\n", tv, xv, yv,
                                  u.real(), u.imag());
                    os << buf;
                } catch (const EvalError&) {
                    ++skipped;
                }
            }
    emit(os.str(), out_path);
    if (skipped) std::cerr << "skipped " << skipped << " singular grid points\n";
    (void)cfg;
    return 0;
}

int cmd_darboux(const std::string& seeds_arg, const std::string& input, const RunConfig& cfg) {
    std::vector<ExprPtr> seeds;
    std::stringstream ss(seeds_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok[0] == 'P' && tok.size() <= 3) {
            int k = std::stoi(tok.substr(1));
            seeds.push_back(heat_polynomial(k));
        } else {
            seeds.push_back(parse_expr(tok));
        }
    }
    if (seeds.empty()) {
        std::cerr << "no seeds given\n";
        return 2;
    }
    ExprPtr u = parse_expr(input);
    SamplingSpec spec;
    spec.seed = cfg.seed;
    spec.box("t", 0.3, 2.0).box("x", 0.35, 2.2);
    ExprPtr moved = darboux_transform(seeds, u);
    std::cout << "transformed: " << to_string(moved) << "\n";
    ExprPtr Vt = transformed_potential(num(0), seeds, spec, "cli.darboux");
    std::cout << "transformed potential: " << to_string(Vt) << "\n";
    Equation tgt = heat_with_potential(Vt);
    std::vector<PlaceholderConstraint> cs;
    if (has_placeholder(u)) cs.push_back({"theta", num(0)});
    ParametricSolution sol{"darboux", tgt.id, moved, cs, ""};
    VerifyReport rep = verify_solution(tgt, sol, spec, "cli.darboux.verify");
    std::cout << "verdict: " << (rep.pass ? "verified" : "FAILED " + rep.witness)
              << " (max residual " << rep.max_resid << ")\n";
    return rep.pass ? 0 : 1;
}

nlohmann::json generator_json() {
    const auto& G = GeneratorRegistry::instance();
    nlohmann::json root;
    root["schema"] = "generators-v1";
    nlohmann::json list = nlohmann::json::array();
    for (const auto& name : G.names()) {
        const auto& e = G.get(name);
        nlohmann::json j;
        j["name"] = name;
        for (const auto& [coord, coeff] : e.field.comps) j["components"][coord] = to_string(coeff);
        j["equations"] = e.eq_ids;
        j["citation"] = e.citation;
        list.push_back(j);
    }
    root["generators"] = list;
    return root;
}

nlohmann::json transformation_json() {
    nlohmann::json root;
    root["schema"] = "transformations-v1";
    nlohmann::json list = nlohmann::json::array();
    for (const auto& name : {"Jprime", "Jsimple", "Iu", "Is"}) {
        PointTransformation T = *transformation_by_name(name);
        nlohmann::json j;
        j["name"] = name;
        j["citation"] = T.citation;
        j["domain"] = T.domain;
        for (size_t i = 0; i < T.coords.size(); ++i) {
            j["forward"][T.coords[i]] = to_string(T.fwd[i]);
            j["inverse"][T.coords[i]] = to_string(T.inv[i]);
        }
        list.push_back(j);
    }
    root["transformations"] = list;
    return root;
}

int cmd_list(bool equations, bool generators, bool transforms, bool as_json,
             const std::optional<Rational>& beta) {
    if (generators) {
        if (as_json) {
            std::cout << generator_json().dump(2) << "\n";
            return 0;
        }
        const auto& G = GeneratorRegistry::instance();
        for (const auto& name : G.names()) {
            const auto& e = G.get(name);
            std::cout << name << ": (";
            for (size_t i = 0; i < e.field.comps.size(); ++i) {
                if (i) std::cout << ", ";
                std::cout << to_string(e.field.comps[i].second);
            }
            std::cout << ")  [" << e.citation << "]\n";
        }
        return 0;
    }
    if (transforms) {
        std::cout << transformation_json().dump(2) << "\n";
        return 0;
    }
    if (equations) {
        if (as_json) {
            std::cout << EquationRegistry::instance().to_json() << "\n";
            return 0;
        }
        for (const auto& id : EquationRegistry::instance().ids()) {
            const Equation& eq = EquationRegistry::instance().get(id);
            std::cout << id << ": " << to_string(eq.residual) << " = 0   [" << eq.citation
                      << "]\n";
        }
        return 0;
    }
    if (as_json) {
        std::cout << Catalog::instance().to_json() << "\n";
        return 0;
    }
    for (const auto* f : Catalog::instance().list_families(beta)) {
        std::cout << f->id << "  (" << f->eq_id;
        if (f->beta) std::cout << ", beta=" << f->beta->str();
        std::cout << ")  " << f->citation << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic-numeric verification toolkit for Kolmogorov backward equations "
                 "with power diffusivity"};
    app.set_config("--config", "", "TOML config file mirroring the flags");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string out_path;
    app.add_option("--seed", cfg.seed, "global RNG seed");
    app.add_option("--tol", cfg.rel_tol, "relative tolerance");
    app.add_option("--trials", cfg.trials, "sampling trials per zero test");
    app.add_option("--format", cfg.format, "report format: json|markdown|csv");
    app.add_option("--jobs", cfg.jobs, "parallel workers");
    app.add_flag("--timings", cfg.timings, "include durations in reports");
    app.add_option("--out", out_path, "write output to this file");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--scope", cfg.scope, "all, a module prefix, or a check/family id");

    auto* generate = app.add_subcommand("generate", "apply operators or transformations to seeds");
    std::string gen_seed, gen_op, gen_trans;
    int gen_k = 1;
    generate->add_option("--seed", gen_seed, "seed family id")->required();
    generate->add_option("--op", gen_op, "Lie-symmetry operator name");
    generate->add_option("--transform", gen_trans, "point transformation name (J', Jsimple, Iu, Is)");
    generate->add_option("--k", gen_k, "iterate count");

    auto* algebra = app.add_subcommand("algebra", "Lie-algebra suites");
    std::string alg_target = "all";
    double alg_beta = 1.0;
    algebra->add_option("--target", alg_target, "gsim-F, gsim-Fp, gess-beta, gess-0, dihedral, all");
    algebra->add_option("--beta", alg_beta, "exponent for the parameterized suites");

    auto* sample = app.add_subcommand("sample", "export a CSV sample grid of a family");
    std::string sm_family, sm_grid = "20x20x1";
    double sm_beta = 1.0;
    sample->add_option("--family", sm_family, "family id")->required();
    sample->add_option("--beta", sm_beta, "exponent for general families");
    sample->add_option("--grid", sm_grid, "grid NxMxK");

    auto* darboux = app.add_subcommand("darboux", "Wronskian-quotient transform");
    std::string dx_seeds, dx_input;
    darboux->add_option("--seeds", dx_seeds, "comma list: Pk names or expressions")->required();
    darboux->add_option("--input", dx_input, "expression to transform")->required();

    auto* list = app.add_subcommand("list", "list equations, generators or solution families");
    bool list_eqs = false, list_json = false, list_gens = false, list_trans = false;
    double list_beta = 0.0;
    bool has_beta = false;
    list->add_flag("--equations", list_eqs, "list the equation registry");
    list->add_flag("--generators", list_gens, "list the symmetry generators");
    list->add_flag("--transforms", list_trans, "dump the discrete transformations as JSON");
    list->add_flag("--json", list_json, "JSON output");
    auto* lb = list->add_option("--beta", list_beta, "filter families by exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto to_rational = [](double v) {
        return Rational(static_cast<long long>(std::llround(v * 840)), 840);
    };

    try {
        if (verify->parsed()) return cmd_verify(cfg, out_path);
        if (generate->parsed()) return cmd_generate(gen_seed, gen_op, gen_trans, gen_k, cfg);
        if (algebra->parsed()) return cmd_algebra(alg_target, to_rational(alg_beta), cfg, out_path);
        if (sample->parsed()) return cmd_sample(sm_family, to_rational(sm_beta), sm_grid, out_path, cfg);
        if (darboux->parsed()) return cmd_darboux(dx_seeds, dx_input, cfg);
        if (list->parsed()) {
            has_beta = lb->count() > 0;
            return cmd_list(list_eqs, list_gens, list_trans, list_json,
                            has_beta ? std::optional<Rational>(to_rational(list_beta))
                                     : std::nullopt);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
