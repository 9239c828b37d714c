#include "kbsym/pde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace kbsym {

std::string jet_name(const std::string& unknown, const std::vector<std::string>& vars,
                     const std::vector<int>& J) {
    bool any = false;
    for (int j : J) any |= j > 0;
    if (!any) return unknown;
    bool single = true;
    for (const auto& v : vars) single &= v.size() == 1;
    std::string s = unknown + "_";
    for (size_t i = 0; i < vars.size(); ++i)
        for (int r = 0; r < J[i]; ++r) s += single ? vars[i] : std::to_string(i + 1);
    return s;
}

bool parse_jet(const std::string& name, const std::string& unknown,
               const std::vector<std::string>& vars, std::vector<int>& J) {
    if (name.size() <= unknown.size() + 1) return false;
    if (name.compare(0, unknown.size(), unknown) != 0) return false;
    if (name[unknown.size()] != '_') return false;
    std::string rest = name.substr(unknown.size() + 1);
    J.assign(vars.size(), 0);
    size_t pos = 0;
    while (pos < rest.size()) {
        bool matched = false;
        // ordinal digit
        if (rest[pos] >= '1' && rest[pos] <= '9') {
            size_t idx = static_cast<size_t>(rest[pos] - '1');
            if (idx < vars.size()) {
                J[idx] += 1;
                ++pos;
                matched = true;
            }
        }
        if (!matched) {
            // longest variable-name match
            size_t best = 0, best_i = vars.size();
            for (size_t i = 0; i < vars.size(); ++i) {
                if (rest.compare(pos, vars[i].size(), vars[i]) == 0 && vars[i].size() > best) {
                    best = vars[i].size();
                    best_i = i;
                }
            }
            if (best_i == vars.size()) return false;
            J[best_i] += 1;
            pos += best;
            matched = true;
        }
    }
    return true;
}

ExprPtr total_derivative(const ExprPtr& e, size_t var_idx, const std::string& unknown,
                         const std::vector<std::string>& vars) {
    ExprPtr out = differentiate(e, vars[var_idx]);
    std::vector<std::string> syms = free_symbols(e);
    for (const auto& s : syms) {
        std::vector<int> J;
        if (s == unknown) {
            J.assign(vars.size(), 0);
        } else if (!parse_jet(s, unknown, vars, J)) {
            continue;
        }
        ExprPtr de = differentiate(e, s);
        if (is_zero_expr(de)) continue;
        J[var_idx] += 1;
        out = out + sym(jet_name(unknown, vars, J)) * de;
    }
    return simplify(out);
}

ExprPtr eliminate_solved(ExprPtr e, const Equation& eq) {
    if (eq.solved_jet.empty()) return e;
    std::vector<int> S;
    if (!parse_jet(eq.solved_jet, eq.unknown, eq.vars, S))
        throw std::logic_error("eliminate_solved: bad solved_jet " + eq.solved_jet);
    std::map<std::vector<int>, ExprPtr> cache;
    auto derived_rhs = [&](const std::vector<int>& K) -> ExprPtr {
        auto it = cache.find(K);
        if (it != cache.end()) return it->second;
        ExprPtr r = eq.solved_rhs;
        for (size_t i = 0; i < K.size(); ++i)
            for (int k = 0; k < K[i]; ++k) r = total_derivative(r, i, eq.unknown, eq.vars);
        cache[K] = r;
        return r;
    };
    for (int round = 0; round < 12; ++round) {
        std::map<std::string, ExprPtr> repl;
        for (const auto& s : free_symbols(e)) {
            std::vector<int> J;
            if (!parse_jet(s, eq.unknown, eq.vars, J)) continue;
            bool covers = true;
            for (size_t i = 0; i < J.size(); ++i) covers &= J[i] >= S[i];
            if (!covers) continue;
            std::vector<int> K(J.size());
            for (size_t i = 0; i < J.size(); ++i) K[i] = J[i] - S[i];
            repl[s] = derived_rhs(K);
        }
        if (repl.empty()) return e;
        e = substitute(e, repl);
    }
    throw std::logic_error("eliminate_solved: did not terminate");
}

ExprPtr residual(const Equation& eq, const ExprPtr& candidate) {
    std::map<std::string, ExprPtr> repl;
    std::map<std::vector<int>, ExprPtr> dcache;
    for (const auto& s : free_symbols(eq.residual)) {
        std::vector<int> J;
        if (s == eq.unknown) {
            repl[s] = candidate;
            continue;
        }
        if (!parse_jet(s, eq.unknown, eq.vars, J)) continue;
        auto it = dcache.find(J);
        if (it == dcache.end()) {
            ExprPtr d = candidate;
            for (size_t i = 0; i < J.size(); ++i) d = differentiate_n(d, eq.vars[i], J[i]);
            it = dcache.emplace(J, std::move(d)).first;
        }
        repl[s] = it->second;
    }
    return substitute(eq.residual, repl);
}

namespace {

const char* kF1 = "__pz1";
const char* kF2 = "__pz2";

// theta_{(0,2)} + mu * z2^-2 * theta_{(0,0)} in the formal variables.
ExprPtr governing_rhs(const PlaceholderConstraint& c) {
    ExprPtr z2 = sym(kF2);
    return func(c.name, {0, 2}, {sym(kF1), z2}) +
           c.mu * pw(z2, -2) * func(c.name, {0, 0}, {sym(kF1), z2});
}

// One z1-derivative of an expression in theta_{(0,m)} nodes.
ExprPtr z1_step(const ExprPtr& e, const PlaceholderConstraint& c) {
    if (e->kind == Kind::Func && e->name == c.name) {
        if (e->dindex.size() != 2 || e->dindex[0] != 0)
            throw std::logic_error("z1_step: unexpected placeholder index");
        return differentiate_n(governing_rhs(c), kF2, e->dindex[1]);
    }
    if (e->kind == Kind::Sym && e->name == kF1)
        throw std::logic_error("z1_step: explicit first argument in coefficient");
    if (e->kids.empty()) return e;
    // product rule is unnecessary: replacement is linear substitution of the
    // theta nodes, coefficients do not depend on z1
    auto clone = std::make_shared<Expr>(e->kind);
    clone->num = e->num;
    clone->name = e->name;
    clone->dindex = e->dindex;
    for (auto& k : e->kids) clone->kids.push_back(z1_step(k, c));
    return simplify(clone);
}

ExprPtr eliminated_form(const PlaceholderConstraint& c, int i, int j,
                        std::map<std::pair<int, int>, ExprPtr>& cache) {
    auto key = std::make_pair(i, j);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ExprPtr r;
    if (i == 0) {
        r = func(c.name, {0, j}, {sym(kF1), sym(kF2)});
    } else {
        ExprPtr G = governing_rhs(c);
        for (int step = 1; step < i; ++step) G = expand(z1_step(G, c));
        r = expand(differentiate_n(G, kF2, j));
    }
    cache[key] = r;
    return r;
}

ExprPtr normalize_one(const ExprPtr& e, const PlaceholderConstraint& c,
                      std::map<std::pair<int, int>, ExprPtr>& cache) {
    if (e->kind == Kind::Func && e->name == c.name && e->dindex.size() == 2 && e->dindex[0] >= 1) {
        ExprPtr body = eliminated_form(c, e->dindex[0], e->dindex[1], cache);
        std::map<std::string, ExprPtr> b;
        b[kF1] = normalize_one(e->kids[0], c, cache);
        b[kF2] = normalize_one(e->kids[1], c, cache);
        return substitute(body, b);
    }
    if (e->kids.empty()) return e;
    auto clone = std::make_shared<Expr>(e->kind);
    clone->num = e->num;
    clone->name = e->name;
    clone->dindex = e->dindex;
    for (auto& k : e->kids) clone->kids.push_back(normalize_one(k, c, cache));
    return simplify(clone);
}

}  // namespace

ExprPtr normalize_placeholders(const ExprPtr& e, const std::vector<PlaceholderConstraint>& cs) {
    ExprPtr r = e;
    for (const auto& c : cs) {
        std::map<std::pair<int, int>, ExprPtr> cache;
        r = normalize_one(r, c, cache);
    }
    return simplify(r);
}

VerifyReport verify_solution(const Equation& eq, const ParametricSolution& sol,
                             const SamplingSpec& spec, const std::string& op_id) {
    ExprPtr r = residual(eq, sol.expr);
    r = normalize_placeholders(r, sol.constraints);
    IsZeroResult z = is_zero(r, spec, op_id);
    VerifyReport rep;
    rep.pass = z.zero;
    rep.max_resid = z.max_resid;
    rep.witness = z.witness;
    return rep;
}

bool verify_reduction(const Equation& eq, const ReductionAnsatz& ansatz, const SamplingSpec& spec,
                      const std::string& op_id, double tol) {
    // candidate u = multiplier * w(z1, z2)
    ExprPtr cand = simplify(mul({ansatz.multiplier, func("w", {0, 0}, {ansatz.z1, ansatz.z2})}));
    ExprPtr res = residual(eq, cand);

    static const std::vector<std::vector<int>> kJet = {{0, 0}, {1, 0}, {0, 1},
                                                       {2, 0}, {1, 1}, {0, 2}};
    const std::vector<std::string> wvars = {"z1", "z2"};
    std::vector<std::string> jet_syms;
    for (const auto& J : kJet) jet_syms.push_back(jet_name("w", wvars, J));

    // parameters shared by both sides
    std::vector<std::string> params;
    {
        std::vector<std::string> all = free_symbols(res);
        std::vector<std::string> cl = free_symbols(ansatz.claimed);
        all.insert(all.end(), cl.begin(), cl.end());
        for (const auto& s : all) {
            if (std::find(eq.vars.begin(), eq.vars.end(), s) != eq.vars.end()) continue;
            if (s == "z1" || s == "z2") continue;
            if (std::find(jet_syms.begin(), jet_syms.end(), s) != jet_syms.end()) continue;
            if (std::find(params.begin(), params.end(), s) == params.end()) params.push_back(s);
        }
        std::sort(params.begin(), params.end());
    }

    Rng rng(derive_seed(spec.seed, op_id));
    int npts = std::min(spec.trials, 12);
    int good = 0, attempts = 0;
    while (good < npts && attempts < npts * 16) {
        ++attempts;
        EvaluationContext base;
        for (const auto& v : eq.vars) base.set(v, cplx(spec.sample(rng, v), 0.0));
        for (const auto& p : params) base.set(p, cplx(spec.sample(rng, p), 0.0));
        try {
            cplx z1v = evaluate(ansatz.z1, base);
            cplx z2v = evaluate(ansatz.z2, base);
            // invariant-variable Jacobian must have rank 2 at the base point
            {
                std::vector<std::array<cplx, 2>> Jrows;
                for (const auto& v : eq.vars) {
                    EvaluationContext jc = base;
                    Jrows.push_back({evaluate(differentiate(ansatz.z1, v), jc),
                                     evaluate(differentiate(ansatz.z2, v), jc)});
                }
                double best = 0.0;
                for (size_t r1 = 0; r1 < Jrows.size(); ++r1)
                    for (size_t r2 = r1 + 1; r2 < Jrows.size(); ++r2)
                        best = std::max(best, std::abs(Jrows[r1][0] * Jrows[r2][1] -
                                                       Jrows[r1][1] * Jrows[r2][0]));
                if (best < 1e-8) continue;  // degenerate point for this ansatz
            }
            // coefficient vectors by unit jet loads
            std::vector<cplx> va(kJet.size()), vc(kJet.size());
            double scale_a = 0.0, scale_c = 0.0;
            for (size_t k = 0; k < kJet.size(); ++k) {
                EvaluationContext ca = base;
                for (size_t m = 0; m < kJet.size(); ++m) {
                    std::string key = "w[" + std::to_string(kJet[m][0]) + "," +
                                      std::to_string(kJet[m][1]) + "]";
                    ca.placeholder_values[key] = (m == k) ? cplx(1.0) : cplx(0.0);
                }
                EvalResult ra = evaluate_scaled(res, ca);
                va[k] = ra.value;
                scale_a = std::max(scale_a, std::abs(ra.value));

                EvaluationContext cc;
                cc.set("z1", z1v);
                cc.set("z2", z2v);
                for (const auto& p : params) cc.set(p, base.symbols[p]);
                for (size_t m = 0; m < kJet.size(); ++m)
                    cc.set(jet_syms[m], (m == k) ? cplx(1.0) : cplx(0.0));
                vc[k] = evaluate(ansatz.claimed, cc);
                scale_c = std::max(scale_c, std::abs(vc[k]));
            }
            if (scale_a < 1e-12 || scale_c < 1e-12) continue;  // degenerate point
            // proportionality with the largest claimed coefficient as pivot
            size_t piv = 0;
            for (size_t k = 1; k < kJet.size(); ++k)
                if (std::abs(vc[k]) > std::abs(vc[piv])) piv = k;
            cplx ratio = va[piv] / vc[piv];
            for (size_t k = 0; k < kJet.size(); ++k) {
                if (std::abs(va[k] - ratio * vc[k]) > tol * (scale_a + 1.0)) return false;
            }
            ++good;
        } catch (const EvalError& err) {
            if (err.code == EvalError::Code::MissingBinding) throw;
            continue;
        }
    }
    if (good == 0) throw std::runtime_error("verify_reduction: no usable sample points: " + op_id);
    return true;
}

namespace {
ExprPtr apply_E(const SuperclassCoeffs& c, const ExprPtr& f) {
    return simplify(differentiate(f, "t") + c.B * differentiate(f, "y") -
                    c.A2 * differentiate_n(f, "x", 2) - c.A1 * differentiate(f, "x") - c.A0 * f);
}
}  // namespace

SuperclassCoeffs transform_coefficients(const TransComponents& tc, const SuperclassCoeffs& src) {
    ExprPtr Tt = differentiate(tc.T, "t"), Ty = differentiate(tc.T, "y");
    ExprPtr Xt = differentiate(tc.X, "t"), Xx = differentiate(tc.X, "x"),
            Xy = differentiate(tc.X, "y"), Xxx = differentiate_n(tc.X, "x", 2);
    ExprPtr Yt = differentiate(tc.Y, "t"), Yy = differentiate(tc.Y, "y");
    ExprPtr U1x = differentiate(tc.U1, "x");
    ExprPtr denom = simplify(Tt + src.B * Ty);
    ExprPtr dinv = pw(denom, -1);

    SuperclassCoeffs out;
    out.A0 = simplify(num(-1) * tc.U1 * dinv * apply_E(src, pw(tc.U1, -1)));
    out.A1 = simplify(src.A1 * Xx * dinv - (Xt + src.B * Xy) * dinv +
                      src.A2 * (Xxx - num(2) * Xx * U1x * pw(tc.U1, -1)) * dinv);
    out.A2 = simplify(src.A2 * pw(Xx, 2) * dinv);
    out.B = simplify((Yt + src.B * Yy) * dinv);
    out.C = simplify(tc.U1 * dinv * (src.C - apply_E(src, simplify(tc.U0 * pw(tc.U1, -1)))));
    return out;
}

VerifyReport verify_ode_solution(const Equation& eq, const ExprPtr& candidate, double lo, double hi,
                                 double tol, const std::string& op_id) {
    ExprPtr r = residual(eq, candidate);
    SamplingSpec spec = eq.spec;
    spec.boxes[eq.vars[0]] = {lo, hi};
    spec.rel_tol = tol;
    IsZeroResult z = is_zero(r, spec, op_id);
    VerifyReport rep;
    rep.pass = z.zero;
    rep.max_resid = z.max_resid;
    rep.witness = z.witness;
    return rep;
}

VerifyReport verify_ode_solution_callable(const Equation& eq,
                                          const std::function<cplx(double)>& f, double lo,
                                          double hi, double tol,
                                          const std::map<std::string, cplx>& params) {
    const std::string& var = eq.vars[0];
    VerifyReport rep;
    rep.pass = true;
    const int n = 24;
    for (int i = 0; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double h = std::max(1e-4, 1e-4 * std::abs(x));
        cplx fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x), fp1 = f(x + h), fp2 = f(x + 2 * h);
        cplx d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        cplx d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        EvaluationContext ctx;
        ctx.symbols = params;
        ctx.set(var, cplx(x, 0.0));
        std::vector<int> J1(1, 1), J2(1, 2);
        ctx.set(eq.unknown, f0);
        ctx.set(jet_name(eq.unknown, eq.vars, J1), d1);
        ctx.set(jet_name(eq.unknown, eq.vars, J2), d2);
        EvalResult r = evaluate_scaled(eq.residual, ctx);
        double m = std::abs(r.value);
        if (m > rep.max_resid) rep.max_resid = m;
        if (m > tol * (1.0 + r.scale)) {
            rep.pass = false;
            std::ostringstream w;
            w << var << "=" << x << " |residual|=" << m;
            rep.witness = w.str();
            return rep;
        }
    }
    return rep;
}

Equation at_params(const Equation& eq, const std::map<std::string, ExprPtr>& params) {
    Equation out = eq;
    out.residual = substitute(eq.residual, params);
    if (out.solved_rhs) out.solved_rhs = substitute(eq.solved_rhs, params);
    std::vector<std::string> fp;
    for (const auto& p : eq.free_params)
        if (params.find(p) == params.end()) fp.push_back(p);
    out.free_params = fp;
    return out;
}

Equation heat_with_potential(const ExprPtr& V) {
    Equation eq;
    eq.id = "heatV";
    eq.vars = {"t", "x"};
    eq.unknown = "u";
    ExprPtr u = sym("u"), ut = sym("u_t"), uxx = sym("u_xx");
    eq.residual = simplify(ut - uxx + V * u);
    eq.solved_jet = "u_t";
    eq.solved_rhs = simplify(uxx - V * u);
    eq.citation = "heat equation with potential";
    eq.spec.box("t", 0.3, 2.2).box("x", 0.3, 2.2);
    return eq;
}

EquationRegistry::EquationRegistry() {
    auto jet = [](const std::string& u, const std::vector<std::string>& vars,
                  std::vector<int> J) { return sym(jet_name(u, vars, J)); };

    {  // F: u_t + x u_y = |x - alpha|^beta u_xx
        Equation eq;
        eq.id = "F";
        eq.vars = {"t", "x", "y"};
        eq.unknown = "u";
        ExprPtr ut = jet("u", eq.vars, {1, 0, 0}), uy = jet("u", eq.vars, {0, 0, 1}),
                uxx = jet("u", eq.vars, {0, 2, 0});
        ExprPtr diff = pw(eabs(sym("x") - sym("alpha")), sym("beta"));
        eq.residual = simplify(ut + sym("x") * uy - diff * uxx);
        eq.solved_jet = "u_t";
        eq.solved_rhs = simplify(diff * uxx - sym("x") * uy);
        eq.free_params = {"alpha", "beta"};
        eq.citation = "power-diffusivity Kolmogorov backward family";
        eq.spec.box("x", -2.3, 2.3).box("alpha", -0.8, 0.8).box("beta", -1.0, 2.4);
        eq.spec.exclusion = 0.25;
        eqs_[eq.id] = eq;
    }
    {  // Fp: u_t + x u_y = |x|^beta u_xx
        Equation eq;
        eq.id = "Fp";
        eq.vars = {"t", "x", "y"};
        eq.unknown = "u";
        ExprPtr ut = jet("u", eq.vars, {1, 0, 0}), uy = jet("u", eq.vars, {0, 0, 1}),
                uxx = jet("u", eq.vars, {0, 2, 0});
        ExprPtr diff = pw(eabs(sym("x")), sym("beta"));
        eq.residual = simplify(ut + sym("x") * uy - diff * uxx);
        eq.solved_jet = "u_t";
        eq.solved_rhs = simplify(diff * uxx - sym("x") * uy);
        eq.free_params = {"beta"};
        eq.citation = "gauged family, alpha = 0";
        eq.spec.box("x", -2.3, 2.3).box("beta", -1.0, 2.4);
        eq.spec.exclusion = 0.25;
        eqs_[eq.id] = eq;
    }
    {  // Fp_noabs: u_t + x u_y = x^beta u_xx (odd-denominator rational beta)
        Equation eq;
        eq.id = "Fp_noabs";
        eq.vars = {"t", "x", "y"};
        eq.unknown = "u";
        ExprPtr ut = jet("u", eq.vars, {1, 0, 0}), uy = jet("u", eq.vars, {0, 0, 1}),
                uxx = jet("u", eq.vars, {0, 2, 0});
        ExprPtr diff = pw(sym("x"), sym("beta"));
        eq.residual = simplify(ut + sym("x") * uy - diff * uxx);
        eq.solved_jet = "u_t";
        eq.solved_rhs = simplify(diff * uxx - sym("x") * uy);
        eq.free_params = {"beta"};
        eq.citation = "no-absolute-value variant";
        eq.spec.box("x", 0.3, 2.3);
        eqs_[eq.id] = eq;
    }
    {  // heat: theta_1 = theta_22 over (z1, z2)
        Equation eq;
        eq.id = "heat";
        eq.vars = {"z1", "z2"};
        eq.unknown = "theta";
        ExprPtr t1 = jet("theta", eq.vars, {1, 0}), t22 = jet("theta", eq.vars, {0, 2});
        eq.residual = simplify(t1 - t22);
        eq.solved_jet = "theta_1";
        eq.solved_rhs = t22;
        eq.citation = "(1+1)-dimensional linear heat equation";
        eq.spec.box("z1", 0.3, 2.2).box("z2", 0.3, 2.2);
        eqs_[eq.id] = eq;
    }
    {  // invsq: theta_1 = theta_22 + mu z2^-2 theta
        Equation eq;
        eq.id = "invsq";
        eq.vars = {"z1", "z2"};
        eq.unknown = "theta";
        ExprPtr t1 = jet("theta", eq.vars, {1, 0}), t22 = jet("theta", eq.vars, {0, 2});
        ExprPtr rhs = simplify(t22 + sym("mu") * pw(sym("z2"), -2) * sym("theta"));
        eq.residual = simplify(t1 - rhs);
        eq.solved_jet = "theta_1";
        eq.solved_rhs = rhs;
        eq.free_params = {"mu"};
        eq.citation = "heat equation with inverse square potential";
        eq.spec.box("z1", 0.3, 2.2).box("z2", 0.3, 2.2);
        eqs_[eq.id] = eq;
    }
    {  // heatV_invsq: u_t - u_xx + mubar x^-2 u = 0 (Darboux convention)
        Equation eq = heat_with_potential(simplify(sym("mubar") * pw(sym("x"), -2)));
        eq.id = "heatV_invsq";
        eq.free_params = {"mubar"};
        eq.citation = "inverse-square potential, Darboux sign convention";
        eqs_[eq.id] = eq;
    }
    {  // red11
        Equation eq;
        eq.id = "red11";
        eq.vars = {"z1", "z2"};
        eq.unknown = "w";
        ExprPtr w = sym("w"), w1 = jet("w", eq.vars, {1, 0}), w2 = jet("w", eq.vars, {0, 1}),
                w22 = jet("w", eq.vars, {0, 2});
        ExprPtr be = sym("beta"), eps = sym("eps"), kap = sym("kappa");
        ExprPtr z1 = sym("z1"), z2 = sym("z2");
        eq.residual =
            simplify((eps * (be - num(2)) * z2 + (num(3) - be) * z1) * w1 -
                     eps * (be - num(2)) * pw(eabs(z2), be) * w22 + z2 * w2 + kap * (be - num(3)) * w);
        eq.free_params = {"beta", "eps", "kappa"};
        eq.citation = "codimension-one reduction, dilation subalgebra";
        eq.spec.box("z1", 0.3, 2.2).box("z2", 0.3, 2.2);
        eqs_[eq.id] = eq;
    }
    {  // red12: (z2 - eps) w_1 = |z2|^beta w_22 - eps kappa w
        Equation eq;
        eq.id = "red12";
        eq.vars = {"z1", "z2"};
        eq.unknown = "w";
        ExprPtr w = sym("w"), w1 = jet("w", eq.vars, {1, 0}), w22 = jet("w", eq.vars, {0, 2});
        ExprPtr be = sym("beta"), eps = sym("eps"), kap = sym("kappa"), z2 = sym("z2");
        eq.residual = simplify((z2 - eps) * w1 - pw(eabs(z2), be) * w22 + eps * kap * w);
        eq.free_params = {"beta", "eps", "kappa"};
        eq.citation = "codimension-one reduction, traveling subalgebra";
        eq.spec.box("z1", 0.3, 2.2).box("z2", 1.4, 2.4);
        eqs_[eq.id] = eq;
    }
    {  // red13: w_1 = |z2|^beta w_22 - delta z2 w
        Equation eq;
        eq.id = "red13";
        eq.vars = {"z1", "z2"};
        eq.unknown = "w";
        ExprPtr w = sym("w"), w1 = jet("w", eq.vars, {1, 0}), w22 = jet("w", eq.vars, {0, 2});
        ExprPtr be = sym("beta"), del = sym("delta"), z2 = sym("z2");
        eq.residual = simplify(w1 - pw(eabs(z2), be) * w22 + del * z2 * w);
        eq.free_params = {"beta", "delta"};
        eq.citation = "codimension-one reduction, y-translation subalgebra";
        eq.spec.box("z1", 0.3, 2.2).box("z2", 0.3, 2.2);
        eqs_[eq.id] = eq;
    }
    {  // redcanon: canonical reduced form
        Equation eq;
        eq.id = "redcanon";
        eq.vars = {"z1", "z2"};
        eq.unknown = "w";
        ExprPtr w = sym("w"), w1 = jet("w", eq.vars, {1, 0}), w22 = jet("w", eq.vars, {0, 2});
        ExprPtr be = sym("beta"), del = sym("delta"), eps = sym("eps"), z2 = sym("z2");
        ExprPtr bm2 = be - num(2);
        ExprPtr pot = be * (be - num(4)) * pw(num(4) * pw(z2, 2) * pw(bm2, 2), -1) -
                      eps * del * pw(pw(bm2, 2) * pw(z2, 2) * num(1, 4),
                                     simplify(pw(num(2) - be, -1)));
        eq.residual = simplify(w1 - w22 - pot * w);
        eq.free_params = {"beta", "delta", "eps"};
        eq.citation = "canonical form of the reduced equation";
        eq.spec.box("z1", 0.3, 2.2).box("z2", 0.3, 2.2);
        eqs_[eq.id] = eq;
    }
    {  // ode_cod2: |omega|^beta phi'' = (eps omega + kappa) phi
        Equation eq;
        eq.id = "ode_cod2";
        eq.vars = {"omega"};
        eq.unknown = "phi";
        ExprPtr p = sym("phi"), p11 = jet("phi", eq.vars, {2});
        ExprPtr be = sym("beta"), eps = sym("eps"), kap = sym("kappa"), om = sym("omega");
        eq.residual = simplify(pw(eabs(om), be) * p11 - (eps * om + kap) * p);
        eq.free_params = {"beta", "eps", "kappa"};
        eq.citation = "codimension-two reduction ODE";
        eq.spec.box("omega", 0.6, 4.5);
        eqs_[eq.id] = eq;
    }
    {  // whittaker: phi'' + (-1/4 + a/z + (1/4 - b^2)/z^2) phi = 0
        Equation eq;
        eq.id = "whittaker";
        eq.vars = {"z"};
        eq.unknown = "phi";
        ExprPtr p = sym("phi"), p11 = jet("phi", eq.vars, {2});
        ExprPtr a = sym("a"), b = sym("b"), z = sym("z");
        eq.residual = simplify(
            p11 + (num(-1, 4) + a * pw(z, -1) + (num(1, 4) - pw(b, 2)) * pw(z, -2)) * p);
        eq.free_params = {"a", "b"};
        eq.citation = "Whittaker equation";
        eq.spec.box("z", 0.5, 2.5);
        eqs_[eq.id] = eq;
    }
    {  // kummer_ode: z M'' + (b - z) M' - a M = 0
        Equation eq;
        eq.id = "kummer_ode";
        eq.vars = {"z"};
        eq.unknown = "M";
        ExprPtr m = sym("M"), m1 = jet("M", eq.vars, {1}), m11 = jet("M", eq.vars, {2});
        ExprPtr a = sym("a"), b = sym("b"), z = sym("z");
        eq.residual = simplify(z * m11 + (b - z) * m1 - a * m);
        eq.free_params = {"a", "b"};
        eq.citation = "Kummer equation";
        eq.spec.box("z", 0.5, 2.5);
        eqs_[eq.id] = eq;
    }
}

const EquationRegistry& EquationRegistry::instance() {
    static EquationRegistry reg;
    return reg;
}

const Equation& EquationRegistry::get(const std::string& id) const {
    auto it = eqs_.find(id);
    if (it == eqs_.end()) throw std::out_of_range("EquationRegistry: unknown id " + id);
    return it->second;
}

std::vector<std::string> EquationRegistry::ids() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : eqs_) out.push_back(k);
    return out;
}

std::string EquationRegistry::to_json() const {
    nlohmann::json root;
    root["schema"] = "equations-v1";
    nlohmann::json list = nlohmann::json::array();
    for (const auto& [id, eq] : eqs_) {
        nlohmann::json j;
        j["id"] = id;
        j["vars"] = eq.vars;
        j["unknown"] = eq.unknown;
        j["residual"] = to_string(eq.residual);
        j["parameters"] = eq.free_params;
        j["citation"] = eq.citation;
        list.push_back(j);
    }
    root["equations"] = list;
    return root.dump(2);
}

}  // namespace kbsym
