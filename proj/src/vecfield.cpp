#include "kbsym/vecfield.hpp"

#include <algorithm>

namespace kbsym {

ExprPtr VectorField::coeff(const std::string& coord) const {
    for (const auto& [c, e] : comps)
        if (c == coord) return e;
    return num(0);
}

std::vector<std::string> VectorField::coords() const {
    std::vector<std::string> out;
    for (const auto& [c, e] : comps) out.push_back(c);
    return out;
}

bool VectorField::is_zero_field() const {
    for (const auto& [c, e] : comps)
        if (!is_zero_expr(simplify(e))) return false;
    return true;
}

VectorField make_vf(std::vector<std::pair<std::string, ExprPtr>> comps) {
    VectorField v;
    for (auto& [c, e] : comps) v.comps.emplace_back(c, simplify(e));
    return v;
}

ExprPtr vf_apply(const VectorField& Q, const ExprPtr& f) {
    ExprPtr out = num(0);
    for (const auto& [c, e] : Q.comps) out = out + e * differentiate(f, c);
    return out;
}

namespace {
std::vector<std::string> union_coords(const VectorField& a, const VectorField& b) {
    std::vector<std::string> out = a.coords();
    for (const auto& c : b.coords())
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    return out;
}
}  // namespace

VectorField vf_add(const VectorField& a, const VectorField& b) {
    VectorField out;
    for (const auto& c : union_coords(a, b)) out.comps.emplace_back(c, a.coeff(c) + b.coeff(c));
    return out;
}

VectorField vf_scale(const ExprPtr& s, const VectorField& a) {
    VectorField out;
    for (const auto& [c, e] : a.comps) out.comps.emplace_back(c, simplify(s * e));
    return out;
}

VectorField commutator(const VectorField& a, const VectorField& b) {
    VectorField out;
    for (const auto& c : union_coords(a, b))
        out.comps.emplace_back(c, simplify(vf_apply(a, b.coeff(c)) - vf_apply(b, a.coeff(c))));
    return out;
}

ExprPtr prolong2_apply(const VectorField& Q, const Equation& eq) {
    const size_t n = eq.vars.size();
    // characteristic Q[u] = eta - sum tau_i u_i
    ExprPtr Qc = Q.coeff(eq.unknown);
    for (size_t i = 0; i < n; ++i) {
        std::vector<int> J(n, 0);
        J[i] = 1;
        Qc = Qc - Q.coeff(eq.vars[i]) * sym(jet_name(eq.unknown, eq.vars, J));
    }
    Qc = simplify(Qc);

    const ExprPtr& R = eq.residual;
    ExprPtr crit = num(0);
    for (size_t i = 0; i < n; ++i) crit = crit + Q.coeff(eq.vars[i]) * differentiate(R, eq.vars[i]);
    crit = crit + Q.coeff(eq.unknown) * differentiate(R, eq.unknown);

    std::map<std::vector<int>, ExprPtr> djq;  // D_J Q[u] cache
    for (const auto& s : free_symbols(R)) {
        std::vector<int> J;
        if (!parse_jet(s, eq.unknown, eq.vars, J)) continue;
        ExprPtr dRds = differentiate(R, s);
        if (is_zero_expr(dRds)) continue;
        auto it = djq.find(J);
        if (it == djq.end()) {
            ExprPtr d = Qc;
            for (size_t i = 0; i < n; ++i)
                for (int k = 0; k < J[i]; ++k) d = total_derivative(d, i, eq.unknown, eq.vars);
            it = djq.emplace(J, std::move(d)).first;
        }
        ExprPtr etaJ = it->second;
        for (size_t i = 0; i < n; ++i) {
            std::vector<int> Ji = J;
            Ji[i] += 1;
            etaJ = etaJ + Q.coeff(eq.vars[i]) * sym(jet_name(eq.unknown, eq.vars, Ji));
        }
        crit = crit + simplify(etaJ) * dRds;
    }
    return simplify(eliminate_solved(simplify(crit), eq));
}

IsZeroResult check_lie_symmetry(const VectorField& Q, const Equation& eq, SamplingSpec spec,
                                const std::string& op_id) {
    ExprPtr crit = prolong2_apply(Q, eq);
    return is_zero(crit, spec, op_id);
}

std::optional<std::vector<Rational>> decompose_in_basis(const VectorField& Q,
                                                        const std::vector<VectorField>& basis,
                                                        const SamplingSpec& spec,
                                                        const std::string& op_id) {
    std::vector<std::string> coords = Q.coords();
    for (const auto& b : basis)
        for (const auto& c : b.coords())
            if (std::find(coords.begin(), coords.end(), c) == coords.end()) coords.push_back(c);
    std::vector<ExprPtr> target;
    std::vector<std::vector<ExprPtr>> basis_comps(basis.size());
    for (const auto& c : coords) {
        target.push_back(Q.coeff(c));
        for (size_t k = 0; k < basis.size(); ++k) basis_comps[k].push_back(basis[k].coeff(c));
    }
    // coefficients are functions of all coordinates
    std::vector<std::string> vars;
    for (const auto& e : target) collect_symbols(e, vars);
    for (const auto& bc : basis_comps)
        for (const auto& e : bc) collect_symbols(e, vars);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return decompose_in_span(target, basis_comps, vars, spec, op_id);
}

namespace {

VectorField vf4(ExprPtr tau, ExprPtr xix, ExprPtr xiy, ExprPtr eta) {
    return make_vf({{"t", std::move(tau)}, {"x", std::move(xix)}, {"y", std::move(xiy)},
                    {"u", std::move(eta)}});
}

}  // namespace

GeneratorRegistry::GeneratorRegistry() {
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y"), u = sym("u");
    ExprPtr beta = sym("beta"), alpha = sym("alpha");
    ExprPtr zero = num(0);

    auto reg = [&](const std::string& name, VectorField f, std::vector<std::string> eqs,
                   std::map<std::string, ExprPtr> params, const std::string& cite) {
        entries_[name] = Entry{name, std::move(f), std::move(eqs), std::move(params), cite};
    };

    // kernel generators, invariant for every beta
    reg("Pt", vf4(num(1), zero, zero, zero), {"Fp", "F", "Fp_noabs"}, {}, "kernel algebra");
    reg("Py", vf4(zero, zero, num(1), zero), {"Fp", "F", "Fp_noabs"}, {}, "kernel algebra");
    reg("I", vf4(zero, zero, zero, u), {"Fp", "F", "Fp_noabs"}, {}, "kernel algebra");
    reg("Z1", vf4(zero, zero, zero, num(1)), {"Fp", "F", "Fp_noabs"}, {}, "superposition, f = 1");
    reg("Zx", vf4(zero, zero, zero, x), {"Fp", "F", "Fp_noabs"}, {}, "superposition, f = x");
    reg("Ztxy", vf4(zero, zero, zero, simplify(t * x - y)), {"Fp", "F", "Fp_noabs"}, {},
        "superposition, f = tx - y");

    // general-beta dilation
    reg("Dbeta",
        vf4(simplify((num(2) - beta) * t), x, simplify((num(3) - beta) * y), zero), {"Fp"}, {},
        "general-case dilation");
    reg("DbetaAlpha",
        vf4(simplify((num(2) - beta) * t), simplify(x - alpha),
            simplify((num(3) - beta) * y - alpha * t), zero),
        {"F"}, {}, "shifted dilation of the ungauged family");

    // beta = 0 extension
    reg("D0", vf4(simplify(num(2) * t), x, simplify(num(3) * y), simplify(num(-2) * u)), {"Fp"},
        {{"beta", num(0)}}, "beta = 0 dilation");
    reg("K0",
        vf4(simplify(pw(t, 2)), simplify(t * x + num(3) * y), simplify(num(3) * t * y),
            simplify(num(-1) * (pw(x, 2) + num(2) * t) * u)),
        {"Fp"}, {{"beta", num(0)}}, "beta = 0 special conformal");
    reg("P3",
        vf4(zero, simplify(num(3) * pw(t, 2)), simplify(pw(t, 3)),
            simplify(num(3) * (y - t * x) * u)),
        {"Fp"}, {{"beta", num(0)}}, "beta = 0 cubic boost");
    reg("P2", vf4(zero, simplify(num(2) * t), simplify(pw(t, 2)), simplify(num(-1) * x * u)),
        {"Fp"}, {{"beta", num(0)}}, "beta = 0 quadratic boost");
    reg("P1", vf4(zero, num(1), t, zero), {"Fp"}, {{"beta", num(0)}}, "beta = 0 Galilei boost");
    reg("P0", vf4(zero, zero, num(1), zero), {"Fp"}, {{"beta", num(0)}}, "y-translation");

    // beta = 2 extension
    reg("D2", vf4(zero, x, y, zero), {"Fp"}, {{"beta", num(2)}}, "beta = 2 dilation");
    reg("K2",
        vf4(zero, simplify(num(2) * x * y), simplify(pw(y, 2)), simplify(num(-1) * x * u)),
        {"Fp"}, {{"beta", num(2)}}, "beta = 2 special conformal");

    // beta = 5 counterparts (no-abs equation)
    reg("D5", vf4(simplify(num(3) * t), simplify(num(-1) * x), simplify(num(2) * y),
                  simplify(num(-3) * u)),
        {"Fp_noabs"}, {{"beta", num(5)}}, "beta = 5 dilation");
    reg("K5",
        vf4(simplify(num(3) * t * y), simplify(num(-1) * x * (num(3) * t * x + y)),
            simplify(pw(y, 2)),
            simplify(num(-1) * (num(3) * t * x + num(3) * y + pw(x, -2)) * u)),
        {"Fp_noabs"}, {{"beta", num(5)}}, "beta = 5 special conformal");
    reg("P3_5",
        vf4(simplify(pw(y, 3)), simplify(num(-3) * pw(x, 2) * pw(y, 2)), zero,
            simplify(num(-3) * (x * pw(y, 2) - t + pw(x, -1) * y) * u)),
        {"Fp_noabs"}, {{"beta", num(5)}}, "beta = 5 cubic boost");
    reg("P2_5",
        vf4(simplify(pw(y, 2)), simplify(num(-2) * pw(x, 2) * y), zero,
            simplify(num(-1) * (num(2) * y * x + pw(x, -1)) * u)),
        {"Fp_noabs"}, {{"beta", num(5)}}, "beta = 5 quadratic boost");
    reg("P1_5", vf4(y, simplify(num(-1) * pw(x, 2)), zero, simplify(num(-1) * x * u)),
        {"Fp_noabs"}, {{"beta", num(5)}}, "beta = 5 boost");
    reg("P0_5", vf4(num(1), zero, zero, zero), {"Fp_noabs"}, {{"beta", num(5)}}, "t-translation");

    // beta = 3 counterparts (no-abs equation)
    reg("D3", vf4(t, simplify(num(-1) * x), zero, simplify(num(-1) * u)), {"Fp_noabs"},
        {{"beta", num(3)}}, "beta = 3 dilation");
    reg("K3",
        vf4(simplify(pw(t, 2)), simplify(num(-2) * t * x), zero,
            simplify(num(-1) * (num(2) * t + pw(x, -1)) * u)),
        {"Fp_noabs"}, {{"beta", num(3)}}, "beta = 3 special conformal");

    // equivalence algebra fields
    VectorField du = make_vf({{"u", num(1)}});
    VectorField xdu = make_vf({{"u", x}});
    VectorField txydu = make_vf({{"u", simplify(t * x - y)}});
    VectorField udu = make_vf({{"u", u}});
    VectorField dt = make_vf({{"t", num(1)}});
    VectorField dy = make_vf({{"y", num(1)}});
    VectorField shift_alpha = make_vf({{"x", num(1)}, {"y", t}, {"alpha", num(1)}});
    reg("E.du", du, {}, {}, "equivalence algebra");
    reg("E.xdu", xdu, {}, {}, "equivalence algebra");
    reg("E.txydu", txydu, {}, {}, "equivalence algebra");
    reg("E.udu", udu, {}, {}, "equivalence algebra");
    reg("E.dt", dt, {}, {}, "equivalence algebra");
    reg("E.dy", dy, {}, {}, "equivalence algebra");
    reg("E.shift", shift_alpha, {}, {}, "equivalence algebra of the ungauged class");

    bases_["kernel"] = {"Pt", "Py", "I", "Ztxy", "Zx", "Z1"};
    bases_["gess_beta"] = {"Pt", "Py", "Dbeta", "I"};
    bases_["gess_0"] = {"Pt", "D0", "K0", "P3", "P2", "P1", "P0", "I"};
    bases_["gess_2"] = {"Py", "D2", "K2", "Pt", "I"};
    bases_["gess_5"] = {"Py", "D5", "K5", "P3_5", "P2_5", "P1_5", "P0_5", "I"};
    bases_["gess_3"] = {"Pt", "D3", "K3", "Py", "I"};
    bases_["f0"] = {"Pt", "D0", "K0"};
    bases_["r0"] = {"P3", "P2", "P1", "P0", "I"};
    // Appendix A bases, fixed order
    bases_["gsim_F"] = {"E.du", "E.xdu", "E.txydu", "E.dy", "E.udu", "E.dt", "E.shift"};
    bases_["gsim_Fp"] = {"E.du", "E.xdu", "E.txydu", "E.udu", "E.dt", "E.dy"};
    bases_["nsim_F"] = {"E.shift", "E.dt", "E.dy", "E.txydu", "E.xdu", "E.du"};
    bases_["ncap_F"] = {"E.dt", "E.dy", "E.txydu", "E.xdu", "E.du"};
}

const GeneratorRegistry& GeneratorRegistry::instance() {
    static GeneratorRegistry reg;
    return reg;
}

const GeneratorRegistry::Entry& GeneratorRegistry::get(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw std::out_of_range("GeneratorRegistry: unknown " + name);
    return it->second;
}

std::vector<std::string> GeneratorRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

std::vector<VectorField> GeneratorRegistry::basis(const std::string& algebra_id) const {
    std::vector<VectorField> out;
    for (const auto& n : basis_labels(algebra_id)) out.push_back(get(n).field);
    return out;
}

std::vector<std::string> GeneratorRegistry::basis_labels(const std::string& algebra_id) const {
    auto it = bases_.find(algebra_id);
    if (it == bases_.end()) throw std::out_of_range("GeneratorRegistry: unknown algebra " + algebra_id);
    return it->second;
}

}  // namespace kbsym
