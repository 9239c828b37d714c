#include "kbsym/recursionops.hpp"

#include <algorithm>
#include <sstream>

namespace kbsym {

TotalDiffOperator TotalDiffOperator::identity() {
    TotalDiffOperator op;
    op.terms[{0, 0, 0}] = num(1);
    return op;
}

TotalDiffOperator TotalDiffOperator::monomial(int a, int b, int c, ExprPtr coeff) {
    TotalDiffOperator op;
    op.add_term(a, b, c, std::move(coeff));
    return op;
}

TotalDiffOperator& TotalDiffOperator::add_term(int a, int b, int c, ExprPtr coeff) {
    std::array<int, 3> key = {a, b, c};
    auto it = terms.find(key);
    ExprPtr next = it == terms.end() ? simplify(coeff) : simplify(add({it->second, coeff}));
    if (is_zero_expr(next))
        terms.erase(key);
    else
        terms[key] = next;
    return *this;
}

bool TotalDiffOperator::is_zero_op() const { return terms.empty(); }

std::string TotalDiffOperator::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")";
        for (int i = 0; i < k[0]; ++i) os << "*Dt";
        for (int i = 0; i < k[1]; ++i) os << "*Dx";
        for (int i = 0; i < k[2]; ++i) os << "*Dy";
    }
    return os.str();
}

TotalDiffOperator op_add(const TotalDiffOperator& a, const TotalDiffOperator& b) {
    TotalDiffOperator out = a;
    for (const auto& [k, c] : b.terms) out.add_term(k[0], k[1], k[2], c);
    return out;
}

TotalDiffOperator op_scale(const ExprPtr& s, const TotalDiffOperator& a) {
    TotalDiffOperator out;
    for (const auto& [k, c] : a.terms) out.add_term(k[0], k[1], k[2], simplify(mul({s, c})));
    return out;
}

TotalDiffOperator op_sub(const TotalDiffOperator& a, const TotalDiffOperator& b) {
    return op_add(a, op_scale(num(-1), b));
}

namespace {
long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
const char* kOpVars[3] = {"t", "x", "y"};
}  // namespace

TotalDiffOperator op_compose(const TotalDiffOperator& a, const TotalDiffOperator& b) {
    TotalDiffOperator out;
    for (const auto& [ka, ca] : a.terms) {
        for (const auto& [kb, cb] : b.terms) {
            // D^ka (cb D^kb .) expanded by Leibniz in the three directions
            for (int g0 = 0; g0 <= ka[0]; ++g0)
                for (int g1 = 0; g1 <= ka[1]; ++g1)
                    for (int g2 = 0; g2 <= ka[2]; ++g2) {
                        ExprPtr d = cb;
                        d = differentiate_n(d, "t", g0);
                        if (is_zero_expr(d)) continue;
                        d = differentiate_n(d, "x", g1);
                        if (is_zero_expr(d)) continue;
                        d = differentiate_n(d, "y", g2);
                        if (is_zero_expr(d)) continue;
                        long long mult = binom(ka[0], g0) * binom(ka[1], g1) * binom(ka[2], g2);
                        out.add_term(ka[0] - g0 + kb[0], ka[1] - g1 + kb[1], ka[2] - g2 + kb[2],
                                     simplify(mul({num(mult), ca, d})));
                    }
        }
    }
    return out;
}

TotalDiffOperator op_commutator(const TotalDiffOperator& a, const TotalDiffOperator& b) {
    return op_sub(op_compose(a, b), op_compose(b, a));
}

ExprPtr op_apply(const TotalDiffOperator& op, const ExprPtr& e) {
    std::vector<ExprPtr> terms;
    for (const auto& [k, c] : op.terms) {
        ExprPtr d = e;
        for (int i = 0; i < 3; ++i) d = differentiate_n(d, kOpVars[i], k[i]);
        if (is_zero_expr(d)) continue;
        terms.push_back(simplify(mul({c, d})));
    }
    return simplify(add(std::move(terms)));
}

namespace {
// deterministic small polynomial test functions in (t, x, y)
std::vector<ExprPtr> default_test_functions(int n, uint64_t seed) {
    Rng rng(seed);
    std::vector<ExprPtr> out;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    for (int i = 0; i < n; ++i) {
        std::vector<ExprPtr> terms;
        for (int j = 0; j < 4; ++j) {
            long long c = rng.int_in(-5, 5);
            if (c == 0) c = 1;
            int a = static_cast<int>(rng.int_in(0, 2));
            int b = static_cast<int>(rng.int_in(0, 2));
            int d = static_cast<int>(rng.int_in(0, 2));
            terms.push_back(simplify(mul({num(c), pw(t, a), pw(x, b), pw(y, d)})));
        }
        out.push_back(simplify(add(std::move(terms))));
    }
    return out;
}
}  // namespace

bool check_operator_identity(const TotalDiffOperator& lhs, const TotalDiffOperator& rhs,
                             const SamplingSpec& spec, const std::string& op_id) {
    TotalDiffOperator diff = op_sub(lhs, rhs);
    int idx = 0;
    for (const auto& [k, c] : diff.terms) {
        if (!is_zero(c, spec, op_id + "#coef" + std::to_string(idx++)).zero) return false;
    }
    // action agreement on random polynomial test functions
    auto tests = default_test_functions(10, derive_seed(spec.seed, op_id + "#fn"));
    for (size_t i = 0; i < tests.size(); ++i) {
        ExprPtr d = op_apply(diff, tests[i]);
        if (!is_zero(d, spec, op_id + "#act" + std::to_string(i)).zero) return false;
    }
    return true;
}

bool on_solution_equiv(const TotalDiffOperator& op1, const TotalDiffOperator& op2,
                       const Equation& eq, const std::vector<ParametricSolution>& battery,
                       const SamplingSpec& spec, const std::string& op_id) {
    TotalDiffOperator diff = op_sub(op1, op2);
    int idx = 0;
    for (const auto& sol : battery) {
        ExprPtr e = op_apply(diff, sol.expr);
        e = normalize_placeholders(e, sol.constraints);
        if (!is_zero(e, spec, op_id + "#sol" + std::to_string(idx)).zero) return false;
        // and the residual of the mapped expression stays zero
        ParametricSolution moved{sol.id, eq.id, simplify(op_apply(op1, sol.expr)),
                                 sol.constraints, sol.citation};
        if (!verify_solution(eq, moved, spec, op_id + "#res" + std::to_string(idx)).pass)
            return false;
        ++idx;
    }
    return true;
}

// ---- named operators ----

TotalDiffOperator rop_Pt() { return TotalDiffOperator::monomial(1, 0, 0, num(1)); }
TotalDiffOperator rop_Py() { return TotalDiffOperator::monomial(0, 0, 1, num(1)); }

TotalDiffOperator rop_Dbeta(const ExprPtr& beta) {
    TotalDiffOperator op;
    op.add_term(1, 0, 0, simplify((num(2) - beta) * sym("t")));
    op.add_term(0, 1, 0, sym("x"));
    op.add_term(0, 0, 1, simplify((num(3) - beta) * sym("y")));
    return op;
}

TotalDiffOperator rop_Pt_hat(const ExprPtr& beta) {
    TotalDiffOperator op;
    op.add_term(0, 0, 1, simplify(num(-1) * sym("x")));
    op.add_term(0, 2, 0, pw(eabs(sym("x")), beta));
    return op;
}

TotalDiffOperator rop_Dbeta_hat(const ExprPtr& beta) {
    TotalDiffOperator op = op_scale(simplify((num(2) - beta) * sym("t")), rop_Pt_hat(beta));
    op.add_term(0, 1, 0, sym("x"));
    op.add_term(0, 0, 1, simplify((num(3) - beta) * sym("y")));
    return op;
}

TotalDiffOperator rop_D1_hat() {
    TotalDiffOperator op;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    op.add_term(0, 2, 0, simplify(t * x));
    op.add_term(0, 1, 0, x);
    op.add_term(0, 0, 1, simplify(num(2) * y - t * x));
    return op;
}

TotalDiffOperator rop_D4_hat() {
    TotalDiffOperator op;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    op.add_term(0, 2, 0, simplify(num(-2) * t * pw(x, 4)));
    op.add_term(0, 1, 0, x);
    op.add_term(0, 0, 1, simplify(num(2) * t * x - y));
    return op;
}

TotalDiffOperator rop_Dm1_hat() {
    TotalDiffOperator op;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    op.add_term(0, 2, 0, simplify(num(3) * t * pw(x, -1)));
    op.add_term(0, 1, 0, x);
    op.add_term(0, 0, 1, simplify(num(4) * y - num(3) * t * x));
    return op;
}

TotalDiffOperator rop_D6_hat() {
    TotalDiffOperator op;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    op.add_term(0, 2, 0, simplify(num(-4) * t * pw(x, 6)));
    op.add_term(0, 1, 0, x);
    op.add_term(0, 0, 1, simplify(num(4) * t * x - num(3) * y));
    return op;
}

TotalDiffOperator rop_P0() { return TotalDiffOperator::monomial(0, 0, 1, num(1)); }

TotalDiffOperator rop_P1() {
    TotalDiffOperator op;
    op.add_term(0, 1, 0, num(1));
    op.add_term(0, 0, 1, sym("t"));
    return op;
}

TotalDiffOperator rop_P2() {
    TotalDiffOperator op;
    op.add_term(0, 1, 0, simplify(num(2) * sym("t")));
    op.add_term(0, 0, 1, pw(sym("t"), 2));
    op.add_term(0, 0, 0, sym("x"));
    return op;
}

TotalDiffOperator rop_P3() {
    TotalDiffOperator op;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    op.add_term(0, 1, 0, simplify(num(3) * pw(t, 2)));
    op.add_term(0, 0, 1, pw(t, 3));
    op.add_term(0, 0, 0, simplify(num(-3) * (y - t * x)));
    return op;
}

TotalDiffOperator rop_D0() {
    TotalDiffOperator op;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    op.add_term(1, 0, 0, simplify(num(2) * t));
    op.add_term(0, 1, 0, x);
    op.add_term(0, 0, 1, simplify(num(3) * y));
    op.add_term(0, 0, 0, num(2));
    return op;
}

TotalDiffOperator rop_K0() {
    TotalDiffOperator op;
    ExprPtr t = sym("t"), x = sym("x"), y = sym("y");
    op.add_term(1, 0, 0, pw(t, 2));
    op.add_term(0, 1, 0, simplify(t * x + num(3) * y));
    op.add_term(0, 0, 1, simplify(num(3) * t * y));
    op.add_term(0, 0, 0, simplify(pw(x, 2) + num(2) * t));
    return op;
}

TotalDiffOperator rop_K2() {
    TotalDiffOperator op;
    ExprPtr x = sym("x"), y = sym("y");
    op.add_term(0, 1, 0, simplify(num(2) * x * y));
    op.add_term(0, 0, 1, pw(y, 2));
    op.add_term(0, 0, 0, x);
    return op;
}

TotalDiffOperator rop_G() {
    TotalDiffOperator op;
    op.add_term(0, 1, 0, sym("t"));
    op.add_term(0, 0, 0, simplify(num(1, 2) * sym("x")));
    return op;
}

TotalDiffOperator rop_R(long long l) {
    TotalDiffOperator op;
    op.add_term(0, 1, 0, num(1));
    op.add_term(0, 0, 0, simplify(num(-l) * pw(sym("x"), -1)));
    return op;
}

// ---- noncommutative polynomial machinery ----

NCPolynomial NCPolynomial::word(std::vector<int> w, ExprPtr c) {
    NCPolynomial p;
    c = simplify(c);
    if (!is_zero_expr(c)) p.coeffs[std::move(w)] = std::move(c);
    return p;
}

bool NCPolynomial::is_zero_poly() const { return coeffs.empty(); }

NCPolynomial& NCPolynomial::prune() {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        it->second = simplify(it->second);
        if (is_zero_expr(it->second))
            it = coeffs.erase(it);
        else
            ++it;
    }
    return *this;
}

NCPolynomial nc_add(const NCPolynomial& a, const NCPolynomial& b) {
    NCPolynomial out = a;
    for (const auto& [w, c] : b.coeffs) {
        auto it = out.coeffs.find(w);
        if (it == out.coeffs.end())
            out.coeffs[w] = c;
        else
            it->second = simplify(add({it->second, c}));
    }
    return out.prune();
}

NCPolynomial nc_scale(const ExprPtr& s, const NCPolynomial& a) {
    NCPolynomial out;
    for (const auto& [w, c] : a.coeffs) out.coeffs[w] = simplify(mul({s, c}));
    return out.prune();
}

NCPolynomial nc_mul(const NCPolynomial& a, const NCPolynomial& b) {
    NCPolynomial out;
    for (const auto& [wa, ca] : a.coeffs)
        for (const auto& [wb, cb] : b.coeffs) {
            std::vector<int> w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            auto it = out.coeffs.find(w);
            ExprPtr prod = simplify(mul({ca, cb}));
            if (it == out.coeffs.end())
                out.coeffs[std::move(w)] = prod;
            else
                it->second = simplify(add({it->second, prod}));
        }
    return out.prune();
}

bool nc_equal(const NCPolynomial& a, const NCPolynomial& b, const SamplingSpec& spec,
              const std::string& op_id) {
    NCPolynomial d = nc_add(a, nc_scale(num(-1), b));
    int idx = 0;
    for (const auto& [w, c] : d.coeffs)
        if (!is_zero(c, spec, op_id + "#w" + std::to_string(idx++)).zero) return false;
    return true;
}

NCPolynomial normal_form(NCPolynomial p, const ReductionSystem& sys) {
    for (int guard = 0; guard < 100000; ++guard) {
        p.prune();
        bool rewrote = false;
        for (const auto& [w, c] : p.coeffs) {
            size_t pos = 0;
            bool found = false;
            for (size_t i = 0; i + 1 < w.size(); ++i) {
                if (w[i] > w[i + 1]) {
                    pos = i;
                    found = true;
                    break;
                }
            }
            if (!found) continue;
            auto rule = sys.rules.find({w[pos], w[pos + 1]});
            if (rule == sys.rules.end())
                throw std::logic_error("normal_form: missing rule for inversion");
            NCPolynomial prefix = NCPolynomial::word(std::vector<int>(w.begin(), w.begin() + pos),
                                                     num(1));
            NCPolynomial suffix = NCPolynomial::word(
                std::vector<int>(w.begin() + pos + 2, w.end()), num(1));
            NCPolynomial replacement = nc_mul(nc_mul(prefix, rule->second), suffix);
            NCPolynomial rest = p;
            rest.coeffs.erase(w);
            p = nc_add(rest, nc_scale(c, replacement));
            rewrote = true;
            break;
        }
        if (!rewrote) return p;
    }
    throw std::logic_error("normal_form: rewriting did not terminate");
}

void ReductionSystem::check_confluence(const SamplingSpec& spec, const std::string& op_id) const {
    const int n = static_cast<int>(alphabet.size());
    for (int cL = 0; cL < n; ++cL)
        for (int bL = 0; bL < cL; ++bL)
            for (int aL = 0; aL < bL; ++aL) {
                // word (cL bL aL): rules (cL,bL) and (bL,aL) overlap
                std::vector<int> w = {cL, bL, aL};
                NCPolynomial r1 = nc_mul(rules.at({cL, bL}), NCPolynomial::word({aL}, num(1)));
                NCPolynomial r2 = nc_mul(NCPolynomial::word({cL}, num(1)), rules.at({bL, aL}));
                NCPolynomial n1 = normal_form(r1, *this);
                NCPolynomial n2 = normal_form(r2, *this);
                if (!nc_equal(n1, n2, spec,
                              op_id + "#amb" + std::to_string(cL) + std::to_string(bL) +
                                  std::to_string(aL)))
                    throw NonConfluent("ambiguity " + alphabet[cL] + alphabet[bL] + alphabet[aL] +
                                       " is not resolvable");
            }
}

ReductionSystem system_general_beta(const ExprPtr& beta) {
    ReductionSystem sys;
    sys.alphabet = {"Dbeta_hat", "Py", "Pt_hat"};
    // Pt_hat Dbeta_hat = Dbeta_hat Pt_hat + (2 - beta) Pt_hat
    sys.rules[{2, 0}] =
        nc_add(NCPolynomial::word({0, 2}, num(1)),
               NCPolynomial::word({2}, simplify(num(2) - beta)));
    // Py Dbeta_hat = Dbeta_hat Py + (3 - beta) Py
    sys.rules[{1, 0}] =
        nc_add(NCPolynomial::word({0, 1}, num(1)),
               NCPolynomial::word({1}, simplify(num(3) - beta)));
    // Pt_hat Py = Py Pt_hat
    sys.rules[{2, 1}] = NCPolynomial::word({1, 2}, num(1));
    return sys;
}

ReductionSystem system_beta0() {
    ReductionSystem sys;
    sys.alphabet = {"P3", "P2", "P1", "P0"};
    auto swap_rule = [](int hi, int lo) { return NCPolynomial::word({lo, hi}, num(1)); };
    // letters: P3 = 0, P2 = 1, P1 = 2, P0 = 3
    sys.rules[{1, 0}] = swap_rule(1, 0);                                     // P2 P3
    sys.rules[{2, 0}] = swap_rule(2, 0);                                     // P1 P3
    sys.rules[{3, 0}] = nc_add(swap_rule(3, 0), NCPolynomial::word({}, num(-3)));  // [P0,P3]=-3
    sys.rules[{2, 1}] = nc_add(swap_rule(2, 1), NCPolynomial::word({}, num(1)));   // [P1,P2]=1
    sys.rules[{3, 1}] = swap_rule(3, 1);                                     // P0 P2
    sys.rules[{3, 2}] = swap_rule(3, 2);                                     // P0 P1
    return sys;
}

ExprPtr apply_word(const std::vector<int>& word, const std::vector<TotalDiffOperator>& table,
                   const ExprPtr& e) {
    ExprPtr v = e;
    for (size_t i = word.size(); i-- > 0;) v = op_apply(table[word[i]], v);
    return v;
}

ExprPtr apply_ncpoly(const NCPolynomial& p, const std::vector<TotalDiffOperator>& table,
                     const ExprPtr& e) {
    std::vector<ExprPtr> terms;
    for (const auto& [w, c] : p.coeffs) terms.push_back(simplify(mul({c, apply_word(w, table, e)})));
    return simplify(add(std::move(terms)));
}

std::vector<LadderStep> ladder(const TotalDiffOperator& op, const ParametricSolution& seed, int k,
                               const Equation& eq, const SamplingSpec& spec,
                               const std::string& op_id) {
    std::vector<LadderStep> out;
    ExprPtr cur = seed.expr;
    for (int i = 1; i <= k; ++i) {
        cur = simplify(op_apply(op, cur));
        ParametricSolution step{seed.id + "^" + std::to_string(i), eq.id, cur, seed.constraints,
                                seed.citation};
        VerifyReport rep = verify_solution(eq, step, spec, op_id + "#k" + std::to_string(i));
        out.push_back({cur, rep});
        if (!rep.pass)
            throw VerificationFailed("ladder: iterate " + std::to_string(i) + " of " + seed.id +
                                     " failed: " + rep.witness);
    }
    return out;
}

}  // namespace kbsym
