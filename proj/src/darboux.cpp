#include "kbsym/darboux.hpp"

#include "kbsym/recursionops.hpp"

namespace kbsym {

namespace {
// determinant by minor expansion with expand-simplify at each level
ExprPtr det_expand(const std::vector<std::vector<ExprPtr>>& m) {
    const size_t n = m.size();
    if (n == 1) return m[0][0];
    std::vector<ExprPtr> terms;
    for (size_t j = 0; j < n; ++j) {
        if (is_zero_expr(m[0][j])) continue;
        std::vector<std::vector<ExprPtr>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<ExprPtr> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        ExprPtr cof = det_expand(minor);
        terms.push_back(simplify(mul({num(j % 2 == 0 ? 1 : -1), m[0][j], cof})));
    }
    return expand(simplify(add(std::move(terms))));
}
}  // namespace

ExprPtr wronskian(const std::vector<ExprPtr>& fs, const std::string& xvar) {
    if (fs.empty()) throw std::invalid_argument("wronskian: empty tuple");
    const size_t k = fs.size();
    std::vector<std::vector<ExprPtr>> m(k, std::vector<ExprPtr>(k));
    for (size_t col = 0; col < k; ++col) {
        ExprPtr d = fs[col];
        for (size_t row = 0; row < k; ++row) {
            m[row][col] = d;
            d = differentiate(d, xvar);
        }
    }
    return det_expand(m);
}

ExprPtr darboux_transform(const std::vector<ExprPtr>& fs, const ExprPtr& u,
                          const std::string& xvar) {
    std::vector<ExprPtr> all = fs;
    all.push_back(u);
    ExprPtr top = wronskian(all, xvar);
    ExprPtr bot = wronskian(fs, xvar);
    if (is_zero_expr(simplify(bot))) throw SingularWronskian("darboux_transform: zero Wronskian");
    return simplify(top * pw(bot, -1));
}

ExprPtr transformed_potential(const ExprPtr& V, const std::vector<ExprPtr>& fs,
                              const SamplingSpec& spec, const std::string& op_id) {
    Equation eq = heat_with_potential(V);
    int idx = 0;
    for (const auto& f : fs) {
        ParametricSolution sol{"seed" + std::to_string(idx), eq.id, f, {}, ""};
        if (!verify_solution(eq, sol, spec, op_id + "#seed" + std::to_string(idx)).pass)
            throw SeedNotSolution("transformed_potential: seed does not solve the V-equation");
        ++idx;
    }
    ExprPtr W = wronskian(fs);
    ExprPtr ratio = simplify(differentiate(W, "x") * pw(W, -1));
    return simplify(V - num(2) * differentiate(ratio, "x"));
}

ExprPtr heat_polynomial(int k) {
    if (k < 0) throw std::invalid_argument("heat_polynomial: negative degree");
    // (2^k / k!) G^k 1
    ExprPtr p = num(1);
    TotalDiffOperator G = rop_G();
    Rational fact(1);
    for (int i = 1; i <= k; ++i) {
        p = op_apply(G, p);
        fact = fact * Rational(i);
    }
    p = expand(simplify(mul({num(Rational(2).pow_int(k) / fact), p})));
    // cross-check odd degrees against the explicit formula
    if (k % 2 == 1) {
        int m = (k + 1) / 2;
        std::vector<ExprPtr> terms;
        Rational tfact(1);
        for (int j = 0; j <= m - 1; ++j) {
            // t^j/j! * x^{2m-1-2j}/(2m-1-2j)!
            if (j > 0) tfact = tfact * Rational(j);
            Rational xfact(1);
            for (int i = 2; i <= 2 * m - 1 - 2 * j; ++i) xfact = xfact * Rational(i);
            terms.push_back(simplify(mul({num(Rational(1) / (tfact * xfact)), pw(sym("t"), j),
                                          pw(sym("x"), 2 * m - 1 - 2 * j)})));
        }
        ExprPtr explicit_form = expand(simplify(add(std::move(terms))));
        if (!is_zero_expr(simplify(p - explicit_form)))
            throw std::logic_error("heat_polynomial: generator and explicit formula disagree");
    }
    return p;
}

bool ladder_identity_check(int m) {
    ExprPtr p = heat_polynomial(2 * m - 1);
    for (int l = 1; l <= m; ++l) p = expand(simplify(op_apply(rop_R(l), p)));
    return is_zero_expr(simplify(p));
}

bool heat_polynomial_derivative_check(int kmax) {
    for (int k = 1; k <= kmax; ++k) {
        ExprPtr d = expand(differentiate(heat_polynomial(k), "x"));
        if (!is_zero_expr(simplify(d - heat_polynomial(k - 1)))) return false;
    }
    return true;
}

MuShiftResult mu_shift_check(const Rational& alpha, const Rational& mu, const SamplingSpec& spec,
                             const std::string& op_id) {
    if (alpha * alpha - alpha + mu != Rational(0))
        throw std::invalid_argument("mu_shift_check: alpha^2 - alpha + mu != 0");
    // theta-convention: u_t = u_xx + mu x^-2 u, i.e. V = -mu x^-2
    ExprPtr V = simplify(num(-mu) * pw(sym("x"), -2));
    ExprPtr seed = pw(eabs(sym("x")), num(alpha));
    ExprPtr Vt = transformed_potential(V, {seed}, spec, op_id);
    // expect Vt = -(mu - 2 alpha) x^-2
    MuShiftResult r;
    r.mu_tilde_claim = mu - Rational(2) * alpha;
    ExprPtr expect = simplify(num(-r.mu_tilde_claim) * pw(sym("x"), -2));
    r.agrees = is_zero(simplify(Vt - expect), spec, op_id + "#cmp").zero;
    // recover the oracle value from Vt = -mu_tilde x^-2 at x = 1
    std::map<std::string, Rational> pt{{"x", Rational(1)}, {"t", Rational(1)}};
    r.mu_tilde_oracle = -evaluate_exact(Vt, pt);
    return r;
}

}  // namespace kbsym
