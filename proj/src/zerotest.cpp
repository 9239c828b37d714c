#include "kbsym/zerotest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kbsym {

uint64_t Rng::next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

long long Rng::int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
}

uint64_t derive_seed(uint64_t global_seed, const std::string& op_id) {
    uint64_t h = 1469598103934665603ULL ^ global_seed;
    for (char c : op_id) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {
bool point_ok(double v, const SamplingSpec& spec, const std::string& name, double lo, double hi) {
    if (lo < 0.0 && hi > 0.0 && std::abs(v) < spec.exclusion) return false;
    auto it = spec.avoid.find(name);
    if (it != spec.avoid.end())
        for (double p : it->second)
            if (std::abs(v - p) < spec.avoid_radius) return false;
    return true;
}
}  // namespace

double SamplingSpec::sample(Rng& rng, const std::string& name) const {
    Interval iv;
    auto it = boxes.find(name);
    if (it != boxes.end()) iv = it->second;
    for (int attempt = 0; attempt < 256; ++attempt) {
        double v = rng.in(iv.lo, iv.hi);
        if (point_ok(v, *this, name, iv.lo, iv.hi)) return v;
    }
    throw std::runtime_error("SamplingSpec: cannot sample '" + name + "' within constraints");
}

Rational SamplingSpec::sample_exact(Rng& rng, const std::string& name) const {
    Interval iv;
    auto it = boxes.find(name);
    if (it != boxes.end()) iv = it->second;
    const long long den = 97;
    for (int attempt = 0; attempt < 256; ++attempt) {
        long long lo = static_cast<long long>(std::ceil(iv.lo * den));
        long long hi = static_cast<long long>(std::floor(iv.hi * den));
        if (lo >= hi) throw std::runtime_error("SamplingSpec: empty exact box for " + name);
        long long p = rng.int_in(lo, hi);
        Rational r(p, den);
        if (point_ok(r.to_double(), *this, name, iv.lo, iv.hi)) return r;
    }
    throw std::runtime_error("SamplingSpec: cannot sample '" + name + "' within constraints");
}

IsZeroResult is_zero(const ExprPtr& raw, const SamplingSpec& spec, const std::string& op_id) {
    ExprPtr e = simplify(raw);
    IsZeroResult res;
    if (is_zero_expr(e)) {
        res.zero = true;
        return res;
    }
    std::vector<std::string> syms = free_symbols(e);
    std::vector<std::string> ph = placeholder_keys(e);

    Rng rng(derive_seed(spec.seed, op_id));

    if (exactly_evaluable(e)) {
        for (int t = 0; t < spec.exact_trials; ++t) {
            std::map<std::string, Rational> pt;
            for (const auto& s : syms) pt[s] = spec.sample_exact(rng, s);
            try {
                Rational v = evaluate_exact(e, pt);
                if (!v.is_zero()) {
                    std::ostringstream w;
                    for (const auto& [k, val] : pt) w << k << "=" << val.str() << " ";
                    w << "residual=" << v.str();
                    res.zero = false;
                    res.witness = w.str();
                    res.max_resid = std::abs(v.to_double());
                    return res;
                }
            } catch (const EvalError&) {
                continue;  // singular draw, try another point
            }
        }
    }

    int done = 0, attempts = 0;
    while (done < spec.trials && attempts < spec.trials * 64) {
        ++attempts;
        EvaluationContext ctx;
        for (const auto& s : syms) ctx.symbols[s] = cplx(spec.sample(rng, s), 0.0);
        for (const auto& key : ph) {
            double mag = rng.in(0.5, 2.0);
            double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            ctx.placeholder_values[key] = cplx(sign * mag, 0.0);
        }
        try {
            EvalResult r = evaluate_scaled(e, ctx);
            if (r.scale > 1e15) continue;  // cancellation would make the test vacuous
            double tol = std::max(spec.abs_floor, spec.rel_tol * (1.0 + r.scale));
            double m = std::abs(r.value);
            if (m > res.max_resid) res.max_resid = m;
            if (m > tol) {
                std::ostringstream w;
                for (const auto& s : syms) w << s << "=" << ctx.symbols[s].real() << " ";
                for (const auto& key : ph) w << key << "=" << ctx.placeholder_values[key].real() << " ";
                w << "|residual|=" << m << " tol=" << tol;
                res.zero = false;
                res.witness = w.str();
                return res;
            }
            ++done;
        } catch (const EvalError& err) {
            if (err.code == EvalError::Code::MissingBinding) throw;
            continue;  // singular sample; retry
        }
    }
    if (done == 0)
        throw std::runtime_error("is_zero: sampling kept hitting singular points for op " + op_id);
    res.zero = true;
    return res;
}

std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> A,
                                                 std::vector<Rational> b) {
    const size_t m = A.size();
    const size_t n = m ? A[0].size() : 0;
    std::vector<size_t> pivot_col;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && A[sel][col].is_zero()) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        std::swap(b[sel], b[row]);
        Rational inv = A[row][col].inv();
        for (size_t j = col; j < n; ++j) A[row][j] = A[row][j] * inv;
        b[row] = b[row] * inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || A[i][col].is_zero()) continue;
            Rational f = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] = A[i][j] - f * A[row][j];
            b[i] = b[i] - f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (pivot_col.size() < n) throw RankDeficientBasis("solve_exact: rank-deficient system");
    for (size_t i = row; i < m; ++i)
        if (!b[i].is_zero()) return std::nullopt;  // inconsistent: not in span
    std::vector<Rational> x(n, Rational(0));
    for (size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r];
    return x;
}

std::optional<std::vector<Rational>> decompose_in_span(
    const std::vector<ExprPtr>& target_components,
    const std::vector<std::vector<ExprPtr>>& basis_components,
    const std::vector<std::string>& vars, const SamplingSpec& spec, const std::string& op_id) {
    const size_t nb = basis_components.size();
    const size_t nc = target_components.size();
    for (const auto& bc : basis_components)
        if (bc.size() != nc) throw std::invalid_argument("decompose_in_span: component count mismatch");

    Rng rng(derive_seed(spec.seed, op_id + "#span"));
    const size_t npts = nb + 4;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> rhs;
    for (size_t p = 0; p < npts; ++p) {
        std::map<std::string, Rational> pt;
        for (const auto& v : vars) pt[v] = spec.sample_exact(rng, v);
        for (size_t c = 0; c < nc; ++c) {
            std::vector<Rational> row;
            bool bad = false;
            Rational tv(0);
            try {
                for (size_t k = 0; k < nb; ++k) row.push_back(evaluate_exact(basis_components[k][c], pt));
                tv = evaluate_exact(target_components[c], pt);
            } catch (const EvalError&) {
                bad = true;
            }
            if (bad) continue;
            A.push_back(std::move(row));
            rhs.push_back(tv);
        }
    }
    if (A.size() < nb) throw RankDeficientBasis("decompose_in_span: too few usable sample points");
    auto sol = solve_exact(A, rhs);
    if (!sol) return std::nullopt;
    // verify symbolically
    for (size_t c = 0; c < nc; ++c) {
        std::vector<ExprPtr> terms = {target_components[c]};
        for (size_t k = 0; k < nb; ++k)
            terms.push_back(mul({num(-(*sol)[k]), basis_components[k][c]}));
        if (!is_zero(simplify(add(terms)), spec, op_id + "#verify" + std::to_string(c)))
            return std::nullopt;
    }
    return sol;
}

std::optional<std::vector<Rational>> decompose_linear(const ExprPtr& target,
                                                      const std::vector<ExprPtr>& basis,
                                                      const std::vector<std::string>& vars,
                                                      const SamplingSpec& spec,
                                                      const std::string& op_id) {
    std::vector<std::vector<ExprPtr>> bc;
    for (const auto& b : basis) bc.push_back({b});
    return decompose_in_span({target}, bc, vars, spec, op_id);
}

}  // namespace kbsym
