#include "kbsym/liealg.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace kbsym {

RatVec FiniteLieAlgebra::bracket(const RatVec& x, const RatVec& y) const {
    RatVec out(dim(), Rational(0));
    for (size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (size_t j = 0; j < dim(); ++j) {
            if (y[j].is_zero()) continue;
            Rational f = x[i] * y[j];
            for (size_t k = 0; k < dim(); ++k) out[k] = out[k] + f * c[i][j][k];
        }
    }
    return out;
}

bool FiniteLieAlgebra::check_antisymmetry() const {
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j)
            for (size_t k = 0; k < dim(); ++k)
                if (c[i][j][k] != -c[j][i][k]) return false;
    return true;
}

bool FiniteLieAlgebra::check_jacobi() const {
    const size_t n = dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                RatVec s(n, Rational(0));
                RatVec t1 = bracket(c[j][k], unit(i, n));
                RatVec t2 = bracket(c[k][i], unit(j, n));
                RatVec t3 = bracket(c[i][j], unit(k, n));
                for (size_t m = 0; m < n; ++m) {
                    // [[ej,ek],ei] + [[ek,ei],ej] + [[ei,ej],ek] = 0
                    Rational v = t1[m] + t2[m] + t3[m];
                    if (!v.is_zero()) return false;
                }
                (void)s;
            }
    return true;
}

RatVec FiniteLieAlgebra::unit(size_t i, size_t n) {
    RatVec v(n, Rational(0));
    v[i] = Rational(1);
    return v;
}

FiniteLieAlgebra from_vectorfields(const std::vector<VectorField>& basis,
                                   const std::vector<std::string>& labels,
                                   const SamplingSpec& spec, const std::string& op_id) {
    FiniteLieAlgebra g;
    g.labels = labels;
    const size_t n = basis.size();
    g.c.assign(n, std::vector<RatVec>(n, RatVec(n, Rational(0))));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            VectorField br = commutator(basis[i], basis[j]);
            std::optional<std::vector<Rational>> dec;
            if (br.is_zero_field())
                dec = std::vector<Rational>(n, Rational(0));
            else
                dec = decompose_in_basis(br, basis, spec,
                                         op_id + "#c" + std::to_string(i) + "_" + std::to_string(j));
            if (!dec)
                throw NotClosed("from_vectorfields: [" + labels[i] + "," + labels[j] +
                                "] is not in the span");
            for (size_t k = 0; k < n; ++k) {
                g.c[i][j][k] = (*dec)[k];
                g.c[j][i][k] = -(*dec)[k];
            }
        }
    }
    return g;
}

namespace {
// returns RREF rows, zero rows dropped
RatMat rref(RatMat m) {
    const size_t rows = m.size();
    if (rows == 0) return m;
    const size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rational inv = m[r][c].inv();
        for (size_t j = 0; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}
}  // namespace

Subspace Subspace::span(RatMat vecs) {
    Subspace s;
    s.rows = rref(std::move(vecs));
    return s;
}

Subspace Subspace::zero(size_t) { return Subspace{}; }

bool Subspace::contains(const RatVec& v) const {
    RatVec r = v;
    for (const auto& row : rows) {
        size_t lead = 0;
        while (lead < row.size() && row[lead].is_zero()) ++lead;
        if (lead == row.size()) continue;
        if (!r[lead].is_zero()) {
            Rational f = r[lead];
            for (size_t j = 0; j < r.size(); ++j) r[j] = r[j] - f * row[j];
        }
    }
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& s) const {
    for (const auto& row : s.rows)
        if (!contains(row)) return false;
    return true;
}

bool Subspace::equals(const Subspace& s) const { return contains(s) && s.contains(*this); }

Subspace Subspace::sum(const Subspace& o) const {
    RatMat all = rows;
    all.insert(all.end(), o.rows.begin(), o.rows.end());
    return span(std::move(all));
}

Subspace whole_space(size_t dim) {
    RatMat m(dim, RatVec(dim, Rational(0)));
    for (size_t i = 0; i < dim; ++i) m[i][i] = Rational(1);
    return Subspace::span(std::move(m));
}

Subspace bracket_space(const FiniteLieAlgebra& g, const Subspace& a, const Subspace& b) {
    RatMat vecs;
    for (const auto& x : a.rows)
        for (const auto& y : b.rows) vecs.push_back(g.bracket(x, y));
    if (vecs.empty()) vecs.push_back(RatVec(g.dim(), Rational(0)));
    return Subspace::span(std::move(vecs));
}

std::vector<Subspace> derived_series(const FiniteLieAlgebra& g) {
    std::vector<Subspace> out = {whole_space(g.dim())};
    while (true) {
        Subspace next = bracket_space(g, out.back(), out.back());
        if (next.equals(out.back())) break;
        out.push_back(next);
        if (next.dim() == 0) break;
    }
    return out;
}

std::vector<Subspace> lower_central_series(const FiniteLieAlgebra& g, const Subspace& start) {
    std::vector<Subspace> out = {start};
    while (true) {
        Subspace next = bracket_space(g, start, out.back());
        if (next.equals(out.back())) break;
        out.push_back(next);
        if (next.dim() == 0) break;
    }
    return out;
}

namespace {
// nullspace of the linear map v -> rows of equations
RatMat nullspace(const RatMat& eqs, size_t nvars) {
    RatMat m = rref(eqs);
    std::vector<long long> pivot_of_col(nvars, -1);
    size_t r = 0;
    for (const auto& row : m) {
        size_t lead = 0;
        while (lead < nvars && row[lead].is_zero()) ++lead;
        if (lead < nvars) pivot_of_col[lead] = static_cast<long long>(r);
        ++r;
    }
    RatMat basis;
    for (size_t c = 0; c < nvars; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        RatVec v(nvars, Rational(0));
        v[c] = Rational(1);
        for (size_t pc = 0; pc < nvars; ++pc) {
            if (pivot_of_col[pc] < 0) continue;
            v[pc] = -m[static_cast<size_t>(pivot_of_col[pc])][c];
        }
        basis.push_back(v);
    }
    return basis;
}
}  // namespace

Subspace center(const FiniteLieAlgebra& g) { return centralizer(g, whole_space(g.dim())); }

Subspace centralizer(const FiniteLieAlgebra& g, const Subspace& s) {
    const size_t n = g.dim();
    RatMat eqs;
    for (const auto& v : s.rows) {
        // equations: [x, v] = 0, componentwise in x
        for (size_t k = 0; k < n; ++k) {
            RatVec row(n, Rational(0));
            for (size_t i = 0; i < n; ++i) {
                Rational acc(0);
                for (size_t j = 0; j < n; ++j) acc = acc + v[j] * g.c[i][j][k];
                row[i] = acc;
            }
            eqs.push_back(row);
        }
    }
    if (eqs.empty()) return whole_space(n);
    return Subspace::span(nullspace(eqs, n));
}

bool is_ideal(const FiniteLieAlgebra& g, const Subspace& s) {
    return s.contains(bracket_space(g, whole_space(g.dim()), s));
}

bool is_subalgebra_nilpotent(const FiniteLieAlgebra& g, const Subspace& s) {
    auto series = lower_central_series(g, s);
    return series.back().dim() == 0;
}

bool nilradical_check(const FiniteLieAlgebra& g, const Subspace& candidate,
                      const std::vector<Subspace>& listed) {
    if (!is_ideal(g, candidate)) return false;
    if (!is_subalgebra_nilpotent(g, candidate)) return false;
    for (const auto& s : listed)
        if (!candidate.contains(s)) return false;
    return true;
}

RatMat MatrixFamily::sample(Rng& rng) const {
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::map<std::string, Rational> vals;
        for (const auto& p : params) {
            if (std::find(sign_params.begin(), sign_params.end(), p) != sign_params.end()) {
                vals[p] = Rational(rng.uniform() < 0.5 ? -1 : 1);
                continue;
            }
            long long n = rng.int_in(-40, 40);
            if (n == 0) n = 7;
            vals[p] = Rational(n, 16);
        }
        bool ok = true;
        for (const auto& prod : nonzero) {
            Rational acc(1);
            for (const auto& p : prod) acc = acc * vals[p];
            if (acc.is_zero()) ok = false;
        }
        if (!ok) continue;
        RatMat M(dim(), RatVec(dim(), Rational(0)));
        try {
            for (size_t i = 0; i < dim(); ++i)
                for (size_t j = 0; j < dim(); ++j) M[i][j] = evaluate_exact(entries[i][j], vals);
        } catch (const EvalError&) {
            continue;
        }
        if (mat_det(M).is_zero()) continue;
        return M;
    }
    throw std::runtime_error("MatrixFamily: could not draw an admissible sample");
}

bool check_automorphism(const RatMat& M, const FiniteLieAlgebra& g) {
    const size_t n = g.dim();
    auto col = [&](size_t j) {
        RatVec v(n, Rational(0));
        for (size_t i = 0; i < n; ++i) v[i] = M[i][j];
        return v;
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            RatVec lhs = mat_apply(M, g.c[i][j]);
            RatVec rhs = g.bracket(col(i), col(j));
            for (size_t k = 0; k < n; ++k)
                if (lhs[k] != rhs[k]) return false;
        }
    }
    return true;
}

bool check_automorphism_family(const MatrixFamily& fam, const FiniteLieAlgebra& g, int samples,
                               uint64_t seed) {
    Rng rng(seed);
    for (int s = 0; s < samples; ++s)
        if (!check_automorphism(fam.sample(rng), g)) return false;
    return true;
}

bool is_megaideal_under(const MatrixFamily& fam, const Subspace& sub, int samples, uint64_t seed) {
    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        RatMat M = fam.sample(rng);
        for (const auto& v : sub.rows)
            if (!sub.contains(mat_apply(M, v))) return false;
    }
    return true;
}

RatMat ad_matrix(const FiniteLieAlgebra& g, const RatVec& elem) {
    const size_t n = g.dim();
    RatMat A(n, RatVec(n, Rational(0)));
    for (size_t j = 0; j < n; ++j) {
        RatVec ej(n, Rational(0));
        ej[j] = Rational(1);
        RatVec b = g.bracket(elem, ej);
        for (size_t i = 0; i < n; ++i) A[i][j] = b[i];
    }
    return A;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    const size_t n = a.size(), m = b[0].size(), k = b.size();
    RatMat r(n, RatVec(m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t p = 0; p < k; ++p) {
            if (a[i][p].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][p] * b[p][j];
        }
    return r;
}

RatVec mat_apply(const RatMat& m, const RatVec& v) {
    RatVec r(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] = r[i] + m[i][j] * v[j];
    return r;
}

Rational mat_det(RatMat m) {
    const size_t n = m.size();
    Rational det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && m[sel][c].is_zero()) ++sel;
        if (sel == n) return Rational(0);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        Rational inv = m[c][c].inv();
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            Rational f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] = m[i][j] - f * m[c][j];
        }
    }
    return det;
}

RatMat mat_identity(size_t n) {
    RatMat m(n, RatVec(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = Rational(1);
    return m;
}

RatMat inner_automorphism(const FiniteLieAlgebra& g, const RatVec& elem, const Rational& s) {
    const size_t n = g.dim();
    RatMat A = ad_matrix(g, elem);
    // nilpotency check
    RatMat P = A;
    size_t order = 0;
    auto is_zero_mat = [&](const RatMat& m) {
        for (const auto& row : m)
            for (const auto& v : row)
                if (!v.is_zero()) return false;
        return true;
    };
    for (order = 1; order <= n + 1; ++order) {
        if (is_zero_mat(P)) break;
        P = mat_mul(P, A);
    }
    if (order > n + 1 && !is_zero_mat(P))
        throw NonNilpotentAd("inner_automorphism: ad is not nilpotent");
    RatMat result = mat_identity(n);
    RatMat term = mat_identity(n);
    Rational fact(1);
    for (size_t k = 1; k <= order; ++k) {
        term = mat_mul(term, A);
        fact = fact * Rational(static_cast<long long>(k));
        Rational coef = s.pow_int(static_cast<long long>(k)) / fact;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) result[i][j] = result[i][j] + coef * term[i][j];
    }
    return result;
}

std::vector<std::vector<double>> inner_automorphism_numeric(const FiniteLieAlgebra& g,
                                                            const RatVec& elem, double s) {
    const size_t n = g.dim();
    RatMat A = ad_matrix(g, elem);
    std::vector<std::vector<double>> Ad(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) Ad[i][j] = A[i][j].to_double() * s;
    std::vector<std::vector<double>> result(n, std::vector<double>(n, 0.0)),
        term(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) result[i][i] = term[i][i] = 1.0;
    for (int k = 1; k <= 40; ++k) {
        std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i)
            for (size_t p = 0; p < n; ++p)
                for (size_t j = 0; j < n; ++j) next[i][j] += term[i][p] * Ad[p][j] / k;
        term = next;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) result[i][j] += term[i][j];
    }
    return result;
}

std::string algebra_to_json(const FiniteLieAlgebra& g) {
    nlohmann::json root;
    root["schema"] = "liealgebra-v1";
    root["basis"] = g.labels;
    nlohmann::json trips = nlohmann::json::array();
    for (size_t i = 0; i < g.dim(); ++i)
        for (size_t j = i + 1; j < g.dim(); ++j)
            for (size_t k = 0; k < g.dim(); ++k)
                if (!g.c[i][j][k].is_zero())
                    trips.push_back({{"i", g.labels[i]},
                                     {"j", g.labels[j]},
                                     {"k", g.labels[k]},
                                     {"c", g.c[i][j][k].str()}});
    root["structure_constants"] = trips;
    return root.dump(2);
}

namespace {
ExprPtr S(const std::string& n) { return sym(n); }
ExprPtr N(long long v) { return num(v); }
}  // namespace

MatrixFamily aut_family_gsim_F() {
    MatrixFamily f;
    f.params = {"a13", "a15", "a25", "a33", "a35", "a46", "a47", "a66", "a77"};
    f.nonzero = {{"a33"}, {"a66"}, {"a77"}};
    auto Z = N(0);
    ExprPtr a13 = S("a13"), a15 = S("a15"), a25 = S("a25"), a33 = S("a33"), a35 = S("a35"),
            a46 = S("a46"), a47 = S("a47"), a66 = S("a66"), a77 = S("a77");
    f.entries = {
        {simplify(a33 * a66 * a77), simplify(num(-1) * a33 * a46), a13, simplify(a35 * a66 * a77),
         a15, simplify(a35 * a46), simplify(a35 * a47 - a25 * a77)},
        {Z, simplify(a33 * a66), simplify(a33 * a47 * pw(a77, -1)), Z, a25,
         simplify(num(-1) * a35 * a66), Z},
        {Z, Z, a33, Z, a35, Z, Z},
        {Z, Z, Z, simplify(a66 * a77), Z, a46, a47},
        {Z, Z, Z, Z, N(1), Z, Z},
        {Z, Z, Z, Z, Z, a66, Z},
        {Z, Z, Z, Z, Z, Z, a77},
    };
    return f;
}

MatrixFamily inn_family_gsim_F() {
    MatrixFamily f;
    // E5 stands for exp(delta_5) > 0
    f.params = {"d1", "d2", "d3", "d4", "d6", "d7", "E5"};
    f.nonzero = {{"E5"}};
    auto Z = N(0);
    ExprPtr d1 = S("d1"), d2 = S("d2"), d3 = S("d3"), d4 = S("d4"), d6 = S("d6"), d7 = S("d7"),
            E5 = S("E5");
    f.entries = {
        {E5, simplify(d7 * E5), simplify(num(-1) * d4 * E5), d3, d1, simplify(num(-1) * d3 * d7),
         simplify(d3 * d6 - d2)},
        {Z, E5, simplify(d6 * E5), Z, d2, simplify(num(-1) * d3), Z},
        {Z, Z, E5, Z, d3, Z, Z},
        {Z, Z, Z, N(1), Z, simplify(num(-1) * d7), d6},
        {Z, Z, Z, Z, N(1), Z, Z},
        {Z, Z, Z, Z, Z, N(1), Z},
        {Z, Z, Z, Z, Z, Z, N(1)},
    };
    return f;
}

// Ten-parameter family with a33 (a55 a66 - a56 a65) != 0, in the basis
// (du, x du, (tx-y) du, u du, dt, dy); columns are the images of the basis
// vectors.  The image of u du has unit u du component, the images of dt and
// dy mix within <du, x du, dt, dy>.
MatrixFamily aut_family_gsim_Fp() {
    MatrixFamily f;
    f.params = {"a13", "a23", "a33", "a14", "a24", "a34", "a55", "a56", "a65", "a66"};
    f.nonzero = {{"a33"}};
    auto Z = N(0);
    ExprPtr a13 = S("a13"), a23 = S("a23"), a33 = S("a33"), a14 = S("a14"), a24 = S("a24"),
            a34 = S("a34"), a55 = S("a55"), a56 = S("a56"), a65 = S("a65"), a66 = S("a66");
    f.entries = {
        {simplify(a66 * a33), simplify(num(-1) * a65 * a33), a13, a14, simplify(a65 * a34),
         simplify(a66 * a34)},
        {simplify(num(-1) * a56 * a33), simplify(a55 * a33), a23, a24,
         simplify(num(-1) * a55 * a34), simplify(num(-1) * a56 * a34)},
        {Z, Z, a33, a34, Z, Z},
        {Z, Z, Z, N(1), Z, Z},
        {Z, Z, Z, Z, a55, a56},
        {Z, Z, Z, Z, a65, a66},
    };
    return f;
}

MatrixFamily aut_family_gess_beta(const Rational& beta) {
    MatrixFamily f;
    (void)beta;  // the family shape is beta-independent
    f.params = {"a11", "a13", "a22", "a23", "a43", "a44"};
    f.nonzero = {{"a11"}, {"a22"}, {"a44"}};
    auto Z = N(0);
    f.entries = {
        {S("a11"), Z, S("a13"), Z},
        {Z, S("a22"), S("a23"), Z},
        {Z, Z, N(1), Z},
        {Z, Z, S("a43"), S("a44")},
    };
    return f;
}

namespace {
Subspace span_of_units(size_t n, std::vector<size_t> idx) {
    RatMat rows;
    for (size_t i : idx) {
        RatVec v(n, Rational(0));
        v[i] = Rational(1);
        rows.push_back(v);
    }
    return Subspace::span(std::move(rows));
}
}  // namespace

std::vector<std::pair<std::string, Subspace>> megaideals_gsim_F() {
    // basis order (du, x du, (tx-y) du, dy, u du, dt, dx + t dy + dalpha)
    std::vector<std::pair<std::string, Subspace>> out;
    auto m1 = span_of_units(7, {0});
    auto m2 = span_of_units(7, {0, 1});
    auto m3 = span_of_units(7, {0, 3});
    auto m4 = span_of_units(7, {0, 1, 2});
    auto m5 = span_of_units(7, {0, 3, 6});
    auto m6 = span_of_units(7, {0, 1, 3, 5});
    auto m7 = span_of_units(7, {0, 1, 2, 4});
    out = {{"m1", m1}, {"m2", m2}, {"m3", m3}, {"m4", m4}, {"m5", m5}, {"m6", m6}, {"m7", m7},
           {"m2+m3", m2.sum(m3)},
           {"m3+m4", m3.sum(m4)},
           {"m2+m5", m2.sum(m5)},
           {"m3+m7", m3.sum(m7)},
           {"m4+m6", m4.sum(m6)},
           {"m4+m5", m4.sum(m5)},
           {"m5+m6", m5.sum(m6)},
           {"m5+m7", m5.sum(m7)},
           {"m6+m7", m6.sum(m7)},
           {"m4+m5+m6", m4.sum(m5).sum(m6)},
           {"m5+m6+m7", m5.sum(m6).sum(m7)}};
    return out;
}

std::vector<std::pair<std::string, Subspace>> megaideals_gsim_Fp() {
    // basis order (du, x du, (tx-y) du, u du, dt, dy)
    std::vector<std::pair<std::string, Subspace>> out;
    auto m1 = span_of_units(6, {0, 1});
    auto m2 = span_of_units(6, {0, 1, 2});
    auto m3 = span_of_units(6, {0, 1, 2, 3});
    auto m4 = span_of_units(6, {0, 1, 4, 5});
    out = {{"m1", m1},       {"m2", m2},       {"m3", m3},
           {"m4", m4},       {"m2+m4", m2.sum(m4)}, {"m3+m4", m3.sum(m4)}};
    return out;
}

}  // namespace kbsym
