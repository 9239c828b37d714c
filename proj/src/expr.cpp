#include "kbsym/expr.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>

namespace kbsym {

namespace {
const long long kFoldPowCap = 200;  // largest |integer exponent| folded exactly

int kind_rank(Kind k) { return static_cast<int>(k); }

bool is_int_num(const ExprPtr& e, long long& out) {
    if (e->kind != Kind::Num || !e->num.is_integer()) return false;
    if (!e->num.num().fits_ll()) return false;
    out = e->num.num().to_ll();
    return true;
}

// Structurally real: no node that can produce a non-real value from real
// symbol assignments.
bool structurally_real(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::ImagUnit:
        case Kind::Kummer:
        case Kind::Gamma:
            return false;
        case Kind::Pow: {
            // non-integer powers of possibly negative bases stay "complex"
            long long n;
            if (!structurally_real(e->kids[0]) || !structurally_real(e->kids[1])) return false;
            if (is_int_num(e->kids[1], n)) return true;
            Kind bk = e->kids[0]->kind;
            return bk == Kind::Abs || bk == Kind::Exp;
        }
        default:
            for (const auto& k : e->kids)
                if (!structurally_real(k)) return false;
            return true;
    }
}
}  // namespace

ExprPtr num(Rational r) {
    auto e = std::make_shared<Expr>(Kind::Num);
    e->num = std::move(r);
    return e;
}
ExprPtr num(long long n) { return num(Rational(n)); }
ExprPtr num(long long n, long long d) { return num(Rational(n, d)); }

ExprPtr imag_unit() { return std::make_shared<Expr>(Kind::ImagUnit); }

ExprPtr sym(const std::string& name) {
    auto e = std::make_shared<Expr>(Kind::Sym);
    e->name = name;
    return e;
}

ExprPtr add(std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>(Kind::Add);
    e->kids = std::move(kids);
    return e;
}

ExprPtr mul(std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>(Kind::Mul);
    e->kids = std::move(kids);
    return e;
}

ExprPtr pow(ExprPtr base, ExprPtr expo) {
    auto e = std::make_shared<Expr>(Kind::Pow);
    e->kids = {std::move(base), std::move(expo)};
    return e;
}

ExprPtr unary(Kind k, ExprPtr arg) {
    auto e = std::make_shared<Expr>(k);
    e->kids = {std::move(arg)};
    return e;
}

ExprPtr func(const std::string& name, std::vector<int> dindex, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>(Kind::Func);
    e->name = name;
    e->dindex = std::move(dindex);
    e->kids = std::move(args);
    if (e->dindex.size() != e->kids.size())
        throw std::invalid_argument("func: derivative multi-index size mismatch");
    return e;
}

ExprPtr kummer(ExprPtr p, ExprPtr q, ExprPtr z) {
    auto e = std::make_shared<Expr>(Kind::Kummer);
    e->kids = {std::move(p), std::move(q), std::move(z)};
    return e;
}

ExprPtr gammafn(ExprPtr z) { return unary(Kind::Gamma, std::move(z)); }

ExprPtr operator+(ExprPtr a, ExprPtr b) { return simplify(add({std::move(a), std::move(b)})); }
ExprPtr operator-(ExprPtr a, ExprPtr b) {
    return simplify(add({std::move(a), mul({num(-1), std::move(b)})}));
}
ExprPtr operator*(ExprPtr a, ExprPtr b) { return simplify(mul({std::move(a), std::move(b)})); }
ExprPtr operator/(ExprPtr a, ExprPtr b) {
    return simplify(mul({std::move(a), pow(std::move(b), num(-1))}));
}
ExprPtr operator-(ExprPtr a) { return simplify(mul({num(-1), std::move(a)})); }
ExprPtr pw(ExprPtr b, ExprPtr e) { return simplify(pow(std::move(b), std::move(e))); }
ExprPtr pw(ExprPtr b, long long e) { return pw(std::move(b), num(e)); }
ExprPtr pw(ExprPtr b, const Rational& e) { return pw(std::move(b), num(e)); }
ExprPtr eabs(ExprPtr a) { return simplify(unary(Kind::Abs, std::move(a))); }
ExprPtr esgn(ExprPtr a) { return simplify(unary(Kind::Sgn, std::move(a))); }
ExprPtr eexp(ExprPtr a) { return simplify(unary(Kind::Exp, std::move(a))); }
ExprPtr eln(ExprPtr a) { return simplify(unary(Kind::Ln, std::move(a))); }
ExprPtr esin(ExprPtr a) { return simplify(unary(Kind::Sin, std::move(a))); }
ExprPtr ecos(ExprPtr a) { return simplify(unary(Kind::Cos, std::move(a))); }
ExprPtr etan(ExprPtr a) { return simplify(unary(Kind::Tan, std::move(a))); }
ExprPtr eatan(ExprPtr a) { return simplify(unary(Kind::ATan, std::move(a))); }
ExprPtr ere(ExprPtr a) { return simplify(unary(Kind::Re, std::move(a))); }

int compare(const ExprPtr& a, const ExprPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->kind != b->kind) return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
    switch (a->kind) {
        case Kind::Num:
            return a->num.cmp(b->num);
        case Kind::ImagUnit:
            return 0;
        case Kind::Sym:
            return a->name.compare(b->name);
        case Kind::Func: {
            int c = a->name.compare(b->name);
            if (c) return c < 0 ? -1 : 1;
            if (a->dindex != b->dindex) return a->dindex < b->dindex ? -1 : 1;
            break;
        }
        default:
            break;
    }
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    for (size_t i = 0; i < a->kids.size(); ++i) {
        int c = compare(a->kids[i], b->kids[i]);
        if (c) return c;
    }
    return 0;
}

bool identical(const ExprPtr& a, const ExprPtr& b) { return compare(a, b) == 0; }

bool is_num(const ExprPtr& e) { return e->kind == Kind::Num; }
bool is_num(const ExprPtr& e, const Rational& value) {
    return e->kind == Kind::Num && e->num == value;
}
const Rational& as_num(const ExprPtr& e) { return e->num; }
bool is_zero_expr(const ExprPtr& e) { return is_num(e, Rational(0)); }

namespace {

// Splits a canonical term into (rational coefficient, key).
// Key is nullptr for pure numbers.
std::pair<Rational, ExprPtr> split_coeff(const ExprPtr& t) {
    if (t->kind == Kind::Num) return {t->num, nullptr};
    if (t->kind == Kind::Mul && !t->kids.empty() && t->kids[0]->kind == Kind::Num) {
        Rational c = t->kids[0]->num;
        if (t->kids.size() == 2) return {c, t->kids[1]};
        std::vector<ExprPtr> rest(t->kids.begin() + 1, t->kids.end());
        return {c, mul(std::move(rest))};
    }
    return {Rational(1), t};
}

ExprPtr rebuild_term(const Rational& c, const ExprPtr& key) {
    if (!key) return num(c);
    if (c == Rational(1)) return key;
    if (key->kind == Kind::Mul) {
        std::vector<ExprPtr> ks;
        ks.push_back(num(c));
        ks.insert(ks.end(), key->kids.begin(), key->kids.end());
        return mul(std::move(ks));
    }
    return mul({num(c), key});
}

ExprPtr simplify_add(std::vector<ExprPtr> kids);
ExprPtr simplify_mul(std::vector<ExprPtr> kids);
ExprPtr simplify_pow(ExprPtr b, ExprPtr e);
ExprPtr simplify_unary(Kind k, ExprPtr a);

ExprPtr simplify_add(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    for (auto& k : kids) {
        if (k->kind == Kind::Add)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(k);
    }
    Rational cst(0);
    std::vector<std::pair<ExprPtr, Rational>> terms;  // key -> coeff, insertion order
    std::function<void(const Rational&, const ExprPtr&)> take = [&](const Rational& c,
                                                                    const ExprPtr& key) {
        if (!key) {
            cst = cst + c;
            return;
        }
        // scaled sums inline so the representation is association-independent
        if (key->kind == Kind::Add) {
            for (const auto& sub : key->kids) {
                auto [cs, ks] = split_coeff(sub);
                take(c * cs, ks);
            }
            return;
        }
        for (auto& kv : terms) {
            if (identical(kv.first, key)) {
                kv.second = kv.second + c;
                return;
            }
        }
        terms.emplace_back(key, c);
    };
    for (auto& t : flat) {
        auto [c, key] = split_coeff(t);
        take(c, key);
    }
    std::vector<ExprPtr> out;
    for (auto& kv : terms)
        if (!kv.second.is_zero()) out.push_back(rebuild_term(kv.second, kv.first));
    std::sort(out.begin(), out.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return compare(a, b) < 0; });
    if (!cst.is_zero()) out.insert(out.begin(), num(cst));
    if (out.empty()) return num(0);
    if (out.size() == 1) return out[0];
    return add(std::move(out));
}

struct Factor {
    ExprPtr base;
    std::vector<ExprPtr> expo_terms;  // summed exponent
};

ExprPtr simplify_mul(std::vector<ExprPtr> kids) {
    std::vector<ExprPtr> flat;
    for (auto& k : kids) {
        if (k->kind == Kind::Mul)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(k);
    }
    Rational coeff(1);
    long long ipow = 0;  // accumulated power of the imaginary unit
    std::vector<Factor> factors;
    auto add_factor = [&](const ExprPtr& base, const ExprPtr& expo) {
        for (auto& f : factors) {
            if (identical(f.base, base)) {
                f.expo_terms.push_back(expo);
                return;
            }
        }
        factors.push_back({base, {expo}});
    };
    for (auto& k : flat) {
        if (k->kind == Kind::Num) {
            coeff = coeff * k->num;
            continue;
        }
        if (k->kind == Kind::ImagUnit) {
            ipow += 1;
            continue;
        }
        if (k->kind == Kind::Pow) {
            long long n;
            if (k->kids[0]->kind == Kind::ImagUnit && is_int_num(k->kids[1], n)) {
                ipow += n;
                continue;
            }
            long long e;
            if (k->kids[0]->kind == Kind::Num && is_int_num(k->kids[1], e) && std::llabs(e) <= kFoldPowCap) {
                coeff = coeff * k->kids[0]->num.pow_int(e);
                continue;
            }
            add_factor(k->kids[0], k->kids[1]);
            continue;
        }
        add_factor(k, num(1));
    }
    if (coeff.is_zero()) return num(0);

    // fold i^n
    long long imod = ((ipow % 4) + 4) % 4;
    bool ifactor = (imod == 1 || imod == 3);
    if (imod == 2 || imod == 3) coeff = -coeff;

    // Resolve exponents, then apply the sgn/abs cleanup.
    struct RF {
        ExprPtr base;
        ExprPtr expo;
    };
    std::vector<RF> rf;
    for (auto& f : factors) {
        ExprPtr e = simplify_add(f.expo_terms);
        if (is_zero_expr(e)) continue;
        rf.push_back({f.base, e});
    }
    // When |a| or sgn(a) shares the product with a bare integer power of a,
    // rewrite a^k = sgn(a)^k |a|^k so the exponents collect (per-orthant).
    {
        struct Conv {
            ExprPtr arg;
            ExprPtr expo;
        };
        std::vector<Conv> convs;
        for (size_t fi = 0; fi < rf.size(); ++fi) {
            long long k;
            Kind bk = rf[fi].base->kind;
            if (bk == Kind::Abs || bk == Kind::Sgn) continue;
            if (!is_int_num(rf[fi].expo, k) || k == 0) continue;
            bool companion = false;
            for (size_t gi = 0; gi < rf.size() && !companion; ++gi) {
                Kind gk = rf[gi].base->kind;
                if ((gk == Kind::Abs || gk == Kind::Sgn) &&
                    identical(rf[gi].base->kids[0], rf[fi].base))
                    companion = true;
            }
            if (!companion) continue;
            convs.push_back({rf[fi].base, rf[fi].expo});
            rf[fi].expo = num(0);
        }
        for (const auto& cv : convs) {
            for (Kind k : {Kind::Abs, Kind::Sgn}) {
                ExprPtr wrapped = unary(k, cv.arg);
                bool merged = false;
                for (size_t hi = 0; hi < rf.size(); ++hi) {
                    if (identical(rf[hi].base, wrapped)) {
                        rf[hi].expo = simplify_add({rf[hi].expo, cv.expo});
                        merged = true;
                        break;
                    }
                }
                if (!merged) rf.push_back({wrapped, cv.expo});
            }
        }
    }
    // sgn(a)^n with integer n
    for (auto& f : rf) {
        long long n;
        if (f.base->kind == Kind::Sgn && is_int_num(f.expo, n)) {
            f.expo = num(n % 2 == 0 ? 0 : 1);
        }
    }
    // |a| * sgn(a) -> a  (per-orthant); deferred merges keep rf stable while
    // indices are live
    std::vector<ExprPtr> bare_args;
    for (size_t fi = 0; fi < rf.size(); ++fi) {
        if (rf[fi].base->kind != Kind::Sgn || !is_num(rf[fi].expo, Rational(1))) continue;
        for (size_t gi = 0; gi < rf.size(); ++gi) {
            long long n;
            if (rf[gi].base->kind == Kind::Abs &&
                identical(rf[gi].base->kids[0], rf[fi].base->kids[0]) &&
                is_int_num(rf[gi].expo, n) && n >= 1) {
                ExprPtr arg = rf[fi].base->kids[0];
                rf[fi].expo = num(0);  // drop the sgn
                rf[gi].expo = num(n - 1);
                bare_args.push_back(arg);
                break;
            }
        }
    }
    for (const ExprPtr& arg : bare_args) {
        bool merged = false;
        for (size_t hi = 0; hi < rf.size(); ++hi) {
            if (identical(rf[hi].base, arg)) {
                rf[hi].expo = simplify_add({rf[hi].expo, num(1)});
                merged = true;
                break;
            }
        }
        if (!merged) rf.push_back({arg, num(1)});
    }
    std::vector<ExprPtr> out;
    for (auto& f : rf) {
        if (is_zero_expr(f.expo)) continue;
        if (is_num(f.base, Rational(1))) continue;
        long long e;
        if (f.base->kind == Kind::Num && is_int_num(f.expo, e) && std::llabs(e) <= kFoldPowCap) {
            coeff = coeff * f.base->num.pow_int(e);
            continue;
        }
        if (is_num(f.expo, Rational(1)))
            out.push_back(f.base);
        else
            out.push_back(simplify_pow(f.base, f.expo));
    }
    if (coeff.is_zero()) return num(0);
    if (ifactor) out.push_back(imag_unit());
    std::sort(out.begin(), out.end(), [](const ExprPtr& a, const ExprPtr& b) { return compare(a, b) < 0; });
    if (out.empty()) return num(coeff);
    if (coeff != Rational(1)) out.insert(out.begin(), num(coeff));
    if (out.size() == 1) return out[0];
    return mul(std::move(out));
}

ExprPtr simplify_pow(ExprPtr b, ExprPtr e) {
    long long n;
    if (is_num(e, Rational(0))) return num(1);
    if (is_num(e, Rational(1))) return b;
    if (is_num(b, Rational(1))) return num(1);
    if (b->kind == Kind::Num && is_int_num(e, n) && std::llabs(n) <= kFoldPowCap && !(b->num.is_zero() && n < 0))
        return num(b->num.pow_int(n));
    if (b->kind == Kind::ImagUnit && is_int_num(e, n)) {
        long long m = ((n % 4) + 4) % 4;
        switch (m) {
            case 0: return num(1);
            case 1: return imag_unit();
            case 2: return num(-1);
            default: return simplify_mul({num(-1), imag_unit()});
        }
    }
    if (b->kind == Kind::Sgn && is_int_num(e, n))
        return n % 2 == 0 ? num(1) : b;
    if (b->kind == Kind::Abs && is_int_num(e, n) && n % 2 == 0)
        return simplify_pow(b->kids[0], e);
    if (b->kind == Kind::Pow) {
        bool merge = false;
        if (is_int_num(e, n)) merge = true;
        Kind ik = b->kids[0]->kind;
        if (ik == Kind::Abs || ik == Kind::Exp) merge = true;
        if (merge) return simplify_pow(b->kids[0], simplify_mul({b->kids[1], e}));
    }
    if (b->kind == Kind::Exp && e->kind == Kind::Num)
        return simplify_unary(Kind::Exp, simplify_mul({b->kids[0], e}));
    if (b->kind == Kind::Mul && is_int_num(e, n)) {
        std::vector<ExprPtr> ks;
        for (auto& k : b->kids) ks.push_back(simplify_pow(k, e));
        return simplify_mul(std::move(ks));
    }
    return pow(std::move(b), std::move(e));
}

ExprPtr simplify_unary(Kind k, ExprPtr a) {
    switch (k) {
        case Kind::Exp:
            if (is_zero_expr(a)) return num(1);
            if (a->kind == Kind::Ln) return a->kids[0];
            break;
        case Kind::Ln:
            if (is_num(a, Rational(1))) return num(0);
            if (a->kind == Kind::Exp) return a->kids[0];
            break;
        case Kind::Abs:
            if (a->kind == Kind::Num) return num(a->num.abs());
            if (a->kind == Kind::ImagUnit) return num(1);
            if (a->kind == Kind::Abs) return a;
            if (a->kind == Kind::Sgn) return num(1);
            if (a->kind == Kind::Exp && structurally_real(a)) return a;
            if (a->kind == Kind::Mul) {
                std::vector<ExprPtr> ks;
                for (auto& kk : a->kids) ks.push_back(simplify_unary(Kind::Abs, kk));
                return simplify_mul(std::move(ks));
            }
            if (a->kind == Kind::Pow) {
                long long n;
                Kind bk = a->kids[0]->kind;
                if (is_int_num(a->kids[1], n))
                    return simplify_pow(simplify_unary(Kind::Abs, a->kids[0]), a->kids[1]);
                if (bk == Kind::Abs || bk == Kind::Exp) return a;
            }
            break;
        case Kind::Sgn:
            if (a->kind == Kind::Num) return num(a->num.sign());
            if (a->kind == Kind::Abs) return num(1);
            if (a->kind == Kind::Sgn) return a;
            if (a->kind == Kind::Exp && structurally_real(a)) return num(1);
            if (a->kind == Kind::Mul) {
                std::vector<ExprPtr> ks;
                for (auto& kk : a->kids) ks.push_back(simplify_unary(Kind::Sgn, kk));
                return simplify_mul(std::move(ks));
            }
            if (a->kind == Kind::Pow) {
                long long n;
                Kind bk = a->kids[0]->kind;
                if (is_int_num(a->kids[1], n))
                    return simplify_pow(simplify_unary(Kind::Sgn, a->kids[0]), a->kids[1]);
                if (bk == Kind::Abs || bk == Kind::Exp) return num(1);
            }
            break;
        case Kind::Sin:
            if (is_zero_expr(a)) return num(0);
            break;
        case Kind::Cos:
            if (is_zero_expr(a)) return num(1);
            break;
        case Kind::Tan:
            if (is_zero_expr(a)) return num(0);
            if (a->kind == Kind::ATan) return a->kids[0];
            break;
        case Kind::ATan:
            if (is_zero_expr(a)) return num(0);
            break;
        case Kind::Re:
            if (structurally_real(a)) return a;
            if (a->kind == Kind::Re) return a;
            if (a->kind == Kind::Add) {
                std::vector<ExprPtr> ks;
                for (auto& kk : a->kids) ks.push_back(simplify_unary(Kind::Re, kk));
                return simplify_add(std::move(ks));
            }
            if (a->kind == Kind::Mul) {
                std::vector<ExprPtr> real_ks, rest;
                for (auto& kk : a->kids)
                    (structurally_real(kk) ? real_ks : rest).push_back(kk);
                if (!real_ks.empty() && !rest.empty()) {
                    real_ks.push_back(unary(Kind::Re, simplify_mul(std::move(rest))));
                    return simplify_mul(std::move(real_ks));
                }
            }
            break;
        default:
            break;
    }
    return unary(k, std::move(a));
}

}  // namespace

ExprPtr simplify(ExprPtr e) {
    switch (e->kind) {
        case Kind::Num:
        case Kind::ImagUnit:
        case Kind::Sym:
            return e;
        case Kind::Add: {
            std::vector<ExprPtr> ks;
            ks.reserve(e->kids.size());
            for (auto& k : e->kids) ks.push_back(simplify(k));
            return simplify_add(std::move(ks));
        }
        case Kind::Mul: {
            std::vector<ExprPtr> ks;
            ks.reserve(e->kids.size());
            for (auto& k : e->kids) ks.push_back(simplify(k));
            return simplify_mul(std::move(ks));
        }
        case Kind::Pow:
            return simplify_pow(simplify(e->kids[0]), simplify(e->kids[1]));
        case Kind::Exp:
        case Kind::Ln:
        case Kind::Abs:
        case Kind::Sgn:
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Tan:
        case Kind::ATan:
        case Kind::Re:
            return simplify_unary(e->kind, simplify(e->kids[0]));
        case Kind::Func: {
            std::vector<ExprPtr> args;
            for (auto& k : e->kids) args.push_back(simplify(k));
            return func(e->name, e->dindex, std::move(args));
        }
        case Kind::Kummer: {
            ExprPtr p = simplify(e->kids[0]), q = simplify(e->kids[1]), z = simplify(e->kids[2]);
            if (is_zero_expr(z)) return num(1);
            return kummer(std::move(p), std::move(q), std::move(z));
        }
        case Kind::Gamma:
            return gammafn(simplify(e->kids[0]));
    }
    return e;
}

ExprPtr differentiate(const ExprPtr& e, const std::string& v) {
    switch (e->kind) {
        case Kind::Num:
        case Kind::ImagUnit:
            return num(0);
        case Kind::Sym:
            return num(e->name == v ? 1 : 0);
        case Kind::Add: {
            std::vector<ExprPtr> ks;
            for (auto& k : e->kids) ks.push_back(differentiate(k, v));
            return simplify(add(std::move(ks)));
        }
        case Kind::Mul: {
            std::vector<ExprPtr> terms;
            for (size_t i = 0; i < e->kids.size(); ++i) {
                std::vector<ExprPtr> fac;
                fac.push_back(differentiate(e->kids[i], v));
                for (size_t j = 0; j < e->kids.size(); ++j)
                    if (j != i) fac.push_back(e->kids[j]);
                terms.push_back(mul(std::move(fac)));
            }
            return simplify(add(std::move(terms)));
        }
        case Kind::Pow: {
            const ExprPtr& b = e->kids[0];
            const ExprPtr& p = e->kids[1];
            ExprPtr db = differentiate(b, v);
            if (!depends_on(p, v)) {
                // p * b^(p-1) * db
                return simplify(mul({p, pow(b, simplify(add({p, num(-1)}))), db}));
            }
            ExprPtr dp = differentiate(p, v);
            // b^p * (dp ln b + p db / b)
            ExprPtr inner = simplify(add({mul({dp, unary(Kind::Ln, b)}), mul({p, db, pow(b, num(-1))})}));
            return simplify(mul({ExprPtr(e), inner}));
        }
        case Kind::Exp:
            return simplify(mul({ExprPtr(e), differentiate(e->kids[0], v)}));
        case Kind::Ln:
            return simplify(mul({differentiate(e->kids[0], v), pow(e->kids[0], num(-1))}));
        case Kind::Abs:
            return simplify(mul({unary(Kind::Sgn, e->kids[0]), differentiate(e->kids[0], v)}));
        case Kind::Sgn:
            return num(0);
        case Kind::Sin:
            return simplify(mul({unary(Kind::Cos, e->kids[0]), differentiate(e->kids[0], v)}));
        case Kind::Cos:
            return simplify(mul({num(-1), unary(Kind::Sin, e->kids[0]), differentiate(e->kids[0], v)}));
        case Kind::Tan: {
            ExprPtr t = unary(Kind::Tan, e->kids[0]);
            ExprPtr sec2 = simplify(add({num(1), pow(t, num(2))}));
            return simplify(mul({sec2, differentiate(e->kids[0], v)}));
        }
        case Kind::ATan: {
            ExprPtr den = simplify(add({num(1), pow(e->kids[0], num(2))}));
            return simplify(mul({differentiate(e->kids[0], v), pow(den, num(-1))}));
        }
        case Kind::Re:
            return simplify(unary(Kind::Re, differentiate(e->kids[0], v)));
        case Kind::Func: {
            std::vector<ExprPtr> terms;
            for (size_t k = 0; k < e->kids.size(); ++k) {
                ExprPtr dak = differentiate(e->kids[k], v);
                if (is_zero_expr(dak)) continue;
                std::vector<int> idx = e->dindex;
                idx[k] += 1;
                terms.push_back(mul({func(e->name, idx, e->kids), dak}));
            }
            return simplify(add(std::move(terms)));
        }
        case Kind::Kummer: {
            const ExprPtr& p = e->kids[0];
            const ExprPtr& q = e->kids[1];
            const ExprPtr& z = e->kids[2];
            if (depends_on(p, v) || depends_on(q, v))
                throw std::domain_error("differentiate: Kummer parameters must be constant");
            ExprPtr dz = differentiate(z, v);
            if (is_zero_expr(dz)) return num(0);
            ExprPtr bumped = kummer(simplify(add({p, num(1)})), simplify(add({q, num(1)})), z);
            return simplify(mul({p, pow(q, num(-1)), bumped, dz}));
        }
        case Kind::Gamma:
            if (depends_on(e->kids[0], v))
                throw std::domain_error("differentiate: gamma argument must be constant");
            return num(0);
    }
    return num(0);
}

ExprPtr differentiate_n(ExprPtr e, const std::string& v, int n) {
    for (int i = 0; i < n; ++i) e = differentiate(e, v);
    return e;
}

namespace {
ExprPtr substitute_raw(const ExprPtr& e, const std::map<std::string, ExprPtr>& b) {
    if (e->kind == Kind::Sym) {
        auto it = b.find(e->name);
        return it == b.end() ? e : it->second;
    }
    if (e->kids.empty()) return e;
    bool changed = false;
    std::vector<ExprPtr> ks;
    ks.reserve(e->kids.size());
    for (auto& k : e->kids) {
        ExprPtr s = substitute_raw(k, b);
        if (s.get() != k.get()) changed = true;
        ks.push_back(std::move(s));
    }
    if (!changed) return e;
    auto c = std::make_shared<Expr>(e->kind);
    c->num = e->num;
    c->name = e->name;
    c->dindex = e->dindex;
    c->kids = std::move(ks);
    return c;
}
}  // namespace

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings) {
    return simplify(substitute_raw(e, bindings));
}

ExprPtr instantiate_placeholder(const ExprPtr& e, const std::string& name,
                                const ExprPtr& body, const std::vector<std::string>& formals) {
    if (e->kind == Kind::Func && e->name == name) {
        if (e->kids.size() != formals.size())
            throw std::invalid_argument("instantiate_placeholder: arity mismatch");
        ExprPtr d = body;
        for (size_t k = 0; k < formals.size(); ++k)
            d = differentiate_n(d, formals[k], e->dindex[k]);
        std::map<std::string, ExprPtr> b;
        for (size_t k = 0; k < formals.size(); ++k)
            b[formals[k]] = instantiate_placeholder(e->kids[k], name, body, formals);
        return substitute(d, b);
    }
    if (e->kids.empty()) return e;
    std::vector<ExprPtr> ks;
    ks.reserve(e->kids.size());
    for (auto& k : e->kids) ks.push_back(instantiate_placeholder(k, name, body, formals));
    auto c = std::make_shared<Expr>(e->kind);
    c->num = e->num;
    c->name = e->name;
    c->dindex = e->dindex;
    c->kids = std::move(ks);
    return simplify(c);
}

bool depends_on(const ExprPtr& e, const std::string& name) {
    if (e->kind == Kind::Sym) return e->name == name;
    for (auto& k : e->kids)
        if (depends_on(k, name)) return true;
    return false;
}

void collect_symbols(const ExprPtr& e, std::vector<std::string>& out) {
    if (e->kind == Kind::Sym) {
        if (std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
        return;
    }
    for (auto& k : e->kids) collect_symbols(k, out);
}

std::vector<std::string> free_symbols(const ExprPtr& e) {
    std::vector<std::string> out;
    collect_symbols(e, out);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
void collect_placeholder_keys(const ExprPtr& e, std::set<std::string>& out) {
    if (e->kind == Kind::Func) {
        std::string key = e->name + "[";
        for (size_t i = 0; i < e->dindex.size(); ++i) {
            if (i) key += ",";
            key += std::to_string(e->dindex[i]);
        }
        key += "]";
        out.insert(key);
    }
    for (auto& k : e->kids) collect_placeholder_keys(k, out);
}
}  // namespace

std::vector<std::string> placeholder_keys(const ExprPtr& e) {
    std::set<std::string> s;
    collect_placeholder_keys(e, s);
    return {s.begin(), s.end()};
}

bool has_placeholder(const ExprPtr& e) {
    if (e->kind == Kind::Func) return true;
    for (auto& k : e->kids)
        if (has_placeholder(k)) return true;
    return false;
}

ExprPtr expand(ExprPtr e) {
    e = simplify(std::move(e));
    switch (e->kind) {
        case Kind::Add: {
            std::vector<ExprPtr> ks;
            for (auto& k : e->kids) ks.push_back(expand(k));
            return simplify(add(std::move(ks)));
        }
        case Kind::Mul: {
            std::vector<ExprPtr> ks;
            for (auto& k : e->kids) ks.push_back(expand(k));
            // cartesian distribution over sum factors
            std::vector<ExprPtr> acc = {num(1)};
            for (auto& k : ks) {
                std::vector<ExprPtr> next;
                if (k->kind == Kind::Add) {
                    for (auto& term : k->kids)
                        for (auto& a : acc) next.push_back(simplify(mul({a, term})));
                } else {
                    for (auto& a : acc) next.push_back(simplify(mul({a, k})));
                }
                acc = std::move(next);
            }
            return simplify(add(std::move(acc)));
        }
        case Kind::Pow: {
            ExprPtr b = expand(e->kids[0]);
            long long n;
            if (b->kind == Kind::Add && is_int_num(e->kids[1], n) && n > 1 && n <= 12) {
                // distribute term lists directly; multiplying whole sums
                // would just collect back into the power
                std::vector<ExprPtr> base(b->kids.begin(), b->kids.end());
                std::vector<ExprPtr> acc = base;
                for (long long i = 1; i < n; ++i) {
                    std::vector<ExprPtr> next;
                    for (const auto& t1 : acc)
                        for (const auto& t2 : base) next.push_back(simplify(mul({t1, t2})));
                    acc = std::move(next);
                }
                return simplify(add(std::move(acc)));
            }
            return simplify(pow(b, e->kids[1]));
        }
        default:
            return e;
    }
}

bool exactly_evaluable(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Num:
        case Kind::Sym:
            return true;
        case Kind::Add:
        case Kind::Mul:
        case Kind::Abs:
        case Kind::Sgn:
            for (auto& k : e->kids)
                if (!exactly_evaluable(k)) return false;
            return true;
        case Kind::Pow: {
            long long n;
            return exactly_evaluable(e->kids[0]) && is_int_num(e->kids[1], n);
        }
        default:
            return false;
    }
}

}  // namespace kbsym
