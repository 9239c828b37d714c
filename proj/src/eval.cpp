#include "kbsym/eval.hpp"

#include <cmath>

#include "kbsym/special.hpp"

namespace kbsym {

const ExprPtr& PlaceholderInstance::derivative(const std::vector<int>& idx) const {
    auto it = dcache.find(idx);
    if (it != dcache.end()) return it->second;
    ExprPtr d = body;
    for (size_t k = 0; k < formals.size(); ++k) d = differentiate_n(d, formals[k], idx[k]);
    return dcache.emplace(idx, std::move(d)).first->second;
}

namespace {

constexpr double kSingularEps = 1e-13;

struct Evaluator {
    const EvaluationContext& ctx;
    double scale = 0.0;

    cplx track(cplx v) {
        double m = std::abs(v);
        if (m > scale) scale = m;
        return v;
    }

    cplx eval(const ExprPtr& e) {
        switch (e->kind) {
            case Kind::Num:
                return track(cplx(e->num.to_double(), 0.0));
            case Kind::ImagUnit:
                if (ctx.real_mode) throw EvalError(EvalError::Code::NotReal, "imaginary unit in real mode");
                return track(cplx(0.0, 1.0));
            case Kind::Sym: {
                auto it = ctx.symbols.find(e->name);
                if (it == ctx.symbols.end())
                    throw EvalError(EvalError::Code::MissingBinding, "unbound symbol: " + e->name);
                return track(it->second);
            }
            case Kind::Add: {
                cplx s(0.0);
                for (auto& k : e->kids) s += eval(k);
                return track(s);
            }
            case Kind::Mul: {
                cplx p(1.0);
                for (auto& k : e->kids) p *= eval(k);
                return track(p);
            }
            case Kind::Pow: {
                cplx b = eval(e->kids[0]);
                cplx x = eval(e->kids[1]);
                bool int_exp = std::abs(x.imag()) < 1e-15 &&
                               std::abs(x.real() - std::round(x.real())) < 1e-12;
                if (std::abs(b) < kSingularEps) {
                    if (x.real() > 0) return track(cplx(0.0));
                    throw EvalError(EvalError::Code::SingularPoint, "0 raised to nonpositive power");
                }
                if (int_exp) {
                    long long n = static_cast<long long>(std::llround(x.real()));
                    cplx r(1.0);
                    cplx base = n < 0 ? cplx(1.0) / b : b;
                    unsigned long long m = n < 0 ? -(unsigned long long)n : (unsigned long long)n;
                    while (m) {
                        if (m & 1ULL) r *= base;
                        base *= base;
                        m >>= 1;
                    }
                    return track(r);
                }
                if (ctx.real_mode && std::abs(b.imag()) < 1e-15 && b.real() < 0.0)
                    throw EvalError(EvalError::Code::NotReal, "negative base with non-integer exponent");
                return track(std::pow(b, x));
            }
            case Kind::Exp:
                return track(std::exp(eval(e->kids[0])));
            case Kind::Ln: {
                cplx a = eval(e->kids[0]);
                if (std::abs(a) < kSingularEps)
                    throw EvalError(EvalError::Code::SingularPoint, "ln(0)");
                if (ctx.real_mode && std::abs(a.imag()) < 1e-15 && a.real() <= 0.0)
                    throw EvalError(EvalError::Code::NotReal, "ln of nonpositive real");
                return track(std::log(a));
            }
            case Kind::Abs:
                return track(cplx(std::abs(eval(e->kids[0])), 0.0));
            case Kind::Sgn: {
                cplx a = eval(e->kids[0]);
                if (std::abs(a.imag()) > 1e-9 * (1.0 + std::abs(a.real())))
                    throw EvalError(EvalError::Code::NotReal, "sgn of non-real value");
                if (std::abs(a.real()) < kSingularEps)
                    throw EvalError(EvalError::Code::SingularPoint, "sgn at zero");
                return track(cplx(a.real() > 0 ? 1.0 : -1.0, 0.0));
            }
            case Kind::Sin:
                return track(std::sin(eval(e->kids[0])));
            case Kind::Cos: {
                cplx c = std::cos(eval(e->kids[0]));
                return track(c);
            }
            case Kind::Tan: {
                cplx a = eval(e->kids[0]);
                cplx c = std::cos(a);
                if (std::abs(c) < kSingularEps)
                    throw EvalError(EvalError::Code::SingularPoint, "tan at pole");
                return track(std::sin(a) / c);
            }
            case Kind::ATan:
                return track(std::atan(eval(e->kids[0])));
            case Kind::Re:
                return track(cplx(eval(e->kids[0]).real(), 0.0));
            case Kind::Func: {
                auto inst = ctx.placeholder_instances.find(e->name);
                if (inst != ctx.placeholder_instances.end()) {
                    const PlaceholderInstance& pi = inst->second;
                    const ExprPtr& d = pi.derivative(e->dindex);
                    EvaluationContext sub = ctx;
                    for (size_t k = 0; k < pi.formals.size(); ++k)
                        sub.symbols[pi.formals[k]] = eval(e->kids[k]);
                    Evaluator se{sub};
                    cplx v = se.eval(d);
                    if (se.scale > scale) scale = se.scale;
                    return track(v);
                }
                std::string key = e->name + "[";
                for (size_t i = 0; i < e->dindex.size(); ++i) {
                    if (i) key += ",";
                    key += std::to_string(e->dindex[i]);
                }
                key += "]";
                auto it = ctx.placeholder_values.find(key);
                if (it == ctx.placeholder_values.end())
                    throw EvalError(EvalError::Code::MissingBinding, "unbound placeholder: " + key);
                // still evaluate args so singularities there are caught
                for (auto& k : e->kids) eval(k);
                return track(it->second);
            }
            case Kind::Kummer: {
                cplx p = eval(e->kids[0]);
                cplx q = eval(e->kids[1]);
                cplx z = eval(e->kids[2]);
                return track(kummer_M(p, q, z));
            }
            case Kind::Gamma:
                return track(gamma_c(eval(e->kids[0])));
        }
        throw std::logic_error("evaluate: unhandled node");
    }
};

}  // namespace

cplx evaluate(const ExprPtr& e, const EvaluationContext& ctx) {
    Evaluator ev{ctx};
    return ev.eval(e);
}

EvalResult evaluate_scaled(const ExprPtr& e, const EvaluationContext& ctx) {
    Evaluator ev{ctx};
    cplx v = ev.eval(e);
    return {v, ev.scale};
}

Rational evaluate_exact(const ExprPtr& e, const std::map<std::string, Rational>& symbols) {
    switch (e->kind) {
        case Kind::Num:
            return e->num;
        case Kind::Sym: {
            auto it = symbols.find(e->name);
            if (it == symbols.end())
                throw EvalError(EvalError::Code::MissingBinding, "unbound symbol: " + e->name);
            return it->second;
        }
        case Kind::Add: {
            Rational s(0);
            for (auto& k : e->kids) s = s + evaluate_exact(k, symbols);
            return s;
        }
        case Kind::Mul: {
            Rational p(1);
            for (auto& k : e->kids) p = p * evaluate_exact(k, symbols);
            return p;
        }
        case Kind::Pow: {
            const ExprPtr& ex = e->kids[1];
            if (ex->kind != Kind::Num || !ex->num.is_integer() || !ex->num.num().fits_ll())
                throw NotExact("non-integer exponent");
            long long n = ex->num.num().to_ll();
            Rational b = evaluate_exact(e->kids[0], symbols);
            if (b.is_zero() && n <= 0)
                throw EvalError(EvalError::Code::SingularPoint, "0 raised to nonpositive power");
            return b.pow_int(n);
        }
        case Kind::Abs:
            return evaluate_exact(e->kids[0], symbols).abs();
        case Kind::Sgn: {
            Rational a = evaluate_exact(e->kids[0], symbols);
            if (a.is_zero()) throw EvalError(EvalError::Code::SingularPoint, "sgn at zero");
            return Rational(a.sign());
        }
        default:
            throw NotExact("transcendental node");
    }
}

}  // namespace kbsym
