#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kbsym/rational.hpp"

namespace kbsym {

enum class Kind {
    Num,       // exact rational constant
    ImagUnit,  // the imaginary unit
    Sym,       // named variable or parameter
    Add,       // n-ary sum
    Mul,       // n-ary product
    Pow,       // kids = {base, exponent}
    Exp,
    Ln,
    Abs,
    Sgn,
    Sin,
    Cos,
    Tan,
    ATan,
    Re,      // real part
    Func,    // placeholder application: name, derivative multi-index, args
    Kummer,  // confluent hypergeometric M(p, q, z); kids = {p, q, z}
    Gamma,   // complex gamma function of a constant argument
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    Kind kind;
    Rational num;                // Kind::Num
    std::string name;            // Kind::Sym, Kind::Func
    std::vector<int> dindex;     // Kind::Func derivative multi-index, one per arg
    std::vector<ExprPtr> kids;

    explicit Expr(Kind k) : kind(k) {}
};

// ---- constructors (raw; no simplification) ----
ExprPtr num(Rational r);
ExprPtr num(long long n);
ExprPtr num(long long n, long long d);
ExprPtr imag_unit();
ExprPtr sym(const std::string& name);
ExprPtr add(std::vector<ExprPtr> kids);
ExprPtr mul(std::vector<ExprPtr> kids);
ExprPtr pow(ExprPtr base, ExprPtr expo);
ExprPtr unary(Kind k, ExprPtr arg);
ExprPtr func(const std::string& name, std::vector<int> dindex, std::vector<ExprPtr> args);
ExprPtr kummer(ExprPtr p, ExprPtr q, ExprPtr z);
ExprPtr gammafn(ExprPtr z);

// ---- convenience (simplified on the fly) ----
ExprPtr operator+(ExprPtr a, ExprPtr b);
ExprPtr operator-(ExprPtr a, ExprPtr b);
ExprPtr operator*(ExprPtr a, ExprPtr b);
ExprPtr operator/(ExprPtr a, ExprPtr b);
ExprPtr operator-(ExprPtr a);
ExprPtr pw(ExprPtr b, ExprPtr e);           // simplified power
ExprPtr pw(ExprPtr b, long long e);
ExprPtr pw(ExprPtr b, const Rational& e);
ExprPtr eabs(ExprPtr a);
ExprPtr esgn(ExprPtr a);
ExprPtr eexp(ExprPtr a);
ExprPtr eln(ExprPtr a);
ExprPtr esin(ExprPtr a);
ExprPtr ecos(ExprPtr a);
ExprPtr etan(ExprPtr a);
ExprPtr eatan(ExprPtr a);
ExprPtr ere(ExprPtr a);

// ---- core operations ----

// Total structural order; 0 iff structurally identical.
int compare(const ExprPtr& a, const ExprPtr& b);
bool identical(const ExprPtr& a, const ExprPtr& b);

// Flattened, constant-folded, like-term-collected normal form.  The sgn/abs
// rewrites (sgn^2 -> 1, |a|*sgn a -> a, sgn pushed through products and
// powers) are valid away from the zero locus of the argument, matching the
// per-orthant reading used everywhere in this project.
ExprPtr simplify(ExprPtr e);

// Distributes products and small integer powers over sums; used by the
// exact-identity checks where structural zero is required.
ExprPtr expand(ExprPtr e);

// Exact symbolic derivative with respect to a named symbol.
// d|a| = sgn(a) da, d sgn(a) = 0, placeholder derivatives bump the
// multi-index of the corresponding argument slot.
ExprPtr differentiate(const ExprPtr& e, const std::string& v);
ExprPtr differentiate_n(ExprPtr e, const std::string& v, int n);

// Simultaneous capture-free substitution of symbols, followed by simplify.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings);

// Replaces every placeholder node `name` by derivatives of a concrete
// expression `body` in the formal variables `formals` (one per argument
// slot), evaluated at the placeholder's actual arguments.
ExprPtr instantiate_placeholder(const ExprPtr& e, const std::string& name,
                                const ExprPtr& body, const std::vector<std::string>& formals);

bool depends_on(const ExprPtr& e, const std::string& name);
void collect_symbols(const ExprPtr& e, std::vector<std::string>& out);
std::vector<std::string> free_symbols(const ExprPtr& e);
// Keys "name[i,j]" for every placeholder derivative occurring in e.
std::vector<std::string> placeholder_keys(const ExprPtr& e);
bool has_placeholder(const ExprPtr& e);
// True when the node set admits exact rational evaluation
// (numbers, symbols, +, *, integer powers, abs, sgn).
bool exactly_evaluable(const ExprPtr& e);

bool is_num(const ExprPtr& e);
bool is_num(const ExprPtr& e, const Rational& value);
// Returns the rational value when e is a Num node.
const Rational& as_num(const ExprPtr& e);
bool is_zero_expr(const ExprPtr& e);

// Plain-text grammar: round-trip stable with parse_expr.
std::string to_string(const ExprPtr& e);
ExprPtr parse_expr(const std::string& text);

}  // namespace kbsym
