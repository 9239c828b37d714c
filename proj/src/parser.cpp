#include <cctype>
#include <stdexcept>

#include "kbsym/expr.hpp"

namespace kbsym {

namespace {

bool negative_leading(const ExprPtr& t) {
    if (t->kind == Kind::Num) return t->num.sign() < 0;
    if (t->kind == Kind::Mul && !t->kids.empty() && t->kids[0]->kind == Kind::Num)
        return t->kids[0]->num.sign() < 0;
    return false;
}

std::string print_factor(const ExprPtr& e) {
    if (e->kind == Kind::Add) return "(" + to_string(e) + ")";
    return to_string(e);
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Num:
            return e->num.str();
        case Kind::ImagUnit:
            return "i";
        case Kind::Sym:
            return e->name;
        case Kind::Add: {
            std::string s;
            for (size_t i = 0; i < e->kids.size(); ++i) {
                const ExprPtr& t = e->kids[i];
                if (i == 0) {
                    s += to_string(t);
                } else if (negative_leading(t)) {
                    s += " - " + to_string(simplify(mul({num(-1), t})));
                } else {
                    s += " + " + to_string(t);
                }
            }
            return s;
        }
        case Kind::Mul: {
            std::string s;
            size_t start = 0;
            if (e->kids[0]->kind == Kind::Num && e->kids[0]->num == Rational(-1) && e->kids.size() > 1) {
                s = "-";
                start = 1;
            }
            for (size_t i = start; i < e->kids.size(); ++i) {
                if (i > start) s += "*";
                s += print_factor(e->kids[i]);
            }
            return s;
        }
        case Kind::Pow:
            return "pow(" + to_string(e->kids[0]) + ", " + to_string(e->kids[1]) + ")";
        case Kind::Exp:
            return "exp(" + to_string(e->kids[0]) + ")";
        case Kind::Ln:
            return "ln(" + to_string(e->kids[0]) + ")";
        case Kind::Abs:
            return "abs(" + to_string(e->kids[0]) + ")";
        case Kind::Sgn:
            return "sgn(" + to_string(e->kids[0]) + ")";
        case Kind::Sin:
            return "sin(" + to_string(e->kids[0]) + ")";
        case Kind::Cos:
            return "cos(" + to_string(e->kids[0]) + ")";
        case Kind::Tan:
            return "tan(" + to_string(e->kids[0]) + ")";
        case Kind::ATan:
            return "atan(" + to_string(e->kids[0]) + ")";
        case Kind::Re:
            return "re(" + to_string(e->kids[0]) + ")";
        case Kind::Func: {
            std::string s;
            bool nonzero = false;
            for (int d : e->dindex) nonzero |= d != 0;
            if (nonzero) {
                s += "D[";
                for (size_t i = 0; i < e->dindex.size(); ++i) {
                    if (i) s += ",";
                    s += std::to_string(e->dindex[i]);
                }
                s += "]";
            }
            s += e->name + "(";
            for (size_t i = 0; i < e->kids.size(); ++i) {
                if (i) s += ", ";
                s += to_string(e->kids[i]);
            }
            return s + ")";
        }
        case Kind::Kummer:
            return "kummerM(" + to_string(e->kids[0]) + ", " + to_string(e->kids[1]) + ", " +
                   to_string(e->kids[2]) + ")";
        case Kind::Gamma:
            return "gammaC(" + to_string(e->kids[0]) + ")";
    }
    return "?";
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return simplify(e);
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr a = term();
        while (true) {
            if (eat('+')) {
                a = add({a, term()});
            } else if (eat('-')) {
                a = add({a, mul({num(-1), term()})});
            } else {
                return a;
            }
        }
    }

    ExprPtr term() {
        ExprPtr a = unary_expr();
        while (true) {
            if (eat('*')) {
                a = mul({a, unary_expr()});
            } else if (eat('/')) {
                a = mul({a, pow(unary_expr(), num(-1))});
            } else {
                return a;
            }
        }
    }

    ExprPtr unary_expr() {
        if (eat('-')) return mul({num(-1), unary_expr()});
        if (eat('+')) return unary_expr();
        return primary();
    }

    std::string ident() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) fail("identifier expected");
        return s_.substr(start, pos_ - start);
    }

    std::string number_token() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        return s_.substr(start, pos_ - start);
    }

    int integer_token() {
        skip_ws();
        bool neg = eat('-');
        std::string d = number_token();
        if (d.empty()) fail("integer expected");
        int v = std::stoi(d);
        return neg ? -v : v;
    }

    std::vector<ExprPtr> arg_list() {
        if (!eat('(')) fail("'(' expected");
        std::vector<ExprPtr> args;
        if (!eat(')')) {
            args.push_back(expr());
            while (eat(',')) args.push_back(expr());
            if (!eat(')')) fail("')' expected");
        }
        return args;
    }

    // Optional bracket tag glued to a placeholder name: theta[5/36]
    std::string bracket_tag() {
        size_t save = pos_;
        if (!eat('[')) return "";
        std::string tag;
        skip_ws();
        while (pos_ < s_.size() && s_[pos_] != ']') tag += s_[pos_++];
        if (!eat(']')) {
            pos_ = save;
            return "";
        }
        return "[" + tag + "]";
    }

    ExprPtr primary() {
        char c = peek();
        if (c == '(') {
            eat('(');
            ExprPtr e = expr();
            if (!eat(')')) fail("')' expected");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return num(Rational::parse(number_token()));
        }
        std::string name = ident();
        if (name == "i" && peek() != '(') return imag_unit();
        if (name == "D" && peek() == '[') {
            eat('[');
            std::vector<int> idx;
            idx.push_back(integer_token());
            while (eat(',')) idx.push_back(integer_token());
            if (!eat(']')) fail("']' expected");
            std::string fname = ident();
            fname += bracket_tag();
            std::vector<ExprPtr> args = arg_list();
            if (args.size() != idx.size()) fail("derivative index arity mismatch");
            return func(fname, idx, std::move(args));
        }
        std::string tag = peek() == '[' ? bracket_tag() : "";
        if (peek() != '(') {
            if (!tag.empty()) fail("'(' expected after tagged name");
            return sym(name);
        }
        std::vector<ExprPtr> args = arg_list();
        if (tag.empty()) {
            if (name == "pow" && args.size() == 2) return pow(args[0], args[1]);
            if (args.size() == 1) {
                if (name == "abs") return unary(Kind::Abs, args[0]);
                if (name == "sgn") return unary(Kind::Sgn, args[0]);
                if (name == "exp") return unary(Kind::Exp, args[0]);
                if (name == "ln") return unary(Kind::Ln, args[0]);
                if (name == "sin") return unary(Kind::Sin, args[0]);
                if (name == "cos") return unary(Kind::Cos, args[0]);
                if (name == "tan") return unary(Kind::Tan, args[0]);
                if (name == "atan") return unary(Kind::ATan, args[0]);
                if (name == "re") return unary(Kind::Re, args[0]);
                if (name == "gammaC") return gammafn(args[0]);
            }
            if (name == "kummerM" && args.size() == 3) return kummer(args[0], args[1], args[2]);
        }
        size_t nargs = args.size();
        return func(name + tag, std::vector<int>(nargs, 0), std::move(args));
    }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace kbsym
