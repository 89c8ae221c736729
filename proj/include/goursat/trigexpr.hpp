#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "goursat/rational.hpp"

namespace goursat {

// Exact symbolic expressions over rational constants, variables and
// sin/cos/tan/atan, held as an immutable DAG. Simplification is limited to
// constant folding and 0/1 identities.
enum class TrigOp { Const, Var, Add, Sub, Mul, Div, Pow, Sin, Cos, Tan, Atan };

struct TrigNode;
using TrigExpr = std::shared_ptr<const TrigNode>;

struct TrigNode {
    TrigOp op;
    Rational value;  // Const
    int var = 0;     // Var, 1-based
    int ipow = 0;    // Pow exponent
    TrigExpr a, b;
};

inline TrigExpr tg_const(const Rational& c) {
    auto n = std::make_shared<TrigNode>();
    n->op = TrigOp::Const;
    n->value = c;
    return n;
}

inline TrigExpr tg_var(int index) {
    auto n = std::make_shared<TrigNode>();
    n->op = TrigOp::Var;
    n->var = index;
    return n;
}

inline bool tg_is_const(const TrigExpr& e, const Rational& c) {
    return e->op == TrigOp::Const && e->value == c;
}

inline TrigExpr tg_add(const TrigExpr& a, const TrigExpr& b) {
    if (a->op == TrigOp::Const && b->op == TrigOp::Const) return tg_const(a->value + b->value);
    if (tg_is_const(a, 0)) return b;
    if (tg_is_const(b, 0)) return a;
    auto n = std::make_shared<TrigNode>();
    n->op = TrigOp::Add;
    n->a = a;
    n->b = b;
    return n;
}

inline TrigExpr tg_sub(const TrigExpr& a, const TrigExpr& b) {
    if (a->op == TrigOp::Const && b->op == TrigOp::Const) return tg_const(a->value - b->value);
    if (tg_is_const(b, 0)) return a;
    auto n = std::make_shared<TrigNode>();
    n->op = TrigOp::Sub;
    n->a = a;
    n->b = b;
    return n;
}

inline TrigExpr tg_mul(const TrigExpr& a, const TrigExpr& b) {
    if (a->op == TrigOp::Const && b->op == TrigOp::Const) return tg_const(a->value * b->value);
    if (tg_is_const(a, 0) || tg_is_const(b, 0)) return tg_const(0);
    if (tg_is_const(a, 1)) return b;
    if (tg_is_const(b, 1)) return a;
    auto n = std::make_shared<TrigNode>();
    n->op = TrigOp::Mul;
    n->a = a;
    n->b = b;
    return n;
}

inline TrigExpr tg_div(const TrigExpr& a, const TrigExpr& b) {
    if (b->op == TrigOp::Const) {
        if (b->value == 0) throw std::domain_error("division by zero constant");
        if (a->op == TrigOp::Const) return tg_const(a->value / b->value);
        if (b->value == 1) return a;
    }
    if (tg_is_const(a, 0)) return tg_const(0);
    auto n = std::make_shared<TrigNode>();
    n->op = TrigOp::Div;
    n->a = a;
    n->b = b;
    return n;
}

inline TrigExpr tg_neg(const TrigExpr& a) { return tg_mul(tg_const(-1), a); }

inline TrigExpr tg_pow(const TrigExpr& a, int e) {
    if (e == 0) return tg_const(1);
    if (e == 1) return a;
    if (a->op == TrigOp::Const) {
        Rational r = 1;
        Rational base = a->value;
        int k = e < 0 ? -e : e;
        for (int i = 0; i < k; ++i) r *= base;
        if (e < 0) {
            if (r == 0) throw std::domain_error("zero to negative power");
            r = Rational(1) / r;
        }
        return tg_const(r);
    }
    auto n = std::make_shared<TrigNode>();
    n->op = TrigOp::Pow;
    n->ipow = e;
    n->a = a;
    return n;
}

inline TrigExpr tg_fun(TrigOp op, const TrigExpr& a) {
    if (tg_is_const(a, 0)) {
        if (op == TrigOp::Cos) return tg_const(1);
        return tg_const(0);  // sin, tan, atan
    }
    auto n = std::make_shared<TrigNode>();
    n->op = op;
    n->a = a;
    return n;
}

inline TrigExpr tg_sin(const TrigExpr& a) { return tg_fun(TrigOp::Sin, a); }
inline TrigExpr tg_cos(const TrigExpr& a) { return tg_fun(TrigOp::Cos, a); }
inline TrigExpr tg_tan(const TrigExpr& a) { return tg_fun(TrigOp::Tan, a); }
inline TrigExpr tg_atan(const TrigExpr& a) { return tg_fun(TrigOp::Atan, a); }

inline TrigExpr tg_diff_rec(const TrigExpr& e, int var,
                            std::unordered_map<const TrigNode*, TrigExpr>& memo) {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    TrigExpr r;
    switch (e->op) {
        case TrigOp::Const: r = tg_const(0); break;
        case TrigOp::Var: r = tg_const(e->var == var ? 1 : 0); break;
        case TrigOp::Add:
            r = tg_add(tg_diff_rec(e->a, var, memo), tg_diff_rec(e->b, var, memo));
            break;
        case TrigOp::Sub:
            r = tg_sub(tg_diff_rec(e->a, var, memo), tg_diff_rec(e->b, var, memo));
            break;
        case TrigOp::Mul:
            r = tg_add(tg_mul(tg_diff_rec(e->a, var, memo), e->b),
                       tg_mul(e->a, tg_diff_rec(e->b, var, memo)));
            break;
        case TrigOp::Div:
            r = tg_div(tg_sub(tg_mul(tg_diff_rec(e->a, var, memo), e->b),
                              tg_mul(e->a, tg_diff_rec(e->b, var, memo))),
                       tg_mul(e->b, e->b));
            break;
        case TrigOp::Pow:
            r = tg_mul(tg_mul(tg_const(e->ipow), tg_pow(e->a, e->ipow - 1)),
                       tg_diff_rec(e->a, var, memo));
            break;
        case TrigOp::Sin: r = tg_mul(tg_cos(e->a), tg_diff_rec(e->a, var, memo)); break;
        case TrigOp::Cos:
            r = tg_neg(tg_mul(tg_sin(e->a), tg_diff_rec(e->a, var, memo)));
            break;
        case TrigOp::Tan: {
            TrigExpr t = tg_tan(e->a);
            r = tg_mul(tg_add(tg_const(1), tg_mul(t, t)), tg_diff_rec(e->a, var, memo));
            break;
        }
        case TrigOp::Atan:
            r = tg_div(tg_diff_rec(e->a, var, memo),
                       tg_add(tg_const(1), tg_mul(e->a, e->a)));
            break;
    }
    if (!r) throw std::logic_error("unreachable");
    memo[e.get()] = r;
    return r;
}

inline TrigExpr tg_diff(const TrigExpr& e, int var) {
    std::unordered_map<const TrigNode*, TrigExpr> memo;
    return tg_diff_rec(e, var, memo);
}

inline double tg_eval_rec(const TrigNode* e, const std::vector<double>& p,
                          std::unordered_map<const TrigNode*, double>& memo) {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    double r = 0;
    switch (e->op) {
        case TrigOp::Const: r = rational_to_double(e->value); break;
        case TrigOp::Var:
            if (e->var < 1 || e->var > static_cast<int>(p.size()))
                throw std::out_of_range("variable index out of range in evaluation");
            r = p[e->var - 1];
            break;
        case TrigOp::Add: r = tg_eval_rec(e->a.get(), p, memo) + tg_eval_rec(e->b.get(), p, memo); break;
        case TrigOp::Sub: r = tg_eval_rec(e->a.get(), p, memo) - tg_eval_rec(e->b.get(), p, memo); break;
        case TrigOp::Mul: r = tg_eval_rec(e->a.get(), p, memo) * tg_eval_rec(e->b.get(), p, memo); break;
        case TrigOp::Div: r = tg_eval_rec(e->a.get(), p, memo) / tg_eval_rec(e->b.get(), p, memo); break;
        case TrigOp::Pow: r = std::pow(tg_eval_rec(e->a.get(), p, memo), e->ipow); break;
        case TrigOp::Sin: r = std::sin(tg_eval_rec(e->a.get(), p, memo)); break;
        case TrigOp::Cos: r = std::cos(tg_eval_rec(e->a.get(), p, memo)); break;
        case TrigOp::Tan: r = std::tan(tg_eval_rec(e->a.get(), p, memo)); break;
        case TrigOp::Atan: r = std::atan(tg_eval_rec(e->a.get(), p, memo)); break;
    }
    memo[e] = r;
    return r;
}

inline double tg_eval(const TrigExpr& e, const std::vector<double>& p) {
    std::unordered_map<const TrigNode*, double> memo;
    return tg_eval_rec(e.get(), p, memo);
}

// Trailer variable naming: 1 -> xi1, 2 -> xi2, k -> th(k-3).
inline std::string trailer_var_name(int index) {
    if (index == 1) return "xi1";
    if (index == 2) return "xi2";
    return "th" + std::to_string(index - 3);
}

inline std::string tg_to_string_rec(const TrigNode* e, int parent_prec) {
    auto wrap = [&](const std::string& s, int prec) {
        return prec < parent_prec ? "(" + s + ")" : s;
    };
    switch (e->op) {
        case TrigOp::Const: {
            std::string s = rational_to_string(e->value);
            return e->value < 0 ? wrap(s, 1) : s;
        }
        case TrigOp::Var: return trailer_var_name(e->var);
        case TrigOp::Add:
            return wrap(tg_to_string_rec(e->a.get(), 1) + " + " + tg_to_string_rec(e->b.get(), 1), 1);
        case TrigOp::Sub:
            return wrap(tg_to_string_rec(e->a.get(), 1) + " - " + tg_to_string_rec(e->b.get(), 2), 1);
        case TrigOp::Mul:
            return wrap(tg_to_string_rec(e->a.get(), 2) + "*" + tg_to_string_rec(e->b.get(), 3), 2);
        case TrigOp::Div:
            return wrap(tg_to_string_rec(e->a.get(), 2) + "/" + tg_to_string_rec(e->b.get(), 4), 2);
        case TrigOp::Pow:
            return wrap(tg_to_string_rec(e->a.get(), 4) + "^" + std::to_string(e->ipow), 3);
        case TrigOp::Sin: return "sin(" + tg_to_string_rec(e->a.get(), 0) + ")";
        case TrigOp::Cos: return "cos(" + tg_to_string_rec(e->a.get(), 0) + ")";
        case TrigOp::Tan: return "tan(" + tg_to_string_rec(e->a.get(), 0) + ")";
        case TrigOp::Atan: return "atan(" + tg_to_string_rec(e->a.get(), 0) + ")";
    }
    throw std::logic_error("unreachable");
}

inline std::string tg_to_string(const TrigExpr& e) { return tg_to_string_rec(e.get(), 0); }

struct TrigVF {
    int dim = 0;
    std::vector<TrigExpr> comp;

    TrigVF() = default;
    explicit TrigVF(int d) : dim(d), comp(d, tg_const(0)) {}
};

inline TrigExpr tg_lie_derivative(const TrigVF& f, const TrigExpr& h) {
    TrigExpr acc = tg_const(0);
    for (int j = 1; j <= f.dim; ++j) acc = tg_add(acc, tg_mul(f.comp[j - 1], tg_diff(h, j)));
    return acc;
}

inline std::vector<double> tg_evaluate(const TrigVF& f, const std::vector<double>& p) {
    std::vector<double> out;
    out.reserve(f.dim);
    std::unordered_map<const TrigNode*, double> memo;
    for (const auto& c : f.comp) out.push_back(tg_eval_rec(c.get(), p, memo));
    return out;
}

}  // namespace goursat
