#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "goursat/krforms.hpp"
#include "goursat/trigexpr.hpp"

namespace goursat {

using STWord = std::vector<int>;

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " (line " + std::to_string(l) + ", column " + std::to_string(c) + ")"),
          line(l),
          col(c) {}
};

namespace dsl {

enum class Tok { Num, Ident, Partial, Plus, Minus, Star, Slash, Caret, LParen, RParen, Semi, End };

struct Token {
    Tok kind;
    Rational num;
    std::string text;
    int line = 1, col = 1;
};

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            ++col;
            continue;
        }
        int tl = line, tc = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            std::size_t end = j;
            if (j < src.size() && src[j] == '/' && j + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
                std::size_t k = j + 1;
                while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                end = k;
            }
            std::string text = src.substr(i, end - i);
            Rational value;
            try {
                value = parse_rational(text);
            } catch (const std::exception& e) {
                throw ParseError(e.what(), tl, tc);
            }
            out.push_back({Tok::Num, value, text, tl, tc});
            col += static_cast<int>(end - i);
            i = end;
            continue;
        }
        if (ch == 'd' && i + 2 < src.size() && src[i + 1] == '/' && src[i + 2] == 'd') {
            std::size_t j = i + 3;
            std::size_t start = j;
            while (j < src.size() && ident_char(src[j])) ++j;
            if (j == start) throw ParseError("expected variable name after d/d", tl, tc);
            out.push_back({Tok::Partial, 0, src.substr(start, j - start), tl, tc});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            out.push_back({Tok::Ident, 0, src.substr(i, j - i), tl, tc});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        Tok k;
        switch (ch) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case ';': k = Tok::Semi; break;
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", tl, tc);
        }
        out.push_back({k, 0, std::string(1, ch), tl, tc});
        ++i;
        ++col;
    }
    out.push_back({Tok::End, 0, "", line, col});
    return out;
}

inline bool is_func_name(const std::string& s) {
    return s == "sin" || s == "cos" || s == "tan" || s == "atan";
}

inline bool is_trailer_name(const std::string& s) {
    if (s == "xi1" || s == "xi2") return true;
    if (s.size() >= 3 && s[0] == 't' && s[1] == 'h') {
        for (std::size_t i = 2; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    }
    return false;
}

inline bool is_kr_name(const std::string& s) {
    if (s.size() < 2 || s[0] != 'x') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

struct RatScalar {
    using S = RatFn;
    int dim;

    int var_index(const std::string& name, int l, int c) const {
        if (is_kr_name(name)) {
            int idx = std::stoi(name.substr(1));
            if (idx < 1 || idx > dim)
                throw ParseError("variable " + name + " out of range for dim " + std::to_string(dim), l, c);
            return idx;
        }
        if (is_trailer_name(name))
            throw ParseError("trailer variable '" + name + "' mixed into x-coordinate context", l, c);
        throw ParseError("unknown variable '" + name + "'", l, c);
    }

    S constant(const Rational& v) const { return RatFn::constant(dim, v); }
    S var(const std::string& name, int l, int c) const { return RatFn::var(dim, var_index(name, l, c)); }
    S add(const S& a, const S& b) const { return a + b; }
    S sub(const S& a, const S& b) const { return a - b; }
    S mul(const S& a, const S& b) const { return a * b; }
    S div(const S& a, const S& b, int l, int c) const {
        if (b.is_zero()) throw ParseError("division by zero", l, c);
        return a / b;
    }
    S neg(const S& a) const { return -a; }
    S pow(const S& a, int e, int l, int c) const {
        if (e >= 0) {
            RatFn r(a.num().pow(e), a.den().pow(e));
            return r;
        }
        if (a.is_zero()) throw ParseError("zero raised to a negative power", l, c);
        return RatFn(a.den().pow(-e), a.num().pow(-e));
    }
    S func(const std::string& name, const S&, int l, int c) const {
        throw ParseError("function '" + name + "' not allowed outside trigonometric context", l, c);
    }
    bool is_zero(const S& a) const { return a.is_zero(); }
};

struct TrigScalar {
    using S = TrigExpr;
    int dim;

    int var_index(const std::string& name, int l, int c) const {
        if (name == "xi1") return 1;
        if (name == "xi2") return 2;
        if (is_trailer_name(name)) {
            int idx = std::stoi(name.substr(2)) + 3;
            if (idx > dim)
                throw ParseError("variable " + name + " out of range for dim " + std::to_string(dim), l, c);
            return idx;
        }
        if (is_kr_name(name))
            throw ParseError("x-coordinate '" + name + "' mixed into trailer context", l, c);
        throw ParseError("unknown variable '" + name + "'", l, c);
    }

    S constant(const Rational& v) const { return tg_const(v); }
    S var(const std::string& name, int l, int c) const { return tg_var(var_index(name, l, c)); }
    S add(const S& a, const S& b) const { return tg_add(a, b); }
    S sub(const S& a, const S& b) const { return tg_sub(a, b); }
    S mul(const S& a, const S& b) const { return tg_mul(a, b); }
    S div(const S& a, const S& b, int l, int c) const {
        if (tg_is_const(b, 0)) throw ParseError("division by zero", l, c);
        return tg_div(a, b);
    }
    S neg(const S& a) const { return tg_neg(a); }
    S pow(const S& a, int e, int, int) const { return tg_pow(a, e); }
    S func(const std::string& name, const S& arg, int l, int c) const {
        if (name == "sin") return tg_sin(arg);
        if (name == "cos") return tg_cos(arg);
        if (name == "tan") return tg_tan(arg);
        if (name == "atan") return tg_atan(arg);
        throw ParseError("unknown function '" + name + "'", l, c);
    }
    bool is_zero(const S& a) const { return tg_is_const(a, 0); }
};

template <class Traits>
class Parser {
public:
    Parser(const std::vector<Token>& toks, Traits tr) : toks_(toks), tr_(tr) {}

    using S = typename Traits::S;

    struct Val {
        bool vec = false;
        S s;
        std::vector<S> comps;
    };

    Val parse_expr() {
        Val acc;
        bool lead_minus = false;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            lead_minus = peek().kind == Tok::Minus;
            advance();
        }
        acc = parse_term();
        if (lead_minus) negate(acc);
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            Token op = advance();
            Val t = parse_term();
            if (acc.vec != t.vec)
                throw ParseError("cannot add scalar and vector field terms", op.line, op.col);
            if (acc.vec) {
                for (std::size_t i = 0; i < acc.comps.size(); ++i)
                    acc.comps[i] = op.kind == Tok::Plus ? tr_.add(acc.comps[i], t.comps[i])
                                                        : tr_.sub(acc.comps[i], t.comps[i]);
            } else {
                acc.s = op.kind == Tok::Plus ? tr_.add(acc.s, t.s) : tr_.sub(acc.s, t.s);
            }
        }
        return acc;
    }

    const Token& peek() const { return toks_[pos_]; }
    Token advance() { return toks_[pos_++]; }

    void expect(Tok k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError("expected " + what, peek().line, peek().col);
        advance();
    }

private:
    void negate(Val& v) {
        if (v.vec) {
            for (auto& c : v.comps) c = tr_.neg(c);
        } else {
            v.s = tr_.neg(v.s);
        }
    }

    Val scalar(S s) {
        Val v;
        v.vec = false;
        v.s = std::move(s);
        return v;
    }

    Val parse_term() {
        Val acc = parse_factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            Token op = advance();
            Val f = parse_factor();
            if (op.kind == Tok::Star) {
                if (acc.vec && f.vec)
                    throw ParseError("product of two partial-derivative factors", op.line, op.col);
                if (!acc.vec && !f.vec) {
                    acc.s = tr_.mul(acc.s, f.s);
                } else {
                    Val& vec = acc.vec ? acc : f;
                    S& sc = acc.vec ? f.s : acc.s;
                    for (auto& c : vec.comps) c = tr_.mul(c, sc);
                    if (!acc.vec) acc = std::move(f);
                }
            } else {
                if (f.vec)
                    throw ParseError("cannot divide by a partial-derivative factor", op.line, op.col);
                if (acc.vec) {
                    for (auto& c : acc.comps) c = tr_.div(c, f.s, op.line, op.col);
                } else {
                    acc.s = tr_.div(acc.s, f.s, op.line, op.col);
                }
            }
        }
        return acc;
    }

    Val parse_factor() {
        if (peek().kind == Tok::Minus) {
            advance();
            Val v = parse_factor();
            negate(v);
            return v;
        }
        Val base = parse_atom();
        while (peek().kind == Tok::Caret) {
            Token op = advance();
            bool neg = false;
            if (peek().kind == Tok::Minus) {
                neg = true;
                advance();
            }
            if (peek().kind != Tok::Num || !is_integer(peek().num))
                throw ParseError("expected integer exponent", peek().line, peek().col);
            Token e = advance();
            long ev = e.num.convert_to<long>();
            if (ev > 64) throw ParseError("exponent too large", e.line, e.col);
            if (neg) ev = -ev;
            if (base.vec)
                throw ParseError("cannot raise a partial-derivative factor to a power", op.line, op.col);
            base.s = tr_.pow(base.s, static_cast<int>(ev), op.line, op.col);
        }
        return base;
    }

    Val parse_atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Num: {
                advance();
                return scalar(tr_.constant(t.num));
            }
            case Tok::Partial: {
                advance();
                int idx = tr_.var_index(t.text, t.line, t.col);
                Val v;
                v.vec = true;
                v.comps.assign(tr_.dim, tr_.constant(0));
                v.comps[idx - 1] = tr_.constant(1);
                return v;
            }
            case Tok::Ident: {
                advance();
                if (peek().kind == Tok::LParen) {
                    Token lp = advance();
                    Val arg = parse_expr();
                    expect(Tok::RParen, "')'");
                    if (arg.vec)
                        throw ParseError("function applied to a vector field", lp.line, lp.col);
                    return scalar(tr_.func(t.text, arg.s, t.line, t.col));
                }
                return scalar(tr_.var(t.text, t.line, t.col));
            }
            case Tok::LParen: {
                advance();
                Val v = parse_expr();
                expect(Tok::RParen, "')'");
                return v;
            }
            default:
                throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
        }
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
    Traits tr_;
};

inline int parse_header(const std::vector<Token>& toks, std::size_t& pos) {
    if (toks[pos].kind != Tok::Ident || toks[pos].text != "dim")
        throw ParseError("expected 'dim' header", toks[pos].line, toks[pos].col);
    ++pos;
    if (toks[pos].kind != Tok::Num || !is_integer(toks[pos].num))
        throw ParseError("expected integer dimension", toks[pos].line, toks[pos].col);
    long dim = toks[pos].num.convert_to<long>();
    if (dim < 1 || dim > 64)
        throw ParseError("dimension out of range", toks[pos].line, toks[pos].col);
    ++pos;
    if (toks[pos].kind != Tok::Semi)
        throw ParseError("expected ';' after dimension header", toks[pos].line, toks[pos].col);
    ++pos;
    return static_cast<int>(dim);
}

inline bool wants_trig(const std::vector<Token>& toks) {
    for (const auto& t : toks) {
        if (t.kind == Tok::Ident && (is_func_name(t.text) || is_trailer_name(t.text))) return true;
        if (t.kind == Tok::Partial && is_trailer_name(t.text)) return true;
    }
    return false;
}

}  // namespace dsl

struct ParsedField {
    int dim = 0;
    bool trig = false;
    RatVF rat;
    TrigVF tvf;
};

inline ParsedField parse_vector_field(const std::string& text) {
    auto toks = dsl::lex(text);
    std::size_t pos = 0;
    int dim = dsl::parse_header(toks, pos);
    std::vector<dsl::Token> rest(toks.begin() + pos, toks.end());
    ParsedField out;
    out.dim = dim;
    out.trig = dsl::wants_trig(rest);
    if (out.trig) {
        dsl::Parser<dsl::TrigScalar> p(rest, dsl::TrigScalar{dim});
        auto v = p.parse_expr();
        p.expect(dsl::Tok::End, "end of input");
        out.tvf = TrigVF(dim);
        if (!v.vec) {
            if (!tg_is_const(v.s, 0))
                throw ParseError("expression is scalar, expected a vector field", 1, 1);
        } else {
            out.tvf.comp = v.comps;
        }
    } else {
        dsl::Parser<dsl::RatScalar> p(rest, dsl::RatScalar{dim});
        auto v = p.parse_expr();
        p.expect(dsl::Tok::End, "end of input");
        out.rat = RatVF(dim);
        if (!v.vec) {
            if (!v.s.is_zero())
                throw ParseError("expression is scalar, expected a vector field", 1, 1);
        } else {
            out.rat.comp = v.comps;
        }
    }
    return out;
}

inline RatVF parse_rational_field(const std::string& text) {
    ParsedField f = parse_vector_field(text);
    if (f.trig) throw ParseError("expected a rational vector field", 1, 1);
    return f.rat;
}

inline RatFn parse_scalar(const std::string& text, int dim) {
    auto toks = dsl::lex(text);
    dsl::Parser<dsl::RatScalar> p(toks, dsl::RatScalar{dim});
    auto v = p.parse_expr();
    p.expect(dsl::Tok::End, "end of input");
    if (v.vec) throw ParseError("expected a scalar expression", 1, 1);
    return v.s;
}

inline KRWord parse_kr_word(const std::string& text) {
    KRWord word;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return word;
    std::size_t start = 0;
    int stepno = 1;
    while (true) {
        std::size_t dot = s.find('.', start);
        std::string step = s.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (step.empty())
            throw ParseError("empty step in word", 1, static_cast<int>(start) + 1);
        if (step == "S") {
            word.steps.push_back(KRStep::S());
        } else if (step[0] == 'R') {
            std::string lit = step.substr(1);
            if (lit.empty())
                throw ParseError("step " + std::to_string(stepno) + " has no constant after R", 1,
                                 static_cast<int>(start) + 1);
            try {
                word.steps.push_back(KRStep::R(parse_rational(lit)));
            } catch (const std::exception&) {
                throw ParseError("bad constant '" + lit + "' in step " + std::to_string(stepno), 1,
                                 static_cast<int>(start) + 1);
            }
        } else {
            throw ParseError("bad step '" + step + "' (expected S or R<rational>)", 1,
                             static_cast<int>(start) + 1);
        }
        if (dot == std::string::npos) break;
        start = dot + 1;
        ++stepno;
    }
    return word;
}

inline std::string print_canonical(const KRWord& word) {
    std::string out;
    for (std::size_t i = 0; i < word.steps.size(); ++i) {
        if (i) out += ".";
        out += word.steps[i].singular ? "S" : "R" + rational_to_string(word.steps[i].c);
    }
    return out;
}

inline STWord parse_st_word(const std::string& text) {
    STWord w;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) return w;
    std::size_t start = 0;
    while (true) {
        std::size_t dot = s.find('.', start);
        std::string letter = s.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (letter.size() < 2 || letter[0] != 'a')
            throw ParseError("bad letter '" + letter + "' (expected a<index>)", 1,
                             static_cast<int>(start) + 1);
        for (std::size_t i = 1; i < letter.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(letter[i])))
                throw ParseError("bad letter '" + letter + "'", 1, static_cast<int>(start) + 1);
        w.push_back(std::stoi(letter.substr(1)));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return w;
}

inline std::string print_canonical(const STWord& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ".";
        out += "a" + std::to_string(w[i]);
    }
    return out;
}

inline std::string print_canonical(const RatVF& f) {
    std::string body;
    bool first = true;
    for (int idx = f.dim; idx >= 1; --idx) {
        const RatFn& c = f.comp[idx - 1];
        if (c.is_zero()) continue;
        bool neg = c.num().terms().begin()->second < 0;
        RatFn mag = neg ? -c : c;
        std::string cs;
        bool is_one = mag.is_polynomial() && mag.num() == Poly::one(f.dim);
        if (!is_one) {
            std::string s = mag.to_string();
            if (mag.is_polynomial() && mag.num().terms().size() > 1) s = "(" + s + ")";
            cs = s + "*";
        }
        std::string piece = cs + "d/dx" + std::to_string(idx);
        if (first) {
            body = (neg ? "-" : "") + piece;
            first = false;
        } else {
            body += (neg ? " - " : " + ") + piece;
        }
    }
    if (first) body = "0";
    return "dim " + std::to_string(f.dim) + "; " + body;
}

inline std::string print_canonical(const PolyVF& f) { return print_canonical(RatVF(f)); }

inline std::string print_canonical(const TrigVF& f) {
    std::string body;
    bool first = true;
    for (int idx = f.dim; idx >= 1; --idx) {
        const TrigExpr& c = f.comp[idx - 1];
        if (tg_is_const(c, 0)) continue;
        std::string cs;
        if (!tg_is_const(c, 1)) cs = tg_to_string_rec(c.get(), 2) + "*";
        std::string piece = cs + "d/d" + trailer_var_name(idx);
        if (first) {
            body = piece;
            first = false;
        } else {
            body += " + " + piece;
        }
    }
    if (first) body = "0";
    return "dim " + std::to_string(f.dim) + "; " + body;
}

}  // namespace goursat
