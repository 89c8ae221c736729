#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goursat/rational.hpp"

namespace goursat {

using Monomial = std::vector<unsigned>;
using QPoint = std::vector<Rational>;

inline unsigned monomial_degree(const Monomial& m) {
    unsigned d = 0;
    for (unsigned e : m) d += e;
    return d;
}

// Canonical term order: higher total degree first, ties broken lexicographically
// with x1 most significant.
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = monomial_degree(a), db = monomial_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

class Poly {
public:
    using TermMap = std::map<Monomial, Rational, TermOrder>;

    Poly() : arity_(0) {}
    explicit Poly(int arity) : arity_(arity) {}

    static Poly zero(int arity) { return Poly(arity); }

    static Poly constant(int arity, const Rational& c) {
        Poly p(arity);
        if (c != 0) p.terms_[Monomial(arity, 0)] = c;
        return p;
    }

    static Poly one(int arity) { return constant(arity, 1); }

    // 1-based variable index.
    static Poly var(int arity, int index) {
        if (index < 1 || index > arity) throw std::out_of_range("variable index out of range");
        Poly p(arity);
        Monomial m(arity, 0);
        m[index - 1] = 1;
        p.terms_[m] = 1;
        return p;
    }

    static Poly term(int arity, const Monomial& m, const Rational& c) {
        if (static_cast<int>(m.size()) != arity) throw std::invalid_argument("monomial arity mismatch");
        Poly p(arity);
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("constant_value on non-constant poly");
        return terms_.begin()->second;
    }

    unsigned total_degree() const {
        if (terms_.empty()) return 0;
        return monomial_degree(terms_.begin()->first);
    }

    unsigned degree_in(int v) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[v - 1]);
        return d;
    }

    // Highest variable index with positive degree, 0 if constant.
    int top_var() const {
        int tv = 0;
        for (const auto& [m, c] : terms_)
            for (int v = arity_; v > tv; --v)
                if (m[v - 1] > 0) { tv = v; break; }
        return tv;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    Poly& operator-=(const Poly& o) {
        check_arity(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }

    Poly operator-() const {
        Poly r(arity_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_arity(b);
        Poly r(a.arity_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(a.arity_);
                for (int i = 0; i < a.arity_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }

    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend Poly operator*(const Rational& c, const Poly& p) {
        Poly r(p.arity_);
        if (c == 0) return r;
        for (const auto& [m, k] : p.terms_) r.terms_[m] = c * k;
        return r;
    }

    friend Poly operator*(const Poly& p, const Rational& c) { return c * p; }

    Poly pow(unsigned e) const {
        Poly r = one(arity_);
        Poly base = *this;
        while (e > 0) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    Poly partial(int v) const {
        Poly r(arity_);
        for (const auto& [m, c] : terms_) {
            unsigned e = m[v - 1];
            if (e == 0) continue;
            Monomial d = m;
            d[v - 1] = e - 1;
            r.add_term(d, c * Rational(e));
        }
        return r;
    }

    Rational evaluate(const QPoint& p) const {
        if (static_cast<int>(p.size()) != arity_) throw std::invalid_argument("point arity mismatch");
        Rational acc = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < arity_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t *= p[i];
            acc += t;
        }
        return acc;
    }

    double evaluate_double(const std::vector<double>& p) const {
        if (static_cast<int>(p.size()) != arity_) throw std::invalid_argument("point arity mismatch");
        double acc = 0;
        for (const auto& [m, c] : terms_) {
            double t = rational_to_double(c);
            for (int i = 0; i < arity_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t *= p[i];
            acc += t;
        }
        return acc;
    }

    Poly extend_arity(int new_arity) const {
        if (new_arity < arity_) throw std::invalid_argument("extend_arity shrinks");
        Poly r(new_arity);
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            mm.resize(new_arity, 0);
            r.terms_[mm] = c;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    static int compare(const Poly& a, const Poly& b) {
        if (a.arity_ != b.arity_) return a.arity_ < b.arity_ ? -1 : 1;
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        TermOrder before;
        for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return before(ia->first, ib->first) ? -1 : 1;
            if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        }
        if (ia != a.terms_.end()) return 1;
        if (ib != b.terms_.end()) return -1;
        return 0;
    }

    friend bool operator<(const Poly& a, const Poly& b) { return compare(a, b) < 0; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational a = c < 0 ? Rational(-c) : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mono = monomial_string(m);
            if (mono.empty()) {
                out += rational_to_string(a);
            } else if (a == 1) {
                out += mono;
            } else {
                out += rational_to_string(a) + "*" + mono;
            }
        }
        return out;
    }

private:
    void check_arity(const Poly& o) const {
        if (arity_ != o.arity_) throw std::invalid_argument("poly arity mismatch");
    }

    static std::string monomial_string(const Monomial& m) {
        std::string out;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += "x" + std::to_string(i + 1);
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
        }
        return out;
    }

    int arity_;
    TermMap terms_;
};

inline bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Exact multivariate division; empty when b does not divide a.
inline std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Poly::zero(a.arity());
    Poly q(a.arity());
    Poly r = a;
    const auto& ltb = *b.terms().begin();
    while (!r.is_zero()) {
        const auto& ltr = *r.terms().begin();
        if (!monomial_divides(ltb.first, ltr.first)) return std::nullopt;
        Monomial m(a.arity());
        for (int i = 0; i < a.arity(); ++i) m[i] = ltr.first[i] - ltb.first[i];
        Rational c = ltr.second / ltb.second;
        Poly t = Poly::term(a.arity(), m, c);
        q += t;
        r -= t * b;
    }
    return q;
}

inline Poly exact_divide(const Poly& a, const Poly& b) {
    auto q = try_divide(a, b);
    if (!q) throw std::logic_error("inexact polynomial division");
    return *q;
}

// Scale so coefficients are coprime integers and the leading one is positive.
inline Poly primitive_scale(const Poly& p) {
    if (p.is_zero()) return p;
    Integer g = 0, l = 1;
    for (const auto& [m, c] : p.terms()) {
        g = boost::multiprecision::gcd(g, rat_num(c) < 0 ? Integer(-rat_num(c)) : rat_num(c));
        l = boost::multiprecision::lcm(l, rat_den(c));
    }
    Rational s(l, g);
    if (p.terms().begin()->second < 0) s = -s;
    return s * p;
}

namespace detail {

inline Poly lc_in(const Poly& p, int v, unsigned deg) {
    Poly r(p.arity());
    for (const auto& [m, c] : p.terms()) {
        if (m[v - 1] != deg) continue;
        Monomial mm = m;
        mm[v - 1] = 0;
        r.add_term(mm, c);
    }
    return r;
}

inline Poly var_pow(int arity, int v, unsigned e) {
    Monomial m(arity, 0);
    m[v - 1] = e;
    return Poly::term(arity, m, 1);
}

// Division-free pseudo remainder of A by B in variable v,
// equal to rem(lc_v(B)^(degA-degB+1) * A, B).
inline Poly prem(const Poly& A, const Poly& B, int v) {
    unsigned db = B.degree_in(v);
    Poly lcB = lc_in(B, v, db);
    Poly R = A;
    int e = static_cast<int>(A.degree_in(v)) - static_cast<int>(db) + 1;
    while (!R.is_zero() && R.degree_in(v) >= db) {
        unsigned dr = R.degree_in(v);
        Poly lcR = lc_in(R, v, dr);
        R = lcB * R - lcR * var_pow(A.arity(), v, dr - db) * B;
        --e;
    }
    for (; e > 0; --e) R = lcB * R;
    return R;
}

}  // namespace detail

Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {

inline Poly content_in(const Poly& p, int v) {
    std::map<unsigned, Poly> coeffs;
    for (const auto& [m, c] : p.terms()) {
        unsigned e = m[v - 1];
        auto it = coeffs.find(e);
        if (it == coeffs.end()) it = coeffs.emplace(e, Poly::zero(p.arity())).first;
        Monomial mm = m;
        mm[v - 1] = 0;
        it->second.add_term(mm, c);
    }
    Poly g = Poly::zero(p.arity());
    for (const auto& [e, cp] : coeffs) {
        g = poly_gcd(g, cp);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

// Subresultant polynomial remainder sequence; A, B primitive in v.
inline Poly gcd_primitive(Poly A, Poly B, int v) {
    const int arity = A.arity();
    Poly g = Poly::one(arity), h = Poly::one(arity);
    while (true) {
        unsigned da = A.degree_in(v), db = B.degree_in(v);
        unsigned d = da - db;
        Poly R = prem(A, B, v);
        if (R.is_zero()) break;
        if (R.degree_in(v) == 0) return Poly::one(arity);
        A = B;
        Poly divisor = g;
        for (unsigned i = 0; i < d; ++i) divisor = divisor * h;
        B = exact_divide(R, divisor);
        g = lc_in(A, v, A.degree_in(v));
        if (d >= 1) {
            Poly gp = g;
            for (unsigned i = 1; i < d; ++i) gp = gp * g;
            Poly hp = Poly::one(arity);
            for (unsigned i = 1; i < d; ++i) hp = hp * h;
            h = exact_divide(gp, hp);
        }
    }
    Poly cont = content_in(B, v);
    return exact_divide(B, cont);
}

}  // namespace detail

// GCD in Q[x1..xn], returned primitive with positive leading coefficient.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : primitive_scale(b);
    if (b.is_zero()) return primitive_scale(a);
    if (a.is_constant() || b.is_constant()) return Poly::one(a.arity());
    int v = std::max(a.top_var(), b.top_var());
    unsigned da = a.degree_in(v), db = b.degree_in(v);
    if (db == 0) return poly_gcd(b, detail::content_in(a, v));
    if (da == 0) return poly_gcd(a, detail::content_in(b, v));
    Poly ca = detail::content_in(a, v);
    Poly cb = detail::content_in(b, v);
    Poly c = poly_gcd(ca, cb);
    Poly A = exact_divide(a, ca);
    Poly B = exact_divide(b, cb);
    if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
    Poly G = detail::gcd_primitive(A, B, v);
    return primitive_scale(c * G);
}

}  // namespace goursat
