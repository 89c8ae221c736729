#pragma once

#include <stdexcept>
#include <string>

#include "goursat/poly.hpp"

namespace goursat {

struct DenominatorVanishes : std::domain_error {
    int component;
    explicit DenominatorVanishes(int comp)
        : std::domain_error("denominator vanishes at evaluation point (component " +
                            std::to_string(comp) + ")"),
          component(comp) {}
};

// Reduced fraction of polynomials. Canonical form: gcd removed, denominator
// has coprime integer coefficients with positive leading coefficient.
class RatFn {
public:
    RatFn() : num_(0), den_(0) {}
    explicit RatFn(int arity) : num_(arity), den_(Poly::one(arity)) {}
    RatFn(const Poly& num) : num_(num), den_(Poly::one(num.arity())) {}
    RatFn(const Poly& num, const Poly& den) : num_(num), den_(den) { reduce(); }

    static RatFn zero(int arity) { return RatFn(Poly::zero(arity)); }
    static RatFn one(int arity) { return RatFn(Poly::one(arity)); }
    static RatFn constant(int arity, const Rational& c) { return RatFn(Poly::constant(arity, c)); }
    static RatFn var(int arity, int index) { return RatFn(Poly::var(arity, index)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int arity() const { return num_.arity(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rational constant_value() const {
        return num_.constant_value() / den_.constant_value();
    }

    friend RatFn operator+(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator*(const RatFn& a, const RatFn& b) {
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn& a, const RatFn& b) {
        if (b.num_.is_zero()) throw std::domain_error("division by zero rational function");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFn& operator+=(const RatFn& o) { *this = *this + o; return *this; }
    RatFn& operator-=(const RatFn& o) { *this = *this - o; return *this; }
    RatFn& operator*=(const RatFn& o) { *this = *this * o; return *this; }
    RatFn& operator/=(const RatFn& o) { *this = *this / o; return *this; }

    RatFn operator-() const {
        RatFn r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RatFn partial(int v) const {
        Poly n = num_.partial(v) * den_ - num_ * den_.partial(v);
        return RatFn(n, den_ * den_);
    }

    Rational evaluate(const QPoint& p, int component = 0) const {
        Rational d = den_.evaluate(p);
        if (d == 0) throw DenominatorVanishes(component);
        return num_.evaluate(p) / d;
    }

    double evaluate_double(const std::vector<double>& p) const {
        return num_.evaluate_double(p) / den_.evaluate_double(p);
    }

    RatFn extend_arity(int new_arity) const {
        RatFn r;
        r.num_ = num_.extend_arity(new_arity);
        r.den_ = den_.extend_arity(new_arity);
        return r;
    }

    friend bool operator==(const RatFn& a, const RatFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

    static int compare(const RatFn& a, const RatFn& b) {
        int c = Poly::compare(a.num_, b.num_);
        if (c != 0) return c;
        return Poly::compare(a.den_, b.den_);
    }

    friend bool operator<(const RatFn& a, const RatFn& b) { return compare(a, b) < 0; }

    std::string to_string() const {
        if (is_polynomial()) return num_.to_string();
        std::string n = num_.to_string();
        if (num_.terms().size() > 1) n = "(" + n + ")";
        std::string d = den_.to_string();
        if (den_.terms().size() > 1 || !den_.is_constant()) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = Poly::one(num_.arity());
            return;
        }
        if (!den_.is_constant()) {
            Poly g = poly_gcd(num_, den_);
            if (!g.is_constant()) {
                num_ = exact_divide(num_, g);
                den_ = exact_divide(den_, g);
            }
        }
        Poly prim = primitive_scale(den_);
        Rational scale = den_.terms().begin()->second / prim.terms().begin()->second;
        den_ = prim;
        num_ = Rational(1) / scale * num_;
    }

    Poly num_;
    Poly den_;
};

// Substitute args[i] for variable i+1; result arity = common arity of args.
inline RatFn compose(const Poly& p, const std::vector<RatFn>& args) {
    if (static_cast<int>(args.size()) != p.arity())
        throw std::invalid_argument("compose: argument count mismatch");
    int out_arity = args.empty() ? 0 : args[0].arity();
    RatFn acc = RatFn::zero(out_arity);
    for (const auto& [m, c] : p.terms()) {
        RatFn t = RatFn::constant(out_arity, c);
        for (int i = 0; i < p.arity(); ++i)
            for (unsigned e = 0; e < m[i]; ++e) t *= args[i];
        acc += t;
    }
    return acc;
}

inline RatFn compose(const RatFn& f, const std::vector<RatFn>& args) {
    return compose(f.num(), args) / compose(f.den(), args);
}

}  // namespace goursat
