#pragma once

#include <vector>

#include "goursat/linalg.hpp"
#include "goursat/ratfn.hpp"

namespace goursat {

struct PolyVF {
    int dim = 0;
    std::vector<Poly> comp;

    PolyVF() = default;
    explicit PolyVF(int d) : dim(d), comp(d, Poly::zero(d)) {}
    PolyVF(int d, std::vector<Poly> c) : dim(d), comp(std::move(c)) {
        if (static_cast<int>(comp.size()) != dim) throw std::invalid_argument("component count mismatch");
        for (const auto& p : comp)
            if (p.arity() != dim) throw std::invalid_argument("component arity mismatch");
    }

    static PolyVF unit(int dim, int index) {
        PolyVF f(dim);
        f.comp[index - 1] = Poly::one(dim);
        return f;
    }

    bool is_zero() const {
        for (const auto& p : comp)
            if (!p.is_zero()) return false;
        return true;
    }

    PolyVF extend_dim(int new_dim) const {
        PolyVF f(new_dim);
        for (int i = 0; i < dim; ++i) f.comp[i] = comp[i].extend_arity(new_dim);
        return f;
    }

    friend bool operator==(const PolyVF& a, const PolyVF& b) {
        return a.dim == b.dim && a.comp == b.comp;
    }
    friend bool operator!=(const PolyVF& a, const PolyVF& b) { return !(a == b); }

    friend bool operator<(const PolyVF& a, const PolyVF& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        for (int i = 0; i < a.dim; ++i) {
            int c = Poly::compare(a.comp[i], b.comp[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }
};

struct RatVF {
    int dim = 0;
    std::vector<RatFn> comp;

    RatVF() = default;
    explicit RatVF(int d) : dim(d), comp(d, RatFn::zero(d)) {}
    RatVF(int d, std::vector<RatFn> c) : dim(d), comp(std::move(c)) {
        if (static_cast<int>(comp.size()) != dim) throw std::invalid_argument("component count mismatch");
    }
    RatVF(const PolyVF& f) : dim(f.dim) {
        comp.reserve(dim);
        for (const auto& p : f.comp) comp.emplace_back(p);
    }

    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.is_zero()) return false;
        return true;
    }

    bool is_polynomial() const {
        for (const auto& c : comp)
            if (!c.is_polynomial()) return false;
        return true;
    }

    PolyVF to_poly() const {
        PolyVF f(dim);
        for (int i = 0; i < dim; ++i) {
            if (!comp[i].is_polynomial()) throw std::logic_error("vector field is not polynomial");
            Rational d = comp[i].den().constant_value();
            f.comp[i] = Rational(1) / d * comp[i].num();
        }
        return f;
    }

    friend bool operator==(const RatVF& a, const RatVF& b) {
        return a.dim == b.dim && a.comp == b.comp;
    }
    friend bool operator!=(const RatVF& a, const RatVF& b) { return !(a == b); }
};

inline Poly lie_derivative(const PolyVF& f, const Poly& h) {
    Poly r(h.arity());
    for (int j = 1; j <= f.dim; ++j) r += f.comp[j - 1] * h.partial(j);
    return r;
}

inline RatFn lie_derivative(const RatVF& f, const RatFn& h) {
    RatFn r = RatFn::zero(h.arity());
    for (int j = 1; j <= f.dim; ++j) r += f.comp[j - 1] * h.partial(j);
    return r;
}

inline PolyVF lie_bracket(const PolyVF& f, const PolyVF& g) {
    if (f.dim != g.dim) throw std::invalid_argument("bracket dimension mismatch");
    PolyVF r(f.dim);
    for (int i = 0; i < f.dim; ++i)
        r.comp[i] = lie_derivative(f, g.comp[i]) - lie_derivative(g, f.comp[i]);
    return r;
}

inline RatVF lie_bracket(const RatVF& f, const RatVF& g) {
    if (f.dim != g.dim) throw std::invalid_argument("bracket dimension mismatch");
    RatVF r(f.dim);
    for (int i = 0; i < f.dim; ++i)
        r.comp[i] = lie_derivative(f, g.comp[i]) - lie_derivative(g, f.comp[i]);
    return r;
}

inline QPoint evaluate(const PolyVF& f, const QPoint& p) {
    QPoint v;
    v.reserve(f.dim);
    for (const auto& c : f.comp) v.push_back(c.evaluate(p));
    return v;
}

inline QPoint evaluate(const RatVF& f, const QPoint& p) {
    QPoint v;
    v.reserve(f.dim);
    for (int i = 0; i < f.dim; ++i) v.push_back(f.comp[i].evaluate(p, i + 1));
    return v;
}

template <typename VF>
inline int rank_at(const std::vector<VF>& fields, const QPoint& p) {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(fields.size());
    for (const auto& f : fields) rows.push_back(evaluate(f, p));
    return matrix_rank(rows);
}

// Components of the pushforward expressed in source coordinates:
// (Phi_* f)_i = L_f Phi_i, left uncomposed with the inverse of Phi.
inline RatVF pushforward_in_source(const std::vector<RatFn>& phi, const RatVF& f) {
    RatVF r(static_cast<int>(phi.size()));
    for (std::size_t i = 0; i < phi.size(); ++i) r.comp[i] = lie_derivative(f, phi[i]);
    return r;
}

}  // namespace goursat
