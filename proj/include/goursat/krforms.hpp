#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "goursat/vectorfield.hpp"

namespace goursat {

struct KRStep {
    bool singular = false;
    Rational c = 0;

    static KRStep S() { return KRStep{true, 0}; }
    static KRStep R(const Rational& c) { return KRStep{false, c}; }

    friend bool operator==(const KRStep& a, const KRStep& b) {
        return a.singular == b.singular && (a.singular || a.c == b.c);
    }
};

struct KRWord {
    std::vector<KRStep> steps;

    KRWord() = default;
    explicit KRWord(std::vector<KRStep> s) : steps(std::move(s)) {}

    int length() const { return static_cast<int>(steps.size()); }
    int dim() const { return length() + 3; }

    KRWord prefix(int len) const {
        KRWord w;
        w.steps.assign(steps.begin(), steps.begin() + len);
        return w;
    }

    friend bool operator==(const KRWord& a, const KRWord& b) { return a.steps == b.steps; }
};

struct KRSystem {
    int dim = 0;
    PolyVF f1, f2;
    KRWord word;
};

inline PolyVF lift(const PolyVF& f, int new_dim) { return f.extend_dim(new_dim); }

inline KRSystem kappa3() {
    KRSystem s;
    s.dim = 3;
    s.f1 = PolyVF::unit(3, 3);
    s.f2 = PolyVF(3);
    s.f2.comp[0] = Poly::one(3);
    s.f2.comp[1] = Poly::var(3, 3);
    return s;
}

inline KRSystem prolong_regular(const KRSystem& s, const Rational& c) {
    KRSystem r;
    r.dim = s.dim + 1;
    r.f1 = PolyVF::unit(r.dim, r.dim);
    PolyVF l1 = lift(s.f1, r.dim), l2 = lift(s.f2, r.dim);
    Poly xc = Poly::var(r.dim, r.dim) + Poly::constant(r.dim, c);
    r.f2 = PolyVF(r.dim);
    for (int i = 0; i < r.dim; ++i) r.f2.comp[i] = xc * l1.comp[i] + l2.comp[i];
    r.word = s.word;
    r.word.steps.push_back(KRStep::R(c));
    return r;
}

inline KRSystem prolong_singular(const KRSystem& s) {
    KRSystem r;
    r.dim = s.dim + 1;
    r.f1 = PolyVF::unit(r.dim, r.dim);
    PolyVF l1 = lift(s.f1, r.dim), l2 = lift(s.f2, r.dim);
    Poly xn = Poly::var(r.dim, r.dim);
    r.f2 = PolyVF(r.dim);
    for (int i = 0; i < r.dim; ++i) r.f2.comp[i] = l1.comp[i] + xn * l2.comp[i];
    r.word = s.word;
    r.word.steps.push_back(KRStep::S());
    return r;
}

inline KRSystem build(const KRWord& word) {
    KRSystem s = kappa3();
    for (const auto& step : word.steps)
        s = step.singular ? prolong_singular(s) : prolong_regular(s, step.c);
    return s;
}

// Double-indexed presentation: blocks of sizes k_0..k_{m+1} (k_m >= 3,
// k_{m+1} = 1, sum = n) with constants c^i_j on slots j = 1..k_i - 1.
struct ExplicitKR {
    int dim = 0;
    int m = 0;
    std::vector<int> k;
    std::map<std::pair<int, int>, Rational> c;

    // Flat index of x^i_j, counting blocks downward from x_n.
    int flat(int i, int j) const {
        int start = dim;
        for (int t = 0; t < i; ++t) start -= k[t];
        return start - (j - 1);
    }
};

inline ExplicitKR explicit_form(const KRWord& word) {
    if (word.steps.empty() || word.steps.front().singular)
        throw std::domain_error("word has no explicit double-indexed form (empty or leading singular step)");
    const int L = word.length();
    std::vector<int> spos;  // 1-based positions of singular steps
    for (int t = 0; t < L; ++t)
        if (word.steps[t].singular) spos.push_back(t + 1);
    const int m = static_cast<int>(spos.size());
    ExplicitKR e;
    e.dim = word.dim();
    e.m = m;
    e.k.resize(m + 2);
    e.k[m + 1] = 1;
    if (m == 0) {
        e.k[0] = L + 2;
    } else {
        e.k[0] = (L - spos[m - 1]) + 1;
        for (int i = 1; i <= m - 1; ++i) e.k[i] = spos[m - i] - spos[m - i - 1];
        e.k[m] = spos[0] + 1;
    }
    // Constants: slot j = 1 of a block is the newest regular step of its run.
    auto run_constants = [&](int begin, int end) {  // steps begin..end inclusive, 1-based
        std::vector<Rational> cs;
        for (int t = end; t >= begin; --t) cs.push_back(word.steps[t - 1].c);
        return cs;
    };
    auto assign = [&](int block, const std::vector<Rational>& cs) {
        for (std::size_t j = 0; j < cs.size(); ++j)
            e.c[{block, static_cast<int>(j) + 1}] = cs[j];
    };
    if (m == 0) {
        auto cs = run_constants(1, L);
        cs.push_back(0);  // core slot
        assign(0, cs);
    } else {
        assign(0, run_constants(spos[m - 1] + 1, L));
        for (int i = 1; i <= m - 1; ++i) assign(i, run_constants(spos[m - i - 1] + 1, spos[m - i] - 1));
        auto cs = run_constants(1, spos[0] - 1);
        cs.push_back(0);  // core slot
        assign(m, cs);
    }
    return e;
}

inline std::pair<PolyVF, PolyVF> expand_explicit(const ExplicitKR& e) {
    const int n = e.dim;
    PolyVF f1 = PolyVF::unit(n, n);
    PolyVF f2(n);
    Poly mult = Poly::one(n);
    for (int i = 0; i <= e.m; ++i) {
        for (int j = 1; j <= e.k[i] - 1; ++j) {
            Rational cij = 0;
            auto it = e.c.find({i, j});
            if (it != e.c.end()) cij = it->second;
            Poly coeff = Poly::var(n, e.flat(i, j)) + Poly::constant(n, cij);
            f2.comp[e.flat(i, j + 1) - 1] += mult * coeff;
        }
        f2.comp[e.flat(i + 1, 1) - 1] += mult;
        if (i < e.m) mult = mult * Poly::var(n, e.flat(i, e.k[i]));
    }
    return {f1, f2};
}

// Rank-k extension: the KR pair lifted to dim + k - 2 together with the extra
// straight directions; the derived flag then grows k+i at the origin.
inline std::vector<PolyVF> weber_extend(const KRWord& word, int k) {
    if (k < 2) throw std::domain_error("weber_extend needs rank k >= 2");
    KRSystem s = build(word);
    const int big = s.dim + k - 2;
    std::vector<PolyVF> fields;
    fields.push_back(lift(s.f1, big));
    fields.push_back(lift(s.f2, big));
    for (int j = s.dim + 1; j <= big; ++j) fields.push_back(PolyVF::unit(big, j));
    return fields;
}

struct CatalogEntry {
    std::string name;
    KRWord word;
};

inline std::vector<CatalogEntry> catalog(int dim) {
    auto W = [](std::initializer_list<KRStep> steps) { return KRWord(std::vector<KRStep>(steps)); };
    auto R0 = KRStep::R(0);
    auto R1 = KRStep::R(1);
    auto S = KRStep::S();
    switch (dim) {
        case 3: return {{"R3", KRWord{}}};
        case 4: return {{"R4", W({R0})}};
        case 5: return {{"R5a", W({R0, R0})}, {"R5b", W({R0, S})}};
        case 6:
            return {{"R6a", W({R0, R0, R0})},
                    {"R6b", W({R0, R0, S})},
                    {"R6c", W({R0, S, R0})},
                    {"R6d", W({R0, S, R1})},
                    {"R6e", W({R0, S, S})}};
        default: throw std::domain_error("catalog covers dimensions 3 through 6");
    }
}

}  // namespace goursat
