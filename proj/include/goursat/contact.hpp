#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "goursat/krforms.hpp"
#include "goursat/ratfn.hpp"
#include "goursat/vectorfield.hpp"
#include "goursat/vfdsl.hpp"

namespace goursat {

struct PhiNotZero : std::domain_error {
    PhiNotZero()
        : std::domain_error(
              "the map must be defined at the center and send it to the center") {}
};

struct NotContact : std::domain_error {
    NotContact()
        : std::domain_error("the map does not preserve the contact plane field") {}
};

struct NotDiffeo : std::domain_error {
    NotDiffeo()
        : std::domain_error("the multiplier matrix is singular at the center") {}
};

// Contact transformation of the three-dimensional normal form, with the
// multiplier certificate of its action on the generating pair.
struct ContactMap3 {
    std::vector<RatFn> phi;  // three components
    RatFn nu3, lambda3, eta3, mu3;
};

inline ContactMap3 solve_first_order(const RatFn& p1, const RatFn& p2,
                                     const RatFn& p3) {
    QPoint origin(3, Rational(0));
    std::vector<RatFn> phi{p1, p2, p3};
    for (const RatFn& f : phi) {
        try {
            if (f.evaluate(origin) != 0) throw PhiNotZero();
        } catch (const DenominatorVanishes&) {
            throw PhiNotZero();
        }
    }

    RatFn x3 = RatFn::var(3, 3);
    std::vector<RatFn> u, v;
    for (const RatFn& f : phi) {
        u.push_back(f.partial(3));
        v.push_back(f.partial(1) + x3 * f.partial(2));
    }

    ContactMap3 out;
    out.phi = phi;
    out.lambda3 = u[0];
    out.nu3 = u[2];
    out.mu3 = v[0];
    out.eta3 = v[2];
    if (u[1] != out.lambda3 * p3) throw NotContact();
    if (v[1] != out.mu3 * p3) throw NotContact();

    RatFn det = out.nu3 * out.mu3 - out.lambda3 * out.eta3;
    try {
        if (det.evaluate(origin) == 0) throw NotDiffeo();
    } catch (const DenominatorVanishes&) {
        throw NotDiffeo();
    }
    return out;
}

// Three scalar expressions separated by semicolons, in variables x1, x2, x3.
inline ContactMap3 parse_contact_map(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
        throw std::domain_error("a contact map needs exactly three components");
    return solve_first_order(parse_scalar(parts[0], 3), parse_scalar(parts[1], 3),
                             parse_scalar(parts[2], 3));
}

// Chart functions and multipliers of the transformation lifted level by level
// along a word.  Index in mu, nu, eta is the level; entries below 3 are unused.
struct ProlongedContact {
    ContactMap3 base;
    KRWord source, target;
    int dim = 3;
    std::vector<RatFn> phi;          // components 1..dim
    std::vector<RatFn> mu, nu, eta;  // levels 3..dim
};

inline ProlongedContact prolong(const ContactMap3& base, const KRWord& word) {
    int n = word.dim();
    QPoint origin(n, Rational(0));

    ProlongedContact out;
    out.base = base;
    out.source = word;
    out.dim = n;
    out.mu.assign(n + 1, RatFn::zero(n));
    out.nu.assign(n + 1, RatFn::zero(n));
    out.eta.assign(n + 1, RatFn::zero(n));
    for (const RatFn& f : base.phi) out.phi.push_back(f.extend_arity(n));
    out.mu[3] = base.mu3.extend_arity(n);
    out.nu[3] = base.nu3.extend_arity(n);
    out.eta[3] = base.eta3.extend_arity(n);
    RatFn lambda3 = base.lambda3.extend_arity(n);

    for (int i = 4; i <= n; ++i) {
        const KRStep& step = word.steps[static_cast<std::size_t>(i) - 4];
        RatFn xi = RatFn::var(n, i);
        RatFn phi_i(n), mu_i(n), nu_i(n);
        if (i == 4) {
            if (step.singular)
                throw std::domain_error("the first lifted step must be regular");
            RatFn shift = xi + RatFn::constant(n, step.c);
            mu_i = shift * lambda3 + out.mu[3];
            if (mu_i.evaluate(origin) == 0)
                throw std::domain_error(
                    "lift multiplier vanishes at the center at level 4");
            RatFn raw = (shift * out.nu[3] + out.eta[3]) / mu_i;
            Rational ct = raw.evaluate(origin);
            phi_i = raw - RatFn::constant(n, ct);
            nu_i = phi_i.partial(4);
            out.target.steps.push_back(KRStep::R(ct));
        } else if (!step.singular) {
            RatFn shift = xi + RatFn::constant(n, step.c);
            mu_i = out.mu[i - 1];
            RatFn raw = (shift * out.nu[i - 1] + out.eta[i - 1]) / mu_i;
            Rational ct = raw.evaluate(origin);
            phi_i = raw - RatFn::constant(n, ct);
            nu_i = out.nu[i - 1] / mu_i;
            out.target.steps.push_back(KRStep::R(ct));
        } else {
            RatFn denom = out.nu[i - 1] + xi * out.eta[i - 1];
            phi_i = xi * out.mu[i - 1] / denom;
            mu_i = denom;
            nu_i = out.mu[i - 1] * out.nu[i - 1] / (denom * denom);
            out.target.steps.push_back(KRStep::S());
        }
        PolyVF k2 = build(word.prefix(i - 3)).f2.extend_dim(n);
        out.phi.push_back(phi_i);
        out.mu[i] = mu_i;
        out.nu[i] = nu_i;
        out.eta[i] = lie_derivative(RatVF(k2), phi_i);
    }
    return out;
}

// Independent identity check: at each level the lifted map must send the
// source generating pair onto multiplier combinations of the target pair.
inline bool verify_prolongation(const ProlongedContact& pc) {
    int n = pc.dim;
    for (int i = 3; i <= n; ++i) {
        KRSystem src = build(pc.source.prefix(i - 3));
        KRSystem tgt = build(pc.target.prefix(i - 3));
        RatVF f1(src.f1.extend_dim(n));
        RatVF f2(src.f2.extend_dim(n));
        std::vector<RatFn> head(pc.phi.begin(), pc.phi.begin() + i);
        for (int k = 0; k < i; ++k) {
            RatFn t1 = compose(tgt.f1.comp[k], head);
            RatFn t2 = compose(tgt.f2.comp[k], head);
            RatFn want1 = pc.nu[i] * t1;
            if (i == 3) want1 = want1 + pc.base.lambda3.extend_arity(n) * t2;
            if (lie_derivative(f1, pc.phi[k]) != want1) return false;
            if (lie_derivative(f2, pc.phi[k]) != pc.eta[i] * t1 + pc.mu[i] * t2)
                return false;
        }
    }
    return true;
}

// Vanishing order at the center along repeated derivatives; -1 once the cap
// is passed without a nonzero value.
inline int degree_of(const RatFn& gamma, const RatVF& g, int cap = 16) {
    QPoint origin(gamma.arity(), Rational(0));
    RatFn cur = gamma;
    for (int k = 0; k <= cap; ++k) {
        if (cur.evaluate(origin) != 0) return k;
        cur = lie_derivative(g, cur);
    }
    return -1;
}

namespace detail {

// Lift through the shared prefix and rescale the second generator of the full
// word by the level-6 multiplier.
struct ObstructionSetup {
    ProlongedContact pc;
    RatFn phi6;
    RatVF g;
};

inline ObstructionSetup obstruction_setup(const ContactMap3& base,
                                          const KRWord& full) {
    int n = full.dim();
    ObstructionSetup out;
    out.pc = prolong(base, full.prefix(3));
    out.phi6 = out.pc.phi[5].extend_arity(n);
    RatFn scale = RatFn::one(n) / out.pc.mu[6].extend_arity(n);
    PolyVF k2 = build(full).f2;
    out.g = RatVF(n);
    for (int k = 0; k < n; ++k) out.g.comp[k] = scale * RatFn(k2.comp[k]);
    return out;
}

}  // namespace detail

// Induced constant at the top level of the nine-dimensional word, by repeated
// derivatives of the level-six chart function.  Zero exactly when the lift
// stays in the word's class.
inline Rational check_r9(const ContactMap3& base) {
    detail::ObstructionSetup s =
        detail::obstruction_setup(base, parse_kr_word("R0.R0.S.R0.R1.R0"));
    QPoint origin(9, Rational(0));
    RatFn cur = s.phi6;
    for (int k = 0; k < 3; ++k) cur = lie_derivative(s.g, cur);
    return cur.evaluate(origin);
}

struct R11Report {
    Rational ctilde9, ctilde10, ctilde11;
    Rational mu0, nu0, alpha0;
};

// Induced constants at levels 9..11 of the eleven-dimensional family, plus the
// multiplier data entering their closed form.
inline R11Report check_r11(const ContactMap3& base, const Rational& c11) {
    KRWord full = parse_kr_word("R0.R0.S.R0.R0.R1.R1");
    full.steps.push_back(KRStep::R(c11));
    detail::ObstructionSetup s = detail::obstruction_setup(base, full);
    QPoint origin(11, Rational(0));

    R11Report report;
    RatFn cur = s.phi6;
    for (int k = 1; k <= 5; ++k) {
        cur = lie_derivative(s.g, cur);
        if (k == 3) report.ctilde9 = cur.evaluate(origin);
        if (k == 4) report.ctilde10 = cur.evaluate(origin);
        if (k == 5) report.ctilde11 = cur.evaluate(origin);
    }
    QPoint origin6(6, Rational(0));
    report.mu0 = s.pc.mu[4].evaluate(origin6);
    report.nu0 = s.pc.nu[4].evaluate(origin6);
    report.alpha0 = Rational(1) / s.pc.mu[6].evaluate(origin6);
    return report;
}

}  // namespace goursat
