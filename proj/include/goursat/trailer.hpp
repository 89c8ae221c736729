#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "goursat/krforms.hpp"
#include "goursat/linalg.hpp"
#include "goursat/sigtype.hpp"
#include "goursat/trigexpr.hpp"
#include "goursat/vfdsl.hpp"

namespace goursat {

inline double reduce_angle(double a) {
    const double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r > std::numbers::pi) r -= two_pi;
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

inline double angle_distance(double a, double b) {
    return std::fabs(reduce_angle(a - b));
}

// Planar truck with n trailers: positions xi1, xi2 and headings th0..thn.
// Variable indices follow trailer_var_name: xi1 -> 1, xi2 -> 2, thk -> k+3.
struct TrailerConfig {
    int n = 0;
    double xi1 = 0, xi2 = 0;
    std::vector<double> theta;  // theta_0 .. theta_n

    TrailerConfig() = default;
    TrailerConfig(double x1, double x2, std::vector<double> th)
        : n(static_cast<int>(th.size()) - 1), xi1(x1), xi2(x2), theta(std::move(th)) {
        if (n < 0) throw std::domain_error("at least one heading is required");
        for (double& a : theta) a = reduce_angle(a);
    }

    int dim() const { return n + 3; }

    std::vector<double> coords() const {
        std::vector<double> out{xi1, xi2};
        out.insert(out.end(), theta.begin(), theta.end());
        return out;
    }
};

inline TrailerConfig parse_trailer_config(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> vals;
    double v;
    while (in >> v) vals.push_back(v);
    if (!in.eof()) throw std::domain_error("malformed trailer configuration");
    if (vals.size() < 3) throw std::domain_error("trailer configuration needs xi1 xi2 th0");
    return TrailerConfig(vals[0], vals[1],
                         std::vector<double>(vals.begin() + 2, vals.end()));
}

inline std::string print_canonical(const TrailerConfig& c) {
    std::ostringstream out;
    out.precision(12);
    out << c.xi1 << " " << c.xi2;
    for (double a : c.theta) out << " " << a;
    return out.str();
}

struct TrailerSystem {
    int n = 0;
    TrigVF f1, f2;
};

namespace detail {

inline TrigExpr theta_var(int k) { return tg_var(k + 3); }

inline TrigExpr diff_expr(int i) {
    return tg_sub(theta_var(i), theta_var(i - 1));
}

// Rolling fields for levels 0..n, all widened to dimension n+3.
inline void tau_chain(int n, std::vector<TrigVF>& t1, std::vector<TrigVF>& t2) {
    int N = n + 3;
    t1.assign(n + 1, TrigVF(N));
    t2.assign(n + 1, TrigVF(N));
    for (int i = 0; i <= n; ++i) t1[i].comp[i + 2] = tg_const(1);
    t2[0].comp[0] = tg_cos(theta_var(0));
    t2[0].comp[1] = tg_sin(theta_var(0));
    for (int i = 1; i <= n; ++i) {
        TrigExpr s = tg_sin(diff_expr(i));
        TrigExpr c = tg_cos(diff_expr(i));
        for (int k = 0; k < N; ++k)
            t2[i].comp[k] =
                tg_add(tg_mul(s, t1[i - 1].comp[k]), tg_mul(c, t2[i - 1].comp[k]));
    }
}

}  // namespace detail

inline TrailerSystem trailer_fields(int n) {
    if (n < 0) throw std::domain_error("trailer count must be nonnegative");
    std::vector<TrigVF> t1, t2;
    detail::tau_chain(n, t1, t2);
    return {n, t1[n], t2[n]};
}

inline TrailerSystem trailer_fields_explicit(int n) {
    if (n < 0) throw std::domain_error("trailer count must be nonnegative");
    int N = n + 3;
    TrailerSystem sys;
    sys.n = n;
    sys.f1 = TrigVF(N);
    sys.f1.comp[N - 1] = tg_const(1);
    sys.f2 = TrigVF(N);
    std::vector<TrigExpr> pi(n + 1);
    pi[n] = tg_const(1);
    for (int i = n - 1; i >= 0; --i)
        pi[i] = tg_mul(pi[i + 1], tg_cos(detail::diff_expr(i + 1)));
    sys.f2.comp[0] = tg_mul(pi[0], tg_cos(detail::theta_var(0)));
    sys.f2.comp[1] = tg_mul(pi[0], tg_sin(detail::theta_var(0)));
    for (int i = 0; i <= n - 1; ++i)
        sys.f2.comp[i + 2] = tg_mul(pi[i + 1], tg_sin(detail::diff_expr(i + 1)));
    return sys;
}

// Critical angle values: level 1 holds +-pi/2, each next level the arctangents
// of the sines of the previous one, in both halves of the circle.
inline std::vector<double> alpha_set(int level) {
    if (level < 1) throw std::domain_error("critical level must be positive");
    std::vector<double> cur{-std::numbers::pi / 2, std::numbers::pi / 2};
    for (int l = 2; l <= level; ++l) {
        std::vector<double> next;
        for (double a : cur) {
            double t = std::atan(std::sin(a));
            for (double cand : {t, reduce_angle(t + std::numbers::pi)}) {
                bool dup = false;
                for (double b : next)
                    if (angle_distance(cand, b) < 1e-12) dup = true;
                if (!dup) next.push_back(cand);
            }
        }
        std::sort(next.begin(), next.end());
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end());
    return cur;
}

struct AmbiguousAngle : std::runtime_error {
    int index;
    explicit AmbiguousAngle(int i)
        : std::runtime_error("heading difference " + std::to_string(i) +
                             " is too close to a critical value to classify"),
          index(i) {}
};

struct DegenerateMultiplier : std::runtime_error {
    int level;
    explicit DegenerateMultiplier(int l)
        : std::runtime_error("conversion multiplier degenerates at level " +
                             std::to_string(l)),
          level(l) {}
};

namespace detail {

// 0 = no match, 1 = match, throws in the ambiguous band.
inline bool match_angle(double value, const std::vector<double>& targets,
                        double tol, int index) {
    double best = 1e300;
    for (double t : targets) best = std::min(best, angle_distance(value, t));
    if (best < tol) return true;
    if (best < 10 * tol) throw AmbiguousAngle(index);
    return false;
}

}  // namespace detail

// Singularity word of a configuration.  A letter a_{k+1} with k >= 1 requires
// the exact continuation tan(d_i) = sin(d_{i-1}) of the critical chain, not
// just membership in the level-(k+1) critical set.
inline STWord delta_trailer(const TrailerConfig& q, double tol = 1e-9) {
    STWord w;
    for (int i = 1; i <= q.n; ++i) {
        double d = reduce_angle(q.theta[i] - q.theta[i - 1]);
        if (i == 1) {
            w.push_back(0);
            continue;
        }
        if (detail::match_angle(d, {std::numbers::pi / 2, -std::numbers::pi / 2}, tol, i)) {
            w.push_back(1);
            continue;
        }
        if (w.back() >= 1) {
            double prev = reduce_angle(q.theta[i - 1] - q.theta[i - 2]);
            double t = std::atan(std::sin(prev));
            if (detail::match_angle(d, {t, reduce_angle(t + std::numbers::pi)}, tol, i)) {
                w.push_back(w.back() + 1);
                continue;
            }
        }
        w.push_back(0);
    }
    return w;
}

// A conversion chart: word, chart functions in the trailer variables, and the
// multiplier chain of the top level.
struct TrailerChart {
    TrailerConfig config;
    KRWord word;
    std::vector<TrigExpr> phi;          // components of the chart map
    std::vector<TrigExpr> mu, nu, eta;  // levels 0..n
};

namespace detail {

struct ChartBuilder {
    int n, N;
    std::vector<TrigVF> t1, t2;
    std::vector<TrigExpr> phi;
    std::vector<TrigExpr> mu, nu, eta;

    explicit ChartBuilder(int trailers) : n(trailers), N(trailers + 3) {
        tau_chain(n, t1, t2);
        phi.assign(N, tg_const(0));
        mu.assign(n + 1, tg_const(0));
        nu.assign(n + 1, tg_const(0));
        eta.assign(n + 1, tg_const(0));
    }

    void base(bool singular, double c3, double xi1p, double xi2p) {
        TrigExpr x1 = tg_var(1), x2 = tg_var(2), th0 = theta_var(0);
        if (!singular) {
            phi[0] = tg_sub(x1, tg_const(xi1p));
            phi[1] = tg_sub(tg_sub(x2, tg_mul(tg_const(c3), x1)),
                            tg_const(xi2p - c3 * xi1p));
            phi[2] = tg_sub(tg_tan(th0), tg_const(c3));
            mu[0] = tg_cos(th0);
        } else {
            phi[0] = tg_sub(x2, tg_const(xi2p));
            phi[1] = tg_sub(tg_sub(x1, tg_mul(tg_const(c3), x2)),
                            tg_const(xi1p - c3 * xi2p));
            phi[2] = tg_sub(tg_div(tg_cos(th0), tg_sin(th0)), tg_const(c3));
            mu[0] = tg_sin(th0);
        }
        nu[0] = tg_diff(phi[2], 3);
        eta[0] = tg_const(0);
    }

    void step(int i, bool singular, double constant) {
        TrigExpr s = tg_sin(diff_expr(i));
        TrigExpr c = tg_cos(diff_expr(i));
        TrigExpr across = tg_add(tg_mul(s, nu[i - 1]), tg_mul(c, eta[i - 1]));
        TrigExpr along = tg_mul(c, mu[i - 1]);
        if (!singular) {
            phi[i + 2] = tg_sub(tg_div(across, along), tg_const(constant));
            mu[i] = along;
        } else {
            phi[i + 2] = tg_div(along, across);
            mu[i] = across;
        }
        nu[i] = tg_lie_derivative(t1[i], phi[i + 2]);
        eta[i] = tg_lie_derivative(t2[i], phi[i + 2]);
    }
};

}  // namespace detail

// Conversion from a configuration to a chart putting the rolling fields into
// normal form, centered at the configuration.
inline TrailerChart trailer_to_kr(const TrailerConfig& q, double tol = 1e-9) {
    detail::ChartBuilder build(q.n);
    std::vector<double> z = q.coords();

    bool base_singular =
        detail::match_angle(q.theta[0], {std::numbers::pi / 2, -std::numbers::pi / 2}, tol, 0);
    double c3 = base_singular ? std::cos(q.theta[0]) / std::sin(q.theta[0])
                              : std::tan(q.theta[0]);
    build.base(base_singular, c3, q.xi1, q.xi2);

    KRWord word;
    for (int i = 1; i <= q.n; ++i) {
        double d = reduce_angle(q.theta[i] - q.theta[i - 1]);
        bool singular = detail::match_angle(d, {std::numbers::pi / 2, -std::numbers::pi / 2}, tol, i);
        if (singular) {
            word.steps.push_back(KRStep::S());
            build.step(i, true, 0);
        } else {
            build.step(i, false, 0);
            double raw = tg_eval(build.phi[i + 2], z);
            if (!std::isfinite(raw)) throw DegenerateMultiplier(i);
            double c = raw;
            if (std::fabs(c) < tol) {
                c = 0;
            } else if (std::fabs(c) < 10 * tol) {
                throw AmbiguousAngle(i);
            }
            word.steps.push_back(KRStep::R(Rational(c)));
            if (c != 0)
                build.phi[i + 2] = tg_sub(build.phi[i + 2], tg_const(c));
        }
        double m = tg_eval(build.mu[i], z);
        if (!std::isfinite(m) || std::fabs(m) < 1e-12) throw DegenerateMultiplier(i);
    }

    TrailerChart chart;
    chart.config = q;
    chart.word = word;
    chart.phi = build.phi;
    chart.mu = build.mu;
    chart.nu = build.nu;
    chart.eta = build.eta;
    return chart;
}

// Configuration that the canonical chart of the word sends to the target
// chart point (the chart center by default).
inline TrailerConfig kr_to_trailer(const KRWord& w,
                                   const QPoint& target_in = {}) {
    int n = w.length();
    int N = n + 3;
    QPoint target = target_in;
    if (target.empty()) target.assign(N, Rational(0));
    if (static_cast<int>(target.size()) != N)
        throw std::domain_error("target dimension mismatch");

    detail::ChartBuilder build(n);
    double y1 = rational_to_double(target[0]);
    double y2 = rational_to_double(target[1]);
    double y3 = rational_to_double(target[2]);
    build.base(false, 0, 0, 0);

    std::vector<double> z(N, 0.0);
    z[0] = y1;
    z[1] = y2;
    std::vector<double> theta(n + 1, 0.0);
    theta[0] = std::atan(y3);
    z[2] = theta[0];

    for (int i = 1; i <= n; ++i) {
        const KRStep& step = w.steps[i - 1];
        if (step.singular) {
            if (target[i + 2] != 0)
                throw std::domain_error(
                    "target coordinate at a singular level must be zero");
            theta[i] = reduce_angle(theta[i - 1] + std::numbers::pi / 2);
            build.step(i, true, 0);
        } else {
            double muv = tg_eval(build.mu[i - 1], z);
            double nuv = tg_eval(build.nu[i - 1], z);
            double etav = tg_eval(build.eta[i - 1], z);
            if (!std::isfinite(nuv) || std::fabs(nuv) < 1e-12)
                throw DegenerateMultiplier(i);
            double y = rational_to_double(step.c) + rational_to_double(target[i + 2]);
            theta[i] = reduce_angle(theta[i - 1] +
                                    std::atan((muv * y - etav) / nuv));
            build.step(i, false, rational_to_double(step.c));
        }
        z[i + 2] = theta[i];
    }
    return TrailerConfig(y1, y2, theta);
}

struct VerifyReport {
    bool pass = false;
    double residual_max = 0;
    double nu_p = 0, mu_p = 0, eta_p = 0;
    KRWord word;
};

// Numerical check of the conversion: at perturbed configurations the chart
// must push the rolling fields onto multiples of the normal-form pair.
inline VerifyReport verify_conversion(const TrailerChart& chart, int samples = 10,
                                      double tol = 1e-9,
                                      unsigned long long seed = 12345) {
    int n = chart.config.n;
    int N = n + 3;
    TrailerSystem tau = trailer_fields(n);
    KRSystem kr = build(chart.word);

    std::vector<TrigExpr> push1, push2;
    for (int k = 0; k < N; ++k) {
        push1.push_back(tg_lie_derivative(tau.f1, chart.phi[k]));
        push2.push_back(tg_lie_derivative(tau.f2, chart.phi[k]));
    }

    VerifyReport report;
    report.word = chart.word;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> bump(-1e-3, 1e-3);

    std::vector<double> base = chart.config.coords();
    double residual_max = 0;
    bool finite = true;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> z = base;
        if (s > 0)
            for (double& c : z) c += bump(rng);

        std::vector<double> x;
        for (int k = 0; k < N; ++k) x.push_back(tg_eval(chart.phi[k], z));
        std::vector<double> k1, k2;
        for (int k = 0; k < N; ++k) {
            k1.push_back(kr.f1.comp[k].evaluate_double(x));
            k2.push_back(kr.f2.comp[k].evaluate_double(x));
        }

        for (int which = 0; which < 2; ++which) {
            const auto& push = which == 0 ? push1 : push2;
            std::vector<double> v;
            for (int k = 0; k < N; ++k) v.push_back(tg_eval(push[k], z));
            std::vector<std::vector<double>> A(N, std::vector<double>(2));
            for (int k = 0; k < N; ++k) {
                A[k][0] = k1[k];
                A[k][1] = k2[k];
            }
            std::vector<double> fit = least_squares(A, v);
            for (double c : fit)
                if (!std::isfinite(c)) finite = false;
            for (int k = 0; k < N; ++k) {
                double r = v[k] - (A[k][0] * fit[0] + A[k][1] * fit[1]);
                if (!std::isfinite(r)) finite = false;
                residual_max = std::max(residual_max, std::fabs(r));
            }
            if (s == 0) {
                if (which == 0) {
                    report.nu_p = fit[0];
                } else {
                    report.eta_p = fit[0];
                    report.mu_p = fit[1];
                }
            }
        }
    }
    report.residual_max = residual_max;
    report.pass = finite && residual_max < tol && std::fabs(report.nu_p) > 1e-6 &&
                  std::fabs(report.mu_p) > 1e-6;
    return report;
}

// Critical-chain conditions cutting the level-(i, j) stratum out of the
// configuration space: heading differences and the critical level each must
// sit on.
struct SjiTrailer {
    std::vector<std::pair<int, int>> conditions;  // (difference index, level)
    bool within_generic_cap = true;
};

inline SjiTrailer sji_trailer(int n, int i, int j) {
    if (j < 0 || j > i || i > n - 2)
        throw std::domain_error("stratum indices out of range");
    SjiTrailer out;
    for (int t = 0; t <= j; ++t) out.conditions.push_back({n - i + t, t + 1});
    return out;
}

struct TrailerRigid {
    int depth = -1;  // j of the stratum through the configuration, -1 if none
    std::vector<TrigVF> generators;
    std::vector<int> fixed_axles;
};

// Rigid directions at a configuration: the last heading always turns in
// place; on a level-(j, j) stratum the tail from axle n-j-1 on turns as one
// block around the fixed forward axles.
inline TrailerRigid trailer_rigid_classify(const TrailerConfig& q,
                                           double tol = 1e-9) {
    int n = q.n;
    int N = n + 3;
    TrailerRigid out;
    TrigVF spin(N);
    spin.comp[N - 1] = tg_const(1);
    out.generators.push_back(spin);

    STWord w = delta_trailer(q, tol);
    if (!w.empty() && w.back() >= 1) {
        out.depth = w.back() - 1;
        TrigVF block(N);
        for (int k = n - out.depth - 1; k <= n; ++k)
            block.comp[k + 2] = tg_const(1);
        out.generators.push_back(block);
        for (int k = 0; k <= n - out.depth - 1; ++k) out.fixed_axles.push_back(k);
    } else {
        for (int k = 0; k <= n; ++k) out.fixed_axles.push_back(k);
    }
    return out;
}

}  // namespace goursat
