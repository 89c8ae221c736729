#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goursat/krforms.hpp"
#include "goursat/linalg.hpp"
#include "goursat/sigtype.hpp"
#include "goursat/vectorfield.hpp"

namespace goursat {

// Basis of the characteristic system C_i shared by the derived square
// D^(i+1): the last i+1 coordinate fields.
inline std::vector<PolyVF> characteristic_basis(const KRWord& w, int i) {
    int n = w.dim();
    if (i < 0 || i > n - 4)
        throw std::domain_error("characteristic level out of range");
    std::vector<PolyVF> out;
    for (int k = n; k >= n - i; --k) out.push_back(PolyVF::unit(n, k));
    return out;
}

struct AbnormalCone {
    enum class Kind { Empty, Subspace, Union };
    Kind kind = Kind::Empty;
    int level = 0;
    int depth = -1;  // j of the matched stratum when kind == Union
    std::vector<PolyVF> basisA;
    std::vector<PolyVF> basisB;
};

// Abnormal directions of the level-i derived system at a chart point.
inline AbnormalCone abnormal_cone(const KRWord& w, int i, const QPoint& q) {
    int n = w.dim();
    if (static_cast<int>(q.size()) != n)
        throw std::domain_error("point dimension mismatch");
    if (i < 0 || i > n - 2) throw std::domain_error("cone level out of range");
    AbnormalCone cone;
    cone.level = i;
    if (i == n - 2) return cone;
    cone.kind = AbnormalCone::Kind::Subspace;
    if (i == n - 3) {
        if (n >= 4) cone.basisA = characteristic_basis(w, n - 4);
        return cone;
    }
    if (i == n - 4) {
        cone.basisA = characteristic_basis(w, n - 4);
        return cone;
    }
    cone.basisA = characteristic_basis(w, i);
    for (int j = 0; j <= n - i - 5; ++j) {
        if (!sji_membership(w, i + j, j, q)) continue;
        cone.kind = AbnormalCone::Kind::Union;
        cone.depth = j;
        for (int k = n; k >= n - i + 1; --k) cone.basisB.push_back(PolyVF::unit(n, k));
        cone.basisB.push_back(PolyVF::unit(n, n - i - j - 1));
        break;
    }
    return cone;
}

// Coordinates whose product cuts the singular locus of the level-i derived
// system out of the chart; an empty list means the locus is empty.
inline std::vector<int> singular_locus(const KRWord& w, int i) {
    int n = w.dim();
    if (i < 0 || i > n - 3) throw std::domain_error("locus level out of range");
    KRWord trunc = w.prefix(w.length() - i);
    if (trunc.length() == 0) return {};
    ExplicitKR ex = explicit_form(trunc);
    std::vector<int> factors;
    for (int r = 0; r < ex.m; ++r) factors.push_back(ex.flat(r, ex.k[r]));
    return factors;
}

// The singular stratum through the chart center seen by the level-i cone, as
// the list of vanishing coordinates, or nullopt when no stratum passes.
inline std::optional<std::vector<int>> l_locus(const KRWord& w, int i) {
    int n = w.dim();
    if (i < 0 || i > n - 5) throw std::domain_error("locus level out of range");
    for (int j = 0; j <= n - i - 5; ++j) {
        if (auto loc = sji_locus(w, i + j, j)) return loc;
    }
    return std::nullopt;
}

namespace detail {

inline bool in_span(const std::vector<PolyVF>& basis, const QPoint& q,
                    const std::vector<Rational>& v) {
    std::vector<std::vector<Rational>> rows;
    for (const PolyVF& b : basis) {
        std::vector<Rational> row;
        for (const Poly& c : b.comp) row.push_back(c.evaluate(q));
        rows.push_back(std::move(row));
    }
    int base = matrix_rank(rows);
    rows.push_back(v);
    return matrix_rank(rows) == base;
}

}  // namespace detail

struct RigidResult {
    bool rigid = false;
    std::string reason;
};

// Decides whether a tangent direction at a chart point is the germ of a rigid
// admissible curve.
inline RigidResult is_rigid_direction(const KRWord& w, const QPoint& q,
                                      const std::vector<Rational>& v) {
    int n = w.dim();
    if (static_cast<int>(q.size()) != n || static_cast<int>(v.size()) != n)
        throw std::domain_error("point or direction dimension mismatch");
    bool zero = true;
    for (const Rational& c : v)
        if (c != 0) zero = false;
    if (zero) throw std::domain_error("direction must be nonzero");

    KRSystem sys = build(w);
    if (!detail::in_span({sys.f1, sys.f2}, q, v))
        return {false, "direction is not tangent to the distribution"};

    bool characteristic = true;
    for (int k = 0; k + 1 < n; ++k)
        if (v[k] != 0) characteristic = false;
    if (characteristic)
        return {true, "direction spans the characteristic line C0"};

    AbnormalCone cone = abnormal_cone(w, 0, q);
    if (cone.kind == AbnormalCone::Kind::Union &&
        detail::in_span(cone.basisB, q, v))
        return {true, "direction lies in the branch A of the level-zero cone"};
    return {false, "direction is outside the abnormal cone"};
}

// Pointwise check that brackets of characteristic fields against generators
// of the level-(i+1) derived system stay inside it.
inline bool characteristic_corank_check(const KRWord& w, int i, const QPoint& q) {
    int n = w.dim();
    if (static_cast<int>(q.size()) != n)
        throw std::domain_error("point dimension mismatch");
    if (i < 0 || i > n - 4)
        throw std::domain_error("characteristic level out of range");
    KRSystem inner = build(w.prefix(w.length() - i - 1));
    std::vector<PolyVF> gens = characteristic_basis(w, i);
    gens.push_back(inner.f1.extend_dim(n));
    gens.push_back(inner.f2.extend_dim(n));
    int base = rank_at(gens, q);
    std::vector<PolyVF> chars = characteristic_basis(w, i);
    for (const PolyVF& c : chars) {
        for (const PolyVF& g : gens) {
            std::vector<PolyVF> extended = gens;
            extended.push_back(lie_bracket(c, g));
            if (rank_at(extended, q) != base) return false;
        }
    }
    return true;
}

}  // namespace goursat
