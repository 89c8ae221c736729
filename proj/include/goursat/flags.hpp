#pragma once

#include <set>
#include <string>
#include <vector>

#include "goursat/krforms.hpp"

namespace goursat {

namespace detail {

struct GenPool {
    std::vector<PolyVF> gens;
    std::set<PolyVF> seen;

    bool add(const PolyVF& f) {
        if (f.is_zero()) return false;
        if (!seen.insert(f).second) return false;
        gens.push_back(f);
        return true;
    }
};

}  // namespace detail

// dims[i] = dim D^(i)(p) for the derived flag D^(i+1) = D^(i) + [D^(i), D^(i)].
inline std::vector<int> derived_flag_dims(const std::vector<PolyVF>& generators, const QPoint& p,
                                          int max_level, int generator_cap = 4096) {
    detail::GenPool pool;
    for (const auto& g : generators) pool.add(g);
    if (pool.gens.empty()) throw std::invalid_argument("no generators");
    const int dim = generators.front().dim;
    std::vector<int> dims;
    dims.push_back(rank_at(pool.gens, p));
    std::size_t old_start = 0;
    for (int level = 1; level <= max_level; ++level) {
        std::size_t sz = pool.gens.size();
        for (std::size_t i = 0; i < sz; ++i) {
            std::size_t jfirst = std::max(i + 1, old_start);
            for (std::size_t j = jfirst; j < sz; ++j) {
                pool.add(lie_bracket(pool.gens[i], pool.gens[j]));
                if (static_cast<int>(pool.gens.size()) > generator_cap)
                    throw std::runtime_error("derived flag generator cap exceeded");
            }
        }
        old_start = sz;
        dims.push_back(rank_at(pool.gens, p));
        if (dims.back() == dim) {
            while (static_cast<int>(dims.size()) <= max_level) dims.push_back(dim);
            break;
        }
        if (pool.gens.size() == sz) {
            while (static_cast<int>(dims.size()) <= max_level) dims.push_back(dims.back());
            break;
        }
    }
    return dims;
}

inline std::vector<int> derived_flag_dims(const PolyVF& f1, const PolyVF& f2, const QPoint& p,
                                          int max_level, int generator_cap = 4096) {
    return derived_flag_dims(std::vector<PolyVF>{f1, f2}, p, max_level, generator_cap);
}

// Lie flag dims (growth vector) at p, stopping at the first level of full rank.
inline std::vector<int> growth_vector(const PolyVF& f1, const PolyVF& f2, const QPoint& p,
                                      int cap_levels = -1, int generator_cap = 4096) {
    const int n = f1.dim;
    if (cap_levels < 0) cap_levels = n >= 3 ? (1 << (n - 3)) : 1;
    detail::GenPool pool;
    pool.add(f1);
    pool.add(f2);
    std::vector<int> dims;
    dims.push_back(rank_at(pool.gens, p));
    if (dims.back() == n) return dims;
    std::size_t old_start = 0;
    for (int level = 1; level <= cap_levels; ++level) {
        std::size_t sz = pool.gens.size();
        for (std::size_t j = old_start; j < sz; ++j) {
            pool.add(lie_bracket(f1, pool.gens[j]));
            pool.add(lie_bracket(f2, pool.gens[j]));
            if (static_cast<int>(pool.gens.size()) > generator_cap)
                throw std::runtime_error("growth vector generator cap exceeded");
        }
        old_start = sz;
        dims.push_back(rank_at(pool.gens, p));
        if (dims.back() == n) return dims;
        if (pool.gens.size() == sz)
            throw std::runtime_error("distribution is not bracket generating at the point");
    }
    throw std::runtime_error("growth vector level cap exceeded");
}

// d*_i = card{j >= 0 : d_j < i} + 1 for i = 2..n.
inline std::vector<int> dual_growth(const std::vector<int>& growth) {
    if (growth.empty()) throw std::domain_error("empty growth vector");
    int n = growth.back();
    std::vector<int> dual;
    for (int i = 2; i <= n; ++i) {
        int count = 0;
        for (int d : growth)
            if (d < i) ++count;
        dual.push_back(count + 1);
    }
    return dual;
}

// Inverse of dual_growth; input is (d*_2 .. d*_n), strictly increasing with d*_2 = 1.
inline std::vector<int> undual_growth(const std::vector<int>& dual) {
    if (dual.empty() || dual.front() != 1)
        throw std::domain_error("dual sequence must start at 1");
    for (std::size_t i = 1; i < dual.size(); ++i)
        if (dual[i] <= dual[i - 1]) throw std::domain_error("dual sequence must increase strictly");
    int n = static_cast<int>(dual.size()) + 1;
    std::vector<int> growth;
    for (int i = 2; i <= n - 1; ++i) {
        int count = dual[i - 1] - dual[i - 2];
        for (int r = 0; r < count; ++r) growth.push_back(i);
    }
    growth.push_back(n);
    return growth;
}

inline int nonholonomy_degree(const PolyVF& f1, const PolyVF& f2, const QPoint& p) {
    return static_cast<int>(growth_vector(f1, f2, p).size()) - 1;
}

// Lie flag dims for levels 0..max_level, padded once full rank is reached.
inline std::vector<int> lie_flag_dims(const PolyVF& f1, const PolyVF& f2, const QPoint& p,
                                      int max_level, int generator_cap = 4096) {
    const int n = f1.dim;
    detail::GenPool pool;
    pool.add(f1);
    pool.add(f2);
    std::vector<int> dims;
    dims.push_back(rank_at(pool.gens, p));
    std::size_t old_start = 0;
    for (int level = 1; level <= max_level; ++level) {
        if (dims.back() == n || pool.gens.size() == old_start) {
            dims.push_back(dims.back());
            continue;
        }
        std::size_t sz = pool.gens.size();
        for (std::size_t j = old_start; j < sz; ++j) {
            pool.add(lie_bracket(f1, pool.gens[j]));
            pool.add(lie_bracket(f2, pool.gens[j]));
            if (static_cast<int>(pool.gens.size()) > generator_cap)
                throw std::runtime_error("lie flag generator cap exceeded");
        }
        old_start = sz;
        dims.push_back(rank_at(pool.gens, p));
    }
    return dims;
}

// Conversion to the chained-form criterion: D_i(p) = D^(i)(p) for 0 <= i <= n-2.
inline bool murray_regular(const PolyVF& f1, const PolyVF& f2, const QPoint& p) {
    const int n = f1.dim;
    std::vector<int> lie = lie_flag_dims(f1, f2, p, n - 2);
    std::vector<int> der = derived_flag_dims(f1, f2, p, n - 2);
    return lie == der;
}

struct GoursatReport {
    bool ok = true;
    QPoint point;
    int level = -1;
    int expected = 0;
    int got = 0;
};

// Checks dim D^(i) = i + 2 at every sample point.
inline GoursatReport is_goursat(const PolyVF& f1, const PolyVF& f2,
                                const std::vector<QPoint>& points) {
    const int n = f1.dim;
    GoursatReport rep;
    for (const auto& p : points) {
        std::vector<int> dims = derived_flag_dims(f1, f2, p, n - 2);
        for (int i = 0; i <= n - 2; ++i) {
            if (dims[i] != i + 2) {
                rep.ok = false;
                rep.point = p;
                rep.level = i;
                rep.expected = i + 2;
                rep.got = dims[i];
                return rep;
            }
        }
    }
    return rep;
}

inline GoursatReport is_goursat(const PolyVF& f1, const PolyVF& f2) {
    return is_goursat(f1, f2, {QPoint(f1.dim, Rational(0))});
}

}  // namespace goursat
