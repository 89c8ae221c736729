#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "goursat/flags.hpp"
#include "goursat/vfdsl.hpp"

namespace goursat {

// Words over letters a0, a1, a2, ... subject to the chaining rule: the word is
// empty or starts with a0, and a letter a_k with k >= 2 must immediately
// follow a_{k-1}.
inline bool is_valid_sigtype(const STWord& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] < 0) return false;
        if (i == 0 && w[i] != 0) return false;
        if (w[i] >= 2 && (i == 0 || w[i - 1] != w[i] - 1)) return false;
    }
    return true;
}

// All valid words of length n, sorted lexicographically.
inline const std::vector<STWord>& jacquard_enum(int n) {
    if (n < 0) throw std::domain_error("word length must be nonnegative");
    static std::vector<std::vector<STWord>> cache;
    if (n < static_cast<int>(cache.size())) return cache[n];
    for (int m = static_cast<int>(cache.size()); m <= n; ++m) {
        std::vector<STWord> words;
        if (m == 0) {
            words.push_back({});
        } else if (m == 1) {
            words.push_back({0});
        } else {
            for (const STWord& w : cache[m - 1]) {
                STWord v = w;
                v.push_back(0);
                words.push_back(std::move(v));
            }
            for (int k = 1; k <= m - 1; ++k) {
                for (const STWord& w : cache[m - k]) {
                    STWord v = w;
                    for (int t = 1; t <= k; ++t) v.push_back(t);
                    words.push_back(std::move(v));
                }
            }
            std::sort(words.begin(), words.end());
        }
        cache.push_back(std::move(words));
    }
    return cache[n];
}

inline Integer jacquard_count(int n) {
    if (n < 0) throw std::domain_error("word length must be nonnegative");
    Integer prev = 1, cur = 1;
    for (int m = 2; m <= n; ++m) {
        Integer next = 3 * cur - prev;
        prev = cur;
        cur = next;
    }
    return n == 0 ? prev : cur;
}

// Entry i of the dual growth sequence of a word, 2 <= i <= length + 3.
inline long long beta(int i, const STWord& w) {
    if (!is_valid_sigtype(w)) throw std::domain_error("invalid singularity word");
    if (i < 2 || i > static_cast<int>(w.size()) + 3)
        throw std::domain_error("beta index out of range");
    std::map<std::pair<int, int>, long long> memo;
    auto rec = [&](auto&& self, int k, int len) -> long long {
        if (k <= 4) return k - 1;
        auto it = memo.find({k, len});
        if (it != memo.end()) return it->second;
        int last = w[len - 1];
        long long value;
        if (last == 0) {
            value = self(self, k - 1, len - 1) + 1;
        } else if (last == 1) {
            value = self(self, k - 1, len - 1) + self(self, k - 2, len - 2);
        } else {
            value = 2 * self(self, k - 1, len - 1) - self(self, k - 2, len - 2);
        }
        memo[{k, len}] = value;
        return value;
    };
    return rec(rec, i, static_cast<int>(w.size()));
}

inline std::vector<int> growth_from_sigtype(const STWord& w, int n = -1) {
    int expect = static_cast<int>(w.size()) + 3;
    if (n < 0) n = expect;
    if (n != expect)
        throw std::domain_error("dimension does not match singularity word length");
    std::vector<int> dual;
    for (int i = 2; i <= n; ++i) dual.push_back(static_cast<int>(beta(i, w)));
    return undual_growth(dual);
}

struct NoMatch : std::domain_error {
    std::vector<int> growth;
    explicit NoMatch(std::vector<int> g)
        : std::domain_error("no singularity word matches the growth vector"),
          growth(std::move(g)) {}
};

inline STWord sigtype_from_growth(const std::vector<int>& growth) {
    if (growth.empty() || growth.front() != 2) throw NoMatch(growth);
    int n = growth.back();
    for (std::size_t i = 1; i < growth.size(); ++i) {
        int inc = growth[i] - growth[i - 1];
        if (inc != 0 && inc != 1) throw NoMatch(growth);
        if (growth[i - 1] == n) throw NoMatch(growth);
    }
    if (n < 3 || n > 16) throw std::domain_error("dimension out of supported range");
    std::vector<int> dual = dual_growth(growth);

    static std::map<int, std::map<std::vector<long long>, STWord>> tables;
    auto& table = tables[n];
    if (table.empty()) {
        for (const STWord& w : jacquard_enum(n - 3)) {
            std::vector<long long> key;
            for (int i = 2; i <= n; ++i) key.push_back(beta(i, w));
            table[key] = w;
        }
    }
    std::vector<long long> key(dual.begin(), dual.end());
    auto it = table.find(key);
    if (it == table.end()) throw NoMatch(growth);
    return it->second;
}

// Word of the chart center, read off the construction steps.
inline STWord delta_of_word(const KRWord& w) {
    STWord out;
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        const KRStep& step = w.steps[i];
        if (i == 0) {
            out.push_back(0);
        } else if (step.singular) {
            out.push_back(1);
        } else if (step.c == 0 && out.back() >= 1) {
            out.push_back(out.back() + 1);
        } else {
            out.push_back(0);
        }
    }
    return out;
}

// One construction word whose chart center realizes the given word.
inline KRWord word_with_sigtype(const STWord& w) {
    if (!is_valid_sigtype(w)) throw std::domain_error("invalid singularity word");
    KRWord out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 1) {
            out.steps.push_back(KRStep::S());
        } else if (w[i] >= 2) {
            out.steps.push_back(KRStep::R(0));
        } else if (i == 0 || w[i - 1] == 0) {
            out.steps.push_back(KRStep::R(0));
        } else {
            out.steps.push_back(KRStep::R(1));
        }
    }
    return out;
}

// Word of an arbitrary point of the chart of build(w).  Step l touches
// coordinate x_{l+3}; a regular step acts there with effective constant
// c + x_{l+3}(q), a singular one stays singular only on x_{l+3} = 0.
inline STWord delta_at_point(const KRWord& w, const QPoint& q) {
    int n = w.dim();
    if (static_cast<int>(q.size()) != n)
        throw std::domain_error("point dimension mismatch");
    STWord out;
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        const KRStep& step = w.steps[i];
        const Rational& x = q[i + 3];
        if (i == 0) {
            out.push_back(0);
        } else if (step.singular) {
            out.push_back(x == 0 ? 1 : 0);
        } else if (step.c + x == 0 && out.back() >= 1) {
            out.push_back(out.back() + 1);
        } else {
            out.push_back(0);
        }
    }
    return out;
}

// Coordinates that cut the level-(i, j) singular locus out of the chart of
// build(w) near its center, or nullopt when the locus misses the center.
// Components of the locus away from the center (constants cancelling against
// nonzero coordinates) are not part of this description; sji_membership sees
// them.
inline std::optional<std::vector<int>> sji_locus(const KRWord& w, int i, int j) {
    int n = w.dim();
    if (j < 0 || j > i || i > n - 5)
        throw std::domain_error("locus indices out of range");
    STWord center = delta_of_word(w);
    for (int t = 0; t <= j; ++t) {
        int pos = n - 3 - i + t;
        if (center[pos - 1] != t + 1) return std::nullopt;
    }
    std::vector<int> coords;
    for (int t = 0; t <= j; ++t) coords.push_back(n - i + t);
    return coords;
}

inline bool sji_membership(const KRWord& w, int i, int j, const QPoint& q) {
    int n = w.dim();
    if (static_cast<int>(q.size()) != n)
        throw std::domain_error("point dimension mismatch");
    if (j < 0 || j > i || i > n - 5)
        throw std::domain_error("locus indices out of range");
    STWord d = delta_at_point(w, q);
    for (int t = 0; t <= j; ++t) {
        int pos = n - 3 - i + t;
        if (d[pos - 1] != t + 1) return false;
    }
    return true;
}

}  // namespace goursat
