#pragma once

#include <vector>

#include "goursat/rational.hpp"

namespace goursat {

// Rank by fraction-free Bareiss elimination on the integer matrix obtained by
// clearing denominators row by row.
inline int matrix_rank(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return 0;
    const std::size_t nc = rows[0].size();
    std::vector<std::vector<Integer>> m;
    m.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != nc) throw std::invalid_argument("ragged matrix");
        Integer l = 1;
        for (const auto& x : row) l = boost::multiprecision::lcm(l, rat_den(x));
        std::vector<Integer> r(nc);
        bool nonzero = false;
        for (std::size_t j = 0; j < nc; ++j) {
            r[j] = rat_num(row[j]) * (l / rat_den(row[j]));
            nonzero = nonzero || r[j] != 0;
        }
        if (nonzero) m.push_back(std::move(r));
    }
    int rank = 0;
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            for (std::size_t j = c + 1; j < nc; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
        ++rank;
    }
    return rank;
}

// Least squares for small dense systems, used on float data.
inline std::vector<double> least_squares(const std::vector<std::vector<double>>& a,
                                         const std::vector<double>& b) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<std::vector<double>> ata(cols, std::vector<double>(cols, 0.0));
    std::vector<double> atb(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            atb[j] += a[i][j] * b[i];
            for (std::size_t k = 0; k < cols; ++k) ata[j][k] += a[i][j] * a[i][k];
        }
    }
    std::vector<std::size_t> perm(cols);
    for (std::size_t i = 0; i < cols; ++i) perm[i] = i;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < cols; ++i)
            if (std::abs(ata[i][c]) > std::abs(ata[piv][c])) piv = i;
        std::swap(ata[c], ata[piv]);
        std::swap(atb[c], atb[piv]);
        if (ata[c][c] == 0.0) continue;
        for (std::size_t i = c + 1; i < cols; ++i) {
            double f = ata[i][c] / ata[c][c];
            for (std::size_t j = c; j < cols; ++j) ata[i][j] -= f * ata[c][j];
            atb[i] -= f * atb[c];
        }
    }
    std::vector<double> x(cols, 0.0);
    for (std::size_t ci = cols; ci-- > 0;) {
        double s = atb[ci];
        for (std::size_t j = ci + 1; j < cols; ++j) s -= ata[ci][j] * x[j];
        x[ci] = ata[ci][ci] != 0.0 ? s / ata[ci][ci] : 0.0;
    }
    return x;
}

}  // namespace goursat
