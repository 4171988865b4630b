#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "prime_moduli/rational.hpp"

namespace prime_moduli {

using Vec = std::vector<Rat>;

/* Dense exact-rational matrix. All dimensions in this project are small
   (graded pieces of finitely presented rings), so Gaussian elimination over
   Q is the whole story. */
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Vec> a; /* row major */

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r, Vec(c, Rat(0))) {}

    Rat& operator()(std::size_t i, std::size_t j) { return a[i][j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a[i][j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    Mat transposed() const {
        Mat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                t(j, i) = a[i][j];
        return t;
    }
};

inline Mat mat_mul(const Mat& x, const Mat& y) {
    assert(x.cols == y.rows);
    Mat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (y(k, j) != 0)
                    z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

inline Vec mat_apply(const Mat& m, const Vec& v) {
    assert(m.cols == v.size());
    Vec w(m.rows, Rat(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m(i, j) != 0 && v[j] != 0)
                w[i] += m(i, j) * v[j];
    return w;
}

/* Row echelon form in place; returns pivot columns. */
inline std::vector<std::size_t> row_echelon(Mat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c) == 0)
            ++p;
        if (p == m.rows)
            continue;
        std::swap(m.a[p], m.a[r]);
        Rat inv = Rat(1) / m(r, c);
        for (std::size_t j = c; j < m.cols; ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Mat m) { return row_echelon(m).size(); }

/* Basis of the right kernel, as columns gathered into a matrix. */
inline Mat kernel_basis(Mat m) {
    std::size_t n = m.cols;
    auto pivots = row_echelon(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    Mat k(n, n - pivots.size());
    std::size_t kc = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c])
            continue;
        k(c, kc) = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            k(pivots[pr], kc) = -m(pr, c);
        ++kc;
    }
    return k;
}

/* Solve m x = b exactly; nullopt when inconsistent. */
inline std::optional<Vec> solve(Mat m, Vec b) {
    assert(m.rows == b.size());
    std::size_t n = m.cols;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c) == 0)
            ++p;
        if (p == m.rows)
            continue;
        std::swap(m.a[p], m.a[r]);
        std::swap(b[p], b[r]);
        Rat inv = Rat(1) / m(r, c);
        for (std::size_t j = c; j < n; ++j)
            m(r, j) *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(r, j);
            b[i] -= f * b[r];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m.rows; ++i)
        if (b[i] != 0)
            return std::nullopt;
    Vec x(n, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = b[i];
    return x;
}

/* Indices of columns forming a basis of the column space. */
inline std::vector<std::size_t> column_space_pivots(const Mat& m) {
    Mat copy = m;
    return row_echelon(copy);
}

/* Exact rank of a sparse matrix given as columns (row index -> value).
   Pivots favour short columns and unit entries, which keeps fill-in low on
   the block-structured nerve differentials. */
using SparseCol = std::map<std::size_t, Rat>;

inline std::size_t sparse_rank(std::vector<SparseCol> cols) {
    std::size_t n = cols.size();
    std::map<std::size_t, std::set<std::size_t>> row_cols;
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& [i, v] : cols[j])
            row_cols[i].insert(j);
    std::vector<char> live(n, 1);
    std::size_t r = 0;
    while (true) {
        /* shortest live column */
        std::size_t best = n;
        std::size_t best_nnz = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!live[j])
                continue;
            if (cols[j].empty()) {
                live[j] = 0;
                continue;
            }
            if (best == n || cols[j].size() < best_nnz) {
                best = j;
                best_nnz = cols[j].size();
                if (best_nnz == 1)
                    break;
            }
        }
        if (best == n)
            break;
        /* pivot row: prefer a unit entry */
        std::size_t prow = cols[best].begin()->first;
        for (const auto& [i, v] : cols[best])
            if (v == 1 || v == -1) {
                prow = i;
                break;
            }
        Rat piv = cols[best].at(prow);
        ++r;
        live[best] = 0;
        std::set<std::size_t> affected = row_cols[prow];
        affected.erase(best);
        for (std::size_t j : affected) {
            if (!live[j])
                continue;
            auto it = cols[j].find(prow);
            if (it == cols[j].end())
                continue;
            Rat factor = it->second / piv;
            for (const auto& [i, v] : cols[best]) {
                auto jt = cols[j].find(i);
                if (jt == cols[j].end()) {
                    Rat nv = -factor * v;
                    if (nv != 0) {
                        cols[j][i] = std::move(nv);
                        row_cols[i].insert(j);
                    }
                } else {
                    jt->second -= factor * v;
                    if (jt->second == 0) {
                        cols[j].erase(jt);
                        row_cols[i].erase(j);
                    }
                }
            }
        }
        /* retire the pivot column and row */
        for (const auto& [i, v] : cols[best])
            row_cols[i].erase(best);
        cols[best].clear();
    }
    return r;
}

} // namespace prime_moduli
