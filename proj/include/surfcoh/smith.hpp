#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "surfcoh/group_ring.hpp"

namespace surfcoh {

using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix matrix_product(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    IntMatrix r(n, std::vector<Int>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

inline std::vector<Int> matrix_vector(const IntMatrix& a, const std::vector<Int>& v) {
    std::vector<Int> r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (a[i][j] != 0 && v[j] != 0) r[i] += a[i][j] * v[j];
    return r;
}

// U A V = D with U, V unimodular and the diagonal of D a divisibility chain.
// Uinv and Vinv are maintained alongside so cocycle coordinates can be read
// back without solving linear systems.
struct SmithDecomposition {
    std::size_t rows = 0, cols = 0;
    IntMatrix U, Uinv, V, Vinv;
    std::vector<Int> diagonal;  // min(rows, cols) entries, nonnegative
    std::size_t rank = 0;
};

namespace detail {

struct SmithWorker {
    IntMatrix A, U, Uinv, V, Vinv;
    std::size_t n, m;

    explicit SmithWorker(IntMatrix a)
        : A(std::move(a)), n(A.size()), m(n ? A[0].size() : 0) {
        U = identity_matrix(n);
        Uinv = identity_matrix(n);
        V = identity_matrix(m);
        Vinv = identity_matrix(m);
    }

    void row_add(std::size_t i, std::size_t j, const Int& k) {  // row_i += k row_j
        for (std::size_t c = 0; c < m; ++c) A[i][c] += k * A[j][c];
        for (std::size_t c = 0; c < n; ++c) U[i][c] += k * U[j][c];
        for (std::size_t r = 0; r < n; ++r) Uinv[r][j] -= k * Uinv[r][i];
    }
    void col_add(std::size_t i, std::size_t j, const Int& k) {  // col_i += k col_j
        for (std::size_t r = 0; r < n; ++r) A[r][i] += k * A[r][j];
        for (std::size_t r = 0; r < m; ++r) V[r][i] += k * V[r][j];
        for (std::size_t c = 0; c < m; ++c) Vinv[j][c] -= k * Vinv[i][c];
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(A[i], A[j]);
        std::swap(U[i], U[j]);
        for (std::size_t r = 0; r < n; ++r) std::swap(Uinv[r][i], Uinv[r][j]);
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < n; ++r) std::swap(A[r][i], A[r][j]);
        for (std::size_t r = 0; r < m; ++r) std::swap(V[r][i], V[r][j]);
        std::swap(Vinv[i], Vinv[j]);
    }
    void row_negate(std::size_t i) {
        for (std::size_t c = 0; c < m; ++c) A[i][c] = -A[i][c];
        for (std::size_t c = 0; c < n; ++c) U[i][c] = -U[i][c];
        for (std::size_t r = 0; r < n; ++r) Uinv[r][i] = -Uinv[r][i];
    }

    // Clears row t and column t outside (t,t) by Euclidean steps.
    void clear_pivot(std::size_t t) {
        for (;;) {
            // move a smallest-magnitude nonzero of the submatrix to (t,t)
            std::size_t bi = t, bj = t;
            Int best = 0;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < m; ++j) {
                    if (A[i][j] == 0) continue;
                    Int mag = abs(A[i][j]);
                    if (best == 0 || mag < best) {
                        best = mag;
                        bi = i;
                        bj = j;
                    }
                }
            if (best == 0) return;  // submatrix exhausted
            row_swap(t, bi);
            col_swap(t, bj);
            bool dirty = false;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (A[i][t] == 0) continue;
                Int q = A[i][t] / A[t][t];
                row_add(i, t, -q);
                if (A[i][t] != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                if (A[t][j] == 0) continue;
                Int q = A[t][j] / A[t][t];
                col_add(j, t, -q);
                if (A[t][j] != 0) dirty = true;
            }
            if (!dirty) {
                if (A[t][t] < 0) row_negate(t);
                return;
            }
        }
    }

    SmithDecomposition run() {
        std::size_t steps = std::min(n, m);
        for (std::size_t t = 0; t < steps; ++t) clear_pivot(t);
        // enforce the divisibility chain d_t | d_{t+1}
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t t = 0; t + 1 < steps; ++t) {
                const Int& a = A[t][t];
                const Int& b = A[t + 1][t + 1];
                if (a == 0 && b != 0) {
                    // push the nonzero entry forward
                    row_swap(t, t + 1);
                    col_swap(t, t + 1);
                    changed = true;
                    continue;
                }
                if (a != 0 && b % a != 0) {
                    col_add(t, t + 1, 1);  // introduces b into column t
                    clear_pivot(t);
                    clear_pivot(t + 1);
                    changed = true;
                }
            }
        }
        SmithDecomposition d;
        d.rows = n;
        d.cols = m;
        d.U = std::move(U);
        d.Uinv = std::move(Uinv);
        d.V = std::move(V);
        d.Vinv = std::move(Vinv);
        d.diagonal.resize(steps);
        for (std::size_t t = 0; t < steps; ++t) {
            d.diagonal[t] = A[t][t] < 0 ? -A[t][t] : A[t][t];
            if (d.diagonal[t] != 0) d.rank = t + 1;
        }
        return d;
    }
};

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    if (a.empty()) {
        SmithDecomposition d;
        return d;
    }
    for (const auto& row : a)
        if (row.size() != a[0].size()) throw std::invalid_argument("ragged matrix");
    return detail::SmithWorker(a).run();
}

}  // namespace surfcoh
