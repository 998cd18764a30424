#include "pswf/intmatrix.hpp"

#include "pswf/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace pswf {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix T(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
    return T;
}

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
    if (A.cols != B.rows) fail(errc::Internal, "mat_mul shape mismatch");
    IntMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const BigInt& aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
        }
    return C;
}

std::vector<BigInt> mat_vec(const IntMatrix& A, const std::vector<BigInt>& x) {
    if (A.cols != static_cast<int>(x.size())) fail(errc::Internal, "mat_vec shape mismatch");
    std::vector<BigInt> y(A.rows);
    for (int i = 0; i < A.rows; ++i) {
        BigInt s = 0;
        for (int j = 0; j < A.cols; ++j) s += A.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// Bareiss: after step k, a[i][j] holds the (k+1)x(k+1) minor bordered by row i,
// col j; divisions are exact.
BigInt det_bareiss(IntMatrix A) {
    if (A.rows != A.cols) fail(errc::Internal, "det of non-square matrix");
    int n = A.rows;
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (A.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (A.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(A.at(k, j), A.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                A.at(i, j) = (A.at(i, j) * A.at(k, k) - A.at(i, k) * A.at(k, j)) / prev;
        prev = A.at(k, k);
    }
    return sign * A.at(n - 1, n - 1);
}

// Fraction-free: after step k-1 the pivot B[k][k] equals the (k+1)-st leading
// principal minor. A zero pivot stops the recurrence; remaining minors fall
// back to direct determinants (rare, small n).
std::vector<BigInt> leading_principal_minors(const IntMatrix& A) {
    if (A.rows != A.cols) fail(errc::Internal, "minors of non-square matrix");
    int n = A.rows;
    std::vector<BigInt> minors(n);
    IntMatrix B = A;
    BigInt prev = 1;
    bool clean = true;
    for (int k = 0; k < n; ++k) {
        if (clean && k > 0) {
            const BigInt piv = B.at(k - 1, k - 1);
            if (piv == 0) clean = false;
            else {
                for (int i = k; i < n; ++i)
                    for (int j = k; j < n; ++j)
                        B.at(i, j) = (B.at(i, j) * piv - B.at(i, k - 1) * B.at(k - 1, j)) / prev;
                prev = piv;
            }
        }
        if (clean) {
            minors[k] = B.at(k, k);
        } else {
            IntMatrix S(k + 1, k + 1);
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j) S.at(i, j) = A.at(i, j);
            minors[k] = det_bareiss(S);
        }
    }
    return minors;
}

RatMatrix rat_inverse(const IntMatrix& A) {
    if (A.rows != A.cols) fail(errc::Internal, "inverse of non-square matrix");
    int n = A.rows;
    RatMatrix M(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M.at(i, j) = Rat(A.at(i, j));
        M.at(i, n + i) = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (M.at(i, c) != 0) { p = i; break; }
        if (p < 0) fail(errc::Internal, "singular matrix in rat_inverse");
        if (p != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(M.at(c, j), M.at(p, j));
        Rat piv = M.at(c, c);
        for (int j = 0; j < 2 * n; ++j) M.at(c, j) /= piv;
        for (int i = 0; i < n; ++i) {
            if (i == c || M.at(i, c) == 0) continue;
            Rat f = M.at(i, c);
            for (int j = 0; j < 2 * n; ++j) M.at(i, j) -= f * M.at(c, j);
        }
    }
    RatMatrix R(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R.at(i, j) = M.at(i, n + j);
    return R;
}

namespace {

struct Transforms {
    IntMatrix U, Uinv, V, Vinv;
};

// Row op on A and U: row_i += c*row_j. Inverse tracked on Uinv columns.
void row_add(IntMatrix& A, Transforms& T, int i, int j, const BigInt& c) {
    for (int k = 0; k < A.cols; ++k) A.at(i, k) += c * A.at(j, k);
    for (int k = 0; k < T.U.cols; ++k) T.U.at(i, k) += c * T.U.at(j, k);
    for (int k = 0; k < T.Uinv.rows; ++k) T.Uinv.at(k, j) -= c * T.Uinv.at(k, i);
}
void row_swap(IntMatrix& A, Transforms& T, int i, int j) {
    for (int k = 0; k < A.cols; ++k) std::swap(A.at(i, k), A.at(j, k));
    for (int k = 0; k < T.U.cols; ++k) std::swap(T.U.at(i, k), T.U.at(j, k));
    for (int k = 0; k < T.Uinv.rows; ++k) std::swap(T.Uinv.at(k, i), T.Uinv.at(k, j));
}
void row_neg(IntMatrix& A, Transforms& T, int i) {
    for (int k = 0; k < A.cols; ++k) A.at(i, k) = -A.at(i, k);
    for (int k = 0; k < T.U.cols; ++k) T.U.at(i, k) = -T.U.at(i, k);
    for (int k = 0; k < T.Uinv.rows; ++k) T.Uinv.at(k, i) = -T.Uinv.at(k, i);
}
void col_add(IntMatrix& A, Transforms& T, int i, int j, const BigInt& c) {
    for (int k = 0; k < A.rows; ++k) A.at(k, i) += c * A.at(k, j);
    for (int k = 0; k < T.V.rows; ++k) T.V.at(k, i) += c * T.V.at(k, j);
    for (int k = 0; k < T.Vinv.cols; ++k) T.Vinv.at(j, k) -= c * T.Vinv.at(i, k);
}
void col_swap(IntMatrix& A, Transforms& T, int i, int j) {
    for (int k = 0; k < A.rows; ++k) std::swap(A.at(k, i), A.at(k, j));
    for (int k = 0; k < T.V.rows; ++k) std::swap(T.V.at(k, i), T.V.at(k, j));
    for (int k = 0; k < T.Vinv.cols; ++k) std::swap(T.Vinv.at(i, k), T.Vinv.at(j, k));
}
void col_neg(IntMatrix& A, Transforms& T, int i) {
    for (int k = 0; k < A.rows; ++k) A.at(k, i) = -A.at(k, i);
    for (int k = 0; k < T.V.rows; ++k) T.V.at(k, i) = -T.V.at(k, i);
    for (int k = 0; k < T.Vinv.cols; ++k) T.Vinv.at(i, k) = -T.Vinv.at(i, k);
}

} // namespace

SmithResult smith_normal_form(const IntMatrix& A0) {
    IntMatrix A = A0;
    int m = A.rows, n = A.cols;
    Transforms T{IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};

    int t = 0;
    int dim = std::min(m, n);
    while (t < dim) {
        // Find a nonzero pivot of minimal absolute value in the remaining block.
        int pi = -1, pj = -1;
        BigInt best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                if (A.at(i, j) == 0) continue;
                BigInt v = abs(A.at(i, j));
                if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break; // remaining block is zero
        if (pi != t) row_swap(A, T, t, pi);
        if (pj != t) col_swap(A, T, t, pj);
        if (A.at(t, t) < 0) row_neg(A, T, t);

        bool reduced = true;
        for (int i = t + 1; i < m; ++i) {
            if (A.at(i, t) == 0) continue;
            BigInt q = floor_div(A.at(i, t), A.at(t, t));
            row_add(A, T, i, t, -q);
            if (A.at(i, t) != 0) reduced = false;
        }
        for (int j = t + 1; j < n; ++j) {
            if (A.at(t, j) == 0) continue;
            BigInt q = floor_div(A.at(t, j), A.at(t, t));
            col_add(A, T, j, t, -q);
            if (A.at(t, j) != 0) reduced = false;
        }
        if (!reduced) continue; // smaller remainder became the new candidate pivot

        // Divisibility: pivot must divide every entry of the remaining block.
        bool divides = true;
        for (int i = t + 1; i < m && divides; ++i)
            for (int j = t + 1; j < n && divides; ++j)
                if (A.at(i, j) % A.at(t, t) != 0) {
                    row_add(A, T, t, i, 1);
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }

    SmithResult R;
    R.D = A;
    R.U = T.U; R.Uinv = T.Uinv; R.V = T.V; R.Vinv = T.Vinv;
    R.diag.resize(dim);
    for (int i = 0; i < dim; ++i) {
        R.diag[i] = A.at(i, i);
        if (A.at(i, i) != 0) R.rank = i + 1;
    }
    return R;
}

HermiteResult hermite_columns(const IntMatrix& A0) {
    if (A0.rows != A0.cols) fail(errc::Internal, "hermite_columns expects square input");
    IntMatrix A = A0;
    int n = A.rows;
    Transforms T{IntMatrix::identity(n), IntMatrix::identity(n), IntMatrix::identity(n), IntMatrix::identity(n)};
    for (int r = 0; r < n; ++r) {
        // gcd out row r across columns r..n-1 via column ops
        while (true) {
            int p = -1;
            BigInt best = 0;
            for (int j = r; j < n; ++j) {
                if (A.at(r, j) == 0) continue;
                BigInt v = abs(A.at(r, j));
                if (p < 0 || v < best) { best = v; p = j; }
            }
            if (p < 0) fail(errc::Internal, "hermite_columns: singular matrix");
            if (p != r) col_swap(A, T, r, p);
            bool done = true;
            for (int j = r + 1; j < n; ++j) {
                if (A.at(r, j) == 0) continue;
                BigInt q = floor_div(A.at(r, j), A.at(r, r));
                col_add(A, T, j, r, -q);
                if (A.at(r, j) != 0) done = false;
            }
            if (done) break;
        }
        if (A.at(r, r) < 0) col_neg(A, T, r);
        // reduce entries left of the pivot into [0, pivot)
        for (int j = 0; j < r; ++j) {
            BigInt q = floor_div(A.at(r, j), A.at(r, r));
            if (q != 0) col_add(A, T, j, r, -q);
        }
    }
    return HermiteResult{A, T.V};
}

std::vector<BigInt> lattice_reduce(const IntMatrix& A, std::vector<BigInt> v) {
    HermiteResult H = hermite_columns(A);
    int n = A.rows;
    if (static_cast<int>(v.size()) != n) fail(errc::Internal, "lattice_reduce size mismatch");
    // H lower triangular: peel from the top coordinate down.
    for (int i = 0; i < n; ++i) {
        BigInt q = floor_div(v[i], H.H.at(i, i));
        if (q == 0) continue;
        for (int k = i; k < n; ++k) v[k] -= q * H.H.at(k, i);
    }
    return v;
}

std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A, const std::vector<BigInt>& b) {
    if (A.rows != static_cast<int>(b.size())) fail(errc::Internal, "solve_integer shape mismatch");
    SmithResult S = smith_normal_form(A);
    std::vector<BigInt> c = mat_vec(S.U, b);
    int dim = std::min(A.rows, A.cols);
    std::vector<BigInt> y(A.cols, BigInt(0));
    for (int i = 0; i < A.rows; ++i) {
        BigInt d = (i < dim) ? S.diag[i] : BigInt(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return mat_vec(S.V, y);
}

IntMatrix kernel_basis(const IntMatrix& A) {
    SmithResult S = smith_normal_form(A);
    int n = A.cols;
    std::vector<int> zero_cols;
    int dim = std::min(A.rows, A.cols);
    for (int j = 0; j < n; ++j)
        if (j >= dim || S.diag[j] == 0) zero_cols.push_back(j);
    IntMatrix K(n, static_cast<int>(zero_cols.size()));
    for (int c = 0; c < K.cols; ++c)
        for (int i = 0; i < n; ++i) K.at(i, c) = S.V.at(i, zero_cols[c]);
    return K;
}

int rank_rational(IntMatrix A) {
    int m = A.rows, n = A.cols, rank = 0;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = -1;
        for (int i = r; i < m; ++i)
            if (A.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < n; ++j) std::swap(A.at(r, j), A.at(p, j));
        for (int i = r + 1; i < m; ++i) {
            if (A.at(i, c) == 0) continue;
            // fraction-free row elimination
            BigInt f1 = A.at(r, c), f2 = A.at(i, c);
            BigInt g = gcd(f1, f2);
            BigInt m1 = f1 / g, m2 = f2 / g;
            for (int j = 0; j < n; ++j) A.at(i, j) = A.at(i, j) * m1 - A.at(r, j) * m2;
        }
        ++r;
        ++rank;
    }
    return rank;
}

} // namespace pswf
