#pragma once

#include "pswf/numeric.hpp"

#include <optional>
#include <vector>

namespace pswf {

// Dense integer matrix, exact arithmetic only. No floating point anywhere in
// the linear-algebra substrate.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<BigInt> a; // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    BigInt& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const BigInt& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMatrix identity(int n);
    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const = default;
};

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);
std::vector<BigInt> mat_vec(const IntMatrix& A, const std::vector<BigInt>& x);

// Determinant by fraction-free Bareiss elimination.
BigInt det_bareiss(IntMatrix A);

// Leading principal minors det(A[0..k][0..k]) for k = 0..n-1, fraction-free.
std::vector<BigInt> leading_principal_minors(const IntMatrix& A);

// Exact rational matrix (used for inverses and LDL-style factorizations).
struct RatMatrix {
    int rows = 0, cols = 0;
    std::vector<Rat> a;
    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Inverse of a nonsingular integer matrix, exact. Throws on singular input.
RatMatrix rat_inverse(const IntMatrix& A);

// Smith normal form: U*A*V = D with U, V unimodular, D diagonal with
// d_i | d_{i+1} and d_i >= 0. Uinv/Vinv are the tracked inverses.
struct SmithResult {
    IntMatrix U, Uinv, V, Vinv, D;
    std::vector<BigInt> diag; // min(rows, cols) entries (trailing zeros kept)
    int rank = 0;             // number of nonzero diagonal entries
};
SmithResult smith_normal_form(const IntMatrix& A);

// Column-style Hermite normal form of a nonsingular square matrix: A*V = H
// with V unimodular and H lower triangular, positive diagonal, and
// 0 <= H[i][j] < H[i][i] for j < i.
struct HermiteResult {
    IntMatrix H, V;
};
HermiteResult hermite_columns(const IntMatrix& A);

// Canonical residue of v modulo the column lattice of a nonsingular A
// (successive floor-reduction against the Hermite basis of A).
std::vector<BigInt> lattice_reduce(const IntMatrix& A, std::vector<BigInt> v);

// Integer solution of A*x = b, if one exists (A arbitrary shape).
std::optional<std::vector<BigInt>> solve_integer(const IntMatrix& A, const std::vector<BigInt>& b);

// Saturated basis of the integer kernel of A (columns of the result).
IntMatrix kernel_basis(const IntMatrix& A);

// Rank over Q.
int rank_rational(IntMatrix A);

} // namespace pswf
