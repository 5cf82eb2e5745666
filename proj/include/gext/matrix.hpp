#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gext {

using ll = long long;

// Dense integer matrix, row-major. All normal-form routines are exact over Z;
// arithmetic overflow throws instead of wrapping.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<ll> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    ll& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    ll at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Matrix identity(int n);
    bool is_zero() const;
};

ll checked_add(ll x, ll y);
ll checked_mul(ll x, ll y);
ll mod_floor(ll x, ll m);  // representative in [0, m)

Matrix mat_mul(const Matrix& A, const Matrix& B);
std::vector<ll> mat_apply(const Matrix& A, const std::vector<ll>& x);

// Column-style Hermite form: returns H with A*V = H, H in column echelon
// (pivots descend left to right, zero columns at the right). V unimodular.
struct ColEchelon {
    Matrix H;
    Matrix V;
    std::vector<int> pivot_row;  // per pivot column
    int rank = 0;
};
ColEchelon column_echelon(const Matrix& A, bool want_transform);

// Basis of the integer kernel {x : A x = 0}, as columns.
Matrix kernel_basis(const Matrix& A);

// Solve A x = b over Z. Returns false if no integral solution.
bool solve_integer(const ColEchelon& ce, const std::vector<ll>& b, std::vector<ll>& x);
bool solve_integer(const Matrix& A, const std::vector<ll>& b, std::vector<ll>& x);

// Smith normal form: U A V = S diagonal, s_i >= 0 and s_i | s_{i+1}.
// U/V accumulated only when requested.
struct SmithForm {
    std::vector<ll> diag;  // min(rows,cols) entries
    Matrix U, V;           // empty unless requested
    int rank = 0;          // number of nonzero diagonal entries
};
SmithForm smith_form(Matrix A, bool want_U, bool want_V);

// Absolute value of the determinant of a full-column-rank column-echelon H
// restricted to its pivot rows (covolume of the column lattice).
ll lattice_covolume(const ColEchelon& ce);

}  // namespace gext
