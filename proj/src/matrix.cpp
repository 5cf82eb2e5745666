#include "gext/matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace gext {

ll checked_add(ll x, ll y) {
    ll r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

ll checked_mul(ll x, ll y) {
    ll r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

ll mod_floor(ll x, ll m) {
    ll r = x % m;
    if (r < 0) r += m;
    return r;
}

Matrix Matrix::identity(int n) {
    Matrix I(n, n);
    for (int i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

bool Matrix::is_zero() const {
    for (ll v : a)
        if (v != 0) return false;
    return true;
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    Matrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            ll v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = checked_add(C.at(i, j), checked_mul(v, B.at(k, j)));
        }
    return C;
}

std::vector<ll> mat_apply(const Matrix& A, const std::vector<ll>& x) {
    if (static_cast<int>(x.size()) != A.cols) throw std::invalid_argument("mat_apply: shape mismatch");
    std::vector<ll> y(A.rows, 0);
    for (int i = 0; i < A.rows; ++i) {
        ll s = 0;
        for (int j = 0; j < A.cols; ++j)
            if (A.at(i, j) != 0 && x[j] != 0) s = checked_add(s, checked_mul(A.at(i, j), x[j]));
        y[i] = s;
    }
    return y;
}

namespace {

void col_addmul(Matrix& M, int dst, int src, ll q) {
    if (q == 0) return;
    for (int r = 0; r < M.rows; ++r)
        if (M.at(r, src) != 0) M.at(r, dst) = checked_add(M.at(r, dst), checked_mul(q, M.at(r, src)));
}

void col_swap(Matrix& M, int i, int j) {
    if (i == j) return;
    for (int r = 0; r < M.rows; ++r) std::swap(M.at(r, i), M.at(r, j));
}

void col_neg(Matrix& M, int j) {
    for (int r = 0; r < M.rows; ++r) M.at(r, j) = -M.at(r, j);
}

}  // namespace

ColEchelon column_echelon(const Matrix& A, bool want_transform) {
    ColEchelon ce;
    ce.H = A;
    if (want_transform) ce.V = Matrix::identity(A.cols);
    Matrix& H = ce.H;
    Matrix& V = ce.V;
    int pc = 0;  // next pivot column
    for (int r = 0; r < A.rows && pc < A.cols; ++r) {
        // Euclidean elimination across columns pc..end on row r.
        while (true) {
            int best = -1;
            for (int c = pc; c < A.cols; ++c)
                if (H.at(r, c) != 0 && (best < 0 || std::llabs(H.at(r, c)) < std::llabs(H.at(r, best))))
                    best = c;
            if (best < 0) break;
            col_swap(H, pc, best);
            if (want_transform) col_swap(V, pc, best);
            bool clean = true;
            ll p = H.at(r, pc);
            for (int c = pc + 1; c < A.cols; ++c) {
                ll v = H.at(r, c);
                if (v == 0) continue;
                ll q = -(v / p);
                col_addmul(H, c, pc, q);
                if (want_transform) col_addmul(V, c, pc, q);
                if (H.at(r, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (H.at(r, pc) != 0) {
            if (H.at(r, pc) < 0) {
                col_neg(H, pc);
                if (want_transform) col_neg(V, pc);
            }
            // reduce earlier columns against this pivot for a canonical-ish form
            ll p = H.at(r, pc);
            for (int c = 0; c < pc; ++c) {
                // floor division so residues land in [0, p)
                ll v = H.at(r, c);
                ll fq = v / p;
                if (v % p < 0) fq -= 1;
                col_addmul(H, c, pc, -fq);
                if (want_transform) col_addmul(V, c, pc, -fq);
            }
            ce.pivot_row.push_back(r);
            ++pc;
        }
    }
    ce.rank = pc;
    return ce;
}

Matrix kernel_basis(const Matrix& A) {
    ColEchelon ce = column_echelon(A, true);
    int k = A.cols - ce.rank;
    Matrix K(A.cols, k);
    for (int j = 0; j < k; ++j)
        for (int r = 0; r < A.cols; ++r) K.at(r, j) = ce.V.at(r, ce.rank + j);
    return K;
}

bool solve_integer(const ColEchelon& ce, const std::vector<ll>& b, std::vector<ll>& x) {
    if (static_cast<int>(b.size()) != ce.H.rows) throw std::invalid_argument("solve_integer: shape mismatch");
    std::vector<ll> resid = b;
    std::vector<ll> y(ce.H.cols, 0);
    for (int c = 0; c < ce.rank; ++c) {
        int r = ce.pivot_row[c];
        ll p = ce.H.at(r, c);
        if (resid[r] % p != 0) return false;
        ll q = resid[r] / p;
        y[c] = q;
        if (q != 0)
            for (int i = 0; i < ce.H.rows; ++i)
                if (ce.H.at(i, c) != 0) resid[i] = checked_add(resid[i], -checked_mul(q, ce.H.at(i, c)));
    }
    for (ll v : resid)
        if (v != 0) return false;
    x = mat_apply(ce.V, y);
    return true;
}

bool solve_integer(const Matrix& A, const std::vector<ll>& b, std::vector<ll>& x) {
    ColEchelon ce = column_echelon(A, true);
    return solve_integer(ce, b, x);
}

SmithForm smith_form(Matrix A, bool want_U, bool want_V) {
    SmithForm sf;
    int n = std::min(A.rows, A.cols);
    if (want_U) sf.U = Matrix::identity(A.rows);
    if (want_V) sf.V = Matrix::identity(A.cols);

    auto row_addmul = [&](int dst, int src, ll q) {
        if (q == 0) return;
        for (int c = 0; c < A.cols; ++c)
            if (A.at(src, c) != 0) A.at(dst, c) = checked_add(A.at(dst, c), checked_mul(q, A.at(src, c)));
        if (want_U)
            for (int c = 0; c < sf.U.cols; ++c)
                if (sf.U.at(src, c) != 0) sf.U.at(dst, c) = checked_add(sf.U.at(dst, c), checked_mul(q, sf.U.at(src, c)));
    };
    auto row_swap = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < A.cols; ++c) std::swap(A.at(i, c), A.at(j, c));
        if (want_U)
            for (int c = 0; c < sf.U.cols; ++c) std::swap(sf.U.at(i, c), sf.U.at(j, c));
    };

    int t = 0;
    for (; t < n; ++t) {
        bool blockzero = false;
        while (true) {
            // re-select the minimal nonzero entry of the trailing block as pivot
            int pr = -1, pc2 = -1;
            for (int i = t; i < A.rows; ++i)
                for (int j = t; j < A.cols; ++j)
                    if (A.at(i, j) != 0 && (pr < 0 || std::llabs(A.at(i, j)) < std::llabs(A.at(pr, pc2)))) {
                        pr = i;
                        pc2 = j;
                    }
            if (pr < 0) {
                blockzero = true;
                break;
            }
            row_swap(t, pr);
            col_swap(A, t, pc2);
            if (want_V) col_swap(sf.V, t, pc2);
            ll p = A.at(t, t);
            bool clean = true;
            for (int i = t + 1; i < A.rows; ++i) {
                ll v = A.at(i, t);
                if (v == 0) continue;
                ll q = v / p;
                if (v % p != 0) clean = false;
                row_addmul(i, t, -q);
            }
            for (int j = t + 1; j < A.cols; ++j) {
                ll v = A.at(t, j);
                if (v == 0) continue;
                ll q = v / p;
                if (v % p != 0) clean = false;
                col_addmul(A, j, t, -q);
                if (want_V) col_addmul(sf.V, j, t, -q);
            }
            if (!clean) continue;  // remainders shrank the minimum; go again
            // pivot row/column cleared; enforce divisibility of the block
            bool bad = false;
            for (int i = t + 1; i < A.rows && !bad; ++i)
                for (int j = t + 1; j < A.cols && !bad; ++j)
                    if (A.at(i, j) % p != 0) {
                        row_addmul(t, i, 1);
                        bad = true;
                    }
            if (!bad) break;
        }
        if (blockzero) break;
        if (A.at(t, t) < 0) {
            col_neg(A, t);
            if (want_V) col_neg(sf.V, t);
        }
    }
    sf.rank = 0;
    sf.diag.assign(n, 0);
    for (int i = 0; i < t; ++i) {
        sf.diag[i] = A.at(i, i);
        if (sf.diag[i] != 0) ++sf.rank;
    }
    return sf;
}

ll lattice_covolume(const ColEchelon& ce) {
    ll det = 1;
    for (int c = 0; c < ce.rank; ++c) det = checked_mul(det, std::llabs(ce.H.at(ce.pivot_row[c], c)));
    return det;
}

}  // namespace gext
