#include "gext/cohomology.hpp"

#include <algorithm>
#include <numeric>

namespace gext {

namespace {

constexpr ll kEntryCap = 80'000'000;  // dense int64 entries per matrix

// digits of a normalized tuple are (element - 1), base |G|-1
std::vector<int> norm_tuple(const GroupPtr& G, int degree, ll index) {
    int base = G->order - 1;
    std::vector<int> t(degree);
    for (int i = degree - 1; i >= 0; --i) {
        t[i] = static_cast<int>(index % base) + 1;
        index /= base;
    }
    return t;
}

ll norm_index(const GroupPtr& G, const std::vector<int>& tuple) {
    ll idx = 0;
    for (int g : tuple) idx = idx * (G->order - 1) + (g - 1);
    return idx;
}

}  // namespace

ll normalized_tuple_count(const GroupPtr& G, int degree) {
    ll t = 1;
    for (int i = 0; i < degree; ++i) t = checked_mul(t, G->order - 1);
    return t;
}

std::vector<ll> to_normalized_vector(const Cochain& f) {
    if (!f.is_normalized()) throw std::invalid_argument("cochain is not normalized");
    const GroupPtr& G = f.module->group;
    int k = f.module->coeffs.rank();
    ll nt = normalized_tuple_count(G, f.degree);
    std::vector<ll> v(static_cast<size_t>(nt) * k);
    for (ll t = 0; t < nt; ++t) {
        const auto& val = f.at(norm_tuple(G, f.degree, t));
        for (int q = 0; q < k; ++q) v[t * k + q] = val[q];
    }
    return v;
}

Cochain from_normalized_vector(const GModulePtr& mod, int degree, const std::vector<ll>& v) {
    Cochain f = zero_cochain(mod, degree);
    const GroupPtr& G = mod->group;
    int k = mod->coeffs.rank();
    ll nt = normalized_tuple_count(G, degree);
    if (static_cast<ll>(v.size()) != nt * k) throw std::invalid_argument("normalized vector: wrong size");
    for (ll t = 0; t < nt; ++t) {
        std::vector<ll> val(k);
        for (int q = 0; q < k; ++q) val[q] = v[t * k + q];
        f.at(norm_tuple(G, degree, t)) = mod->coeffs.reduce(std::move(val));
    }
    return f;
}

Matrix bar_matrix(const GModulePtr& mod, int degree) {
    const GroupPtr& G = mod->group;
    int k = mod->coeffs.rank();
    ll rows_t = normalized_tuple_count(G, degree + 1);
    ll cols_t = normalized_tuple_count(G, degree);
    if (checked_mul(checked_mul(rows_t, cols_t), static_cast<ll>(k) * k) > kEntryCap)
        throw std::runtime_error("cohomology cap exceeded: reduce the degree or the group");
    Matrix D(static_cast<int>(rows_t) * k, static_cast<int>(cols_t) * k);
    int n = degree;
    for (ll rt = 0; rt < rows_t; ++rt) {
        auto tup = norm_tuple(G, n + 1, rt);
        // face 0: action of tup[0]
        {
            std::vector<int> sub(tup.begin() + 1, tup.end());
            ll ct = norm_index(G, sub);
            const Matrix& M = mod->action[tup[0]];
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (M.at(i, j) != 0)
                        D.at(static_cast<int>(rt) * k + i, static_cast<int>(ct) * k + j) =
                            checked_add(D.at(static_cast<int>(rt) * k + i, static_cast<int>(ct) * k + j), M.at(i, j));
        }
        ll sign = -1;
        for (int f = 1; f <= n; ++f) {
            int merged = G->op(tup[f - 1], tup[f]);
            if (merged != 0) {
                std::vector<int> sub;
                sub.reserve(n);
                for (int j = 0; j < n + 1; ++j) {
                    if (j == f) continue;
                    sub.push_back(j == f - 1 ? merged : tup[j]);
                }
                ll ct = norm_index(G, sub);
                for (int i = 0; i < k; ++i)
                    D.at(static_cast<int>(rt) * k + i, static_cast<int>(ct) * k + i) =
                        checked_add(D.at(static_cast<int>(rt) * k + i, static_cast<int>(ct) * k + i), sign);
            }
            sign = -sign;
        }
        {
            std::vector<int> sub(tup.begin(), tup.end() - 1);
            ll ct = norm_index(G, sub);
            for (int i = 0; i < k; ++i)
                D.at(static_cast<int>(rt) * k + i, static_cast<int>(ct) * k + i) =
                    checked_add(D.at(static_cast<int>(rt) * k + i, static_cast<int>(ct) * k + i), sign);
        }
    }
    return D;
}

namespace {

// columns m_j e_j for every finite modulus coordinate of C^n
Matrix modulus_columns(const GModulePtr& mod, int degree) {
    int k = mod->coeffs.rank();
    ll nt = normalized_tuple_count(mod->group, degree);
    int dim = static_cast<int>(nt) * k;
    std::vector<std::pair<int, ll>> finite;
    for (ll t = 0; t < nt; ++t)
        for (int q = 0; q < k; ++q)
            if (mod->coeffs.factors[q] > 0) finite.emplace_back(static_cast<int>(t) * k + q, mod->coeffs.factors[q]);
    Matrix E(dim, static_cast<int>(finite.size()));
    for (size_t j = 0; j < finite.size(); ++j) E.at(finite[j].first, static_cast<int>(j)) = finite[j].second;
    return E;
}

Matrix hstack(const Matrix& A, const Matrix& B) {
    if (A.rows != B.rows) throw std::invalid_argument("hstack: row mismatch");
    Matrix C(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Matrix vstack(const Matrix& A, const Matrix& B) {
    if (A.cols != B.cols) throw std::invalid_argument("vstack: col mismatch");
    Matrix C(A.rows + B.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
    return C;
}

// lattice L = { x : D x in im(E) }: basis as columns.
Matrix constrained_kernel(const Matrix& D, const Matrix& E) {
    Matrix K = kernel_basis(hstack(D, E));
    Matrix top(D.cols, K.cols);
    for (int i = 0; i < D.cols; ++i)
        for (int j = 0; j < K.cols; ++j) top.at(i, j) = K.at(i, j);
    ColEchelon ce = column_echelon(top, false);
    Matrix B(D.cols, ce.rank);
    for (int i = 0; i < D.cols; ++i)
        for (int j = 0; j < ce.rank; ++j) B.at(i, j) = ce.H.at(i, j);
    return B;
}

}  // namespace

// coordinates of the columns of P in the basis B (must lie in the lattice).
Matrix coords_in_lattice_basis(const Matrix& B, const Matrix& P) {
    ColEchelon ce = column_echelon(B, true);
    Matrix C(B.cols, P.cols);
    std::vector<ll> b(B.rows), x;
    for (int j = 0; j < P.cols; ++j) {
        for (int i = 0; i < B.rows; ++i) b[i] = P.at(i, j);
        if (!solve_integer(ce, b, x)) throw std::logic_error("coords_in_basis: vector not in lattice");
        for (int i = 0; i < B.cols; ++i) C.at(i, j) = x[i];
    }
    return C;
}

namespace {

ll product_of_snf_diag(Matrix R, int expected_rank) {
    SmithForm sf = smith_form(std::move(R), false, false);
    if (sf.rank != expected_rank) throw std::logic_error("finite quotient has unexpected free part");
    ll p = 1;
    for (int i = 0; i < sf.rank; ++i) p = checked_mul(p, sf.diag[i]);
    return p;
}

// structure of Z^{rows(B)} basis-lattice modulo the columns of R (coords in B);
// returns generator lattice vectors (columns of B * U^{-1} e_i) with orders.
struct QuotStruct {
    std::vector<ll> orders;
    std::vector<std::vector<ll>> gens;  // lattice vectors
    ll total = 1;
};

QuotStruct quotient_structure(const Matrix& B, const Matrix& R, bool need_gens) {
    QuotStruct qs;
    if (B.cols == 0) return qs;
    SmithForm sf = smith_form(R, need_gens, false);
    int r = B.cols;
    for (int i = 0; i < r; ++i) {
        ll s = i < static_cast<int>(sf.diag.size()) ? sf.diag[i] : 0;
        if (s == 0) throw std::logic_error("quotient_structure: free part in finite quotient");
        qs.total = checked_mul(qs.total, s);
    }
    if (need_gens) {
        ColEchelon ceU = column_echelon(sf.U, true);
        for (int i = 0; i < r; ++i) {
            ll s = sf.diag[i];
            if (s <= 1) continue;
            std::vector<ll> e(r, 0);
            e[i] = 1;
            std::vector<ll> x;
            if (!solve_integer(ceU, e, x)) throw std::logic_error("quotient_structure: U not invertible");
            qs.orders.push_back(s);
            qs.gens.push_back(mat_apply(B, x));
        }
    }
    return qs;
}

}  // namespace

CoboundarySolver::CoboundarySolver(GModulePtr mod, int degree) : mod_(std::move(mod)), degree_(degree) {
    if (degree < 1) throw std::invalid_argument("CoboundarySolver: degree must be >= 1");
    Matrix Dprev = bar_matrix(mod_, degree - 1);
    prev_cols_ = Dprev.cols;
    Matrix E = modulus_columns(mod_, degree);
    ce_ = column_echelon(hstack(Dprev, E), true);
}

std::optional<Cochain> CoboundarySolver::witness(const Cochain& b) const {
    if (b.degree != degree_) throw std::invalid_argument("witness: wrong degree");
    std::vector<ll> v = to_normalized_vector(b);
    std::vector<ll> y;
    if (!solve_integer(ce_, v, y)) return std::nullopt;
    std::vector<ll> w(y.begin(), y.begin() + prev_cols_);
    Cochain wit = from_normalized_vector(mod_, degree_ - 1, w);
    if (!equal(differential(wit), b)) throw std::logic_error("witness round-trip failed");
    return wit;
}

CohomologyResult cohomology(const GModulePtr& mod, int degree) {
    if (degree < 1) throw std::invalid_argument("cohomology: degree must be >= 1");
    bool finite = mod->coeffs.is_finite();
    Matrix Dn = bar_matrix(mod, degree);
    Matrix Dprev = bar_matrix(mod, degree - 1);
    Matrix En = modulus_columns(mod, degree);
    Matrix Enext = modulus_columns(mod, degree + 1);

    Matrix BL = constrained_kernel(Dn, Enext);       // basis of the cocycle lattice
    Matrix P = hstack(Dprev, En);                    // generators of the coboundary lattice
    Matrix R = coords_in_lattice_basis(BL, P);               // relations of H^n in the BL basis

    CohomologyResult res;
    res.degree = degree;

    QuotStruct hq = quotient_structure(BL, R, true);
    res.h_order = hq.total;
    res.invariants.assign(hq.orders.begin(), hq.orders.end());
    for (size_t i = 0; i < hq.gens.size(); ++i) {
        Cochain g = from_normalized_vector(mod, degree, hq.gens[i]);
        if (!is_cocycle(g)) throw std::logic_error("cohomology: generator is not a cocycle");
        res.generators.push_back(std::move(g));
    }

    if (finite) {
        Matrix RZ = coords_in_lattice_basis(BL, En);
        QuotStruct zq = quotient_structure(BL, RZ, true);
        res.z_order = zq.total;
        res.z_structure.order = zq.total;
        for (size_t i = 0; i < zq.gens.size(); ++i) {
            res.z_structure.orders.push_back(zq.orders[i]);
            res.z_structure.gens.push_back(from_normalized_vector(mod, degree, zq.gens[i]));
        }
        ColEchelon ceP = column_echelon(P, false);
        Matrix BP(P.rows, ceP.rank);
        for (int i = 0; i < P.rows; ++i)
            for (int j = 0; j < ceP.rank; ++j) BP.at(i, j) = ceP.H.at(i, j);
        Matrix RB = coords_in_lattice_basis(BP, En);
        res.b_order = product_of_snf_diag(RB, BP.cols);
        if (res.z_order != checked_mul(res.b_order, res.h_order))
            throw std::logic_error("cohomology: |Z| != |B|*|H|");
    }
    res.solver = std::make_shared<CoboundarySolver>(mod, degree);
    return res;
}

SupportHom zero_support(const AbelianGroup& source) {
    SupportHom s;
    s.target.factors = {};
    s.map = Matrix(0, source.rank());
    return s;
}

SupportHom sum_support(const AbelianGroup& source) {
    SupportHom s;
    ll m = 0;
    for (ll d : source.factors) m = std::gcd(m, d);
    if (m == 0) m = 1;
    s.target.factors = {m};
    s.map = Matrix(1, source.rank());
    for (int j = 0; j < source.rank(); ++j) s.map.at(0, j) = 1;
    return s;
}

SupportHom proj_support(const AbelianGroup& source, int k) {
    SupportHom s;
    s.target.factors.assign(source.factors.begin(), source.factors.begin() + k);
    s.map = Matrix(k, source.rank());
    for (int i = 0; i < k; ++i) s.map.at(i, i) = 1;
    return s;
}

D1Result d1_subgroup(const GModulePtr& mod, const SupportHom& support) {
    if (support.map.cols != mod->coeffs.rank()) throw std::invalid_argument("d1_subgroup: support shape mismatch");
    for (int i = 0; i < support.map.rows; ++i)
        for (int j = 0; j < support.map.cols; ++j)
            if (support.target.factors[i] > 0 && mod->coeffs.factors[j] > 0 &&
                mod_floor(checked_mul(support.map.at(i, j), mod->coeffs.factors[j]), support.target.factors[i]) != 0)
                throw std::invalid_argument("d1_subgroup: support is not a homomorphism");

    Matrix D1 = bar_matrix(mod, 1);
    Matrix E2 = modulus_columns(mod, 2);
    int k = mod->coeffs.rank();
    ll nt = normalized_tuple_count(mod->group, 1);
    int kt = support.map.rows;
    Matrix S(static_cast<int>(nt) * kt, static_cast<int>(nt) * k);
    for (ll t = 0; t < nt; ++t)
        for (int i = 0; i < kt; ++i)
            for (int j = 0; j < k; ++j) S.at(static_cast<int>(t) * kt + i, static_cast<int>(t) * k + j) = support.map.at(i, j);
    Matrix T(static_cast<int>(nt) * kt, 0);
    {
        std::vector<std::pair<int, ll>> fin;
        for (ll t = 0; t < nt; ++t)
            for (int i = 0; i < kt; ++i)
                if (support.target.factors[i] > 0) fin.emplace_back(static_cast<int>(t) * kt + i, support.target.factors[i]);
        T = Matrix(static_cast<int>(nt) * kt, static_cast<int>(fin.size()));
        for (size_t j = 0; j < fin.size(); ++j) T.at(fin[j].first, static_cast<int>(j)) = fin[j].second;
    }
    // stacked system: rows for d rho = 0 (mod E2) and support(rho) = 0 (mod T)
    Matrix top = hstack(hstack(D1, E2), Matrix(D1.rows, T.cols));
    Matrix bot = hstack(hstack(S, Matrix(S.rows, E2.cols)), T);
    Matrix M = vstack(top, bot);
    Matrix K = kernel_basis(M);
    Matrix topK(D1.cols, K.cols);
    for (int i = 0; i < D1.cols; ++i)
        for (int j = 0; j < K.cols; ++j) topK.at(i, j) = K.at(i, j);
    ColEchelon ce = column_echelon(topK, false);
    Matrix B(D1.cols, ce.rank);
    for (int i = 0; i < D1.cols; ++i)
        for (int j = 0; j < ce.rank; ++j) B.at(i, j) = ce.H.at(i, j);

    Matrix E1 = modulus_columns(mod, 1);
    Matrix R = coords_in_lattice_basis(B, E1);
    QuotStruct qs = quotient_structure(B, R, true);
    D1Result out;
    out.order = qs.total;
    out.structure.order = qs.total;
    for (size_t i = 0; i < qs.gens.size(); ++i) {
        Cochain g = from_normalized_vector(mod, 1, qs.gens[i]);
        if (!is_cocycle(g)) throw std::logic_error("d1_subgroup: generator is not a cocycle");
        out.structure.orders.push_back(qs.orders[i]);
        out.structure.gens.push_back(std::move(g));
    }
    return out;
}

std::vector<Cochain> enumerate_structure(const GModulePtr& mod, int degree, const GroupStructure& s, ll cap) {
    ll total = 1;
    for (ll o : s.orders) total = checked_mul(total, o);
    if (total > cap) throw std::runtime_error("enumerate_structure: too many elements");
    std::vector<Cochain> out;
    out.reserve(total);
    std::vector<ll> digit(s.orders.size(), 0);
    while (true) {
        Cochain c = zero_cochain(mod, degree);
        for (size_t i = 0; i < s.orders.size(); ++i)
            if (digit[i] != 0) c = add(c, scale(s.gens[i], digit[i]));
        out.push_back(std::move(c));
        size_t i = 0;
        for (; i < digit.size(); ++i) {
            if (++digit[i] < s.orders[i]) break;
            digit[i] = 0;
        }
        if (i == digit.size()) break;
    }
    std::sort(out.begin(), out.end(), [](const Cochain& a, const Cochain& b) { return a.values < b.values; });
    return out;
}

}  // namespace gext
