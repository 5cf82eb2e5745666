#include "gext/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gext {

ll AbelianGroup::order() const {
    ll n = 1;
    for (ll d : factors) {
        if (d == 0) throw std::logic_error("order of infinite abelian group");
        n = checked_mul(n, d);
    }
    return n;
}

ll AbelianGroup::exponent() const {
    ll e = 1;
    for (ll d : factors)
        if (d > 0) e = std::lcm(e, d);
    return e;
}

bool AbelianGroup::is_finite() const {
    return std::all_of(factors.begin(), factors.end(), [](ll d) { return d > 0; });
}

std::vector<ll> AbelianGroup::reduce(std::vector<ll> x) const {
    for (size_t i = 0; i < factors.size(); ++i)
        if (factors[i] > 0) x[i] = mod_floor(x[i], factors[i]);
    return x;
}

std::vector<ll> AbelianGroup::add(const std::vector<ll>& x, const std::vector<ll>& y) const {
    std::vector<ll> z(factors.size());
    for (size_t i = 0; i < factors.size(); ++i) z[i] = checked_add(x[i], y[i]);
    return reduce(std::move(z));
}

std::vector<ll> AbelianGroup::neg(const std::vector<ll>& x) const {
    std::vector<ll> z(factors.size());
    for (size_t i = 0; i < factors.size(); ++i) z[i] = -x[i];
    return reduce(std::move(z));
}

std::vector<ll> AbelianGroup::element(ll index) const {
    std::vector<ll> x(factors.size(), 0);
    for (int i = rank() - 1; i >= 0; --i) {
        x[i] = index % factors[i];
        index /= factors[i];
    }
    return x;
}

ll AbelianGroup::index_of(const std::vector<ll>& x) const {
    ll idx = 0;
    for (int i = 0; i < rank(); ++i) idx = idx * factors[i] + mod_floor(x[i], factors[i]);
    return idx;
}

AbelianGroup parse_abelian(const std::string& descriptor) {
    AbelianGroup A;
    for (int n : cyclic_factors_of_descriptor(descriptor)) A.factors.push_back(n);
    return A;
}

std::string abelian_descriptor(const AbelianGroup& A) {
    std::ostringstream os;
    for (size_t i = 0; i < A.factors.size(); ++i) os << (i ? "x" : "") << "C" << A.factors[i];
    return A.factors.empty() ? "C1" : os.str();
}

GroupPtr abelian_as_group(const AbelianGroup& A) {
    ll n = A.order();
    if (n > 4096) throw std::runtime_error("abelian_as_group: too large");
    int order = static_cast<int>(n);
    std::vector<int> table(static_cast<size_t>(order) * order);
    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            table[static_cast<size_t>(a) * order + b] = static_cast<int>(A.index_of(A.add(A.element(a), A.element(b))));
    return make_group_from_table(std::move(table), order, abelian_descriptor(A));
}

bool endomorphism_well_defined(const AbelianGroup& A, const Matrix& M) {
    if (M.rows != A.rank() || M.cols != A.rank()) return false;
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) {
            if (A.factors[i] == 0) continue;
            ll v = checked_mul(M.at(i, j), A.factors[j]);
            if (mod_floor(v, A.factors[i]) != 0) return false;
        }
    return true;
}

std::vector<ll> invariant_factors(const std::vector<ll>& moduli) {
    int k = static_cast<int>(moduli.size());
    Matrix D(k, k);
    for (int i = 0; i < k; ++i) D.at(i, i) = moduli[i];
    SmithForm sf = smith_form(D, false, false);
    std::vector<ll> out;
    for (ll d : sf.diag)
        if (d != 1) out.push_back(d);
    return out;
}

ll DualPairing::pair(const std::vector<ll>& x, const std::vector<ll>& y) const {
    ll s = 0;
    for (int i = 0; i < A.rank(); ++i)
        s = checked_add(s, checked_mul(checked_mul(x[i], y[i]), modulus / A.factors[i]));
    return mod_floor(s, modulus);
}

DualPairing dual_pairing(const AbelianGroup& A) {
    if (!A.is_finite()) throw std::invalid_argument("dual_pairing: needs finite group");
    return DualPairing{A, A.exponent()};
}

Matrix dual_inverse_matrix(const AbelianGroup& A, const Matrix& alpha) {
    // alpha^{-1} by order of alpha in the (finite) automorphism action
    auto reduce_mat = [&](Matrix M) {
        for (int i = 0; i < M.rows; ++i)
            for (int j = 0; j < M.cols; ++j) M.at(i, j) = mod_floor(M.at(i, j), A.factors[i]);
        return M;
    };
    Matrix id = reduce_mat(Matrix::identity(A.rank()));
    Matrix inv = Matrix::identity(A.rank()), cur = reduce_mat(alpha);
    int guard = 0;
    while (!(reduce_mat(cur).a == id.a)) {
        inv = cur;
        cur = reduce_mat(mat_mul(cur, alpha));
        if (++guard > 100000) throw std::runtime_error("dual_inverse_matrix: no finite order");
    }
    // inv = alpha^{-1}; dual of beta := transpose with coefficient scaling:
    // (beta* y)_j = B_{ij} y_i n_j / n_i summed over i, where beta = alpha^{-1}.
    const Matrix& B = inv;
    ll M = A.exponent();
    Matrix out(A.rank(), A.rank());
    for (int j = 0; j < A.rank(); ++j)
        for (int i = 0; i < A.rank(); ++i) {
            ll c = checked_mul(B.at(i, j), M / A.factors[i]);  // contribution of y_i to coordinate j, times M/n_j
            ll scaled = c % (M / A.factors[j]) == 0 ? c / (M / A.factors[j]) : -1;
            if (scaled < 0) throw std::logic_error("dual matrix: non-integral entry");
            out.at(j, i) = mod_floor(scaled, A.factors[j]);
        }
    // out maps y -> (alpha^{-1})* y on character coordinates
    return out;
}

Matrix matrix_of_aut(const AbelianGroup& A, const GroupHom& phi) {
    Matrix M(A.rank(), A.rank());
    for (int j = 0; j < A.rank(); ++j) {
        std::vector<ll> e = A.zero();
        e[j] = 1;
        std::vector<ll> img = A.element(phi.image[A.index_of(e)]);
        for (int i = 0; i < A.rank(); ++i) M.at(i, j) = img[i];
    }
    return M;
}

}  // namespace gext
