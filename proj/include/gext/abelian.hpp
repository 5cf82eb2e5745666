#pragma once

#include <string>
#include <vector>

#include "gext/group.hpp"
#include "gext/matrix.hpp"

namespace gext {

// Finite abelian group as a product of cyclic factors; elements are exponent
// vectors x with x_i taken mod factors[i]. A factor of 0 means Z (used
// internally for integral coefficients; never exposed through descriptors).
struct AbelianGroup {
    std::vector<ll> factors;

    int rank() const { return static_cast<int>(factors.size()); }
    ll order() const;     // throws for infinite (0-factor) groups
    ll exponent() const;  // lcm of finite factors (1 for trivial)
    bool is_finite() const;

    std::vector<ll> zero() const { return std::vector<ll>(factors.size(), 0); }
    std::vector<ll> reduce(std::vector<ll> x) const;
    std::vector<ll> add(const std::vector<ll>& x, const std::vector<ll>& y) const;
    std::vector<ll> neg(const std::vector<ll>& x) const;
    std::vector<ll> element(ll index) const;  // mixed-radix decode
    ll index_of(const std::vector<ll>& x) const;
};

AbelianGroup parse_abelian(const std::string& descriptor);  // "Cn[xCm...]"
std::string abelian_descriptor(const AbelianGroup& A);

// The same group as a FiniteGroup (element index = mixed radix of exponents).
GroupPtr abelian_as_group(const AbelianGroup& A);

// Is the integer matrix M a well-defined endomorphism of A (x -> Mx)?
bool endomorphism_well_defined(const AbelianGroup& A, const Matrix& M);

// Invariant factors d_1 | d_2 | ... of the finite group with the given cyclic
// moduli, via SNF of the diagonal relation matrix. 1-factors dropped.
std::vector<ll> invariant_factors(const std::vector<ll>& moduli);

// Characters of A, represented as exponent vectors y over the same factors:
// chi_y(x) = sum_i x_i y_i (M/n_i) mod M, with M = exponent(A).
struct DualPairing {
    AbelianGroup A;
    ll modulus;  // exponent(A)

    ll pair(const std::vector<ll>& x, const std::vector<ll>& y) const;
};
DualPairing dual_pairing(const AbelianGroup& A);

// Matrix of the dual map (alpha*)^{-1} on character coordinates, for an
// automorphism alpha of A given by its matrix.
Matrix dual_inverse_matrix(const AbelianGroup& A, const Matrix& alpha);

// Matrix of an automorphism of A from its action on the standard generators,
// given as a FiniteGroup automorphism of abelian_as_group(A).
Matrix matrix_of_aut(const AbelianGroup& A, const GroupHom& phi);

}  // namespace gext
