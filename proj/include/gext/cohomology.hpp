#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "gext/cochain.hpp"

namespace gext {

// Everything here works in normalized coordinates: a degree-n cochain is
// stored as its values on tuples of non-identity elements, (|G|-1)^n of them,
// each an exponent vector of the coefficient group. The normalized bar
// subcomplex computes the same cohomology and keeps the matrices small.

ll normalized_tuple_count(const GroupPtr& G, int degree);
std::vector<ll> to_normalized_vector(const Cochain& f);
Cochain from_normalized_vector(const GModulePtr& mod, int degree, const std::vector<ll>& v);

// Integer matrix of the bar differential C^n -> C^{n+1} in normalized coords.
Matrix bar_matrix(const GModulePtr& mod, int degree);

// Structure of a finite abelian group presented as lattice/sublattice.
struct GroupStructure {
    ll order = 1;
    std::vector<ll> orders;       // per generator, > 1
    std::vector<Cochain> gens;
};

// Decides membership in B^n = im(d^{n-1}) and produces an exact witness.
class CoboundarySolver {
  public:
    CoboundarySolver(GModulePtr mod, int degree);
    // b must be degree `degree`; returns a degree-1 witness w with dw = b.
    std::optional<Cochain> witness(const Cochain& b) const;

  private:
    GModulePtr mod_;
    int degree_;
    int prev_cols_;
    ColEchelon ce_;
};

struct CohomologyResult {
    int degree = 0;
    ll z_order = 0;  // 0 means not finite (integral coefficients)
    ll b_order = 0;
    ll h_order = 1;
    std::vector<ll> invariants;       // of H^n, each > 1, divisibility chain
    std::vector<Cochain> generators;  // cocycles projecting to H^n generators
    GroupStructure z_structure;       // generators of Z^n itself (finite case)
    std::shared_ptr<CoboundarySolver> solver;
};

// Exact cohomology of the normalized bar complex in degree n >= 1.
CohomologyResult cohomology(const GModulePtr& mod, int degree);

// Homomorphism of abelian groups used to realize the D^1 condition.
struct SupportHom {
    Matrix map;            // target.rank x source.rank
    AbelianGroup target;
};
SupportHom zero_support(const AbelianGroup& source);
SupportHom sum_support(const AbelianGroup& source);        // x -> sum of coordinates
SupportHom proj_support(const AbelianGroup& source, int k);  // first k coordinates

struct D1Result {
    ll order = 1;
    GroupStructure structure;
};
// D^1 = { rho in Z^1 : support(rho_g) = 0 for all g }.
D1Result d1_subgroup(const GModulePtr& mod, const SupportHom& support);

// Coordinates of the columns of P in the lattice basis B (columns must lie
// in the lattice spanned by B).
Matrix coords_in_lattice_basis(const Matrix& B, const Matrix& P);

// All elements of Z^n (or of the D^1 subgroup), enumerated from generators.
std::vector<Cochain> enumerate_structure(const GModulePtr& mod, int degree, const GroupStructure& s, ll cap = 200000);

}  // namespace gext
