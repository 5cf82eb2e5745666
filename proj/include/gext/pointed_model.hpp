#pragma once

#include "gext/metric.hpp"
#include "gext/pointed.hpp"

namespace gext {

// Concrete model of the bimodule calculus of a graded pointed category:
// fiber functors are decorated translations (u_g, chi_g) with structure
// scalars assembled from the ambient associator. The defect cochains below
// are computed by composing those scalars, not from closed-form shortcuts.

// Coordinates on an abelian subgroup: an explicit isomorphism between the
// kernel of a grading and a product of cyclics.
struct AbelianCoords {
    AbelianGroup group;             // coordinate group, factors n_1..n_k
    std::vector<int> to_element;    // coordinate index -> ambient element
    std::vector<ll> to_index;       // ambient element -> coordinate index (-1 outside)
};
AbelianCoords abelian_coordinates(const GroupPtr& E, const std::vector<int>& subgroup_elements);

// The graded setting shared by the defect computations.
struct GradedModel {
    GradedPointedCategory cat;
    AbelianCoords piece;            // coordinates on the trivial piece
    GModulePtr center;              // A x A^ with the conjugation action of G
    HyperbolicCenter hyper;         // the form and the support projection
    ll modulus;                     // omega modulus; multiple of exp(A)

    int section(int g) const { return cat.grading.section[g]; }
    ll omega(int x, int y, int z) const;
    int conj_on_piece(int g, int a_elem) const;  // x_g a x_g^{-1}
};
GradedModel make_model(GradedPointedCategory cat);

// A candidate collection of decorated fiber equivalences: per grading element
// a translation u_g (element of the piece) and a character chi_g of the piece
// (values mod `modulus`, additive).
struct DecoratedSystem {
    std::vector<int> u;                    // per G element: ambient piece element
    std::vector<std::vector<ll>> chi;      // per G element: table over piece elements
};
DecoratedSystem trivial_system(const GradedModel& m);

// Translate between center-valued 1-cochains and decorated twists.
DecoratedSystem apply_twist(const GradedModel& m, const DecoratedSystem& dat, const Cochain& rho);

// The multiplicativity/structure defect T(dat) as a 2-cochain over the
// center module; vanishes exactly on honest systems of equivalences.
Cochain t_defect(const GradedModel& m, const DecoratedSystem& dat);

// The tensorator-coherence defect of (dat, tau_hat) as a 3-cochain on the
// grading group over mu_modulus. Requires the translation defect of dat to
// vanish (dat must be a system of equivalences at the map level).
Cochain v_defect(const GradedModel& m, const DecoratedSystem& dat, const Cochain& tau_hat);

// The full candidate tensorator on E underlying v_defect (for diagnostics
// and for the o3 machinery of the classify engine).
Cochain full_tensorator(const GradedModel& m, const DecoratedSystem& dat, const Cochain& tau_hat);

}  // namespace gext
