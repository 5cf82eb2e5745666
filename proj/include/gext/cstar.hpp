#pragma once

#include <optional>

#include "gext/cohomology.hpp"

namespace gext {

// C^x-valued cochains are stored additively as exponents in Z/M
// (f <-> exp(2 pi i f / M)). Triviality over C^x is decided exactly through
// the integral complex: H^n(G, C^x) = H^{n+1}(G, Z) since H^k(G, Q) = 0.

struct CstarVerdict {
    bool trivial = false;
    std::optional<Cochain> witness;  // over mu_{M*|G|}; d(witness) = f embedded
};

// f: normalized cocycle over mu_M, degree n in 1..3. Decides whether f is a
// coboundary with values in C^x (not merely in mu_M).
CstarVerdict cstar_is_trivial(const Cochain& f);

// H^n(G, C^x) for n in 1..3 with explicit mu_M generator cocycles (M = lcm of
// the generator orders). z_order/b_order are 0: those groups are not finite.
CohomologyResult cstar_cohomology(const GroupPtr& G, int degree);

// Coordinates of [f] with respect to the generators of cstar_cohomology
// (smallest lexicographic solution); brute force over the finite group.
std::vector<ll> cstar_class_coords(const Cochain& f, const CohomologyResult& H);

// Order of the image of H^n(G, mu_M) in H^n(G, C^x); stabilizes once mu_M
// contains all |G|-torsion. Exact lattice computation, no approximation.
ll mu_image_order(const GroupPtr& G, int degree, ll M);

// Process-wide caches for the integral complexes (they are reused heavily).
const CohomologyResult& integral_cohomology_cached(const GroupPtr& G, int degree);
std::shared_ptr<CoboundarySolver> integral_solver_cached(const GroupPtr& G, int degree);

}  // namespace gext
