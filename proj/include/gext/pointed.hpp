#pragma once

#include <map>

#include "gext/cstar.hpp"

namespace gext {

// Vec^omega(E): E-graded lines with associator scalars from a normalized
// 3-cocycle omega, stored additively over mu_M.
struct PointedCategory {
    GroupPtr group;
    Cochain omega;
};

// Trivial associator at the default modulus |E|^2 (configurable).
PointedCategory make_pointed(const GroupPtr& E, ll modulus = 0);
PointedCategory make_pointed(const GroupPtr& E, Cochain omega);

// Monoidal functor data (phi, tau): coherence d tau = omega_C - phi* omega_D.
struct PointedFunctor {
    GroupHom phi;
    Cochain tau;
};

// omega_C - phi* omega_D at the common modulus.
Cochain coherence_rhs(const PointedCategory& C, const PointedCategory& D, const GroupHom& phi);
bool coherence_holds(const PointedCategory& C, const PointedCategory& D, const PointedFunctor& F);

// Equivalence class of monoidal functors C -> D: (phi, [tau]) with two
// representatives identified when their difference is trivial over C^x.
// The stored tau is the canonical representative: the Bockstein base witness
// for phi plus the canonical combination of H^2(E_C, C^x) generators.
struct FunctorClass {
    GroupHom phi;
    Cochain tau;
    std::vector<ll> h2_coords;
};

// Caches the per-(C, D) data used to canonicalize and compose classes.
class PairContext {
  public:
    PairContext(PointedCategory C, PointedCategory D);

    const PointedCategory& source() const { return C_; }
    const PointedCategory& target() const { return D_; }
    ll class_modulus() const { return modulus_; }
    const CohomologyResult& h2() const { return h2_; }

    // base witness for phi, or nullopt when omega_C - phi* omega_D is not
    // trivial over C^x (phi admits no tensorator).
    std::optional<Cochain> base_witness(const GroupHom& phi);

    std::optional<FunctorClass> make_class(const GroupHom& phi, const Cochain& tau);
    FunctorClass class_from_coords(const GroupHom& phi, const std::vector<ll>& coords);

  private:
    PointedCategory C_, D_;
    ll modulus_;
    CohomologyResult h2_;
    std::map<std::vector<int>, std::optional<Cochain>> witness_cache_;
};

bool same_class(const FunctorClass& a, const FunctorClass& b);

// Composition at the class level: phi = phi2 . phi1, tau = phi1* tau2 + tau1.
FunctorClass compose_classes(PairContext& ctx_cd, PairContext& ctx_ce, const FunctorClass& f2, const FunctorClass& f1);
FunctorClass inverse_class(PairContext& ctx_cd, PairContext& ctx_dc, const FunctorClass& f);

struct AutEnumeration {
    std::vector<FunctorClass> classes;
    ll phi_level = 0;    // admissible underlying automorphisms
    ll h2_order = 1;     // |H^2(E, C^x)|
    ll stab_order = 0;   // = phi_level (automorphisms fixing [omega])
};

// All monoidal auto-equivalence classes of C; count = stab * |H^2|.
AutEnumeration monoidal_autoequivalences(const PointedCategory& C, int cap = 64);

struct GradedPointedCategory {
    PointedCategory category;
    GradingSurjection grading;
};

GradedPointedCategory make_graded(PointedCategory C, const std::vector<int>& kernel);

enum class Predicate { Plain, Graded, TrivialOnTrivialPiece, ExtensionEquivalence };
Predicate parse_predicate(const std::string& name);  // graded | ttp | ext-eq | plain

struct AutoFlags {
    bool plain = true;
    bool graded = false;
    bool trivial_on_trivial_piece = false;
    bool extension_equivalence = false;
};

// Flags for an auto-equivalence class of a graded category.
AutoFlags classify_automorphism(const GradedPointedCategory& C, const FunctorClass& F);

// Induced map on the grading group of a fiber-preserving phi.
std::optional<GroupHom> induced_grading_map(const GradedPointedCategory& C, const GradedPointedCategory& D,
                                            const GroupHom& phi);

// Equivalence problem between two graded categories over the same trivial
// piece. piece_iso identifies the kernels (source kernel element -> target
// element); for auto-problems it is the identity.
struct GradedProblem {
    GradedPointedCategory source;
    GradedPointedCategory target;
    std::vector<int> piece_iso;
};
GradedProblem auto_problem(const GradedPointedCategory& C);

// Oracle enumeration: all classes (phi, [tau]) satisfying the coherence and
// the predicate. Deterministic order.
std::vector<FunctorClass> enumerate_graded_equivalences(const GradedProblem& p, Predicate pred, int cap = 64);

// phi-level count (underlying group maps that satisfy the predicate and admit
// at least one tensorator).
ll phi_level_count(const GradedProblem& p, Predicate pred, int cap = 64);

// Solvability of d tau = f over mu_K by direct integer linear algebra
// (independent of the Bockstein path; used as a dual-path oracle).
bool mu_solvable_coboundary(const Cochain& f, ll witness_modulus);

}  // namespace gext
