#pragma once

#include "gext/pointed_model.hpp"

namespace gext {

// ---------------------------------------------------------------------------
// Extension counting (systems of products / systems of associators)

struct ExtensionProblem {
    AbelianGroup base;              // A; the base category is Vec(A), trivial associator
    GroupPtr grading;               // G
    std::vector<Matrix> action;     // c: G -> Aut(A), one matrix per G element
    bool brute_force_obstructions = true;  // otherwise the caller asserts both vanish
};

ExtensionProblem make_extension_problem(AbelianGroup A, GroupPtr G, std::vector<Matrix> c);

struct ExtensionCount {
    ll h2_lambda = 1;   // |H^2(G, A x A^)| with the induced action
    ll h3_cstar = 1;    // |H^3(G, C^x)|
    bool o3_vanishes = false;
    bool o4_vanishes = false;
    ll count = 0;       // h2_lambda * h3_cstar when both obstructions vanish
    std::string obstruction_path;  // how the flags were resolved
};
ExtensionCount extension_count(const ExtensionProblem& p);

// The semidirect-type extension groups realizing c, one per H^2(G, A_c)
// class, returned as graded pointed categories with trivial associator.
std::vector<GradedPointedCategory> realize_extension_groups(const ExtensionProblem& p);

// Brute-force extension oracle: all pairs (extension group, associator class
// restricting trivially to the base) counted up to extension equivalence.
struct ExtensionOracle {
    ll count = 0;
    std::vector<GradedPointedCategory> extensions;  // one representative each
};
ExtensionOracle enumerate_extensions(const ExtensionProblem& p, int cap = 24);

// ---------------------------------------------------------------------------
// Equivalence counting (the quadruple layers)

struct EquivalenceProblem {
    GradedPointedCategory source;
    GradedPointedCategory target;
    std::vector<int> piece_iso;  // source kernel element -> target element
    Predicate predicate = Predicate::Graded;
};
EquivalenceProblem make_auto_equivalence_problem(GradedPointedCategory C, Predicate pred);

struct QuadrupleRow {
    std::vector<int> fe_map;       // F_e underlying map on the piece group
    std::vector<ll> fe_coords;     // F_e tensorator class in H^2(A, C^x)
    std::vector<int> phi;          // automorphism of G (image table)
    bool o2 = false;
    bool o3 = false;
    std::string o3_path;           // "defect" (cstar on the v-cochain) or "existence"
    ll fhat_admissible = 0;        // torsor elements admitting a tensorator
    ll row_count = 0;              // fhat_admissible * |H^2(G, C^x)|
};

struct QuadrupleSummary {
    ll z1 = 1, d1 = 1;             // |Z^1(G, Lambda)|, |D^1|
    ll z1_mod_d1 = 1;
    ll h2_g = 1;                   // |H^2(G, C^x)|
    std::vector<QuadrupleRow> rows;
    ll total = 0;                  // sum over admissible rows of z1_mod_d1 * h2_g
    // dual-path oracle results
    ll oracle_fine = -1;           // monoidal-equivalence classes
    ll oracle_quadruple = -1;      // collapsed to quadruple granularity
    ll collapse_order = 1;         // |K|: tensorator twists invisible to quadruples
};

QuadrupleSummary equivalence_count(const EquivalenceProblem& p, bool with_oracle = true, int cap = 64);

// ---------------------------------------------------------------------------
// Quadruple extraction / reconstruction / composition

struct Quadruple {
    std::vector<int> fe_map;
    std::vector<ll> fe_coords;
    std::vector<int> phi;
    std::vector<int> u;            // per G element: target piece element (ambient index)
    std::vector<ll> that_coords;   // residual tensorator class, canonical mod the invisible subgroup
};
bool same_quadruple(const Quadruple& a, const Quadruple& b);

// Shared machinery for one equivalence problem.
class QuadrupleContext {
  public:
    explicit QuadrupleContext(EquivalenceProblem p, int cap = 64);

    const EquivalenceProblem& problem() const { return p_; }
    const GradedModel& target_model() const { return target_model_; }

    Quadruple extract(const FunctorClass& f);
    FunctorClass reconstruct(const Quadruple& q);
    Quadruple compose(const Quadruple& q2, const Quadruple& q1);  // both auto-quadruples

    ll invisible_order() const { return static_cast<ll>(invisible_.size()); }
    bool twist_is_invisible(const std::vector<ll>& h2_coords) const;

  private:
    friend QuadrupleSummary equivalence_count(const EquivalenceProblem&, bool, int);
    EquivalenceProblem p_;
    GradedModel target_model_;
    std::shared_ptr<PairContext> ctx_;         // source -> target
    CohomologyResult h2_piece_;                // H^2 of the piece group
    std::vector<std::vector<ll>> invisible_;   // coord-combinations invisible to quadruples
    GroupPtr piece_group_;
    std::vector<int> piece_embed_source_;      // piece group element -> source kernel element

    std::vector<ll> restriction_coords(const Cochain& tau);
    FunctorClass bucket_base(const std::vector<int>& fe_map, const std::vector<ll>& fe_coords,
                             const std::vector<int>& phi, const std::vector<int>& u);
    void build_invisible();
};

// ---------------------------------------------------------------------------
// Orbits of extensions under twists by trivial-piece auto-equivalences

struct OrbitCertificate {
    int a = 0, b = 0;
    bool equivalent = false;  // witnessed by a found graded equivalence, or a completed empty search
};
struct FtwistOrbits {
    ll orbit_count = 0;
    std::vector<std::vector<int>> orbits;
    std::vector<OrbitCertificate> certificates;
};
FtwistOrbits ftwist_orbits(const std::vector<GradedPointedCategory>& extensions, int cap = 24);

}  // namespace gext
