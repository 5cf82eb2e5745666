#pragma once

#include "gext/pointed.hpp"

namespace gext {

// Quadratic form q: A -> Z/M on a finite abelian group, stored as a table
// over element indices. b(x,y) := q(x+y) - q(x) - q(y) must be bilinear.
struct QuadraticForm {
    AbelianGroup group;
    ll modulus = 1;
    std::vector<ll> q;

    ll at(ll index) const { return q[index]; }
    ll at(const std::vector<ll>& x) const { return q[group.index_of(x)]; }
};

QuadraticForm make_form(AbelianGroup A, ll M, std::vector<ll> values);
ll bilinear(const QuadraticForm& Q, ll x, ll y);  // element indices
bool is_nondegenerate(const QuadraticForm& Q);

enum class TorsionKind { Boson, Fermion, Neither };

struct Simple2Torsion {
    ll element = 0;  // index in A, with 2f = 0
    TorsionKind kind = TorsionKind::Neither;
    std::vector<int> grading;  // monodromy degree of every element, 0 or 1
    bool grading_faithful = false;
};

// All order <= 2 elements classified (the identity is a trivial boson).
std::vector<Simple2Torsion> find_distinguished(const QuadraticForm& Q);

// Abelian 3-cocycle (omega, chi) realizing q: chi(x,x) = q(x),
// chi(x,y) + chi(y,x) = b(x,y), d omega = 0, and both hexagon identities.
struct AbelianAssociatorPair {
    QuadraticForm form;
    GroupPtr group_as_finite;          // abelian_as_group(form.group)
    Cochain omega;                     // 3-cochain over mu_M
    std::vector<ll> chi;               // chi[x * |A| + y]
    ll chi_at(ll x, ll y) const { return chi[x * group_as_finite->order + y]; }
};

// Orthogonal-splitting realization; throws when no splitting is found.
AbelianAssociatorPair em_realize(const QuadraticForm& Q);

bool hexagons_hold(const AbelianAssociatorPair& P);

// The graded auto-equivalence attached to a boson/fermion f:
// phi(x) = x + deg(x) f, tensorator from the braiding along f.
PointedFunctor build_Fz(const AbelianAssociatorPair& P, const Simple2Torsion& f);

// Braided-functor condition: tau(n,m) + chi(phi m, phi n) = chi(m,n) + tau(m,n).
bool is_braided(const AbelianAssociatorPair& P, const PointedFunctor& F);

// The hyperbolic form q(a, chi) = chi(a) on A x A^ plus its support
// projection onto A; automorphisms alpha of A act as (alpha, (alpha*)^{-1}).
struct HyperbolicCenter {
    QuadraticForm form;      // on A x A^
    AbelianGroup base;       // A
    SupportHom support;      // projection to the A coordinates
};
HyperbolicCenter hyperbolic_center(const AbelianGroup& A);
Matrix center_action_matrix(const AbelianGroup& A, const Matrix& alpha);

// Quadratic form file: header "group <abelian descriptor> modulus M",
// then one line "x1,...,xk -> v" per element (missing lines default to 0).
std::string write_form(const QuadraticForm& Q);
QuadraticForm read_form(const std::string& text);
QuadraticForm read_form_file(const std::string& path);

}  // namespace gext
