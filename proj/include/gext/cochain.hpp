#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gext/abelian.hpp"
#include "gext/group.hpp"

namespace gext {

// Finite abelian coefficient module with a left G-action by integer matrices
// on exponent vectors. action(gh) = action(g)action(h) as maps, checked.
struct GModule {
    AbelianGroup coeffs;
    GroupPtr group;
    std::vector<Matrix> action;  // one matrix per group element
    bool trivial = true;

    std::vector<ll> act(int g, const std::vector<ll>& x) const;
    uint64_t hash() const;
};

using GModulePtr = std::shared_ptr<const GModule>;

GModulePtr make_gmodule(AbelianGroup coeffs, GroupPtr G, std::vector<Matrix> action);
GModulePtr trivial_module(AbelianGroup coeffs, GroupPtr G);
// mu_M as additive exponents Z/M with trivial action.
GModulePtr roots_of_unity(GroupPtr G, ll M);
// Z coefficients with trivial action (internal; for the Bockstein).
GModulePtr integral_module(GroupPtr G);
// Module descriptor: "triv:<abelian>" or "neg:<abelian>" or "file:<path>".
GModulePtr parse_module(const std::string& descriptor, const GroupPtr& G);

// Module file: header "coeffs d1,...,dk group <descriptor>", then one
// rank x rank integer matrix per group element (row-major, whitespace).
GModulePtr read_module_file(const std::string& path, const GroupPtr& G_hint = nullptr);
std::string write_module(const GModule& mod);

// Dense map G^n -> coefficients. values[t] is the exponent vector at the
// tuple with mixed-radix index t (first argument most significant).
struct Cochain {
    GModulePtr module;
    int degree = 0;
    std::vector<std::vector<ll>> values;

    ll tuples() const;
    std::vector<int> tuple_of(ll index) const;
    ll index_of(const std::vector<int>& tuple) const;
    const std::vector<ll>& at(const std::vector<int>& tuple) const;
    std::vector<ll>& at(const std::vector<int>& tuple);
    bool is_zero() const;
    bool is_normalized() const;  // zero whenever any argument is the identity
};

Cochain zero_cochain(const GModulePtr& mod, int degree);
Cochain add(const Cochain& f, const Cochain& g);
Cochain negate(const Cochain& f);
Cochain scale(const Cochain& f, ll c);
bool equal(const Cochain& f, const Cochain& g);

// Left-action bar differential:
// (df)(g1..g_{n+1}) = g1 f(g2..g_{n+1}) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
//                     + (-1)^{n+1} f(g1..g_n).
Cochain differential(const Cochain& f);
bool is_cocycle(const Cochain& f);

// (phi* f)(g1..gn) = f(phi g1, .., phi gn); requires a phi-compatible action.
Cochain pullback(const Cochain& f, const GroupHom& phi);

// Restriction to a subgroup, reindexed along the subgroup's own element order.
Cochain restrict_to_subgroup(const Cochain& f, const GroupPtr& H, const std::vector<int>& embed);

// mu-valued cochains: coefficient group must be a single Z/M factor.
ll mu_modulus(const Cochain& f);
Cochain embed_mu(const Cochain& f, ll target_modulus);  // M | target
Cochain mu_cochain(const GroupPtr& G, int degree, ll M);

// Text format: header "degree n modulus-vector d1,..,dk group <descriptor>",
// then one line "g1 .. gn | x1 .. xk" per nonzero tuple.
std::string write_cochain(const Cochain& f);
Cochain read_cochain(const std::string& text, const GroupPtr& G_hint = nullptr);
Cochain read_cochain_file(const std::string& path, const GroupPtr& G_hint = nullptr);

}  // namespace gext
