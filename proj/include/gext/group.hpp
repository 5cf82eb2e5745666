#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gext/matrix.hpp"

namespace gext {

// Finite group as a validated multiplication table. Elements are dense
// indices 0..order-1 with the identity at index 0; the constructor checks
// all group axioms and reports the first violating triple.
struct FiniteGroup {
    int order = 0;
    std::vector<int> mul;  // mul[a*order+b]
    std::vector<int> inv;
    std::string name;

    int op(int a, int b) const { return mul[static_cast<size_t>(a) * order + b]; }
    int element_order(int a) const;
    bool is_abelian() const;
    uint64_t table_hash() const;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_group_from_table(std::vector<int> table, int order, const std::string& name);

// Descriptor mini-language: "Cn", "CnxCm" (any number of cyclic factors),
// "Dn" (dihedral of order n, n even), "table:<path>".
GroupPtr make_group(const std::string& spec);

std::vector<int> cyclic_factors_of_descriptor(const std::string& spec);  // for "Cn[xCm...]" only

struct GroupHom {
    GroupPtr source;
    GroupPtr target;
    std::vector<int> image;  // element -> element

    int operator()(int x) const { return image[x]; }
    bool is_bijective() const;
};

GroupHom identity_hom(const GroupPtr& G);
GroupHom compose(const GroupHom& g, const GroupHom& f);  // g after f
GroupHom inverse_hom(const GroupHom& f);                 // f must be bijective
bool validate_hom(const GroupHom& h, std::string* why = nullptr);

// Greedily chosen generating set (construction order).
std::vector<int> generating_set(const FiniteGroup& G);

// All automorphisms by generator-image backtracking. Deterministic order.
std::vector<GroupHom> automorphisms(const GroupPtr& G, int cap = 64);

// All isomorphisms source -> target (empty if none).
std::vector<GroupHom> isomorphisms(const GroupPtr& source, const GroupPtr& target, int cap = 64);

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens);

// A subgroup (given by a sorted element list) as a FiniteGroup of its own,
// together with the embedding back into the ambient group.
struct SubgroupView {
    GroupPtr subgroup;
    std::vector<int> embed;  // subgroup element -> ambient element
};
SubgroupView subgroup_as_group(const GroupPtr& G, const std::vector<int>& elements);

struct GradingSurjection {
    GroupPtr total;    // E
    GroupPtr grading;  // G
    GroupHom proj;     // E -> G, surjective
    std::vector<int> kernel;   // sorted element list B
    std::vector<int> section;  // one coset representative per G-element, section[0] = 0
};

// Quotient by a normal subgroup B (given as an element list). The grading
// group's elements are cosets ordered by minimal representative.
GradingSurjection quotient(const GroupPtr& E, std::vector<int> B);

}  // namespace gext
