#include "gext/pointed.hpp"

#include <algorithm>
#include <numeric>

namespace gext {

PointedCategory make_pointed(const GroupPtr& E, ll modulus) {
    if (modulus == 0) modulus = static_cast<ll>(E->order) * E->order;
    PointedCategory C;
    C.group = E;
    C.omega = mu_cochain(E, 3, modulus);
    return C;
}

PointedCategory make_pointed(const GroupPtr& E, Cochain omega) {
    if (omega.degree != 3) throw std::invalid_argument("pointed category: omega must have degree 3");
    mu_modulus(omega);
    if (omega.module->group->table_hash() != E->table_hash())
        throw std::invalid_argument("pointed category: omega lives on a different group");
    if (!omega.is_normalized()) throw std::invalid_argument("pointed category: omega must be normalized");
    if (!is_cocycle(omega)) throw std::invalid_argument("pointed category: omega is not a cocycle");
    PointedCategory C;
    C.group = E;
    C.omega = std::move(omega);
    return C;
}

Cochain coherence_rhs(const PointedCategory& C, const PointedCategory& D, const GroupHom& phi) {
    ll W = std::lcm(mu_modulus(C.omega), mu_modulus(D.omega));
    return add(embed_mu(C.omega, W), negate(pullback(embed_mu(D.omega, W), phi)));
}

bool coherence_holds(const PointedCategory& C, const PointedCategory& D, const PointedFunctor& F) {
    Cochain rhs = coherence_rhs(C, D, F.phi);
    ll W = std::lcm(mu_modulus(F.tau), mu_modulus(rhs));
    return equal(differential(embed_mu(F.tau, W)), embed_mu(rhs, W));
}

PairContext::PairContext(PointedCategory C, PointedCategory D) : C_(std::move(C)), D_(std::move(D)) {
    ll W = std::lcm(mu_modulus(C_.omega), mu_modulus(D_.omega));
    modulus_ = W * C_.group->order;
    h2_ = cstar_cohomology(C_.group, 2);
    for (auto& g : h2_.generators) {
        ll m = std::lcm(mu_modulus(g), modulus_);
        modulus_ = m;
    }
    for (auto& g : h2_.generators) g = embed_mu(g, modulus_);
}

std::optional<Cochain> PairContext::base_witness(const GroupHom& phi) {
    auto it = witness_cache_.find(phi.image);
    if (it != witness_cache_.end()) return it->second;
    std::optional<Cochain> result;
    Cochain rhs = coherence_rhs(C_, D_, phi);
    auto v = cstar_is_trivial(rhs);
    if (v.trivial) {
        ll m = std::lcm(mu_modulus(*v.witness), modulus_);
        if (m != modulus_) {
            // widen the working modulus once and re-embed the generators
            modulus_ = m;
            for (auto& g : h2_.generators) g = embed_mu(g, modulus_);
            witness_cache_.clear();
        }
        result = embed_mu(*v.witness, modulus_);
    }
    witness_cache_.emplace(phi.image, result);
    return result;
}

std::optional<FunctorClass> PairContext::make_class(const GroupHom& phi, const Cochain& tau) {
    auto base = base_witness(phi);
    if (!base) return std::nullopt;
    ll W = std::lcm(mu_modulus(tau), modulus_);
    Cochain diff = add(embed_mu(tau, W), negate(embed_mu(*base, W)));
    if (!is_cocycle(diff)) throw std::invalid_argument("make_class: tau does not satisfy the coherence for phi");
    CohomologyResult h2w = h2_;
    for (auto& g : h2w.generators) g = embed_mu(g, W);
    std::vector<ll> coords = cstar_class_coords(diff, h2w);
    return class_from_coords(phi, coords);
}

FunctorClass PairContext::class_from_coords(const GroupHom& phi, const std::vector<ll>& coords) {
    auto base = base_witness(phi);
    if (!base) throw std::invalid_argument("class_from_coords: phi admits no tensorator");
    Cochain tau = embed_mu(*base, modulus_);
    for (size_t i = 0; i < coords.size(); ++i)
        if (coords[i]) tau = add(tau, scale(h2_.generators[i], coords[i]));
    FunctorClass f;
    f.phi = phi;
    f.tau = std::move(tau);
    f.h2_coords = coords;
    return f;
}

bool same_class(const FunctorClass& a, const FunctorClass& b) {
    return a.phi.image == b.phi.image && a.h2_coords == b.h2_coords;
}

FunctorClass compose_classes(PairContext& ctx_cd, PairContext& ctx_ce, const FunctorClass& f2, const FunctorClass& f1) {
    (void)ctx_cd;
    GroupHom phi = compose(f2.phi, f1.phi);
    ll W = std::lcm(mu_modulus(f1.tau), mu_modulus(f2.tau));
    Cochain tau = add(pullback(embed_mu(f2.tau, W), f1.phi), embed_mu(f1.tau, W));
    auto cls = ctx_ce.make_class(phi, tau);
    if (!cls) throw std::logic_error("compose_classes: composite lost coherence");
    return *cls;
}

FunctorClass inverse_class(PairContext& ctx_cd, PairContext& ctx_dc, const FunctorClass& f) {
    (void)ctx_cd;
    GroupHom inv = inverse_hom(f.phi);
    Cochain tau = negate(pullback(f.tau, inv));
    auto cls = ctx_dc.make_class(inv, tau);
    if (!cls) throw std::logic_error("inverse_class: inverse lost coherence");
    return *cls;
}

AutEnumeration monoidal_autoequivalences(const PointedCategory& C, int cap) {
    AutEnumeration out;
    PairContext ctx(C, C);
    out.h2_order = ctx.h2().h_order;
    auto auts = automorphisms(C.group, cap);
    for (const auto& phi : auts) {
        if (!ctx.base_witness(phi)) continue;
        ++out.phi_level;
        std::vector<ll> coords(ctx.h2().invariants.size(), 0);
        while (true) {
            out.classes.push_back(ctx.class_from_coords(phi, coords));
            size_t i = 0;
            for (; i < coords.size(); ++i) {
                if (++coords[i] < ctx.h2().invariants[i]) break;
                coords[i] = 0;
            }
            if (i == coords.size()) break;
        }
    }
    out.stab_order = out.phi_level;
    return out;
}

GradedPointedCategory make_graded(PointedCategory C, const std::vector<int>& kernel) {
    GradedPointedCategory g;
    g.grading = quotient(C.group, kernel);
    g.category = std::move(C);
    return g;
}

Predicate parse_predicate(const std::string& name) {
    if (name == "plain") return Predicate::Plain;
    if (name == "graded") return Predicate::Graded;
    if (name == "ttp") return Predicate::TrivialOnTrivialPiece;
    if (name == "ext-eq") return Predicate::ExtensionEquivalence;
    throw std::invalid_argument("unknown predicate: " + name + " (expected plain|graded|ttp|ext-eq)");
}

GradedProblem auto_problem(const GradedPointedCategory& C) {
    GradedProblem p;
    p.source = C;
    p.target = C;
    p.piece_iso = C.grading.kernel;
    return p;
}

std::optional<GroupHom> induced_grading_map(const GradedPointedCategory& C, const GradedPointedCategory& D,
                                            const GroupHom& phi) {
    const auto& pC = C.grading.proj;
    const auto& pD = D.grading.proj;
    if (C.grading.grading->order != D.grading.grading->order) return std::nullopt;
    std::vector<int> img(C.grading.grading->order, -1);
    for (int x = 0; x < C.grading.total->order; ++x) {
        int g = pC.image[x];
        int h = pD.image[phi.image[x]];
        if (img[g] < 0)
            img[g] = h;
        else if (img[g] != h)
            return std::nullopt;
    }
    GroupHom sigma{C.grading.grading, D.grading.grading, img};
    std::string why;
    if (!validate_hom(sigma, &why) || !sigma.is_bijective()) return std::nullopt;
    return sigma;
}

namespace {

bool restriction_trivial(const GradedPointedCategory& C, const Cochain& tau) {
    auto sv = subgroup_as_group(C.category.group, C.grading.kernel);
    Cochain res = restrict_to_subgroup(tau, sv.subgroup, sv.embed);
    if (!is_cocycle(res)) return false;  // needs phi to fix the piece pointwise
    return cstar_is_trivial(res).trivial;
}

// the part of the predicate visible at the level of the underlying map
bool phi_predicate(const GradedProblem& p, Predicate pred, const GroupHom& phi) {
    if (pred == Predicate::Plain) return true;
    auto sigma = induced_grading_map(p.source, p.target, phi);
    if (!sigma) return false;
    if (pred == Predicate::Graded) return true;
    for (size_t i = 0; i < p.source.grading.kernel.size(); ++i)
        if (phi.image[p.source.grading.kernel[i]] != p.piece_iso[i]) return false;
    if (pred == Predicate::TrivialOnTrivialPiece) return true;
    return sigma->image == identity_hom(p.source.grading.grading).image;
}

}  // namespace

AutoFlags classify_automorphism(const GradedPointedCategory& C, const FunctorClass& F) {
    AutoFlags fl;
    auto sigma = induced_grading_map(C, C, F.phi);
    fl.graded = sigma.has_value();
    if (!fl.graded) return fl;
    bool fixes_piece = true;
    for (int b : C.grading.kernel) fixes_piece &= F.phi.image[b] == b;
    fl.trivial_on_trivial_piece = fixes_piece && restriction_trivial(C, F.tau);
    fl.extension_equivalence =
        fl.trivial_on_trivial_piece && sigma->image == identity_hom(C.grading.grading).image;
    return fl;
}

std::vector<FunctorClass> enumerate_graded_equivalences(const GradedProblem& p, Predicate pred, int cap) {
    std::vector<FunctorClass> out;
    if (p.source.category.group->order != p.target.category.group->order) return out;
    PairContext ctx(p.source.category, p.target.category);
    auto isos = isomorphisms(p.source.category.group, p.target.category.group, cap);
    for (const auto& phi : isos) {
        if (!phi_predicate(p, pred, phi)) continue;
        if (!ctx.base_witness(phi)) continue;
        std::vector<ll> coords(ctx.h2().invariants.size(), 0);
        while (true) {
            FunctorClass f = ctx.class_from_coords(phi, coords);
            bool keep = true;
            if (pred == Predicate::TrivialOnTrivialPiece || pred == Predicate::ExtensionEquivalence)
                keep = restriction_trivial(p.source, f.tau);
            if (keep) out.push_back(std::move(f));
            size_t i = 0;
            for (; i < coords.size(); ++i) {
                if (++coords[i] < ctx.h2().invariants[i]) break;
                coords[i] = 0;
            }
            if (i == coords.size()) break;
        }
    }
    return out;
}

ll phi_level_count(const GradedProblem& p, Predicate pred, int cap) {
    if (p.source.category.group->order != p.target.category.group->order) return 0;
    PairContext ctx(p.source.category, p.target.category);
    ll n = 0;
    for (const auto& phi : isomorphisms(p.source.category.group, p.target.category.group, cap))
        if (phi_predicate(p, pred, phi) && ctx.base_witness(phi)) ++n;
    return n;
}

bool mu_solvable_coboundary(const Cochain& f, ll K) {
    ll M = mu_modulus(f);
    if (K % M != 0) throw std::invalid_argument("witness modulus must be a multiple of the cochain modulus");
    const GroupPtr& G = f.module->group;
    auto mod = roots_of_unity(G, K);
    Matrix D = bar_matrix(mod, f.degree - 1);
    Matrix A(D.rows, D.cols + D.rows);
    for (int i = 0; i < D.rows; ++i) {
        for (int j = 0; j < D.cols; ++j) A.at(i, j) = D.at(i, j);
        A.at(i, D.cols + i) = K;
    }
    std::vector<ll> b = to_normalized_vector(embed_mu(f, K)), x;
    return solve_integer(A, b, x);
}

}  // namespace gext
