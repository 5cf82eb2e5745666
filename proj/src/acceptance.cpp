#include "gext/acceptance.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gext/classify.hpp"

namespace gext {

namespace {

struct Ctx {
    AcceptanceRun* run;
    std::ostringstream detail;
    bool ok = true;

    void cover(const std::string& op) { run->operations_covered.insert(op); }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "FAILED: " << what << "; ";
        }
    }
    template <typename T>
    void require_eq(const T& got, const T& want, const std::string& what) {
        if (!(got == want)) {
            ok = false;
            detail << "FAILED: " << what << " (got " << got << ", want " << want << "); ";
        }
    }
    void note(const std::string& what) { detail << what << "; "; }
};

GroupPtr quaternion_group() {
    // elements encoded as (axis 0..3 for 1,i,j,k) * 2 + sign
    auto mulq = [](int a, int b) {
        int sa = a & 1, xa = a >> 1, sb = b & 1, xb = b >> 1;
        static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
        return (axis[xa][xb] << 1) | ((sa + sb + sgn[xa][xb]) & 1);
    };
    std::vector<int> table(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) table[a * 8 + b] = mulq(a, b);
    return make_group_from_table(std::move(table), 8, "Q8");
}

std::vector<Cochain> all_normalized_mu(const GroupPtr& G, int degree, ll M) {
    ll nt = normalized_tuple_count(G, degree);
    ll total = 1;
    for (ll i = 0; i < nt; ++i) total = checked_mul(total, M);
    std::vector<Cochain> out;
    for (ll code = 0; code < total; ++code) {
        std::vector<ll> v(nt);
        ll c = code;
        for (ll i = 0; i < nt; ++i) {
            v[i] = c % M;
            c /= M;
        }
        out.push_back(from_normalized_vector(roots_of_unity(G, M), degree, v));
    }
    return out;
}

// ---- metric corpus (order <= 16 with a boson or fermion) --------------------

std::vector<QuadraticForm> metric_corpus() {
    std::vector<QuadraticForm> out;
    {
        std::vector<ll> q(4);
        for (ll x = 0; x < 4; ++x) q[x] = (x * x) % 8;
        out.push_back(make_form(parse_abelian("C4"), 8, q));  // Z/4 fermion form
    }
    {
        AbelianGroup A = parse_abelian("C2xC2");
        std::vector<ll> q(4);
        for (ll i = 0; i < 4; ++i) {
            auto v = A.element(i);
            q[i] = (v[0] * v[1]) % 2;
        }
        out.push_back(make_form(A, 2, q));  // toric code
    }
    {
        AbelianGroup A = parse_abelian("C2xC2");
        out.push_back(make_form(A, 4, {0, 1, 1, 2}));  // semion x semion
    }
    {
        std::vector<ll> q(8);
        for (ll x = 0; x < 8; ++x) q[x] = (x * x) % 16;
        out.push_back(make_form(parse_abelian("C8"), 16, q));  // boson at 4
    }
    out.push_back(hyperbolic_center(parse_abelian("C2")).form);
    out.push_back(hyperbolic_center(parse_abelian("C4")).form);
    out.push_back(hyperbolic_center(parse_abelian("C2xC2")).form);
    return out;
}

// ---- criteria ---------------------------------------------------------------

void c1_worked_example(Ctx& cx) {
    auto mod = parse_module("neg:C3xC3", make_group("C2"));
    cx.cover("make_group");
    auto res = cohomology(mod, 1);
    cx.cover("cohomology");
    auto d1 = d1_subgroup(mod, sum_support(mod->coeffs));
    cx.cover("d1_subgroup");
    cx.require_eq(res.z_order, static_cast<ll>(9), "|Z1|");
    cx.require_eq(res.b_order, static_cast<ll>(9), "|B1|");
    cx.require_eq(d1.order, static_cast<ll>(3), "|D1|");
    cx.require_eq(res.z_order / d1.order, static_cast<ll>(3), "|Z1/D1|");
    cx.note("Z1=9 B1=9 D1=3 Z1/D1=3");
}

void c2_d6_dual_path(Ctx& cx) {
    auto g = make_graded(make_pointed(make_group("D6")), {0, 1, 2});
    cx.cover("quotient");
    auto p = make_auto_equivalence_problem(g, Predicate::TrivialOnTrivialPiece);
    auto s = equivalence_count(p);
    cx.cover("equivalence_count");
    cx.cover("enumerate_graded_equivalences");
    cx.require_eq(s.oracle_fine, static_cast<ll>(3), "brute-force count");
    cx.require_eq(s.total, static_cast<ll>(3), "torsor count");
    cx.require(s.total == s.oracle_quadruple, "paths agree exactly");
    cx.note("brute=3 torsor=3");
}

void c3_intro_counts(Ctx& cx) {
    auto g = make_graded(make_pointed(make_group("C3xC3")), {0, 1, 2});
    auto p = auto_problem(g);
    cx.require_eq(phi_level_count(p, Predicate::Plain), static_cast<ll>(48), "plain maps");
    cx.require_eq(phi_level_count(p, Predicate::Graded), static_cast<ll>(12), "graded maps");
    cx.require_eq(phi_level_count(p, Predicate::TrivialOnTrivialPiece), static_cast<ll>(6), "ttp maps");
    cx.require_eq(static_cast<ll>(enumerate_graded_equivalences(p, Predicate::Plain).size()), static_cast<ll>(144),
                  "plain classes");
    cx.require_eq(static_cast<ll>(enumerate_graded_equivalences(p, Predicate::Graded).size()), static_cast<ll>(36),
                  "graded classes");
    cx.require_eq(static_cast<ll>(enumerate_graded_equivalences(p, Predicate::TrivialOnTrivialPiece).size()),
                  static_cast<ll>(18), "ttp classes");
    auto en = monoidal_autoequivalences(g.category);
    ll graded = 0;
    for (auto& f : en.classes) graded += classify_automorphism(g, f).graded;
    cx.cover("classify_automorphism");
    cx.require_eq(graded, static_cast<ll>(36), "graded classes via flags");
    cx.note("48/12/6 maps, 144/36/18 classes");
}

void c4_aut_formula(Ctx& cx) {
    std::vector<GroupPtr> groups;
    for (const char* d : {"C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "D6", "C7", "C8", "C2xC4", "C2xC2xC2", "D8"})
        groups.push_back(make_group(d));
    groups.push_back(quaternion_group());
    for (auto& G : groups) {
        auto en = monoidal_autoequivalences(make_pointed(G));
        cx.cover("monoidal_autoequivalences");
        cx.cover("automorphisms");
        ll formula = checked_mul(static_cast<ll>(automorphisms(G).size()), en.h2_order);
        cx.require_eq(static_cast<ll>(en.classes.size()), formula, G->name + " trivial-omega count");
    }
    // cyclic groups, every associator class; dual mu-linear-algebra path
    for (int n = 2; n <= 6; ++n) {
        auto G = make_group("C" + std::to_string(n));
        auto h3 = cstar_cohomology(G, 3);
        ll M = mu_modulus(h3.generators[0]);
        for (ll j = 0; j < n; ++j) {
            PointedCategory C = make_pointed(G, scale(embed_mu(h3.generators[0], M), j));
            auto en = monoidal_autoequivalences(C);
            ll stab_mu = 0;
            for (auto& phi : automorphisms(G)) {
                Cochain defect = coherence_rhs(C, C, phi);
                cx.cover("pullback");
                if (mu_solvable_coboundary(defect, M * G->order)) ++stab_mu;
            }
            ll brute_mu = checked_mul(stab_mu, mu_image_order(G, 2, G->order));
            cx.require_eq(static_cast<ll>(en.classes.size()), brute_mu,
                          "C" + std::to_string(n) + " class " + std::to_string(j));
            cx.require_eq(static_cast<ll>(en.classes.size()), checked_mul(en.stab_order, en.h2_order),
                          "C" + std::to_string(n) + " formula");
        }
    }
    cx.note("14 groups of order <= 8 plus all cyclic classes n <= 6");
}

void c5_cohomology_sanity(Ctx& cx) {
    for (int n = 1; n <= 6; ++n) {
        auto G = make_group("C" + std::to_string(n));
        auto h2 = cstar_cohomology(G, 2);
        cx.cover("cstar_cohomology");
        cx.require_eq(h2.h_order, static_cast<ll>(1), "H2(Z" + std::to_string(n) + ")");
        auto h3 = cstar_cohomology(G, 3);
        cx.require_eq(h3.h_order, static_cast<ll>(n), "H3(Z" + std::to_string(n) + ")");
        // dual path: image of mu_M classes, stabilized
        cx.require_eq(mu_image_order(G, 2, G->order), static_cast<ll>(1), "mu-path H2");
        ll i1 = mu_image_order(G, 3, G->order), i2 = mu_image_order(G, 3, static_cast<ll>(G->order) * G->order);
        cx.require(i1 == n && i2 == n, "mu-path H3 stabilization for n=" + std::to_string(n));
    }
    auto G33 = make_group("C3xC3");
    auto h2 = cstar_cohomology(G33, 2);
    cx.require_eq(h2.h_order, static_cast<ll>(3), "H2(C3xC3)");
    cx.require(h2.invariants == std::vector<ll>{3}, "H2(C3xC3) is Z/3");
    cx.require_eq(mu_image_order(G33, 2, 3), static_cast<ll>(3), "mu-path H2(C3xC3) at mu_3");
    cx.require_eq(mu_image_order(G33, 2, 9), static_cast<ll>(3), "mu-path H2(C3xC3) at mu_9");
    cx.note("integral SNF and mu-stabilization paths agree");
}

void c6_bockstein(Ctx& cx) {
    for (auto [desc, M] : std::vector<std::pair<const char*, ll>>{{"C2", 2}, {"C3", 3}}) {
        auto G = make_group(desc);
        for (int deg : {2, 3}) {
            ll K = M * G->order * G->order;
            std::set<std::vector<ll>> cob;
            for (auto& w : all_normalized_mu(G, deg - 1, K)) cob.insert(to_normalized_vector(differential(w)));
            cx.cover("differential");
            for (auto& f : all_normalized_mu(G, deg, M)) {
                if (!is_cocycle(f)) continue;
                bool bockstein = cstar_is_trivial(f).trivial;
                cx.cover("cstar_is_trivial");
                bool search = cob.count(to_normalized_vector(embed_mu(f, K))) > 0;
                cx.require(bockstein == search, std::string(desc) + " degree " + std::to_string(deg) + " agreement");
            }
        }
    }
    // the bit-exact witness example
    auto G = make_group("C2");
    Cochain f = mu_cochain(G, 2, 2);
    f.at({1, 1}) = {1};
    auto v = cstar_is_trivial(f);
    cx.require(v.trivial, "f(m,m)=1/2 trivial over C^x");
    cx.require(v.witness && mu_modulus(*v.witness) == 4 && v.witness->at({1})[0] == 1, "witness g(m)=1/4 over mu_4");
    cx.require(equal(differential(*v.witness), embed_mu(f, 4)), "witness re-differentiation");
    cx.note("exhaustive searches over mu_{M|G|^2} agree; witness bit-exact");
}

void c7_fermion_theorem(Ctx& cx) {
    int tested = 0;
    for (auto& Q : metric_corpus()) {
        if (!is_nondegenerate(Q)) continue;
        auto P = em_realize(Q);
        cx.cover("em_realize");
        cx.require(hexagons_hold(P), "abelian cocycle identities for |A|=" + std::to_string(Q.group.order()));
        for (auto& f : find_distinguished(Q)) {
            cx.cover("find_distinguished");
            if (f.element == 0 || f.kind == TorsionKind::Neither) continue;
            PointedFunctor F = build_Fz(P, f);  // throws when coherence fails
            cx.cover("build_Fz");
            bool braided = is_braided(P, F);
            cx.cover("is_braided");
            cx.require(braided == (f.kind == TorsionKind::Fermion),
                       "braided iff fermion at |A|=" + std::to_string(Q.group.order()) + " f=" + std::to_string(f.element));
            ++tested;
        }
    }
    cx.cover("hyperbolic_center");
    cx.require(tested >= 6, "corpus covers bosons and fermions");
    cx.note("coherence exact and braided<=>fermion on " + std::to_string(tested) + " (form, f) pairs");
}

void c8_cocycle_shadows(Ctx& cx) {
    std::mt19937 rng(2026);
    struct Inst {
        const char* total;
        std::vector<int> kernel;
    };
    std::vector<Inst> instances = {{"D6", {0, 1, 2}}, {"C4", {0, 2}},           {"C2xC2", {0, 1}},
                                   {"C6", {0, 3}},    {"C8", {0, 2, 4, 6}},     {"D8", {0, 1, 2, 3}},
                                   {"C6", {0, 2, 4}}, {"C2xC4", {0, 1, 2, 3}}};
    int t_checked = 0, v_checked = 0;
    for (auto& ins : instances) {
        auto E = make_group(ins.total);
        for (int rep = 0; rep < 7; ++rep) {
            ll M = std::lcm<ll>(static_cast<ll>(E->order) * E->order, 12);
            // omega: pullback of a grading-group class plus a constrained coboundary
            auto base = make_graded(make_pointed(E), ins.kernel);
            Cochain omega = mu_cochain(E, 3, M);
            auto h3 = cstar_cohomology(base.grading.grading, 3);
            if (!h3.generators.empty() && M % mu_modulus(h3.generators[0]) == 0) {
                ll j = std::uniform_int_distribution<ll>(0, h3.invariants[0] - 1)(rng);
                omega = add(omega, pullback(embed_mu(scale(h3.generators[0], j), M), base.grading.proj));
            }
            Cochain lam = mu_cochain(E, 2, M);
            for (int x = 1; x < E->order; ++x)
                for (int y = 1; y < E->order; ++y) {
                    if (base.grading.proj.image[x] == 0 || base.grading.proj.image[y] == 0) continue;
                    lam.at({x, y}) = {std::uniform_int_distribution<ll>(0, M - 1)(rng)};
                }
            omega = add(omega, differential(lam));
            auto m = make_model(make_graded(make_pointed(E, omega), ins.kernel));
            const auto& L = m.center->coeffs;

            // T: arbitrary decorated data; cocycle + coboundary shift
            DecoratedSystem dat = trivial_system(m);
            auto dp = dual_pairing(m.piece.group);
            for (int g = 1; g < m.cat.grading.grading->order; ++g) {
                dat.u[g] = m.piece.to_element[std::uniform_int_distribution<ll>(0, m.piece.group.order() - 1)(rng)];
                std::vector<ll> y(m.piece.group.rank());
                for (int i = 0; i < m.piece.group.rank(); ++i)
                    y[i] = std::uniform_int_distribution<ll>(0, m.piece.group.factors[i] - 1)(rng);
                for (ll a = 0; a < m.piece.group.order(); ++a)
                    dat.chi[g][a] = mod_floor(dp.pair(m.piece.group.element(a), y) * (m.modulus / m.hyper.form.modulus),
                                              m.modulus);
            }
            Cochain T = t_defect(m, dat);
            cx.require(differential(T).is_zero(), "T 2-cocycle");
            Cochain rho = zero_cochain(m.center, 1);
            for (int g = 1; g < m.cat.grading.grading->order; ++g) {
                std::vector<ll> v(L.rank());
                for (int i = 0; i < L.rank(); ++i) v[i] = std::uniform_int_distribution<ll>(0, L.factors[i] - 1)(rng);
                rho.at({g}) = L.reduce(std::move(v));
            }
            cx.require(equal(t_defect(m, apply_twist(m, dat, rho)), add(T, differential(rho))), "T shifts by d rho");
            ++t_checked;

            // v: honest system of equivalences, random tau-hat and lambda
            auto z1 = cohomology(m.center, 1);
            auto elems = enumerate_structure(m.center, 1, z1.z_structure);
            DecoratedSystem sys =
                apply_twist(m, trivial_system(m), elems[std::uniform_int_distribution<size_t>(0, elems.size() - 1)(rng)]);
            auto rand_ghat = [&](int deg) {
                Cochain t = mu_cochain(m.cat.grading.grading, deg, m.modulus);
                for (ll i = 0; i < t.tuples(); ++i) {
                    auto tup = t.tuple_of(i);
                    if (std::find(tup.begin(), tup.end(), 0) != tup.end()) continue;
                    t.values[i] = {std::uniform_int_distribution<ll>(0, m.modulus - 1)(rng)};
                }
                return t;
            };
            Cochain tau_hat = rand_ghat(2), lam2 = rand_ghat(2);
            Cochain v = v_defect(m, sys, tau_hat);
            cx.require(is_cocycle(v), "v 3-cocycle");
            cx.require(equal(v_defect(m, sys, add(tau_hat, lam2)), add(v, differential(lam2))), "v shifts by d lambda");
            ++v_checked;
        }
    }
    cx.require(t_checked >= 50 && t_checked + v_checked >= 100, "at least 100 randomized instances");
    cx.note(std::to_string(t_checked + v_checked) + " randomized instances, zero violations");
}

void c9_group_structure(Ctx& cx) {
    for (const char* d : {"C4", "C2xC2", "D6", "C3xC3", "C10"}) {
        PointedCategory C = make_pointed(make_group(d));
        PairContext ctx(C, C);
        auto en = monoidal_autoequivalences(C);
        std::set<std::pair<std::vector<int>, std::vector<ll>>> keys;
        for (auto& f : en.classes) keys.emplace(f.phi.image, f.h2_coords);
        auto id = *ctx.make_class(identity_hom(C.group), mu_cochain(C.group, 2, mu_modulus(C.omega)));
        cx.require(keys.count({id.phi.image, id.h2_coords}) == 1, std::string(d) + " identity in the set");
        for (auto& f : en.classes) {
            auto inv = inverse_class(ctx, ctx, f);
            cx.cover("compose");
            cx.require(keys.count({inv.phi.image, inv.h2_coords}) == 1, std::string(d) + " inverses in the set");
            cx.require(same_class(compose_classes(ctx, ctx, f, id), f), std::string(d) + " identity neutral");
        }
        size_t step = en.classes.size() > 24 ? 5 : 1;
        for (size_t i = 0; i < en.classes.size(); i += step)
            for (size_t j = 0; j < en.classes.size(); j += step) {
                auto c = compose_classes(ctx, ctx, en.classes[i], en.classes[j]);
                cx.require(keys.count({c.phi.image, c.h2_coords}) == 1, std::string(d) + " closed under composition");
            }
    }
    // compose_quadruples commutes with extraction
    auto g = make_graded(make_pointed(make_group("D6")), {0, 1, 2});
    auto p = make_auto_equivalence_problem(g, Predicate::Graded);
    QuadrupleContext qc(p);
    GradedProblem gp{p.source, p.target, p.piece_iso};
    auto fine = enumerate_graded_equivalences(gp, Predicate::Graded);
    PairContext pctx(p.source.category, p.target.category);
    for (size_t i = 0; i < fine.size(); ++i)
        for (size_t j = 0; j < fine.size(); ++j) {
            Quadruple a = qc.extract(fine[i]), b = qc.extract(fine[j]);
            Quadruple c = qc.compose(a, b);
            cx.cover("compose_quadruples");
            FunctorClass fc = compose_classes(pctx, pctx, fine[i], fine[j]);
            cx.require(same_quadruple(c, qc.extract(fc)), "extraction commutes with composition");
            FunctorClass back = qc.reconstruct(c);
            cx.require(same_quadruple(qc.extract(back), c), "round trip on classes");
        }
    cx.note("closure/identity/inverses on five categories; quadruple functoriality on D6");
}

void c10_extension_counting(Ctx& cx) {
    AbelianGroup A = parse_abelian("C3");
    auto G = make_group("C2");
    Matrix neg(1, 1);
    neg.at(0, 0) = 2;
    auto p = make_extension_problem(A, G, {Matrix::identity(1), neg});
    auto c = extension_count(p);
    cx.cover("extension_count");
    cx.require_eq(c.h2_lambda, static_cast<ll>(1), "|H2(C2, Lambda)|");
    cx.require_eq(c.h3_cstar, static_cast<ll>(2), "|H3(C2, Cx)|");
    cx.require(c.o3_vanishes && c.o4_vanishes, "obstructions vanish (witness extension)");
    cx.require_eq(c.count, static_cast<ll>(2), "torsor count");
    auto oracle = enumerate_extensions(p);
    cx.require_eq(oracle.count, static_cast<ll>(2), "brute-force count");
    auto orbits = ftwist_orbits(oracle.extensions);
    cx.cover("ftwist_orbits");
    cx.require_eq(orbits.orbit_count, static_cast<ll>(2), "orbits under trivial-piece twists");
    cx.require(!orbits.certificates.empty(), "orbit certificates recorded");
    cx.note("2 extensions by both paths; the half-D10 12-vs-4 story needs non-pointed Brauer-Picard data and is out of scope here");
}

}  // namespace

AcceptanceRun run_acceptance(const std::function<void(const std::string&)>& echo) {
    AcceptanceRun run;
    struct Entry {
        int n;
        const char* title;
        void (*fn)(Ctx&);
    };
    const Entry entries[] = {
        {1, "inversion module on (Z/3)^2: Z1/B1/D1 orders, exact", c1_worked_example},
        {2, "D6 ttp count, dual path (brute force and torsor)", c2_d6_dual_path},
        {3, "lower-triangular counts on Vec(C3xC3)/C3", c3_intro_counts},
        {4, "Aut(Vec^w(G)) = Stab x H2 for |G| <= 8 and cyclic classes", c4_aut_formula},
        {5, "H2/H3 of cyclic groups and C3xC3, two independent paths", c5_cohomology_sanity},
        {6, "Bockstein exactness vs exhaustive coboundary search", c6_bockstein},
        {7, "fermion theorem: coherence exact, braided iff fermion", c7_fermion_theorem},
        {8, "cocycle identities of the defect cochains (randomized)", c8_cocycle_shadows},
        {9, "group structure of equivalence classes and quadruples", c9_group_structure},
        {10, "extension counting for Vec(Z/3) by C2 with inversion", c10_extension_counting},
    };
    run.all_pass = true;
    for (const auto& e : entries) {
        Ctx cx{&run, {}, true};
        std::string detail;
        try {
            e.fn(cx);
            detail = cx.detail.str();
        } catch (const std::exception& ex) {
            cx.ok = false;
            detail = cx.detail.str() + "exception: " + ex.what();
        }
        CriterionResult r{e.n, e.title, cx.ok, detail};
        run.all_pass &= cx.ok;
        if (echo)
            echo("criterion " + std::to_string(e.n) + " " + (cx.ok ? "PASS" : "FAIL") + " - " + e.title +
                 (detail.empty() ? "" : " [" + detail + "]"));
        run.criteria.push_back(std::move(r));
    }
    const char* expected_ops[] = {"make_group",       "automorphisms",  "quotient",
                                  "differential",     "cohomology",     "d1_subgroup",
                                  "cstar_is_trivial", "cstar_cohomology", "pullback",
                                  "monoidal_autoequivalences", "classify_automorphism", "compose",
                                  "enumerate_graded_equivalences", "find_distinguished", "em_realize",
                                  "build_Fz",         "is_braided",     "hyperbolic_center",
                                  "extension_count",  "equivalence_count", "compose_quadruples",
                                  "ftwist_orbits"};
    run.coverage_ok = true;
    for (const char* op : expected_ops)
        if (!run.operations_covered.count(op)) {
            run.coverage_ok = false;
            run.coverage_missing.push_back(op);
        }
    run.all_pass &= run.coverage_ok;
    if (echo) echo(std::string("operation coverage ") + (run.coverage_ok ? "PASS" : "FAIL"));
    return run;
}

void acceptance_report(const AcceptanceRun& run, Report& rep) {
    rep.section("acceptance");
    for (const auto& c : run.criteria) {
        rep.add("criterion-" + std::to_string(c.number), std::string(c.pass ? "PASS" : "FAIL") + " " + c.title);
        if (!c.detail.empty()) rep.add("criterion-" + std::to_string(c.number) + "-detail", c.detail);
    }
    rep.add("coverage", run.coverage_ok ? "PASS" : "FAIL");
    for (const auto& m : run.coverage_missing) rep.add("coverage-missing", m);
    rep.add("all", run.all_pass ? "PASS" : "FAIL");
}

}  // namespace gext
