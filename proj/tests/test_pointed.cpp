#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>
#include <set>

#include "doctest.h"
#include "gext/pointed.hpp"

using namespace gext;

namespace {

// scalar oracle: the monoidal functor axiom as literal root-of-unity products
bool complex_coherence(const PointedCategory& C, const PointedCategory& D, const GroupHom& phi, const Cochain& tau) {
    auto unit = [](ll num, ll den) {
        double ang = 2.0 * 3.14159265358979323846 * double(num) / double(den);
        return std::complex<double>(std::cos(ang), std::sin(ang));
    };
    const auto& E = *C.group;
    ll MC = mu_modulus(C.omega), MD = mu_modulus(D.omega), MT = mu_modulus(tau);
    for (int g = 0; g < E.order; ++g)
        for (int h = 0; h < E.order; ++h)
            for (int k = 0; k < E.order; ++k) {
                std::complex<double> lhs = unit(C.omega.at({g, h, k})[0], MC) * unit(tau.at({E.op(g, h), k})[0], MT) *
                                           unit(tau.at({g, h})[0], MT);
                std::complex<double> rhs = unit(tau.at({g, E.op(h, k)})[0], MT) * unit(tau.at({h, k})[0], MT) *
                                           unit(D.omega.at({phi.image[g], phi.image[h], phi.image[k]})[0], MD);
                if (std::abs(lhs - rhs) > 1e-9) return false;
            }
    return true;
}

}  // namespace

TEST_CASE("convention conformance: |E| = 2, both associator classes") {
    auto E = make_group("C2");
    for (int cls = 0; cls < 2; ++cls) {
        Cochain omega = mu_cochain(E, 3, 2);
        omega.at({1, 1, 1}) = {cls};
        PointedCategory C = make_pointed(E, omega);
        for (ll t = 0; t < 4; ++t) {
            Cochain tau = mu_cochain(E, 2, 4);
            tau.at({1, 1}) = {t};
            PointedFunctor F{identity_hom(E), tau};
            bool lib = coherence_holds(C, C, F);
            bool oracle = complex_coherence(C, C, F.phi, F.tau);
            CHECK(lib == oracle);
        }
    }
}

TEST_CASE("Aut counts: Vec(C1), Vec(D6), Vec(C3xC3)") {
    CHECK(monoidal_autoequivalences(make_pointed(make_group("C1"))).classes.size() == 1);
    auto d6 = monoidal_autoequivalences(make_pointed(make_group("D6")));
    CHECK(d6.classes.size() == 6);
    CHECK(d6.phi_level == 6);
    CHECK(d6.h2_order == 1);
    auto c33 = monoidal_autoequivalences(make_pointed(make_group("C3xC3")));
    CHECK(c33.phi_level == 48);
    CHECK(c33.h2_order == 3);
    CHECK(c33.classes.size() == 144);
}

TEST_CASE("every emitted class satisfies the coherence exactly") {
    for (const char* d : {"C4", "D6", "C2xC2"}) {
        PointedCategory C = make_pointed(make_group(d));
        for (const auto& f : monoidal_autoequivalences(C).classes)
            CHECK(coherence_holds(C, C, PointedFunctor{f.phi, f.tau}));
    }
}

TEST_CASE("autoequivalence classes form a group under composition (|E| <= 12)") {
    for (const char* d : {"C4", "C2xC2", "D6", "C3xC3"}) {
        PointedCategory C = make_pointed(make_group(d));
        PairContext ctx(C, C);
        auto en = monoidal_autoequivalences(C);
        auto key = [](const FunctorClass& f) { return std::make_pair(f.phi.image, f.h2_coords); };
        std::set<std::pair<std::vector<int>, std::vector<ll>>> keys;
        for (auto& f : en.classes) keys.insert(key(f));
        CHECK(keys.size() == en.classes.size());
        FunctorClass id = *ctx.make_class(identity_hom(C.group), mu_cochain(C.group, 2, mu_modulus(C.omega)));
        CHECK(keys.count(key(id)));
        for (auto& f : en.classes) {
            CHECK(keys.count(key(inverse_class(ctx, ctx, f))));
            CHECK(same_class(compose_classes(ctx, ctx, f, id), f));
            CHECK(same_class(compose_classes(ctx, ctx, id, f), f));
        }
        size_t step = en.classes.size() > 24 ? 7 : 1;
        for (size_t i = 0; i < en.classes.size(); i += step)
            for (size_t j = 0; j < en.classes.size(); j += step)
                CHECK(keys.count(key(compose_classes(ctx, ctx, en.classes[i], en.classes[j]))));
        // associativity at the class level, sparsely sampled
        size_t astep = 3 * step + 1;
        for (size_t i = 0; i < en.classes.size(); i += astep)
            for (size_t j = 0; j < en.classes.size(); j += astep + 1)
                for (size_t k = 0; k < en.classes.size(); k += astep + 2) {
                    auto lhs = compose_classes(ctx, ctx, compose_classes(ctx, ctx, en.classes[i], en.classes[j]),
                                               en.classes[k]);
                    auto rhs = compose_classes(ctx, ctx, en.classes[i],
                                               compose_classes(ctx, ctx, en.classes[j], en.classes[k]));
                    CHECK(same_class(lhs, rhs));
                }
    }
}

TEST_CASE("lower-triangular counts: phi-level 48/12/6 and class-level x3 on C3xC3/C3") {
    auto E = make_group("C3xC3");
    auto g = make_graded(make_pointed(E), {0, 1, 2});
    auto p = auto_problem(g);
    CHECK(phi_level_count(p, Predicate::Plain) == 48);
    CHECK(phi_level_count(p, Predicate::Graded) == 12);
    CHECK(phi_level_count(p, Predicate::TrivialOnTrivialPiece) == 6);
    CHECK(enumerate_graded_equivalences(p, Predicate::Plain).size() == 144);
    CHECK(enumerate_graded_equivalences(p, Predicate::Graded).size() == 36);
    CHECK(enumerate_graded_equivalences(p, Predicate::TrivialOnTrivialPiece).size() == 18);
}

TEST_CASE("flags are monotone; identity is an extension equivalence") {
    auto E = make_group("C3xC3");
    auto g = make_graded(make_pointed(E), {0, 1, 2});
    auto en = monoidal_autoequivalences(g.category);
    int graded = 0, ttp = 0, ext = 0;
    for (auto& f : en.classes) {
        auto fl = classify_automorphism(g, f);
        CHECK(fl.plain);
        if (fl.extension_equivalence) CHECK(fl.trivial_on_trivial_piece);
        if (fl.trivial_on_trivial_piece) CHECK(fl.graded);
        graded += fl.graded;
        ttp += fl.trivial_on_trivial_piece;
        ext += fl.extension_equivalence;
    }
    CHECK(graded == 36);
    CHECK(ttp == 18);
    CHECK(ext == 9);
    PairContext ctx(g.category, g.category);
    auto id = *ctx.make_class(identity_hom(E), mu_cochain(E, 2, mu_modulus(g.category.omega)));
    auto fl = classify_automorphism(g, id);
    CHECK(fl.extension_equivalence);
}

TEST_CASE("D6 graded by C2: exactly 3 ttp classes; they close into Z/3") {
    auto E = make_group("D6");
    auto g = make_graded(make_pointed(E), {0, 1, 2});
    auto p = auto_problem(g);
    auto ttp = enumerate_graded_equivalences(p, Predicate::TrivialOnTrivialPiece);
    REQUIRE(ttp.size() == 3);
    PairContext ctx(g.category, g.category);
    for (auto& a : ttp)
        for (auto& b : ttp) {
            auto c = compose_classes(ctx, ctx, a, b);
            bool found = false;
            for (auto& x : ttp) found |= same_class(x, c);
            CHECK(found);
        }
    for (auto& a : ttp) {
        auto a3 = compose_classes(ctx, ctx, a, compose_classes(ctx, ctx, a, a));
        CHECK(a3.phi.image == identity_hom(E).image);
        CHECK(a3.h2_coords == std::vector<ll>{});
    }
}

TEST_CASE("graded equivalences between non-isomorphic groups: empty") {
    auto a = make_graded(make_pointed(make_group("C4")), {0, 2});
    auto b = make_graded(make_pointed(make_group("C2xC2")), {0, 1});
    GradedProblem p{a, b, {0, 2}};
    CHECK(enumerate_graded_equivalences(p, Predicate::Graded).empty());
}

TEST_CASE("mu-solvability agrees with the Bockstein verdict") {
    auto E = make_group("C3");
    auto h3 = cstar_cohomology(E, 3);
    REQUIRE(h3.h_order == 3);
    Cochain gen = h3.generators[0];
    ll M = mu_modulus(gen);
    CHECK_FALSE(mu_solvable_coboundary(gen, M * E->order));
    CHECK(mu_solvable_coboundary(scale(gen, 3), M * E->order));
    CHECK_FALSE(cstar_is_trivial(gen).trivial);
    CHECK(cstar_is_trivial(scale(gen, 3)).trivial);
}

TEST_CASE("Aut(Vec^w(Zn)) = Stab x H2 for cyclic groups and every class (n <= 6)") {
    for (int n = 2; n <= 6; ++n) {
        auto E = make_group("C" + std::to_string(n));
        auto h3 = cstar_cohomology(E, 3);
        REQUIRE(h3.h_order == n);
        ll M = mu_modulus(h3.generators[0]);
        for (ll j = 0; j < n; ++j) {
            PointedCategory C = make_pointed(E, scale(embed_mu(h3.generators[0], M), j));
            auto en = monoidal_autoequivalences(C);
            ll W = mu_modulus(C.omega);
            ll stab = 0;
            for (auto& phi : automorphisms(E)) {
                Cochain defect = coherence_rhs(C, C, phi);
                if (mu_solvable_coboundary(defect, W * E->order)) ++stab;
            }
            ll classes_mu = stab * mu_image_order(E, 2, E->order);
            CHECK(en.classes.size() == static_cast<size_t>(classes_mu));
            CHECK(en.classes.size() == static_cast<size_t>(en.stab_order * en.h2_order));
        }
    }
}
