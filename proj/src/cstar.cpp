#include "gext/cstar.hpp"

#include <map>
#include <numeric>

namespace gext {

namespace {

std::map<std::pair<uint64_t, int>, CohomologyResult>& h_cache() {
    static std::map<std::pair<uint64_t, int>, CohomologyResult> c;
    return c;
}
std::map<std::pair<uint64_t, int>, std::shared_ptr<CoboundarySolver>>& s_cache() {
    static std::map<std::pair<uint64_t, int>, std::shared_ptr<CoboundarySolver>> c;
    return c;
}
std::map<uint64_t, GroupPtr>& g_cache() {
    static std::map<uint64_t, GroupPtr> c;
    return c;
}

GroupPtr canonical_group(const GroupPtr& G) {
    auto& c = g_cache();
    auto it = c.find(G->table_hash());
    if (it == c.end()) it = c.emplace(G->table_hash(), G).first;
    return it->second;
}

Cochain integral_lift(const Cochain& f) {
    // canonical representatives 0..M-1 as Z-valued cochain
    Cochain lift = zero_cochain(integral_module(canonical_group(f.module->group)), f.degree);
    for (size_t i = 0; i < f.values.size(); ++i) lift.values[i][0] = f.values[i][0];
    return lift;
}

}  // namespace

const CohomologyResult& integral_cohomology_cached(const GroupPtr& G, int degree) {
    GroupPtr g = canonical_group(G);
    auto key = std::make_pair(g->table_hash(), degree);
    auto& c = h_cache();
    auto it = c.find(key);
    if (it == c.end()) it = c.emplace(key, cohomology(integral_module(g), degree)).first;
    return it->second;
}

std::shared_ptr<CoboundarySolver> integral_solver_cached(const GroupPtr& G, int degree) {
    GroupPtr g = canonical_group(G);
    auto key = std::make_pair(g->table_hash(), degree);
    auto& c = s_cache();
    auto it = c.find(key);
    if (it == c.end()) it = c.emplace(key, std::make_shared<CoboundarySolver>(integral_module(g), degree)).first;
    return it->second;
}

CstarVerdict cstar_is_trivial(const Cochain& f) {
    ll M = mu_modulus(f);
    if (!f.is_normalized()) throw std::invalid_argument("cstar_is_trivial: cochain must be normalized");
    if (!is_cocycle(f)) throw std::invalid_argument("cstar_is_trivial: input is not a cocycle");
    int n = f.degree;
    const GroupPtr G = canonical_group(f.module->group);
    ll N = G->order;

    if (n == 0) throw std::invalid_argument("cstar_is_trivial: degree must be >= 1");
    if (n == 1) {
        // B^1(G, C^x) = 0 with trivial action
        CstarVerdict v;
        v.trivial = f.is_zero();
        if (v.trivial) v.witness = mu_cochain(G, 0, M * N);
        return v;
    }

    // Bockstein image: w := d(lift)/M, an integral (n+1)-cocycle
    Cochain lift = integral_lift(f);
    Cochain dlift = differential(lift);
    Cochain w = dlift;
    for (auto& val : w.values) {
        if (val[0] % M != 0) throw std::logic_error("cstar_is_trivial: lift differential not divisible");
        val[0] /= M;
    }
    auto solver = integral_solver_cached(G, n + 1);
    auto v = solver->witness(w);
    CstarVerdict out;
    if (!v) return out;
    out.trivial = true;

    // averaging homotopy witness: s = (-1)^n (1/N) sum_x (lift - M v)(.., x)
    Cochain resid = add(lift, scale(*v, -M));  // integral n-cocycle (over Z the scale/add stay exact)
    ll sign = n % 2 == 0 ? 1 : -1;
    Cochain wit = mu_cochain(G, n - 1, M * N);
    for (ll t = 0; t < wit.tuples(); ++t) {
        auto tup = wit.tuple_of(t);
        ll s = 0;
        std::vector<int> full(n);
        std::copy(tup.begin(), tup.end(), full.begin());
        for (int x = 0; x < G->order; ++x) {
            full[n - 1] = x;
            s = checked_add(s, resid.at(full)[0]);
        }
        wit.values[t][0] = mod_floor(checked_mul(sign, s), M * N);
    }
    if (!equal(differential(wit), embed_mu(f, M * N))) throw std::logic_error("cstar witness re-differentiation failed");
    out.witness = std::move(wit);
    return out;
}

CohomologyResult cstar_cohomology(const GroupPtr& G_in, int degree) {
    if (degree < 1 || degree > 3) throw std::invalid_argument("cstar_cohomology: degree must be 1..3");
    GroupPtr G = canonical_group(G_in);
    const CohomologyResult& HZ = integral_cohomology_cached(G, degree + 1);
    CohomologyResult res;
    res.degree = degree;
    res.h_order = HZ.h_order;
    res.invariants = HZ.invariants;
    res.z_order = 0;
    res.b_order = 0;

    ll M = 1;
    for (ll t : HZ.invariants) M = std::lcm(M, t);
    auto solver = integral_solver_cached(G, degree + 1);
    for (size_t i = 0; i < HZ.generators.size(); ++i) {
        ll t = HZ.invariants[i];
        auto v = solver->witness(scale(HZ.generators[i], t));
        if (!v) throw std::logic_error("cstar_cohomology: t*w must be a coboundary");
        Cochain f = mu_cochain(G, degree, t);
        for (size_t q = 0; q < f.values.size(); ++q) f.values[q][0] = mod_floor(v->values[q][0], t);
        if (!is_cocycle(f)) throw std::logic_error("cstar_cohomology: recovered generator not a cocycle");
        if (cstar_is_trivial(f).trivial) throw std::logic_error("cstar_cohomology: recovered generator is trivial");
        res.generators.push_back(embed_mu(f, M));
    }
    return res;
}

std::vector<ll> cstar_class_coords(const Cochain& f, const CohomologyResult& H) {
    ll M = mu_modulus(f);
    ll MG = H.generators.empty() ? M : std::lcm(M, mu_modulus(H.generators[0]));
    Cochain fe = embed_mu(f, MG);
    std::vector<ll> coords(H.invariants.size(), 0);
    while (true) {
        Cochain diff = fe;
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0) diff = add(diff, scale(embed_mu(H.generators[i], MG), -coords[i]));
        if (cstar_is_trivial(diff).trivial) return coords;
        size_t i = 0;
        for (; i < coords.size(); ++i) {
            if (++coords[i] < H.invariants[i]) break;
            coords[i] = 0;
        }
        if (i == coords.size()) throw std::logic_error("cstar_class_coords: class not generated by H");
    }
}

ll mu_image_order(const GroupPtr& G_in, int degree, ll M) {
    GroupPtr G = canonical_group(G_in);
    ll N = G->order;
    auto mu_M = roots_of_unity(G, M);
    auto mu_big = roots_of_unity(G, M * N);
    Matrix Dn = bar_matrix(mu_M, degree);          // used for shapes only (coeff rank 1)
    Matrix Dprev = bar_matrix(mu_M, degree - 1);
    int an = Dn.cols, anext = Dn.rows, aprev = Dprev.cols;
    (void)mu_big;

    auto lattice_of = [&](bool with_triviality) {
        // variables [x | y | w | u]: x is the mu_M cochain; y enforces the
        // cocycle congruence; (w, u) express N*x as a coboundary over mu_{MN}
        int cols = an + anext + (with_triviality ? aprev + an : 0);
        int rows = anext + (with_triviality ? an : 0);
        Matrix A(rows, cols);
        for (int i = 0; i < anext; ++i) {
            for (int j = 0; j < an; ++j) A.at(i, j) = Dn.at(i, j);
            A.at(i, an + i) = M;
        }
        if (with_triviality) {
            for (int i = 0; i < an; ++i) {
                A.at(anext + i, i) = N;
                for (int j = 0; j < aprev; ++j) A.at(anext + i, an + anext + j) = -Dprev.at(i, j);
                A.at(anext + i, an + anext + aprev + i) = -(M * N);
            }
        }
        Matrix K = kernel_basis(A);
        Matrix top(an, K.cols);
        for (int i = 0; i < an; ++i)
            for (int j = 0; j < K.cols; ++j) top.at(i, j) = K.at(i, j);
        ColEchelon ce = column_echelon(top, false);
        Matrix B(an, ce.rank);
        for (int i = 0; i < an; ++i)
            for (int j = 0; j < ce.rank; ++j) B.at(i, j) = ce.H.at(i, j);
        return B;
    };
    // the image order is the index of the trivializable sublattice inside the
    // cocycle lattice; both contain M Z^{an}, so the index is finite and small
    Matrix BZ = lattice_of(false);
    Matrix BK = lattice_of(true);
    if (BZ.cols != an || BK.cols != an) throw std::logic_error("mu_image_order: lattices not full rank");
    Matrix R = coords_in_lattice_basis(BZ, BK);
    SmithForm sf = smith_form(std::move(R), false, false);
    ll p = 1;
    for (int i = 0; i < an; ++i) {
        ll s = i < static_cast<int>(sf.diag.size()) ? sf.diag[i] : 0;
        if (s == 0) throw std::logic_error("mu_image_order: free part");
        p = checked_mul(p, s);
    }
    return p;
}

}  // namespace gext
