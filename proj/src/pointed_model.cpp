#include "gext/pointed_model.hpp"

#include <algorithm>
#include <numeric>

namespace gext {

namespace {

// all (h1..hk) with descending orders whose span map prod Z/ord -> H is bijective
bool decompose_abelian(const GroupPtr& H, std::vector<int>& gens, std::vector<ll>& orders, std::vector<char>& covered,
                       ll covered_count) {
    if (covered_count == H->order) return true;
    ll best = 0;
    for (int h = 0; h < H->order; ++h) best = std::max<ll>(best, H->element_order(h));
    for (ll n = best; n >= 2; --n) {
        if (!orders.empty() && n > orders.back()) continue;
        for (int h = 1; h < H->order; ++h) {
            if (H->element_order(h) != n) continue;
            std::vector<char> cov2(H->order, 0);
            ll cnt = 0;
            bool ok = true;
            for (int x = 0; x < H->order && ok; ++x) {
                if (!covered[x]) continue;
                int cur = x;
                for (ll s = 0; s < n && ok; ++s) {
                    if (s > 0 && covered[cur]) ok = false;
                    if (ok && !cov2[cur]) {
                        cov2[cur] = 1;
                        ++cnt;
                    }
                    cur = H->op(cur, h);
                }
            }
            if (!ok || cnt != covered_count * n) continue;
            gens.push_back(h);
            orders.push_back(n);
            std::vector<char> saved = covered;
            covered = cov2;
            if (decompose_abelian(H, gens, orders, covered, cnt)) return true;
            covered = saved;
            gens.pop_back();
            orders.pop_back();
        }
    }
    return false;
}

}  // namespace

AbelianCoords abelian_coordinates(const GroupPtr& E, const std::vector<int>& subgroup_elements) {
    auto sv = subgroup_as_group(E, subgroup_elements);
    const GroupPtr& H = sv.subgroup;
    if (!H->is_abelian()) throw std::invalid_argument("abelian_coordinates: subgroup is not abelian");
    std::vector<int> gens;
    std::vector<ll> orders;
    std::vector<char> covered(H->order, 0);
    covered[0] = 1;
    if (H->order > 1 && !decompose_abelian(H, gens, orders, covered, 1))
        throw std::logic_error("abelian_coordinates: no cyclic decomposition found");
    AbelianCoords ac;
    ac.group.factors = orders;
    ac.to_element.assign(static_cast<size_t>(ac.group.order()), -1);
    ac.to_index.assign(E->order, -1);
    std::vector<ll> digits(orders.size(), 0);
    while (true) {
        int h = 0;
        for (size_t i = 0; i < gens.size(); ++i)
            for (ll s = 0; s < digits[i]; ++s) h = H->op(h, gens[i]);
        ll idx = ac.group.index_of(digits);
        if (ac.to_element[idx] != -1) throw std::logic_error("abelian_coordinates: decomposition not free");
        ac.to_element[idx] = sv.embed[h];
        ac.to_index[sv.embed[h]] = idx;
        size_t i = 0;
        for (; i < digits.size(); ++i) {
            if (++digits[i] < orders[i]) break;
            digits[i] = 0;
        }
        if (i == digits.size()) break;
    }
    return ac;
}

ll GradedModel::omega(int x, int y, int z) const { return cat.category.omega.at({x, y, z})[0]; }

int GradedModel::conj_on_piece(int g, int a_elem) const {
    const auto& E = *cat.grading.total;
    int xg = section(g);
    return E.op(E.op(xg, a_elem), E.inv[xg]);
}

GradedModel make_model(GradedPointedCategory cat) {
    GradedModel m;
    m.cat = std::move(cat);
    const auto& kernel = m.cat.grading.kernel;
    m.piece = abelian_coordinates(m.cat.grading.total, kernel);
    for (int a : kernel)
        for (int b : kernel)
            for (int c : kernel)
                if (m.cat.category.omega.at({a, b, c})[0] != 0)
                    throw std::invalid_argument("model: omega must vanish on the trivial piece");
    ll MA = m.piece.group.exponent();
    ll M = mu_modulus(m.cat.category.omega);
    if (M % MA != 0) {
        M = std::lcm(M, MA);
        m.cat.category.omega = embed_mu(m.cat.category.omega, M);
    }
    m.modulus = M;
    m.hyper = hyperbolic_center(m.piece.group);
    const GroupPtr& G = m.cat.grading.grading;
    std::vector<Matrix> act(G->order);
    for (int g = 0; g < G->order; ++g) {
        int k = m.piece.group.rank();
        Matrix cg(k, k);
        for (int j = 0; j < k; ++j) {
            std::vector<ll> e = m.piece.group.zero();
            e[j] = 1;
            int img = m.conj_on_piece(g, m.piece.to_element[m.piece.group.index_of(e)]);
            auto v = m.piece.group.element(m.piece.to_index[img]);
            for (int i = 0; i < k; ++i) cg.at(i, j) = v[i];
        }
        act[g] = center_action_matrix(m.piece.group, cg);
    }
    m.center = make_gmodule(m.hyper.form.group, G, std::move(act));
    return m;
}

DecoratedSystem trivial_system(const GradedModel& m) {
    DecoratedSystem dat;
    int ng = m.cat.grading.grading->order;
    dat.u.assign(ng, 0);
    dat.chi.assign(ng, std::vector<ll>(static_cast<size_t>(m.piece.group.order()), 0));
    return dat;
}

namespace {

void validate_system(const GradedModel& m, const DecoratedSystem& dat) {
    int ng = m.cat.grading.grading->order;
    if (static_cast<int>(dat.u.size()) != ng || static_cast<int>(dat.chi.size()) != ng)
        throw std::invalid_argument("decorated system: wrong size");
    if (dat.u[0] != 0) throw std::invalid_argument("decorated system: u at the identity must be trivial");
    const auto& A = m.piece.group;
    for (int g = 0; g < ng; ++g) {
        if (m.piece.to_index[dat.u[g]] < 0) throw std::invalid_argument("decorated system: u outside the piece");
        for (ll a = 0; a < A.order(); ++a)
            for (ll b = 0; b < A.order(); ++b) {
                ll ab = A.index_of(A.add(A.element(a), A.element(b)));
                if (mod_floor(dat.chi[g][a] + dat.chi[g][b] - dat.chi[g][ab], m.modulus) != 0)
                    throw std::invalid_argument("decorated system: chi is not an additive character");
            }
        if (g == 0)
            for (ll a = 0; a < A.order(); ++a)
                if (dat.chi[0][a] != 0) throw std::invalid_argument("decorated system: chi at the identity must vanish");
    }
}

}  // namespace

DecoratedSystem apply_twist(const GradedModel& m, const DecoratedSystem& dat, const Cochain& rho) {
    if (rho.degree != 1 || rho.module->hash() != m.center->hash())
        throw std::invalid_argument("apply_twist: rho must be a center-valued 1-cochain");
    DecoratedSystem out = dat;
    const auto& E = *m.cat.grading.total;
    const auto& A = m.piece.group;
    int k = A.rank();
    ll MA = m.hyper.form.modulus;
    auto dp = dual_pairing(A);
    for (int g = 1; g < m.cat.grading.grading->order; ++g) {
        const auto& v = rho.at({g});
        std::vector<ll> apart(v.begin(), v.begin() + k), ypart(v.begin() + k, v.end());
        out.u[g] = E.op(out.u[g], m.piece.to_element[A.index_of(apart)]);
        for (ll a = 0; a < A.order(); ++a)
            out.chi[g][a] = mod_floor(out.chi[g][a] + dp.pair(A.element(a), ypart) * (m.modulus / MA), m.modulus);
    }
    return out;
}

Cochain t_defect(const GradedModel& m, const DecoratedSystem& dat) {
    validate_system(m, dat);
    const auto& E = *m.cat.grading.total;
    const auto& G = m.cat.grading.grading;
    const auto& A = m.piece.group;
    ll M = m.modulus;
    ll MA = m.hyper.form.modulus;
    int k = A.rank();
    auto dp = dual_pairing(A);

    auto chi_of = [&](int g, int a_elem) { return dat.chi[g][m.piece.to_index[a_elem]]; };

    // compare P2 = M o (F_g x F_h) with P1 = F_gh o M as balanced two-variable
    // functors fiber_g x fiber_h -> fiber_gh; the defect is the center element
    // (delta, sigma) with P2 = (delta, sigma) |> P1.
    Cochain T = zero_cochain(m.center, 2);
    for (int g = 0; g < G->order; ++g)
        for (int h = 0; h < G->order; ++h) {
            int gh = G->op(g, h);
            int xg = m.section(g), xh = m.section(h);
            int w0 = E.op(xg, xh);
            int ug = dat.u[g], uh = dat.u[h], ugh = dat.u[gh];
            int Fy = E.op(ug, xg), Fz = E.op(uh, xh);
            int m0 = E.op(ugh, w0);  // P1 base object
            int delta = E.op(E.op(Fy, Fz), E.inv[m0]);
            if (m.piece.to_index[delta] < 0) throw std::logic_error("t_defect: translation defect left the piece");

            std::vector<ll> sigma(static_cast<size_t>(A.order()), 0);
            for (ll ai = 0; ai < A.order(); ++ai) {
                int a = m.piece.to_element[ai];
                int ap = E.op(E.op(E.inv[xg], a), xg);   // c_g^{-1}(a)
                int b = E.op(E.op(E.inv[w0], a), w0);    // conjugate through both slots
                ll L1 = chi_of(gh, a) - m.omega(a, ugh, w0) + m.omega(ugh, a, w0) - m.omega(a, xg, xh);
                ll L2 = -m.omega(a, Fy, Fz) + chi_of(g, a) - m.omega(a, ug, xg) + m.omega(ug, a, xg);
                ll R1 = m.omega(ugh, w0, b) + m.omega(xg, xh, b);
                ll R2 = m.omega(Fy, Fz, b) + m.omega(uh, xh, b);
                ll bal1 = m.omega(xg, ap, xh);
                ll bal2 = -m.omega(ug, xg, ap) + m.omega(Fy, ap, Fz) + chi_of(h, ap) - m.omega(ap, uh, xh) +
                          m.omega(uh, ap, xh);
                ll omega_can = -m.omega(a, delta, m0) + m.omega(delta, a, m0);
                sigma[ai] =
                    mod_floor(L2 - L1 - omega_can + m.omega(delta, m0, b) + R1 - R2 + bal2 - bal1, M);
            }
            std::vector<ll> val(2 * k, 0);
            auto dv = A.element(m.piece.to_index[delta]);
            for (int i = 0; i < k; ++i) val[i] = dv[i];
            for (int i = 0; i < k; ++i) {
                std::vector<ll> e = A.zero();
                e[i] = 1;
                ll s = sigma[A.index_of(e)];
                ll unit = M / A.factors[i];
                if (s % unit != 0) throw std::logic_error("t_defect: extracted character has wrong order");
                val[k + i] = mod_floor(s / unit, A.factors[i]);
            }
            std::vector<ll> ypart(val.begin() + k, val.end());
            for (ll ai = 0; ai < A.order(); ++ai)
                if (mod_floor(dp.pair(A.element(ai), ypart) * (M / MA), M) != sigma[ai])
                    throw std::logic_error("t_defect: extracted character is not additive");
            T.at({g, h}) = m.center->coeffs.reduce(std::move(val));
        }
    return T;
}

Cochain full_tensorator(const GradedModel& m, const DecoratedSystem& dat, const Cochain& tau_hat) {
    validate_system(m, dat);
    const auto& E = *m.cat.grading.total;
    const auto& G = m.cat.grading.grading;
    ll M = m.modulus;
    if (tau_hat.degree != 2 || tau_hat.module->group->table_hash() != G->table_hash())
        throw std::invalid_argument("full_tensorator: tau_hat must be a 2-cochain on the grading group");
    ll Mt = mu_modulus(tau_hat);
    if (M % Mt != 0) throw std::invalid_argument("full_tensorator: tau_hat modulus must divide the model modulus");
    const auto& proj = m.cat.grading.proj.image;

    auto chi_of = [&](int g, int a_elem) { return dat.chi[g][m.piece.to_index[a_elem]]; };
    // extend the bimodule natural isomorphism from the section base point to
    // all objects through the left/right structure relations
    Cochain tau = mu_cochain(m.cat.grading.total, 2, M);
    for (int yy = 0; yy < E.order; ++yy)
        for (int zz = 0; zz < E.order; ++zz) {
            int g = proj[yy], h = proj[zz];
            int gh = m.cat.grading.grading->op(g, h);
            int xg = m.section(g), xh = m.section(h);
            int ug = dat.u[g], uh = dat.u[h], ugh = dat.u[gh];
            int a = E.op(yy, E.inv[xg]);              // yy = a xg
            int b = E.op(zz, E.inv[xh]);              // zz = b xh
            int bp = E.op(E.op(E.inv[xh], b), xh);    // b' with xh b' = b xh
            int z1 = E.op(xh, bp);                    // = zz
            if (z1 != zz) throw std::logic_error("full_tensorator: fiber decomposition failed");
            auto L1 = [&](int aa, int y, int z) {
                int yz = E.op(y, z);
                return chi_of(gh, aa) - m.omega(aa, ugh, yz) + m.omega(ugh, aa, yz) - m.omega(aa, y, z);
            };
            auto L2 = [&](int aa, int y, int z) {
                return -m.omega(aa, E.op(ug, y), E.op(uh, z)) + chi_of(g, aa) - m.omega(aa, ug, y) +
                       m.omega(ug, aa, y);
            };
            auto R1 = [&](int y, int z, int bb) { return m.omega(ugh, E.op(y, z), bb) + m.omega(y, z, bb); };
            auto R2 = [&](int y, int z, int bb) { return m.omega(E.op(ug, y), E.op(uh, z), bb) + m.omega(uh, z, bb); };
            ll that = tau_hat.at({g, h})[0] * (M / Mt);
            ll v = that + R1(xg, xh, bp) - R2(xg, xh, bp) + L1(a, xg, z1) - L2(a, xg, z1);
            tau.at({yy, zz}) = {mod_floor(v, M)};
        }
    return tau;
}

Cochain v_defect(const GradedModel& m, const DecoratedSystem& dat, const Cochain& tau_hat) {
    const auto& E = *m.cat.grading.total;
    const auto& G = m.cat.grading.grading;
    const auto& proj = m.cat.grading.proj.image;
    ll M = m.modulus;

    std::vector<int> theta(E.order);
    for (int x = 0; x < E.order; ++x) theta[x] = E.op(dat.u[proj[x]], x);
    GroupHom Theta{m.cat.grading.total, m.cat.grading.total, theta};
    std::string why;
    if (!validate_hom(Theta, &why) || !Theta.is_bijective())
        throw std::invalid_argument("v_defect: the decorated system is not multiplicative: " + why);
    if (!t_defect(m, dat).is_zero())
        throw std::invalid_argument("v_defect: the decorated data is not a system of equivalences (T != 0)");

    Cochain tau = full_tensorator(m, dat, tau_hat);
    Cochain rhs = add(m.cat.category.omega, negate(pullback(m.cat.category.omega, Theta)));
    Cochain defect = add(differential(tau), negate(rhs));  // d tau - (omega - Theta* omega)

    Cochain v = mu_cochain(G, 3, M);
    for (int g = 0; g < G->order; ++g)
        for (int h = 0; h < G->order; ++h)
            for (int k2 = 0; k2 < G->order; ++k2)
                v.at({g, h, k2}) = defect.at({m.section(g), m.section(h), m.section(k2)});
    for (int x = 0; x < E.order; ++x)
        for (int y = 0; y < E.order; ++y)
            for (int z = 0; z < E.order; ++z)
                if (defect.at({x, y, z}) != v.at({proj[x], proj[y], proj[z]}))
                    throw std::logic_error("v_defect: coherence defect is not fiber-constant");
    return v;
}

}  // namespace gext
