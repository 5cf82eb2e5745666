#include "gext/metric.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gext {

QuadraticForm make_form(AbelianGroup A, ll M, std::vector<ll> values) {
    QuadraticForm Q;
    Q.group = std::move(A);
    Q.modulus = M;
    if (M < 1) throw std::invalid_argument("form: modulus must be positive");
    if (static_cast<ll>(values.size()) != Q.group.order()) throw std::invalid_argument("form: wrong table size");
    for (auto& v : values) v = mod_floor(v, M);
    Q.q = std::move(values);
    ll n = Q.group.order();
    for (ll x = 0; x < n; ++x)
        if (Q.q[Q.group.index_of(Q.group.neg(Q.group.element(x)))] != Q.q[x])
            throw std::invalid_argument("form: q(-x) != q(x) at index " + std::to_string(x));
    // b(x,y) bilinear, checked exhaustively
    for (ll x = 0; x < n; ++x)
        for (ll y = 0; y < n; ++y)
            for (ll z = 0; z < n; ++z) {
                ll xy = Q.group.index_of(Q.group.add(Q.group.element(x), Q.group.element(y)));
                ll lhs = bilinear(Q, xy, z);
                ll rhs = mod_floor(bilinear(Q, x, z) + bilinear(Q, y, z), M);
                if (lhs != rhs)
                    throw std::invalid_argument("form: associated form not bilinear at (" + std::to_string(x) + "," +
                                                std::to_string(y) + "," + std::to_string(z) + ")");
            }
    return Q;
}

ll bilinear(const QuadraticForm& Q, ll x, ll y) {
    ll xy = Q.group.index_of(Q.group.add(Q.group.element(x), Q.group.element(y)));
    return mod_floor(Q.q[xy] - Q.q[x] - Q.q[y], Q.modulus);
}

bool is_nondegenerate(const QuadraticForm& Q) {
    ll n = Q.group.order();
    for (ll x = 1; x < n; ++x) {
        bool seen = false;
        for (ll y = 0; y < n && !seen; ++y) seen = bilinear(Q, x, y) != 0;
        if (!seen) return false;
    }
    return true;
}

std::vector<Simple2Torsion> find_distinguished(const QuadraticForm& Q) {
    std::vector<Simple2Torsion> out;
    ll n = Q.group.order();
    for (ll f = 0; f < n; ++f) {
        auto fe = Q.group.element(f);
        if (Q.group.index_of(Q.group.add(fe, fe)) != 0) continue;
        Simple2Torsion t;
        t.element = f;
        if (Q.q[f] == 0)
            t.kind = TorsionKind::Boson;
        else if (Q.modulus % 2 == 0 && Q.q[f] == Q.modulus / 2)
            t.kind = TorsionKind::Fermion;
        else
            t.kind = TorsionKind::Neither;
        t.grading.resize(n);
        bool faithful = false;
        for (ll x = 0; x < n; ++x) {
            ll b = bilinear(Q, x, f);
            if (b != 0 && (Q.modulus % 2 != 0 || b != Q.modulus / 2))
                throw std::logic_error("monodromy with a 2-torsion element must be a sign");
            t.grading[x] = b != 0;
            faithful |= t.grading[x] != 0;
        }
        t.grading_faithful = faithful;
        out.push_back(std::move(t));
    }
    return out;
}

namespace {

struct CyclicBlock {
    std::vector<ll> gen;  // element of A
    ll order;
    ll value;  // q(gen)
};

ll element_order_in(const AbelianGroup& A, const std::vector<ll>& a) {
    std::vector<ll> x = a;
    ll n = 1;
    while (A.index_of(x) != 0) {
        x = A.add(x, a);
        ++n;
    }
    return n;
}

// exhaustive orthogonal splitting into cyclic blocks over the subset S
bool split_orthogonal(const QuadraticForm& Q, std::vector<ll> subset, std::vector<CyclicBlock>& blocks) {
    if (subset.size() == 1) return true;
    for (ll a : subset) {
        if (a == 0) continue;
        auto ae = Q.group.element(a);
        ll n = element_order_in(Q.group, ae);
        // cyclic subgroup of a
        std::vector<char> inC(Q.group.order(), 0);
        {
            std::vector<ll> x = Q.group.zero();
            for (ll i = 0; i < n; ++i) {
                inC[Q.group.index_of(x)] = 1;
                x = Q.group.add(x, ae);
            }
        }
        std::vector<ll> orth;
        bool disjoint = true;
        for (ll x : subset) {
            if (bilinear(Q, a, x) == 0) {
                orth.push_back(x);
                if (x != 0 && inC[x]) disjoint = false;
            }
        }
        if (!disjoint) continue;
        if (n * static_cast<ll>(orth.size()) != static_cast<ll>(subset.size())) continue;
        std::vector<CyclicBlock> sub;
        if (!split_orthogonal(Q, orth, sub)) continue;
        blocks.push_back({ae, n, Q.q[a]});
        for (auto& b : sub) blocks.push_back(std::move(b));
        return true;
    }
    return false;
}

}  // namespace

AbelianAssociatorPair em_realize(const QuadraticForm& Q) {
    AbelianAssociatorPair P;
    P.form = Q;
    P.group_as_finite = abelian_as_group(Q.group);
    ll n = Q.group.order();
    ll M = Q.modulus;
    P.chi.assign(n * n, 0);
    Cochain omega = mu_cochain(P.group_as_finite, 3, M);

    bool bilinear_ok = true;
    for (int i = 0; i < Q.group.rank(); ++i) {
        std::vector<ll> e = Q.group.zero();
        e[i] = 1;
        if (mod_floor(Q.group.factors[i] * Q.at(e), M) != 0) bilinear_ok = false;
    }
    if (bilinear_ok) {
        // chi(x,y) = sum_i q(e_i) x_i y_i + sum_{i>j} b(e_i,e_j) x_i y_j, omega = 0
        int k = Q.group.rank();
        std::vector<std::vector<ll>> coef(k, std::vector<ll>(k, 0));
        for (int i = 0; i < k; ++i) {
            std::vector<ll> ei = Q.group.zero();
            ei[i] = 1;
            coef[i][i] = Q.at(ei);
            for (int j = 0; j < i; ++j) {
                std::vector<ll> ej = Q.group.zero();
                ej[j] = 1;
                coef[i][j] = bilinear(Q, Q.group.index_of(ei), Q.group.index_of(ej));
            }
        }
        for (ll x = 0; x < n; ++x)
            for (ll y = 0; y < n; ++y) {
                auto xv = Q.group.element(x), yv = Q.group.element(y);
                ll s = 0;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j <= i; ++j) s = checked_add(s, checked_mul(coef[i][j], checked_mul(xv[i], yv[j])));
                P.chi[x * n + y] = mod_floor(s, M);
            }
    } else {
        std::vector<ll> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::vector<CyclicBlock> blocks;
        if (!split_orthogonal(Q, all, blocks))
            throw std::runtime_error("em_realize: no orthogonal cyclic splitting found for this form");
        // coordinates with respect to the block generators
        std::vector<ll> radix(blocks.size());
        ll prod = 1;
        for (size_t i = 0; i < blocks.size(); ++i) {
            radix[i] = blocks[i].order;
            prod = checked_mul(prod, radix[i]);
        }
        if (prod != n) throw std::logic_error("em_realize: block orders do not multiply to |A|");
        std::vector<std::vector<ll>> coord(n);
        std::vector<char> seen(n, 0);
        std::vector<ll> digits(blocks.size(), 0);
        while (true) {
            std::vector<ll> x = Q.group.zero();
            for (size_t i = 0; i < blocks.size(); ++i)
                for (ll s = 0; s < digits[i]; ++s) x = Q.group.add(x, blocks[i].gen);
            ll idx = Q.group.index_of(x);
            if (seen[idx]) throw std::logic_error("em_realize: splitting is not a direct sum");
            seen[idx] = 1;
            coord[idx] = digits;
            size_t i = 0;
            for (; i < digits.size(); ++i) {
                if (++digits[i] < radix[i]) break;
                digits[i] = 0;
            }
            if (i == digits.size()) break;
        }
        // blockwise chi(s,t) = v s t and omega(s,t,u) = v n s floor((t+u)/n)
        for (ll x = 0; x < n; ++x)
            for (ll y = 0; y < n; ++y) {
                ll s = 0;
                for (size_t i = 0; i < blocks.size(); ++i)
                    s = checked_add(s, checked_mul(blocks[i].value, checked_mul(coord[x][i], coord[y][i])));
                P.chi[x * n + y] = mod_floor(s, M);
            }
        for (ll x = 0; x < n; ++x)
            for (ll y = 0; y < n; ++y)
                for (ll z = 0; z < n; ++z) {
                    ll s = 0;
                    for (size_t i = 0; i < blocks.size(); ++i)
                        s = checked_add(s, checked_mul(checked_mul(blocks[i].value, blocks[i].order),
                                                       checked_mul(coord[x][i], (coord[y][i] + coord[z][i]) / radix[i])));
                    omega.at({static_cast<int>(x), static_cast<int>(y), static_cast<int>(z)}) = {mod_floor(s, M)};
                }
    }
    P.omega = std::move(omega);

    // exhaustive validation of the associator-pair axioms
    for (ll x = 0; x < n; ++x) {
        if (P.chi_at(x, x) != Q.q[x]) throw std::logic_error("em_realize: chi(x,x) != q(x)");
        for (ll y = 0; y < n; ++y)
            if (mod_floor(P.chi_at(x, y) + P.chi_at(y, x), M) != bilinear(Q, x, y))
                throw std::logic_error("em_realize: chi + chi^T != b");
    }
    if (!is_cocycle(P.omega)) throw std::logic_error("em_realize: omega is not a cocycle");
    if (!P.omega.is_normalized()) throw std::logic_error("em_realize: omega not normalized");
    if (!hexagons_hold(P)) throw std::logic_error("em_realize: hexagon identities fail");
    return P;
}

bool hexagons_hold(const AbelianAssociatorPair& P) {
    const auto& A = P.form.group;
    ll n = A.order();
    ll M = P.form.modulus;
    auto om = [&](ll a, ll b, ll c) {
        return P.omega.at({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)})[0];
    };
    auto addi = [&](ll a, ll b) { return A.index_of(A.add(A.element(a), A.element(b))); };
    for (ll x = 0; x < n; ++x)
        for (ll y = 0; y < n; ++y)
            for (ll z = 0; z < n; ++z) {
                // c_{x, y (x) z} route vs stepwise
                ll lhs1 = mod_floor(om(y, z, x) + P.chi_at(x, addi(y, z)) + om(x, y, z), M);
                ll rhs1 = mod_floor(P.chi_at(x, z) + om(y, x, z) + P.chi_at(x, y), M);
                if (lhs1 != rhs1) return false;
                ll lhs2 = mod_floor(-om(z, x, y) + P.chi_at(addi(x, y), z) - om(x, y, z), M);
                ll rhs2 = mod_floor(P.chi_at(x, z) - om(x, z, y) + P.chi_at(y, z), M);
                if (lhs2 != rhs2) return false;
            }
    return true;
}

PointedFunctor build_Fz(const AbelianAssociatorPair& P, const Simple2Torsion& f) {
    if (f.kind == TorsionKind::Neither) throw std::invalid_argument("build_Fz: f must be a boson or a fermion");
    const auto& A = P.form.group;
    const GroupPtr& E = P.group_as_finite;
    ll n = A.order();
    ll M = P.form.modulus;
    auto addi = [&](ll a, ll b) { return A.index_of(A.add(A.element(a), A.element(b))); };
    ll fi = f.element;

    std::vector<int> image(n);
    for (ll x = 0; x < n; ++x) image[x] = static_cast<int>(f.grading[x] ? addi(x, fi) : x);
    GroupHom phi{E, E, image};
    std::string why;
    if (!validate_hom(phi, &why) || !phi.is_bijective())
        throw std::logic_error("build_Fz: phi is not an automorphism: " + why);

    auto om = [&](ll a, ll b, ll c) {
        return P.omega.at({static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)})[0];
    };
    Cochain tau = mu_cochain(E, 2, M);
    for (ll m = 0; m < n; ++m)
        for (ll nn = 0; nn < n; ++nn) {
            int dm = f.grading[m], dn = f.grading[nn];
            ll v = 0;
            if (dm == 0 && dn == 0) v = 0;
            else if (dm == 1 && dn == 0) v = om(fi, m, nn);
            else if (dm == 0 && dn == 1) v = P.chi_at(m, fi) + om(fi, m, nn) - om(m, fi, nn);
            else v = P.chi_at(m, fi) - om(addi(fi, m), fi, nn) + om(fi, m, fi) - om(fi, fi, m);
            tau.at({static_cast<int>(m), static_cast<int>(nn)}) = {mod_floor(v, M)};
        }

    PointedFunctor F{phi, std::move(tau)};
    PointedCategory C = make_pointed(E, P.omega);
    if (!coherence_holds(C, C, F))
        throw std::logic_error("build_Fz: monoidal coherence d tau = omega - phi* omega fails (convention bug)");
    return F;
}

bool is_braided(const AbelianAssociatorPair& P, const PointedFunctor& F) {
    ll n = P.form.group.order();
    ll M = P.form.modulus;
    ll Mt = mu_modulus(F.tau);
    ll W = std::lcm(M, Mt);
    for (ll m = 0; m < n; ++m)
        for (ll nn = 0; nn < n; ++nn) {
            ll lhs = (W / Mt) * F.tau.at({static_cast<int>(nn), static_cast<int>(m)})[0] +
                     (W / M) * P.chi_at(F.phi.image[m], F.phi.image[nn]);
            ll rhs = (W / M) * P.chi_at(m, nn) + (W / Mt) * F.tau.at({static_cast<int>(m), static_cast<int>(nn)})[0];
            if (mod_floor(lhs - rhs, W) != 0) return false;
        }
    return true;
}

HyperbolicCenter hyperbolic_center(const AbelianGroup& A) {
    HyperbolicCenter H;
    H.base = A;
    AbelianGroup AA;
    AA.factors = A.factors;
    AA.factors.insert(AA.factors.end(), A.factors.begin(), A.factors.end());
    auto dp = dual_pairing(A);
    ll M = dp.modulus;
    ll n = AA.order();
    std::vector<ll> q(n);
    int k = A.rank();
    for (ll i = 0; i < n; ++i) {
        auto v = AA.element(i);
        std::vector<ll> a(v.begin(), v.begin() + k), y(v.begin() + k, v.end());
        q[i] = dp.pair(a, y);
    }
    H.form = make_form(AA, M, std::move(q));
    H.support = proj_support(AA, k);
    return H;
}

Matrix center_action_matrix(const AbelianGroup& A, const Matrix& alpha) {
    Matrix dual = dual_inverse_matrix(A, alpha);
    int k = A.rank();
    Matrix M(2 * k, 2 * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            M.at(i, j) = alpha.at(i, j);
            M.at(k + i, k + j) = dual.at(i, j);
        }
    return M;
}

std::string write_form(const QuadraticForm& Q) {
    std::ostringstream os;
    os << "group " << abelian_descriptor(Q.group) << " modulus " << Q.modulus << "\n";
    for (ll x = 0; x < Q.group.order(); ++x) {
        if (Q.q[x] == 0) continue;
        auto v = Q.group.element(x);
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << " -> " << Q.q[x] << "\n";
    }
    return os.str();
}

QuadraticForm read_form(const std::string& text) {
    std::string cleaned;
    {
        std::istringstream pre(text);
        std::string l;
        while (std::getline(pre, l))
            if (l.empty() || l[0] != '#') cleaned += l + "\n";
    }
    std::istringstream in(cleaned);
    std::string kw1, desc, kw2;
    ll M;
    if (!(in >> kw1 >> desc >> kw2 >> M) || kw1 != "group" || kw2 != "modulus")
        throw std::invalid_argument("form header: expected 'group <descriptor> modulus M'");
    AbelianGroup A = parse_abelian(desc);
    std::vector<ll> q(A.order(), 0);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw std::invalid_argument("form line: missing '->': " + line);
        std::string lhs = line.substr(0, arrow), rhs = line.substr(arrow + 2);
        std::vector<ll> x;
        std::istringstream ls(lhs);
        std::string tok;
        while (std::getline(ls, tok, ',')) x.push_back(std::stoll(tok));
        if (static_cast<int>(x.size()) != A.rank()) throw std::invalid_argument("form line: wrong coordinate count: " + line);
        q[A.index_of(A.reduce(std::move(x)))] = std::stoll(rhs);
    }
    return make_form(std::move(A), M, std::move(q));
}

QuadraticForm read_form_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open form file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_form(ss.str());
}

}  // namespace gext
