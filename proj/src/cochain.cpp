#include "gext/cochain.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gext {

std::vector<ll> GModule::act(int g, const std::vector<ll>& x) const {
    if (trivial) return x;
    return coeffs.reduce(mat_apply(action[g], x));
}

uint64_t GModule::hash() const {
    uint64_t h = group->table_hash();
    auto mix = [&](uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (ll d : coeffs.factors) mix(static_cast<uint64_t>(d));
    if (!trivial)
        for (const Matrix& m : action)
            for (ll v : m.a) mix(static_cast<uint64_t>(v + 1000003));
    return h;
}

GModulePtr make_gmodule(AbelianGroup coeffs, GroupPtr G, std::vector<Matrix> action) {
    auto mod = std::make_shared<GModule>();
    mod->coeffs = std::move(coeffs);
    mod->group = std::move(G);
    mod->action = std::move(action);
    if (static_cast<int>(mod->action.size()) != mod->group->order)
        throw std::invalid_argument("gmodule: need one action matrix per group element");
    int k = mod->coeffs.rank();
    for (const Matrix& m : mod->action)
        if (!endomorphism_well_defined(mod->coeffs, m))
            throw std::invalid_argument("gmodule: action matrix not a well-defined endomorphism");
    // identity acts as identity; action is multiplicative as maps on elements
    auto same_map = [&](const Matrix& P, const Matrix& Q) {
        for (int j = 0; j < k; ++j) {
            std::vector<ll> e(k, 0);
            e[j] = 1;
            if (mod->coeffs.reduce(mat_apply(P, e)) != mod->coeffs.reduce(mat_apply(Q, e))) return false;
        }
        return true;
    };
    if (!same_map(mod->action[0], Matrix::identity(k)))
        throw std::invalid_argument("gmodule: identity must act trivially");
    for (int g = 0; g < mod->group->order; ++g)
        for (int h = 0; h < mod->group->order; ++h)
            if (!same_map(mod->action[mod->group->op(g, h)], mat_mul(mod->action[g], mod->action[h])))
                throw std::invalid_argument("gmodule: action not multiplicative at (" + std::to_string(g) + "," +
                                            std::to_string(h) + ")");
    // invertibility: some power is the identity map
    for (int g = 0; g < mod->group->order; ++g) {
        Matrix p = mod->action[g];
        int guard = 0;
        while (!same_map(p, Matrix::identity(k))) {
            p = mat_mul(p, mod->action[g]);
            if (++guard > 1 << 20) throw std::invalid_argument("gmodule: action matrix not invertible on coefficients");
        }
    }
    mod->trivial = true;
    for (int g = 0; g < mod->group->order && mod->trivial; ++g)
        if (!same_map(mod->action[g], Matrix::identity(k))) mod->trivial = false;
    return mod;
}

GModulePtr trivial_module(AbelianGroup coeffs, GroupPtr G) {
    int k = coeffs.rank();
    std::vector<Matrix> act(G->order, Matrix::identity(k));
    return make_gmodule(std::move(coeffs), std::move(G), std::move(act));
}

GModulePtr roots_of_unity(GroupPtr G, ll M) {
    AbelianGroup A;
    A.factors = {M};
    return trivial_module(std::move(A), std::move(G));
}

GModulePtr integral_module(GroupPtr G) {
    AbelianGroup A;
    A.factors = {0};
    return trivial_module(std::move(A), std::move(G));
}

GModulePtr parse_module(const std::string& descriptor, const GroupPtr& G) {
    auto colon = descriptor.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("module descriptor needs a prefix: " + descriptor);
    std::string kind = descriptor.substr(0, colon);
    if (kind == "file") return read_module_file(descriptor.substr(colon + 1), G);
    AbelianGroup A = parse_abelian(descriptor.substr(colon + 1));
    if (kind == "triv") return trivial_module(std::move(A), G);
    if (kind == "neg") {
        int k = A.rank();
        Matrix negm(k, k);
        for (int i = 0; i < k; ++i) negm.at(i, i) = A.factors[i] - 1;  // -1 mod n_i
        std::vector<Matrix> act(G->order);
        // g acts by negation iff g has even/odd...: negation on the non-identity
        // coset of an index-2 situation is not describable for all G; we use the
        // convention that every non-identity element of order 2 acts by negation
        // and require the resulting assignment to be a homomorphism.
        for (int g = 0; g < G->order; ++g) act[g] = g == 0 ? Matrix::identity(k) : negm;
        // validity is checked by make_gmodule (fails unless G is C2 or trivial action degenerates)
        return make_gmodule(std::move(A), G, std::move(act));
    }
    throw std::invalid_argument("unknown module kind: " + kind);
}

GModulePtr read_module_file(const std::string& path, const GroupPtr& G_hint) {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open module file: " + path);
    std::string cleaned, l;
    while (std::getline(file, l))
        if (l.empty() || l[0] != '#') cleaned += l + "\n";
    std::istringstream in(cleaned);
    std::string kw1, modvec, kw2, gdesc;
    if (!(in >> kw1 >> modvec >> kw2 >> gdesc) || kw1 != "coeffs" || kw2 != "group")
        throw std::invalid_argument("module file header: expected 'coeffs d1,..,dk group <descriptor>'");
    AbelianGroup A;
    {
        std::istringstream ms(modvec);
        std::string tok;
        while (std::getline(ms, tok, ',')) A.factors.push_back(std::stoll(tok));
    }
    GroupPtr G = G_hint ? G_hint : make_group(gdesc);
    int k = A.rank();
    std::vector<Matrix> act(G->order, Matrix(k, k));
    for (int g = 0; g < G->order; ++g)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (!(in >> act[g].at(i, j))) throw std::invalid_argument("module file: truncated matrix data");
    return make_gmodule(std::move(A), G, std::move(act));
}

std::string write_module(const GModule& mod) {
    std::ostringstream os;
    os << "coeffs ";
    for (int i = 0; i < mod.coeffs.rank(); ++i) os << (i ? "," : "") << mod.coeffs.factors[i];
    os << " group " << mod.group->name << "\n";
    for (int g = 0; g < mod.group->order; ++g) {
        const Matrix& m = mod.action[g];
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) os << m.at(i, j) << (i + 1 == m.rows && j + 1 == m.cols ? "" : " ");
        os << "\n";
    }
    return os.str();
}

ll Cochain::tuples() const {
    ll t = 1;
    for (int i = 0; i < degree; ++i) t = checked_mul(t, module->group->order);
    return t;
}

std::vector<int> Cochain::tuple_of(ll index) const {
    std::vector<int> t(degree);
    int n = module->group->order;
    for (int i = degree - 1; i >= 0; --i) {
        t[i] = static_cast<int>(index % n);
        index /= n;
    }
    return t;
}

ll Cochain::index_of(const std::vector<int>& tuple) const {
    ll idx = 0;
    for (int g : tuple) idx = idx * module->group->order + g;
    return idx;
}

const std::vector<ll>& Cochain::at(const std::vector<int>& tuple) const { return values[index_of(tuple)]; }
std::vector<ll>& Cochain::at(const std::vector<int>& tuple) { return values[index_of(tuple)]; }

bool Cochain::is_zero() const {
    for (const auto& v : values)
        for (ll x : v)
            if (x != 0) return false;
    return true;
}

bool Cochain::is_normalized() const {
    for (ll t = 0; t < tuples(); ++t) {
        auto tup = tuple_of(t);
        if (std::find(tup.begin(), tup.end(), 0) == tup.end()) continue;
        for (ll x : values[t])
            if (x != 0) return false;
    }
    return true;
}

Cochain zero_cochain(const GModulePtr& mod, int degree) {
    Cochain f;
    f.module = mod;
    f.degree = degree;
    f.values.assign(f.tuples(), mod->coeffs.zero());
    return f;
}

Cochain add(const Cochain& f, const Cochain& g) {
    if (f.module->hash() != g.module->hash() || f.degree != g.degree) throw std::invalid_argument("add: mismatched cochains");
    Cochain h = f;
    for (size_t i = 0; i < h.values.size(); ++i) h.values[i] = f.module->coeffs.add(f.values[i], g.values[i]);
    return h;
}

Cochain negate(const Cochain& f) {
    Cochain h = f;
    for (auto& v : h.values) v = f.module->coeffs.neg(v);
    return h;
}

Cochain scale(const Cochain& f, ll c) {
    Cochain h = f;
    for (auto& v : h.values) {
        for (auto& x : v) x = checked_mul(x, c);
        v = f.module->coeffs.reduce(std::move(v));
    }
    return h;
}

bool equal(const Cochain& f, const Cochain& g) {
    return f.degree == g.degree && f.module->hash() == g.module->hash() && f.values == g.values;
}

Cochain differential(const Cochain& f) {
    const auto& G = *f.module->group;
    const auto& A = f.module->coeffs;
    int n = f.degree;
    Cochain d = zero_cochain(f.module, n + 1);
    std::vector<int> sub(n);
    for (ll t = 0; t < d.tuples(); ++t) {
        auto tup = d.tuple_of(t);
        std::vector<ll> acc;
        // first face: g1 . f(g2..g_{n+1})
        sub.assign(tup.begin() + 1, tup.end());
        acc = f.module->act(tup[0], f.at(sub));
        // middle faces
        ll sign = -1;
        for (int i = 1; i <= n; ++i) {
            sub.clear();
            for (int j = 0; j < n + 1; ++j) {
                if (j == i) continue;
                int v = tup[j];
                if (j == i - 1) v = G.op(tup[i - 1], tup[i]);
                sub.push_back(v);
            }
            const auto& fv = f.at(sub);
            std::vector<ll> term(fv.size());
            for (size_t q = 0; q < fv.size(); ++q) term[q] = checked_mul(sign, fv[q]);
            acc = A.add(acc, A.reduce(std::move(term)));
            sign = -sign;
        }
        // last face: (-1)^{n+1} f(g1..gn)
        sub.assign(tup.begin(), tup.end() - 1);
        {
            const auto& fv = f.at(sub);
            std::vector<ll> term(fv.size());
            for (size_t q = 0; q < fv.size(); ++q) term[q] = checked_mul(sign, fv[q]);
            acc = A.add(acc, A.reduce(std::move(term)));
        }
        d.values[t] = std::move(acc);
    }
    return d;
}

bool is_cocycle(const Cochain& f) { return differential(f).is_zero(); }

Cochain pullback(const Cochain& f, const GroupHom& phi) {
    if (phi.target->table_hash() != f.module->group->table_hash())
        throw std::invalid_argument("pullback: map target is not the cochain's group");
    if (!f.module->trivial) {
        // need action(phi g) = action(g) as maps for d(phi* f) = phi*(d f)
        for (int g = 0; g < phi.source->order; ++g) {
            int k = f.module->coeffs.rank();
            for (int j = 0; j < k; ++j) {
                std::vector<ll> e(k, 0);
                e[j] = 1;
                if (f.module->act(phi.image[g], e) != f.module->act(g, e))
                    throw std::invalid_argument("pullback: module action is not compatible with the map");
            }
        }
    }
    Cochain out = f;
    GModulePtr mod = f.module;
    if (phi.source->table_hash() != phi.target->table_hash()) {
        // transport module to the source group (trivial actions only reach here)
        mod = trivial_module(f.module->coeffs, phi.source);
        out = zero_cochain(mod, f.degree);
    }
    Cochain res = zero_cochain(mod, f.degree);
    for (ll t = 0; t < res.tuples(); ++t) {
        auto tup = res.tuple_of(t);
        for (auto& g : tup) g = phi.image[g];
        res.values[t] = f.at(tup);
    }
    return res;
}

Cochain restrict_to_subgroup(const Cochain& f, const GroupPtr& H, const std::vector<int>& embed) {
    GroupHom inc{H, f.module->group, embed};
    std::string why;
    if (!validate_hom(inc, &why)) throw std::invalid_argument("restrict: embedding not a homomorphism: " + why);
    return pullback(f, inc);
}

ll mu_modulus(const Cochain& f) {
    if (f.module->coeffs.rank() != 1 || f.module->coeffs.factors[0] <= 0 || !f.module->trivial)
        throw std::invalid_argument("expected a mu_M-valued cochain");
    return f.module->coeffs.factors[0];
}

Cochain embed_mu(const Cochain& f, ll target) {
    ll M = mu_modulus(f);
    if (target % M != 0) throw std::invalid_argument("embed_mu: modulus must divide target");
    ll s = target / M;
    Cochain out = mu_cochain(f.module->group, f.degree, target);
    for (size_t i = 0; i < f.values.size(); ++i) out.values[i][0] = mod_floor(checked_mul(f.values[i][0], s), target);
    return out;
}

Cochain mu_cochain(const GroupPtr& G, int degree, ll M) { return zero_cochain(roots_of_unity(G, M), degree); }

std::string write_cochain(const Cochain& f) {
    std::ostringstream os;
    os << "degree " << f.degree << " modulus-vector ";
    for (int i = 0; i < f.module->coeffs.rank(); ++i) os << (i ? "," : "") << f.module->coeffs.factors[i];
    os << " group " << f.module->group->name << "\n";
    for (ll t = 0; t < f.tuples(); ++t) {
        bool nz = false;
        for (ll x : f.values[t]) nz |= x != 0;
        if (!nz) continue;
        auto tup = f.tuple_of(t);
        for (size_t i = 0; i < tup.size(); ++i) os << (i ? " " : "") << tup[i];
        os << (tup.empty() ? "|" : " |");
        for (ll x : f.values[t]) os << " " << x;
        os << "\n";
    }
    return os.str();
}

Cochain read_cochain(const std::string& text, const GroupPtr& G_hint) {
    std::string cleaned;
    {
        std::istringstream pre(text);
        std::string l;
        while (std::getline(pre, l))
            if (l.empty() || l[0] != '#') cleaned += l + "\n";
    }
    std::istringstream in(cleaned);
    std::string kw, modvec, kw2, gdesc;
    int degree;
    std::string kw1;
    if (!(in >> kw >> degree >> kw1 >> modvec >> kw2 >> gdesc) || kw != "degree" || kw1 != "modulus-vector" || kw2 != "group")
        throw std::invalid_argument("cochain header: expected 'degree n modulus-vector d1,..,dk group <descriptor>'");
    AbelianGroup A;
    std::istringstream ms(modvec);
    std::string tok;
    while (std::getline(ms, tok, ',')) A.factors.push_back(std::stoll(tok));
    GroupPtr G = G_hint ? G_hint : make_group(gdesc);
    Cochain f = zero_cochain(trivial_module(A, G), degree);
    std::string line;
    std::getline(in, line);  // rest of header line
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<int> tup(degree);
        for (auto& g : tup)
            if (!(ls >> g)) throw std::invalid_argument("cochain line: too few tuple entries: " + line);
        std::string bar;
        if (!(ls >> bar) || bar != "|") throw std::invalid_argument("cochain line: missing '|': " + line);
        std::vector<ll> v(A.rank());
        for (auto& x : v)
            if (!(ls >> x)) throw std::invalid_argument("cochain line: too few values: " + line);
        for (int g : tup)
            if (g < 0 || g >= G->order) throw std::invalid_argument("cochain line: element out of range: " + line);
        f.at(tup) = A.reduce(std::move(v));
    }
    return f;
}

Cochain read_cochain_file(const std::string& path, const GroupPtr& G_hint) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open cochain file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_cochain(ss.str(), G_hint);
}

}  // namespace gext
