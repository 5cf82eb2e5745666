#include "gext/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace gext {

int FiniteGroup::element_order(int a) const {
    int x = a, n = 1;
    while (x != 0) {
        x = op(x, a);
        ++n;
    }
    return n;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

uint64_t FiniteGroup::table_hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(order));
    for (int v : mul) mix(static_cast<uint64_t>(v) + 0x9e3779b9ull);
    return h;
}

GroupPtr make_group_from_table(std::vector<int> table, int order, const std::string& name) {
    if (order <= 0 || static_cast<int>(table.size()) != order * order)
        throw std::invalid_argument("group table: bad size");
    for (int v : table)
        if (v < 0 || v >= order) throw std::invalid_argument("group table: entry out of range");

    // locate the two-sided identity
    int e = -1;
    for (int cand = 0; cand < order && e < 0; ++cand) {
        bool ok = true;
        for (int a = 0; a < order && ok; ++a)
            if (table[cand * order + a] != a || table[a * order + cand] != a) ok = false;
        if (ok) e = cand;
    }
    if (e < 0) throw std::invalid_argument("group table: no identity element");

    if (e != 0) {
        // relabel by swapping 0 <-> e so the identity sits at index 0
        std::vector<int> perm(order);
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[0], perm[e]);
        std::vector<int> t2(table.size());
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b) t2[a * order + b] = perm[table[perm[a] * order + perm[b]]];
        table.swap(t2);
    }

    auto g = std::make_shared<FiniteGroup>();
    g->order = order;
    g->mul = std::move(table);
    g->name = name;

    for (int a = 0; a < order; ++a)
        for (int b = 0; b < order; ++b)
            for (int c = 0; c < order; ++c)
                if (g->op(g->op(a, b), c) != g->op(a, g->op(b, c)))
                    throw std::invalid_argument("group table: associativity fails at (" + std::to_string(a) + "," +
                                                std::to_string(b) + "," + std::to_string(c) + ")");
    g->inv.assign(order, -1);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b)
            if (g->op(a, b) == 0 && g->op(b, a) == 0) {
                g->inv[a] = b;
                break;
            }
        if (g->inv[a] < 0) throw std::invalid_argument("group table: element " + std::to_string(a) + " has no inverse");
    }
    return g;
}

namespace {

GroupPtr product_of_cyclics(const std::vector<int>& ns, const std::string& name) {
    int order = 1;
    for (int n : ns) {
        if (n < 1) throw std::invalid_argument("cyclic factor must be >= 1");
        order *= n;
    }
    int k = static_cast<int>(ns.size());
    auto idx_of = [&](const std::vector<int>& x) {
        int idx = 0;
        for (int i = 0; i < k; ++i) idx = idx * ns[i] + x[i];
        return idx;
    };
    std::vector<int> table(static_cast<size_t>(order) * order);
    std::vector<int> xa(k), xb(k), xc(k);
    for (int a = 0; a < order; ++a) {
        int t = a;
        for (int i = k - 1; i >= 0; --i) {
            xa[i] = t % ns[i];
            t /= ns[i];
        }
        for (int b = 0; b < order; ++b) {
            t = b;
            for (int i = k - 1; i >= 0; --i) {
                xb[i] = t % ns[i];
                t /= ns[i];
            }
            for (int i = 0; i < k; ++i) xc[i] = (xa[i] + xb[i]) % ns[i];
            table[static_cast<size_t>(a) * order + b] = idx_of(xc);
        }
    }
    return make_group_from_table(std::move(table), order, name);
}

GroupPtr dihedral(int order, const std::string& name) {
    if (order < 2 || order % 2 != 0) throw std::invalid_argument("Dn needs even order n >= 2");
    int m = order / 2;
    // elements r^i s^j, index i + m*j
    std::vector<int> table(static_cast<size_t>(order) * order);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < 2; ++j)
            for (int p = 0; p < m; ++p)
                for (int q = 0; q < 2; ++q) {
                    int i2 = j == 0 ? (i + p) % m : ((i - p) % m + m) % m;
                    int j2 = (j + q) % 2;
                    table[static_cast<size_t>(i + m * j) * order + (p + m * q)] = i2 + m * j2;
                }
    return make_group_from_table(std::move(table), order, name);
}

}  // namespace

std::vector<int> cyclic_factors_of_descriptor(const std::string& spec) {
    std::vector<int> ns;
    size_t pos = 0;
    while (pos < spec.size()) {
        if (spec[pos] != 'C') throw std::invalid_argument("bad abelian descriptor: " + spec);
        size_t end = spec.find('x', pos);
        std::string num = spec.substr(pos + 1, end == std::string::npos ? end : end - pos - 1);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad abelian descriptor: " + spec);
        ns.push_back(std::stoi(num));
        pos = end == std::string::npos ? spec.size() : end + 1;
    }
    if (ns.empty()) throw std::invalid_argument("bad abelian descriptor: " + spec);
    return ns;
}

GroupPtr make_group(const std::string& spec) {
    if (spec.rfind("table:", 0) == 0) {
        std::string path = spec.substr(6);
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open group table file: " + path);
        int n;
        if (!(in >> n)) throw std::invalid_argument("group table file: missing order");
        std::vector<int> table(static_cast<size_t>(n) * n);
        for (auto& v : table)
            if (!(in >> v)) throw std::invalid_argument("group table file: truncated");
        return make_group_from_table(std::move(table), n, spec);
    }
    if (!spec.empty() && spec[0] == 'D') {
        std::string num = spec.substr(1);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad group descriptor: " + spec);
        return dihedral(std::stoi(num), spec);
    }
    return product_of_cyclics(cyclic_factors_of_descriptor(spec), spec);
}

bool GroupHom::is_bijective() const {
    std::vector<char> seen(target->order, 0);
    for (int v : image) {
        if (seen[v]) return false;
        seen[v] = 1;
    }
    return source->order == target->order;
}

GroupHom identity_hom(const GroupPtr& G) {
    GroupHom h{G, G, std::vector<int>(G->order)};
    std::iota(h.image.begin(), h.image.end(), 0);
    return h;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    GroupHom h{f.source, g.target, std::vector<int>(f.source->order)};
    for (int x = 0; x < f.source->order; ++x) h.image[x] = g.image[f.image[x]];
    return h;
}

GroupHom inverse_hom(const GroupHom& f) {
    GroupHom h{f.target, f.source, std::vector<int>(f.target->order, -1)};
    for (int x = 0; x < f.source->order; ++x) h.image[f.image[x]] = x;
    for (int v : h.image)
        if (v < 0) throw std::invalid_argument("inverse_hom: not bijective");
    return h;
}

bool validate_hom(const GroupHom& h, std::string* why) {
    if (static_cast<int>(h.image.size()) != h.source->order) {
        if (why) *why = "image table size mismatch";
        return false;
    }
    if (h.image[0] != 0) {
        if (why) *why = "identity not preserved";
        return false;
    }
    for (int a = 0; a < h.source->order; ++a)
        for (int b = 0; b < h.source->order; ++b)
            if (h.image[h.source->op(a, b)] != h.target->op(h.image[a], h.image[b])) {
                if (why) *why = "multiplicativity fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
                return false;
            }
    return true;
}

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
    std::vector<char> in(G.order, 0);
    in[0] = 1;
    std::vector<int> stack{0};
    for (int g : gens)
        if (!in[g]) {
            in[g] = 1;
            stack.push_back(g);
        }
    for (size_t i = 0; i < stack.size(); ++i)
        for (size_t j = 0; j < stack.size(); ++j) {
            int p = G.op(stack[i], stack[j]);
            if (!in[p]) {
                in[p] = 1;
                stack.push_back(p);
            }
        }
    std::vector<int> out;
    for (int x = 0; x < G.order; ++x)
        if (in[x]) out.push_back(x);
    return out;
}

std::vector<int> generating_set(const FiniteGroup& G) {
    std::vector<int> gens;
    std::vector<int> cur = subgroup_closure(G, {});
    while (static_cast<int>(cur.size()) < G.order) {
        int pick = -1;
        std::vector<char> in(G.order, 0);
        for (int x : cur) in[x] = 1;
        for (int x = 0; x < G.order; ++x)
            if (!in[x]) {
                pick = x;
                break;
            }
        gens.push_back(pick);
        cur = subgroup_closure(G, gens);
    }
    return gens;
}

namespace {

// Backtracking over generator images; extends partial hom by closure.
void hom_search(const FiniteGroup& S, const FiniteGroup& T, const std::vector<int>& gens, size_t gi,
                std::vector<int>& image, bool bijective_only,
                std::vector<GroupHom>& out, const GroupPtr& sp, const GroupPtr& tp) {
    if (gi == gens.size()) {
        // image is fully determined on the generated subgroup = whole group
        GroupHom h{sp, tp, image};
        std::string why;
        if (!bijective_only || h.is_bijective())
            if (validate_hom(h)) out.push_back(std::move(h));
        return;
    }
    int g = gens[gi];
    for (int t = 0; t < T.order; ++t) {
        if (bijective_only && T.element_order(t) != S.element_order(g)) continue;
        // tentatively extend: close the partial map
        std::vector<int> img = image;
        img[g] = t;
        // rebuild the closure of defined elements
        std::vector<int> defined;
        for (int x = 0; x < S.order; ++x)
            if (img[x] >= 0) defined.push_back(x);
        bool ok = true;
        for (size_t i = 0; i < defined.size() && ok; ++i)
            for (size_t j = 0; j < defined.size() && ok; ++j) {
                int p = S.op(defined[i], defined[j]);
                int ti2 = T.op(img[defined[i]], img[defined[j]]);
                if (img[p] < 0) {
                    img[p] = ti2;
                    defined.push_back(p);
                } else if (img[p] != ti2) {
                    ok = false;
                }
            }
        if (!ok) continue;
        hom_search(S, T, gens, gi + 1, img, bijective_only, out, sp, tp);
    }
}

}  // namespace

std::vector<GroupHom> isomorphisms(const GroupPtr& source, const GroupPtr& target, int cap) {
    if (source->order > cap) throw std::runtime_error("isomorphisms: order exceeds cap " + std::to_string(cap));
    std::vector<GroupHom> out;
    if (source->order != target->order) return out;
    std::vector<int> gens = generating_set(*source);
    std::vector<int> image(source->order, -1);
    image[0] = 0;
    hom_search(*source, *target, gens, 0, image, true, out, source, target);
    std::sort(out.begin(), out.end(), [](const GroupHom& a, const GroupHom& b) { return a.image < b.image; });
    return out;
}

std::vector<GroupHom> automorphisms(const GroupPtr& G, int cap) { return isomorphisms(G, G, cap); }

SubgroupView subgroup_as_group(const GroupPtr& G, const std::vector<int>& elements) {
    std::vector<int> elems = elements;
    std::sort(elems.begin(), elems.end());
    if (elems.empty() || elems[0] != 0) throw std::invalid_argument("subgroup_as_group: must contain the identity");
    std::vector<int> pos(G->order, -1);
    for (size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
    int m = static_cast<int>(elems.size());
    std::vector<int> table(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int p = G->op(elems[i], elems[j]);
            if (pos[p] < 0) throw std::invalid_argument("subgroup_as_group: not closed under multiplication");
            table[static_cast<size_t>(i) * m + j] = pos[p];
        }
    SubgroupView sv;
    sv.subgroup = make_group_from_table(std::move(table), m, G->name + "-sub" + std::to_string(m));
    sv.embed = elems;
    return sv;
}

GradingSurjection quotient(const GroupPtr& E, std::vector<int> B) {
    std::sort(B.begin(), B.end());
    B.erase(std::unique(B.begin(), B.end()), B.end());
    for (int x : B)
        if (x < 0 || x >= E->order) throw std::invalid_argument("quotient: element out of range");
    // subgroup check
    std::vector<char> in(E->order, 0);
    for (int x : B) in[x] = 1;
    if (B.empty() || !in[0]) throw std::invalid_argument("quotient: B does not contain the identity");
    for (int a : B)
        for (int b : B)
            if (!in[E->op(a, b)])
                throw std::invalid_argument("quotient: B not closed under multiplication at (" + std::to_string(a) +
                                            "," + std::to_string(b) + ")");
    for (int a : B)
        if (!in[E->inv[a]]) throw std::invalid_argument("quotient: B not closed under inverse");
    // normality check by exhaustive conjugation
    for (int g = 0; g < E->order; ++g)
        for (int b : B) {
            int c = E->op(E->op(g, b), E->inv[g]);
            if (!in[c])
                throw std::invalid_argument("quotient: B not normal; conjugation by element " + std::to_string(g) +
                                            " moves " + std::to_string(b) + " outside B");
        }

    int m = static_cast<int>(B.size());
    if (E->order % m != 0) throw std::logic_error("quotient: order not divisible");
    int q = E->order / m;

    // cosets keyed by minimal representative; identity coset first (min rep 0)
    std::vector<int> coset_of(E->order, -1);
    std::vector<int> reps;
    for (int x = 0; x < E->order; ++x) {
        if (coset_of[x] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int b : B) coset_of[E->op(x, b)] = id;
    }
    if (static_cast<int>(reps.size()) != q) throw std::logic_error("quotient: coset count mismatch");

    std::vector<int> table(static_cast<size_t>(q) * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) table[static_cast<size_t>(i) * q + j] = coset_of[E->op(reps[i], reps[j])];
    GroupPtr G = make_group_from_table(std::move(table), q, E->name + "/B" + std::to_string(m));

    GradingSurjection gs;
    gs.total = E;
    gs.grading = G;
    gs.proj = GroupHom{E, G, coset_of};
    gs.kernel = B;
    gs.section = reps;
    return gs;
}

}  // namespace gext
