#include "cycrw/constructions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace cycrw {

// ---------------------------------------------------------------------------
// Finite groups

FiniteGroupTable::FiniteGroupTable(std::vector<std::string> names, std::vector<int> table)
    : names_(std::move(names)), table_(std::move(table)) {
    const int n = size();
    if (n == 0) throw InvalidGroup("a group needs at least one element");
    if (table_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw InvalidGroup("group table must be n x n");
    if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size())
        throw InvalidGroup("duplicate element name");
    for (int v : table_)
        if (v < 0 || v >= n) throw InvalidGroup("group table entry out of range");
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) identity_ = e;
    }
    if (identity_ < 0) throw InvalidGroup("no identity element");
    inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
        if (inverse_[static_cast<std::size_t>(a)] < 0) throw InvalidGroup("element " + names_[static_cast<std::size_t>(a)] + " has no inverse");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw InvalidGroup("product is not associative at " + name(a) + " " + name(b) + " " + name(c));
}

FiniteGroupTable FiniteGroupTable::cyclic(int n, const std::string& gen) {
    if (n < 1) throw InvalidGroup("cyclic group order must be positive");
    std::vector<std::string> names{"e"};
    for (int i = 1; i < n; ++i) names.push_back(i == 1 ? gen : gen + std::to_string(i));
    std::vector<int> t(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i * n + j)] = (i + j) % n;
    return FiniteGroupTable(std::move(names), std::move(t));
}

FiniteGroupTable FiniteGroupTable::symmetric(int k) {
    if (k < 1 || k > 5) throw InvalidGroup("symmetric groups are supported on 1 to 5 points");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto cycle_name = [&](const std::vector<int>& q) {
        std::string out;
        std::vector<char> seen(q.size(), 0);
        for (int s = 0; s < k; ++s) {
            if (seen[static_cast<std::size_t>(s)] || q[static_cast<std::size_t>(s)] == s) continue;
            out += '(';
            for (int x = s; !seen[static_cast<std::size_t>(x)]; x = q[static_cast<std::size_t>(x)]) {
                seen[static_cast<std::size_t>(x)] = 1;
                out += static_cast<char>('1' + x);
            }
            out += ')';
        }
        return out.empty() ? std::string("e") : out;
    };
    std::map<std::vector<int>, int> idx;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < perms.size(); ++i) {
        idx[perms[i]] = static_cast<int>(i);
        names.push_back(cycle_name(perms[i]));
    }
    const int n = static_cast<int>(perms.size());
    std::vector<int> t(static_cast<std::size_t>(n * n));
    // The right factor acts first.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> r(static_cast<std::size_t>(k));
            for (int x = 0; x < k; ++x)
                r[static_cast<std::size_t>(x)] = perms[static_cast<std::size_t>(i)][static_cast<std::size_t>(perms[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)])];
            t[static_cast<std::size_t>(i * n + j)] = idx.at(r);
        }
    return FiniteGroupTable(std::move(names), std::move(t));
}

int FiniteGroupTable::index(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw std::out_of_range("unknown group element '" + name + "'");
    return static_cast<int>(it - names_.begin());
}

std::vector<int> FiniteGroupTable::generated(const std::vector<int>& gens) const {
    std::vector<char> in(static_cast<std::size_t>(size()), 0);
    std::vector<int> queue{identity_};
    in[static_cast<std::size_t>(identity_)] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h)
        for (int g : gens) {
            const int y = mul(queue[h], g);
            if (!in[static_cast<std::size_t>(y)]) in[static_cast<std::size_t>(y)] = 1, queue.push_back(y);
        }
    std::sort(queue.begin(), queue.end());
    return queue;
}

bool FiniteGroupTable::is_subgroup(const std::vector<int>& s) const {
    std::set<int> in(s.begin(), s.end());
    if (!in.count(identity_)) return false;
    for (int a : in) {
        if (a < 0 || a >= size()) return false;
        for (int b : in)
            if (!in.count(mul(a, b))) return false;
    }
    return true;
}

void validate_embedding(const FiniteGroupTable& from, const FiniteGroupTable& to, const Embedding& e) {
    if (static_cast<int>(e.image.size()) != from.size()) throw InvalidEmbedding("embedding does not cover the subgroup");
    for (int v : e.image)
        if (v < 0 || v >= to.size()) throw InvalidEmbedding("embedding target out of range");
    if (std::set<int>(e.image.begin(), e.image.end()).size() != e.image.size())
        throw InvalidEmbedding("embedding is not injective");
    auto at = [&](int a) { return e.image[static_cast<std::size_t>(a)]; };
    for (int a = 0; a < from.size(); ++a)
        for (int b = 0; b < from.size(); ++b)
            if (at(from.mul(a, b)) != to.mul(at(a), at(b)))
                throw InvalidEmbedding("embedding does not preserve the product of " + from.name(a) + " and " + from.name(b));
}

int SubgroupIsomorphism::apply(int a) const {
    auto it = std::find(domain.begin(), domain.end(), a);
    if (it == domain.end()) throw std::out_of_range("element outside the isomorphism's domain");
    return image[static_cast<std::size_t>(it - domain.begin())];
}

int SubgroupIsomorphism::apply_inverse(int b) const {
    auto it = std::find(image.begin(), image.end(), b);
    if (it == image.end()) throw std::out_of_range("element outside the isomorphism's image");
    return domain[static_cast<std::size_t>(it - image.begin())];
}

// ---------------------------------------------------------------------------
// Amalgams

AmalgamPregroup amalgam_pregroup(const FiniteGroupTable& left, const FiniteGroupTable& right,
                                 const FiniteGroupTable& shared, const Embedding& into_left,
                                 const Embedding& into_right) {
    validate_embedding(shared, left, into_left);
    validate_embedding(shared, right, into_right);
    AmalgamPregroup out{Pregroup(), left, right, std::vector<Element>(static_cast<std::size_t>(left.size()), kUndefined),
                        std::vector<Element>(static_cast<std::size_t>(right.size()), kUndefined), {}, {}};
    std::vector<std::string> names;
    auto add = [&](const std::string& name, Side s) {
        names.push_back(name);
        out.side.push_back(s);
        return static_cast<Element>(names.size() - 1);
    };
    const int h1 = shared.identity();
    const Element eps = add(left.name(left.identity()), Side::shared);
    out.from_left[static_cast<std::size_t>(left.identity())] = eps;
    out.from_right[static_cast<std::size_t>(right.identity())] = eps;
    out.shared.push_back(eps);
    for (int h = 0; h < shared.size(); ++h) {
        if (h == h1) continue;
        const int a = into_left.image[static_cast<std::size_t>(h)], b = into_right.image[static_cast<std::size_t>(h)];
        const Element e = add(left.name(a), Side::shared);
        out.from_left[static_cast<std::size_t>(a)] = e;
        out.from_right[static_cast<std::size_t>(b)] = e;
        out.shared.push_back(e);
    }
    for (int a = 0; a < left.size(); ++a)
        if (out.from_left[static_cast<std::size_t>(a)] == kUndefined) out.from_left[static_cast<std::size_t>(a)] = add(left.name(a), Side::left);
    for (int b = 0; b < right.size(); ++b) {
        if (out.from_right[static_cast<std::size_t>(b)] != kUndefined) continue;
        std::string name = right.name(b);
        if (std::find(names.begin(), names.end(), name) != names.end()) name += "_2";
        out.from_right[static_cast<std::size_t>(b)] = add(name, Side::right);
    }
    std::sort(out.shared.begin(), out.shared.end());
    const std::size_t n = names.size();
    std::vector<Element> inverse(n, kUndefined), table(n * n, kUndefined);
    auto fill = [&](const FiniteGroupTable& G, const std::vector<Element>& emb) {
        for (int a = 0; a < G.size(); ++a) {
            const auto ea = static_cast<std::size_t>(emb[static_cast<std::size_t>(a)]);
            inverse[ea] = emb[static_cast<std::size_t>(G.inverse(a))];
            for (int b = 0; b < G.size(); ++b)
                table[ea * n + static_cast<std::size_t>(emb[static_cast<std::size_t>(b)])] = emb[static_cast<std::size_t>(G.mul(a, b))];
        }
    };
    fill(left, out.from_left);
    fill(right, out.from_right);
    out.pregroup = Pregroup(std::move(names), eps, std::move(inverse), std::move(table));
    return out;
}

// ---------------------------------------------------------------------------
// HNN extensions

namespace {

std::vector<int> coset_representatives(const FiniteGroupTable& H, const std::vector<int>& sub) {
    std::vector<int> rep(static_cast<std::size_t>(H.size()), -1);
    for (int u = 0; u < H.size(); ++u) {
        int best = -1;
        for (int s : sub) {
            const int x = H.mul(u, s);
            if (x == H.identity()) { best = x; break; }
            if (best < 0 || x < best) best = x;
        }
        rep[static_cast<std::size_t>(u)] = best;
    }
    return rep;
}

}  // namespace

bool HnnPregroup::in_domain(int h) const { return std::find(phi.domain.begin(), phi.domain.end(), h) != phi.domain.end(); }
bool HnnPregroup::in_image(int h) const { return std::find(phi.image.begin(), phi.image.end(), h) != phi.image.end(); }

Element HnnPregroup::element(int u, int sign, int v) const {
    const auto n = static_cast<std::size_t>(base.size());
    if (sign > 0) {
        const int r = domain_rep[static_cast<std::size_t>(u)];
        const int a = base.mul(base.inverse(r), u);
        return plus_index[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(base.mul(phi.apply(a), v))];
    }
    const int r = image_rep[static_cast<std::size_t>(u)];
    const int b = base.mul(base.inverse(r), u);
    return minus_index[static_cast<std::size_t>(r) * n + static_cast<std::size_t>(base.mul(phi.apply_inverse(b), v))];
}

HnnPregroup hnn_pregroup(const FiniteGroupTable& base, const SubgroupIsomorphism& phi) {
    const int n = base.size();
    if (phi.domain.size() != phi.image.size()) throw InvalidEmbedding("isomorphism sides differ in size");
    for (int x : phi.domain)
        if (x < 0 || x >= n) throw InvalidEmbedding("isomorphism domain out of range");
    for (int x : phi.image)
        if (x < 0 || x >= n) throw InvalidEmbedding("isomorphism image out of range");
    if (!base.is_subgroup(phi.domain) || std::set<int>(phi.domain.begin(), phi.domain.end()).size() != phi.domain.size())
        throw InvalidEmbedding("isomorphism domain is not a subgroup");
    if (!base.is_subgroup(phi.image) || std::set<int>(phi.image.begin(), phi.image.end()).size() != phi.image.size())
        throw InvalidEmbedding("isomorphism image is not a subgroup");
    for (int a : phi.domain)
        for (int b : phi.domain)
            if (phi.apply(base.mul(a, b)) != base.mul(phi.apply(a), phi.apply(b)))
                throw InvalidEmbedding("isomorphism does not preserve the product of " + base.name(a) + " and " + base.name(b));

    HnnPregroup out;
    out.base = base;
    out.phi = phi;
    out.domain_rep = coset_representatives(base, phi.domain);
    out.image_rep = coset_representatives(base, phi.image);
    const auto N = static_cast<std::size_t>(n);
    out.plus_index.assign(N * N, kUndefined);
    out.minus_index.assign(N * N, kUndefined);
    out.from_base.assign(N, kUndefined);

    std::vector<std::string> names;
    auto add = [&](const std::string& name, HnnForm f) {
        names.push_back(name);
        out.form.push_back(f);
        return static_cast<Element>(names.size() - 1);
    };
    const int id = base.identity();
    out.from_base[static_cast<std::size_t>(id)] = add(base.name(id), {id, 0, id});
    for (int h = 0; h < n; ++h)
        if (h != id) out.from_base[static_cast<std::size_t>(h)] = add(base.name(h), {h, 0, id});
    auto stable_name = [&](int u, const char* t, int v) {
        std::string s;
        if (u != id) s += base.name(u) + "*";
        s += t;
        if (v != id) s += "*" + base.name(v);
        return s;
    };
    for (int sign : {+1, -1}) {
        const auto& rep = sign > 0 ? out.domain_rep : out.image_rep;
        std::set<int> reps(rep.begin(), rep.end());
        // The representative of the subgroup itself comes first.
        std::vector<int> order{id};
        for (int r : reps)
            if (r != id) order.push_back(r);
        auto& index = sign > 0 ? out.plus_index : out.minus_index;
        for (int r : order)
            for (int v = 0; v < n; ++v) {
                const int vv = v == 0 ? id : (v == id ? 0 : v);  // identity first
                index[static_cast<std::size_t>(r) * N + static_cast<std::size_t>(vv)] =
                    add(stable_name(r, sign > 0 ? "t" : "T", vv), {r, sign, vv});
            }
    }

    const std::size_t size = names.size();
    std::vector<Element> inverse(size), table(size * size, kUndefined);
    for (std::size_t x = 0; x < size; ++x) {
        const HnnForm& f = out.form[x];
        if (f.sign == 0) {
            inverse[x] = out.from_base[static_cast<std::size_t>(base.inverse(f.left))];
        } else {
            inverse[x] = out.element(base.inverse(f.right), -f.sign, base.inverse(f.left));
        }
    }
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) {
            const HnnForm &p = out.form[x], &q = out.form[y];
            Element r = kUndefined;
            if (p.sign == 0 && q.sign == 0) {
                r = out.from_base[static_cast<std::size_t>(base.mul(p.left, q.left))];
            } else if (p.sign == 0) {
                r = out.element(base.mul(p.left, q.left), q.sign, q.right);
            } else if (q.sign == 0) {
                r = out.element(p.left, p.sign, base.mul(p.right, q.left));
            } else if (p.sign != q.sign) {
                const int w = base.mul(p.right, q.left);
                // t w T = phi^-1(w) for w in B; T w t = phi(w) for w in A.
                if (p.sign > 0 && out.in_image(w))
                    r = out.from_base[static_cast<std::size_t>(base.mul(base.mul(p.left, phi.apply_inverse(w)), q.right))];
                else if (p.sign < 0 && out.in_domain(w))
                    r = out.from_base[static_cast<std::size_t>(base.mul(base.mul(p.left, phi.apply(w)), q.right))];
            }
            table[x * size + y] = r;
        }
    out.pregroup = Pregroup(std::move(names), out.from_base[static_cast<std::size_t>(id)], std::move(inverse), std::move(table));
    return out;
}

StandardForm standard_cyclic_form(const ElementWord& c, const HnnPregroup& ctx) {
    const Pregroup& P = ctx.pregroup;
    if (ctx.form.size() != P.size()) throw NotHnnContext("context is not an HNN pregroup");
    if (c.empty() || (c.size() == 1 && ctx.in_base(c[0]))) throw InHSubgroup("word lies in the base group");
    if (!is_reduced(c, P) || (c.size() >= 2 && P.defined(c.back(), c.front())))
        throw std::invalid_argument("standard_cyclic_form expects a cyclically reduced word");
    const FiniteGroupTable& H = ctx.base;
    StandardForm out;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        const HnnForm& cur = ctx.form[static_cast<std::size_t>(c[i])];
        const HnnForm& next = ctx.form[static_cast<std::size_t>(c[(i + 1) % n])];
        if (cur.sign == 0) throw std::logic_error("base letter inside a cyclically reduced word");
        const int z = H.mul(cur.right, next.left);
        out.signs.push_back(cur.sign);
        out.z.push_back(z);
        out.word.push_back(ctx.element(H.identity(), cur.sign, z));
    }
    const int u1 = ctx.form[static_cast<std::size_t>(c[0])].left;
    if (u1 != H.identity()) out.conjugator.push_back(ctx.from_base[static_cast<std::size_t>(H.inverse(u1))]);
    if (!britton_cyclic(out, ctx)) throw std::logic_error("standard form violates the Britton condition");
    return out;
}

bool britton_cyclic(const StandardForm& s, const HnnPregroup& ctx) {
    const std::size_t n = s.signs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int e = s.signs[i], e2 = s.signs[(i + 1) % n], z = s.z[i];
        if (e < 0 && e2 > 0 && ctx.in_domain(z)) return false;
        if (e > 0 && e2 < 0 && ctx.in_image(z)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Classical criteria

namespace {

ElementWord rotate_word(const ElementWord& w, std::size_t i) {
    ElementWord r(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    return r;
}

ElementWord conjugate_by(const Pregroup& P, Element c, const ElementWord& w) {
    ElementWord out;
    if (c != P.epsilon()) out.push_back(P.inverse(c));
    out.insert(out.end(), w.begin(), w.end());
    if (c != P.epsilon()) out.push_back(c);
    return out;
}

// a^-1 x a inside a factor, when x and a both lie in it.
Element factor_conjugate(const AmalgamPregroup& ctx, Element x, Element a, Side factor) {
    if (!ctx.in_factor(x, factor) || !ctx.in_factor(a, factor)) return kUndefined;
    const Pregroup& P = ctx.pregroup;
    return P.product(P.product(P.inverse(a), x), a);
}

std::vector<Element> factor_elements(const AmalgamPregroup& ctx, Side factor) {
    std::vector<Element> out;
    for (std::size_t e = 0; e < ctx.side.size(); ++e)
        if (ctx.in_factor(static_cast<Element>(e), factor)) out.push_back(static_cast<Element>(e));
    return out;
}

}  // namespace

MksVerdict verify_mks(const ElementWord& g, const ElementWord& f, const AmalgamPregroup& ctx, const UniversalContext& U) {
    const Pregroup& P = ctx.pregroup;
    if (ctx.side.size() != P.size() || !(U.pregroup() == P)) throw std::invalid_argument("context is not this amalgam");
    MksVerdict v;
    v.g = U.cyclic_reduce(g).word;
    v.f = U.cyclic_reduce(f).word;
    if (v.g.size() != v.f.size()) return v;
    const std::size_t n = v.g.size();
    if (n == 0) {
        v.case_number = 1;
        return v;
    }
    if (n >= 2) {
        for (std::size_t i = 0; i < n; ++i) {
            const ElementWord rot = rotate_word(v.g, i);
            for (Element h : ctx.shared)
                if (U.equal(conjugate_by(P, h, rot), v.f)) {
                    v.case_number = 3;
                    v.rotation = i;
                    v.shared_conjugator = h;
                    return v;
                }
        }
        return v;
    }
    const Element gx = v.g[0], fx = v.f[0];
    auto in_shared = [&](Element e) { return ctx.side[static_cast<std::size_t>(e)] == Side::shared; };
    const std::vector<Element> left = factor_elements(ctx, Side::left), right = factor_elements(ctx, Side::right);

    // Breadth-first search from f to g through factor conjugations whose
    // intermediate terms lie in the shared subgroup.
    std::map<Element, std::pair<Element, Element>> parent{{fx, {kUndefined, kUndefined}}};
    std::deque<Element> todo{fx};
    bool touches_shared = in_shared(fx);
    while (!todo.empty() && !parent.count(gx)) {
        const Element x = todo.front();
        todo.pop_front();
        for (Side s : {Side::left, Side::right})
            for (Element a : s == Side::left ? left : right) {
                const Element y = factor_conjugate(ctx, x, a, s);
                if (y == kUndefined || parent.count(y)) continue;
                if (y != gx && !in_shared(y)) continue;
                parent[y] = {x, a};
                todo.push_back(y);
            }
    }
    if (!parent.count(gx)) return v;
    for (Element x = gx; x != kUndefined; x = parent[x].first) {
        v.chain.push_back(x);
        touches_shared = touches_shared || in_shared(x);
        if (parent[x].second != kUndefined) v.chain_conjugators.push_back(parent[x].second);
    }
    std::reverse(v.chain.begin(), v.chain.end());
    std::reverse(v.chain_conjugators.begin(), v.chain_conjugators.end());
    if (touches_shared) {
        v.case_number = 1;
        return v;
    }
    // Both outside the shared subgroup and linked directly: same factor.
    v.case_number = 2;
    v.factor_conjugator = v.chain_conjugators.empty() ? P.epsilon() : v.chain_conjugators.front();
    v.chain.clear();
    v.chain_conjugators.clear();
    return v;
}

bool replay_mks(const MksVerdict& v, const AmalgamPregroup& ctx, const UniversalContext& U) {
    const Pregroup& P = ctx.pregroup;
    auto in_shared = [&](Element e) { return ctx.side[static_cast<std::size_t>(e)] == Side::shared; };
    auto link = [&](Element x, Element a, Element y) {
        for (Side s : {Side::left, Side::right})
            if (factor_conjugate(ctx, x, a, s) == y) return true;
        return false;
    };
    switch (v.case_number) {
        case 1: {
            if (v.g.empty()) return v.f.empty();
            if (v.g.size() != 1 || v.f.size() != 1) return false;
            if (v.chain.empty() || v.chain.front() != v.f[0] || v.chain.back() != v.g[0]) return false;
            if (v.chain_conjugators.size() + 1 != v.chain.size()) return false;
            bool touches = false;
            for (std::size_t i = 0; i < v.chain.size(); ++i) {
                touches = touches || in_shared(v.chain[i]);
                if (i > 0 && i + 1 < v.chain.size() && !in_shared(v.chain[i])) return false;
                if (i + 1 < v.chain.size() && !link(v.chain[i], v.chain_conjugators[i], v.chain[i + 1])) return false;
            }
            return touches;
        }
        case 2:
            return v.g.size() == 1 && v.f.size() == 1 && !in_shared(v.g[0]) && !in_shared(v.f[0]) &&
                   link(v.f[0], v.factor_conjugator, v.g[0]);
        case 3:
            return v.g.size() >= 2 && v.rotation < v.g.size() && in_shared(v.shared_conjugator) &&
                   U.equal(conjugate_by(P, v.shared_conjugator, rotate_word(v.g, v.rotation)), v.f);
        default:
            return false;
    }
}

namespace {

int apply_link(const HnnPregroup& ctx, int x, int delta, int k) {
    const FiniteGroupTable& H = ctx.base;
    int y = x;
    if (delta > 0) {
        if (!ctx.in_domain(x)) return -1;
        y = ctx.phi.apply(x);
    } else if (delta < 0) {
        if (!ctx.in_image(x)) return -1;
        y = ctx.phi.apply_inverse(x);
    }
    return H.mul(H.mul(H.inverse(k), y), k);
}

}  // namespace

CollinsVerdict verify_collins(const ElementWord& g, const ElementWord& f, const HnnPregroup& ctx, const UniversalContext& U) {
    const Pregroup& P = ctx.pregroup;
    if (ctx.form.size() != P.size() || !(U.pregroup() == P)) throw NotHnnContext("context is not this HNN extension");
    const FiniteGroupTable& H = ctx.base;
    CollinsVerdict v;
    v.g = U.cyclic_reduce(g).word;
    v.f = U.cyclic_reduce(f).word;
    if (v.g.size() != v.f.size()) return v;
    auto base_of = [&](const ElementWord& w) { return w.empty() ? H.identity() : ctx.form[static_cast<std::size_t>(w[0])].left; };
    const bool g_base = v.g.empty() || ctx.in_base(v.g[0]);
    const bool f_base = v.f.empty() || ctx.in_base(v.f[0]);
    if (g_base != f_base) return v;
    if (g_base) {
        const int gb = base_of(v.g), fb = base_of(v.f);
        auto in_ab = [&](int x) { return ctx.in_domain(x) || ctx.in_image(x); };
        v.start = fb;
        if (fb == gb && in_ab(fb)) {
            v.case_number = 1;
            return v;
        }
        // Chains: an optional leading base conjugation into A u B, then
        // stable-letter links through A u B, the last of which may land on g.
        struct Node {
            int prev;
            CollinsLink link;
        };
        std::map<int, Node> seen;
        std::deque<int> todo;
        bool reaches_ab = in_ab(fb);
        if (in_ab(fb)) {
            seen[fb] = {-1, {}};
            todo.push_back(fb);
        }
        for (int k = 0; k < H.size(); ++k) {
            const int y = apply_link(ctx, fb, 0, k);
            if (in_ab(y)) reaches_ab = true;
            if ((in_ab(y) || y == gb) && !seen.count(y) && y != fb) {
                seen[y] = {fb, {0, k, y}};
                if (y != gb) todo.push_back(y);
            }
        }
        if (!reaches_ab) {
            // Not conjugate into A u B: only base conjugation is possible.
            if (fb == gb) {
                v.case_number = 2;
                v.base_conjugator = H.identity();
                return v;
            }
            if (seen.count(gb)) {
                v.case_number = 2;
                v.base_conjugator = seen[gb].link.k;
            }
            return v;
        }
        while (!todo.empty() && !seen.count(gb)) {
            const int x = todo.front();
            todo.pop_front();
            for (int delta : {+1, -1})
                for (int k = 0; k < H.size(); ++k) {
                    const int y = apply_link(ctx, x, delta, k);
                    if (y < 0 || seen.count(y) || y == fb) continue;
                    if (!in_ab(y) && y != gb) continue;
                    seen[y] = {x, {delta, k, y}};
                    todo.push_back(y);
                }
        }
        if (fb == gb) {
            v.case_number = 1;
            return v;
        }
        if (!seen.count(gb)) return v;
        for (int x = gb; x != fb && seen.at(x).prev != -1; x = seen.at(x).prev) v.chain.push_back(seen.at(x).link);
        std::reverse(v.chain.begin(), v.chain.end());
        v.case_number = 1;
        return v;
    }
    const StandardForm sg = standard_cyclic_form(v.g, ctx), sf = standard_cyclic_form(v.f, ctx);
    v.g = sg.word;
    v.f = sf.word;
    const std::size_t n = v.g.size();
    for (std::size_t j = 0; j < n; ++j) {
        const ElementWord rot = rotate_word(v.g, j);
        // With t^-1 a t = phi(a), the leading c^-1 is absorbed by t when
        // c lies in A and by t^-1 when c lies in B.
        const auto& side = sg.signs[j] > 0 ? ctx.phi.domain : ctx.phi.image;
        for (int c : side)
            if (U.equal(conjugate_by(P, ctx.from_base[static_cast<std::size_t>(c)], rot), v.f)) {
                v.case_number = 3;
                v.rotation = j;
                v.c = c;
                return v;
            }
    }
    return v;
}

bool replay_collins(const CollinsVerdict& v, const HnnPregroup& ctx, const UniversalContext& U) {
    const FiniteGroupTable& H = ctx.base;
    auto in_ab = [&](int x) { return ctx.in_domain(x) || ctx.in_image(x); };
    auto base_of = [&](const ElementWord& w) -> int {
        if (w.empty()) return H.identity();
        if (w.size() != 1 || !ctx.in_base(w[0])) return -1;
        return ctx.form[static_cast<std::size_t>(w[0])].left;
    };
    switch (v.case_number) {
        case 1: {
            const int fb = base_of(v.f), gb = base_of(v.g);
            if (fb < 0 || gb < 0 || v.start != fb) return false;
            int x = fb;
            for (std::size_t i = 0; i < v.chain.size(); ++i) {
                const auto& l = v.chain[i];
                if (l.delta == 0 && i != 0) return false;  // base conjugation only leads
                if (l.delta != 0 && !in_ab(x)) return false;
                if (apply_link(ctx, x, l.delta, l.k) != l.to) return false;
                if (i + 1 < v.chain.size() && !in_ab(l.to)) return false;
                x = l.to;
            }
            return x == gb && (in_ab(fb) || in_ab(gb) || !v.chain.empty() || fb == gb);
        }
        case 2: {
            const int fb = base_of(v.f), gb = base_of(v.g);
            return fb >= 0 && gb >= 0 && v.base_conjugator >= 0 && apply_link(ctx, fb, 0, v.base_conjugator) == gb;
        }
        case 3: {
            if (v.g.empty() || v.rotation >= v.g.size()) return false;
            const HnnForm& lead = ctx.form[static_cast<std::size_t>(v.g[v.rotation])];
            const bool side_ok = lead.sign > 0 ? ctx.in_domain(v.c) : ctx.in_image(v.c);
            return side_ok && U.equal(conjugate_by(ctx.pregroup, ctx.from_base[static_cast<std::size_t>(v.c)],
                                                   rotate_word(v.g, v.rotation)),
                                      v.f);
        }
        default:
            return false;
    }
}

}  // namespace cycrw
