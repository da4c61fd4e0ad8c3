#include "cycrw/universal.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace cycrw {

const char* method_name(ConjugacyMethod m) {
    switch (m) {
        case ConjugacyMethod::linear: return "linear";
        case ConjugacyMethod::quadratic: return "quadratic";
        default: return "oracle";
    }
}

UniversalContext::UniversalContext(Pregroup P) : P_(std::move(P)) {
    const auto report = check_axioms(P_, 1);
    if (!report.ok()) {
        for (int ax = 0; ax < 5; ++ax)
            if (!report.basic[static_cast<std::size_t>(ax)].holds)
                throw std::invalid_argument(std::string("pregroup violates axiom ") + axiom_name(static_cast<Axiom>(ax)));
    }
    system_ = derive_system(P_, SystemVariant::of_pregroup);

    const std::size_t n = P_.size();
    closure_.assign(n, {});
    parent_.assign(n, std::vector<std::pair<Element, Element>>(n, {kUndefined, kUndefined}));
    for (std::size_t a = 0; a < n; ++a) {
        auto& par = parent_[a];
        std::vector<Element> queue{static_cast<Element>(a)};
        par[a] = {static_cast<Element>(a), P_.epsilon()};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Element x = queue[head];
            for (std::size_t c = 0; c < n; ++c) {
                const auto ce = static_cast<Element>(c);
                const Element t = P_.triple(ce, x, P_.inverse(ce));
                if (t == kUndefined || par[static_cast<std::size_t>(t)].first != kUndefined) continue;
                par[static_cast<std::size_t>(t)] = {x, ce};
                queue.push_back(t);
            }
        }
        std::sort(queue.begin(), queue.end());
        closure_[a] = std::move(queue);
    }
}

ElementWord UniversalContext::inverse(const ElementWord& w) const {
    ElementWord out(w.rbegin(), w.rend());
    for (auto& e : out) e = P_.inverse(e);
    return out;
}

ElementWord UniversalContext::concat(const ElementWord& u, const ElementWord& v) const {
    ElementWord out = u;
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

ElementWord UniversalContext::reduce(const ElementWord& w) const {
    ElementWord st;
    st.reserve(w.size());
    const Element eps = P_.epsilon();
    for (Element x : w) {
        while (x != eps && !st.empty() && P_.defined(st.back(), x)) {
            x = P_.product(st.back(), x);
            st.pop_back();
        }
        if (x != eps) st.push_back(x);
    }
    return st;
}

bool UniversalContext::equal(const ElementWord& u0, const ElementWord& v0) const {
    const ElementWord u = reduce(u0), v = reduce(v0);
    if (u.size() != v.size()) return false;
    const std::size_t n = P_.size();
    std::vector<char> cur(n, 0), next(n, 0);
    cur[static_cast<std::size_t>(P_.epsilon())] = 1;
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::fill(next.begin(), next.end(), 0);
        bool any = false;
        const Element a = u[i], b = v[i];
        for (std::size_t cp = 0; cp < n; ++cp) {
            if (!cur[cp]) continue;
            const Element cbar = P_.inverse(static_cast<Element>(cp));
            // The carry is determined by c' and the two letters; it can be
            // read off through either inner product.
            Element candidates[2] = {kUndefined, kUndefined};
            if (const Element d = P_.product(cbar, a); d != kUndefined) candidates[0] = P_.product(P_.inverse(d), b);
            if (const Element e = P_.product(static_cast<Element>(cp), b); e != kUndefined)
                candidates[1] = P_.product(P_.inverse(a), e);
            for (Element c : candidates)
                if (c != kUndefined && P_.triple(cbar, a, c) == b) {
                    next[static_cast<std::size_t>(c)] = 1;
                    any = true;
                }
        }
        if (!any) return false;
        std::swap(cur, next);
    }
    return cur[static_cast<std::size_t>(P_.epsilon())] != 0;
}

std::vector<char> UniversalContext::feasible_carries(const ElementWord& w) const {
    const std::size_t n = P_.size();
    std::vector<char> ok((w.size() + 1) * n, 0);
    ok[w.size() * n + static_cast<std::size_t>(P_.epsilon())] = 1;
    for (std::size_t i = w.size(); i-- > 0;) {
        const char* after = &ok[(i + 1) * n];
        char* here = &ok[i * n];
        for (std::size_t cp = 0; cp < n; ++cp) {
            const Element cbar = P_.inverse(static_cast<Element>(cp));
            for (std::size_t c = 0; c < n && !here[cp]; ++c) {
                if (!after[c]) continue;
                const Element t = P_.triple(cbar, w[i], static_cast<Element>(c));
                if (t != kUndefined && t != P_.epsilon()) here[cp] = 1;
            }
        }
    }
    return ok;
}

ElementWord UniversalContext::shortlex_nf(const ElementWord& w0) const {
    std::vector<Element> carries;
    return shortlex_nf_reduced(reduce(w0), carries);
}

ElementWord UniversalContext::shortlex_nf_reduced(const ElementWord& w, std::vector<Element>& carries) const {
    carries.assign(w.size() + 1, P_.epsilon());
    if (w.size() <= 1) return w;
    const auto ok = feasible_carries(w);
    const std::size_t n = P_.size();
    ElementWord out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Element cbar = P_.inverse(carries[i]);
        Element best = kUndefined, best_carry = kUndefined;
        for (std::size_t c = 0; c < n; ++c) {
            if (!ok[(i + 1) * n + c]) continue;
            const Element t = P_.triple(cbar, w[i], static_cast<Element>(c));
            if (t == kUndefined || t == P_.epsilon()) continue;
            if (best == kUndefined || t < best) best = t, best_carry = static_cast<Element>(c);
        }
        if (best == kUndefined) throw std::logic_error("shortlex_nf lost its interleaving");
        out.push_back(best);
        carries[i + 1] = best_carry;
    }
    return out;
}

CyclicReduction UniversalContext::cyclic_reduce(const ElementWord& w) const {
    const ElementWord r = reduce(w);
    std::deque<Element> d(r.begin(), r.end());
    ElementWord moved;  // letters rotated from the back, oldest first
    const Element eps = P_.epsilon();
    while (d.size() >= 2 && P_.defined(d.back(), d.front())) {
        const Element last = d.back();
        d.pop_back();
        moved.push_back(last);
        Element x = P_.product(last, d.front());
        d.pop_front();
        while (x != eps && !d.empty() && P_.defined(x, d.front())) {
            x = P_.product(x, d.front());
            d.pop_front();
        }
        if (x != eps) d.push_front(x);
    }
    return {ElementWord(d.begin(), d.end()), reduce(ElementWord(moved.rbegin(), moved.rend()))};
}

bool UniversalContext::is_cyclically_reduced(const ElementWord& w) const {
    return is_reduced(w, P_) && (w.size() < 2 || !P_.defined(w.back(), w.front()));
}

std::optional<ElementWord> UniversalContext::preconjugate(const ElementWord& c, Element b) const {
    if (b == P_.epsilon() || c.empty()) return c;
    if (c.size() == 1) {
        const Element t = P_.triple(b, c[0], P_.inverse(b));
        if (t == kUndefined) return std::nullopt;
        return ElementWord{t};
    }
    const Element head = P_.product(b, c.front()), tail = P_.product(c.back(), P_.inverse(b));
    if (head == kUndefined || tail == kUndefined || head == P_.epsilon() || tail == P_.epsilon()) return std::nullopt;
    ElementWord out = c;
    out.front() = head;
    out.back() = tail;
    return out;
}

ElementWord UniversalContext::closure_conjugator(Element a, Element target) const {
    const auto& par = parent_.at(static_cast<std::size_t>(a));
    if (par.at(static_cast<std::size_t>(target)).first == kUndefined)
        throw std::invalid_argument("target is not in the closure");
    ElementWord out;
    for (Element x = target; x != a;) {
        const auto [prev, c] = par[static_cast<std::size_t>(x)];
        if (c != P_.epsilon()) out.push_back(c);
        x = prev;
    }
    return out;
}

ElementWord UniversalContext::assemble_certificate(const ElementWord& u, const ElementWord& v, const CyclicReduction& ru,
                                                   const CyclicReduction& rv, const ElementWord& y) const {
    ElementWord x = reduce(concat(concat(inverse(rv.conjugator), y), ru.conjugator));
    if (!equal(concat(concat(x, u), inverse(x)), v)) throw std::logic_error("conjugator certificate failed verification");
    return x;
}

ConjugacyAnswer UniversalContext::conjugate_quadratic(const ElementWord& u, const ElementWord& v) const {
    const auto ru = cyclic_reduce(u), rv = cyclic_reduce(v);
    const ElementWord &g = ru.word, &f = rv.word;
    if (g.size() != f.size()) return {};
    const std::size_t n = g.size();
    auto yes = [&](const ElementWord& y) { return ConjugacyAnswer{true, assemble_certificate(u, v, ru, rv, y)}; };
    if (n == 0) return yes({});
    if (n == 1) {
        const auto& cl = closure(g[0]);
        if (!std::binary_search(cl.begin(), cl.end(), f[0])) return {};
        return yes(closure_conjugator(g[0], f[0]));
    }
    for (std::size_t i = 0; i < n; ++i) {
        ElementWord rot(g.begin() + static_cast<std::ptrdiff_t>(i), g.end());
        rot.insert(rot.end(), g.begin(), g.begin() + static_cast<std::ptrdiff_t>(i));
        const ElementWord rho = inverse(ElementWord(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(i)));
        for (std::size_t b = 0; b < P_.size(); ++b) {
            const auto be = static_cast<Element>(b);
            const auto h = preconjugate(rot, be);
            if (!h || !equal(*h, f)) continue;
            ElementWord y;
            if (be != P_.epsilon()) y.push_back(be);
            y.insert(y.end(), rho.begin(), rho.end());
            return yes(y);
        }
    }
    return {};
}

}  // namespace cycrw
