#include "cycrw/fastconj.hpp"

#include <algorithm>

namespace cycrw {

namespace {

ElementWord rotate_word(const ElementWord& w, std::size_t s) {
    ElementWord r(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
    return r;
}

// Shared state for the trials over b: the normal form g of the cyclically
// reduced u, the normal form of g^2 and its carries, and the cyclically
// reduced v.
struct Setup {
    CyclicReduction ru, rv;
    ElementWord g, f, doubled;
    std::vector<Element> carries;
};

// y with y g y^-1 = f if the trial for b succeeds.
std::optional<ElementWord> trial(const Setup& st, Element b, const UniversalContext& U, LinearTrace& tr) {
    const Pregroup& P = U.pregroup();
    const ElementWord& g = st.g;
    const std::size_t n = g.size();
    ElementWord fb = st.f;
    if (b != P.epsilon()) {
        const Element head = P.product(P.inverse(b), fb.front()), tail = P.product(fb.back(), b);
        if (head == kUndefined || tail == kUndefined || head == P.epsilon() || tail == P.epsilon()) return std::nullopt;
        fb.front() = head;
        fb.back() = tail;
    }
    ++tr.conjugators_tried;
    auto witness = [&](std::size_t s) {
        ElementWord y;
        if (b != P.epsilon()) y.push_back(b);
        const ElementWord rho = U.inverse(ElementWord(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(s)));
        y.insert(y.end(), rho.begin(), rho.end());
        return y;
    };
    // Rotations starting at the first, second and last letter are compared
    // directly.
    for (std::size_t s : {std::size_t{0}, std::size_t{1}, n - 1})
        if (U.equal(fb, rotate_word(g, s))) return witness(s);
    if (n < 4) return std::nullopt;

    std::vector<Element> fcarries;
    const ElementWord nf = U.shortlex_nf_reduced(fb, fcarries);
    if (nf.size() != n) return std::nullopt;
    const Element last = nf.back();
    const ElementWord head(nf.begin(), nf.end() - 1);
    for (std::size_t s : kmp_search(head, st.doubled)) {
        if (s < 2 || s > n - 2) continue;
        ++tr.pattern_matches;
        // The window of the doubled normal form starting at s spells the
        // rotation at s followed by the carry after it, provided the carry
        // entering the window is neutral.
        if (st.carries[s] != P.epsilon()) continue;
        if (P.product(last, st.carries[s + n]) != st.doubled[s + n - 1]) continue;
        ++tr.seam_accepted;
        if (U.equal(fb, rotate_word(g, s))) return witness(s);
        ++tr.confirm_failures;
    }
    return std::nullopt;
}

// Handles everything except the per-b trials. Returns an answer when the
// inputs are decided without them.
std::optional<ConjugacyAnswer> prepare(const ElementWord& u, const ElementWord& v, const UniversalContext& U, Setup& st) {
    st.ru = U.cyclic_reduce(u);
    st.rv = U.cyclic_reduce(v);
    const std::size_t n = st.ru.word.size();
    auto yes = [&](const ElementWord& y) {
        return ConjugacyAnswer{true, U.assemble_certificate(u, v, st.ru, st.rv, y), ConjugacyMethod::linear};
    };
    ConjugacyAnswer no{false, std::nullopt, ConjugacyMethod::linear};
    if (n != st.rv.word.size()) return no;
    if (n == 0) return yes({});
    if (n == 1) {
        const Element a = st.ru.word[0], c = st.rv.word[0];
        const auto& cl = U.closure(a);
        if (!std::binary_search(cl.begin(), cl.end(), c)) return no;
        return yes(U.closure_conjugator(a, c));
    }
    // The normal form of a cyclically reduced word is again cyclically
    // reduced, and g g is reduced, so the doubled word has length 2n.
    st.g = U.shortlex_nf(st.ru.word);
    st.f = st.rv.word;
    ElementWord gg = st.g;
    gg.insert(gg.end(), st.g.begin(), st.g.end());
    st.doubled = U.shortlex_nf_reduced(gg, st.carries);
    return std::nullopt;
}

ConjugacyAnswer finish(const ElementWord& u, const ElementWord& v, const UniversalContext& U, const Setup& st,
                       const std::optional<ElementWord>& y) {
    if (!y) return {false, std::nullopt, ConjugacyMethod::linear};
    return {true, U.assemble_certificate(u, v, st.ru, st.rv, *y), ConjugacyMethod::linear};
}

void add(LinearTrace& into, const LinearTrace& t) {
    into.conjugators_tried += t.conjugators_tried;
    into.pattern_matches += t.pattern_matches;
    into.seam_accepted += t.seam_accepted;
    into.confirm_failures += t.confirm_failures;
}

}  // namespace

ConjugacyAnswer conjugate_linear_serial(const ElementWord& u, const ElementWord& v, const UniversalContext& U,
                                        LinearTrace* trace) {
    Setup st;
    if (auto early = prepare(u, v, U, st)) return *early;
    LinearTrace tr;
    std::optional<ElementWord> y;
    for (std::size_t b = 0; b < U.pregroup().size() && !y; ++b) y = trial(st, static_cast<Element>(b), U, tr);
    if (trace) add(*trace, tr);
    return finish(u, v, U, st, y);
}

ConjugacyAnswer conjugate_linear(const ElementWord& u, const ElementWord& v, const UniversalContext& U,
                                 LinearTrace* trace) {
    Setup st;
    if (auto early = prepare(u, v, U, st)) return *early;
    const auto count = static_cast<std::ptrdiff_t>(U.pregroup().size());
    std::vector<std::optional<ElementWord>> found(static_cast<std::size_t>(count));
    std::vector<LinearTrace> traces(static_cast<std::size_t>(count));
    // Trials past the least success are skipped, as in the serial loop.
    std::ptrdiff_t best = count;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < count; ++b) {
        std::ptrdiff_t current;
#pragma omp atomic read
        current = best;
        if (b > current) continue;
        found[static_cast<std::size_t>(b)] = trial(st, static_cast<Element>(b), U, traces[static_cast<std::size_t>(b)]);
        if (found[static_cast<std::size_t>(b)]) {
#pragma omp critical(cycrw_linear_best)
            best = std::min(best, b);
        }
    }
    LinearTrace tr;
    std::optional<ElementWord> y;
    for (std::ptrdiff_t b = 0; b < count; ++b) {
        if (b <= best) add(tr, traces[static_cast<std::size_t>(b)]);
        if (!y && found[static_cast<std::size_t>(b)]) y = found[static_cast<std::size_t>(b)];
    }
    if (trace) add(*trace, tr);
    return finish(u, v, U, st, y);
}

std::optional<ConjugacyAnswer> conjugate_oracle(const ElementWord& u, const ElementWord& v, const UniversalContext& U,
                                                std::size_t max_len) {
    const Pregroup& P = U.pregroup();
    const ElementWord target = U.reduce(v);
    const std::size_t want = target.size();
    ElementWord x;
    std::optional<ElementWord> hit;
    auto test = [&] {
        const ElementWord w = U.reduce(U.concat(U.concat(x, u), U.inverse(x)));
        if (w.size() == want && U.equal(w, target)) hit = x;
    };
    // Depth-first over reduced words of each length in turn, so shorter
    // conjugators are found first.
    auto extend = [&](auto&& self, std::size_t len) -> void {
        if (hit) return;
        if (x.size() == len) {
            test();
            return;
        }
        for (Element a : P.letters()) {
            if (!x.empty() && P.defined(x.back(), a)) continue;
            x.push_back(a);
            self(self, len);
            x.pop_back();
            if (hit) return;
        }
    };
    for (std::size_t len = 0; len <= max_len && !hit; ++len) extend(extend, len);
    if (!hit) return std::nullopt;
    return ConjugacyAnswer{true, *hit, ConjugacyMethod::oracle};
}

}  // namespace cycrw
