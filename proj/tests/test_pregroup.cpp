#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "cycrw/pregroup.hpp"
#include "doctest.h"
#include "pregroup_fixtures.hpp"
#include "test_util.hpp"

using namespace cycrw;
using namespace fixtures;

namespace {

// Restates each axiom for a single witness tuple; true when the tuple
// really violates the axiom.
bool replays(const Pregroup& P, Axiom ax, const std::vector<Element>& w) {
    const Element e = P.epsilon();
    auto def = [&](Element a, Element b) { return P.product(a, b) != kUndefined; };
    auto mul = [&](Element a, Element b) { return P.product(a, b); };
    switch (ax) {
        case Axiom::P1: return !(mul(w[0], e) == w[0] && mul(e, w[0]) == w[0]);
        case Axiom::P2: return !(mul(P.inverse(w[0]), w[0]) == e && mul(w[0], P.inverse(w[0])) == e);
        case Axiom::P3: return def(w[0], w[1]) && mul(P.inverse(w[1]), P.inverse(w[0])) != P.inverse(mul(w[0], w[1]));
        case Axiom::P4: {
            if (!def(w[0], w[1]) || !def(w[1], w[2])) return false;
            const Element l = mul(mul(w[0], w[1]), w[2]), r = mul(w[0], mul(w[1], w[2]));
            return l != r;
        }
        case Axiom::P5: {
            if (!def(w[0], w[1]) || !def(w[1], w[2]) || !def(w[2], w[3])) return false;
            auto three = [&](Element a, Element b, Element c) {
                return (def(a, b) && def(mul(a, b), c)) || (def(b, c) && def(a, mul(b, c)));
            };
            return !three(w[0], w[1], w[2]) && !three(w[1], w[2], w[3]);
        }
        default: return false;
    }
}

std::set<Element> set_of(const Pregroup& P, std::initializer_list<const char*> names) {
    std::set<Element> s;
    for (auto n : names) s.insert(P.index(n));
    return s;
}

Pregroup without_entry(const Pregroup& P, Element a, Element b) {
    auto t = P.table();
    t[static_cast<std::size_t>(a) * P.size() + static_cast<std::size_t>(b)] = kUndefined;
    std::vector<Element> inv;
    for (std::size_t i = 0; i < P.size(); ++i) inv.push_back(P.inverse(static_cast<Element>(i)));
    return Pregroup(P.names(), P.epsilon(), inv, t);
}

std::vector<Pregroup> corpus() { return {dinf(), free_rank_one(), cyclic_group(5), s3(), amalgam_z4_z6().P}; }

// Shortest word equal to w in the Thue congruence, by breadth-first search
// over words no longer than |w| + 1.
std::size_t geodesic_length(const Word& w, const RewriteSystem& S) {
    std::set<Word> seen{w};
    std::deque<Word> todo{w};
    std::size_t best = w.size();
    const std::size_t cap = w.size() + 1;
    std::vector<std::pair<Word, Word>> moves;
    for (const auto& r : S.rules()) {
        moves.emplace_back(r.lhs, r.rhs);
        moves.emplace_back(r.rhs, r.lhs);
    }
    while (!todo.empty()) {
        Word x = todo.front();
        todo.pop_front();
        best = std::min(best, x.size());
        for (const auto& [l, r] : moves) {
            if (l.empty() || l.size() > x.size()) continue;
            for (std::size_t i = 0; i + l.size() <= x.size(); ++i) {
                if (!std::equal(l.begin(), l.end(), x.begin() + static_cast<std::ptrdiff_t>(i))) continue;
                Word y(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i));
                y.insert(y.end(), r.begin(), r.end());
                y.insert(y.end(), x.begin() + static_cast<std::ptrdiff_t>(i + l.size()), x.end());
                if (y.size() <= cap && seen.insert(y).second) todo.push_back(y);
            }
        }
    }
    return best;
}

}  // namespace

TEST_CASE("construction validation") {
    CHECK_THROWS_AS(Pregroup({"e", "a"}, 0, {0, 0}, {0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Pregroup({"e", "a"}, 0, {1, 0}, {0, 1, 1, 0}), std::invalid_argument);  // moves e
    CHECK_THROWS_AS(Pregroup({"e", "a"}, 0, {0, 1}, {0, 1, 1, 7}), std::invalid_argument);
    CHECK_THROWS_AS(Pregroup({"e", "e"}, 0, {0, 1}, {0, 1, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Pregroup::from_entries({"e", "a"}, "e", {}, {{"a", "a", "e"}, {"a", "a", "a"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Pregroup::from_entries({"e", "a"}, "e", {}, {{"a", "q", "e"}}), std::invalid_argument);
}

TEST_CASE("from_entries fills the neutral rows and self-inverses") {
    auto P = dinf();
    const Element e = P.epsilon(), a = P.index("a"), b = P.index("b");
    CHECK(P.product(e, a) == a);
    CHECK(P.product(b, e) == b);
    CHECK(P.inverse(a) == a);
    CHECK_FALSE(P.defined(a, b));
    CHECK(P.letters() == std::vector<Element>{a, b});
    CHECK(P.triple(a, a, b) == b);
    CHECK(P.triple(a, b, b) == a);
    CHECK(P.triple(a, b, a) == kUndefined);
    CHECK(P.format(P.parse("a e b")) == "a b");
    auto G = P.gamma_alphabet();
    CHECK(G.size() == 2);
    CHECK(G.token(0) == "a");
    CHECK(P.from_gamma(P.to_gamma({a, b, a})) == ElementWord{a, b, a});
    CHECK_THROWS(P.to_gamma({e}));
    auto F = free_rank_one();
    CHECK(F.inverse(F.index("a")) == F.index("A"));
    CHECK(F.gamma_alphabet().inverse(0) == 1);
}

TEST_CASE("valid pregroups pass all basic axioms") {
    for (const auto& P : corpus()) {
        auto r = check_axioms(P);
        CHECK(r.ok());
        for (const auto& v : r.basic) CHECK(v.violations == 0);
    }
}

TEST_CASE("missing self-cancellation is reported as a P2 violation") {
    auto P = dinf();
    auto Q = without_entry(P, P.index("a"), P.index("a"));
    auto r = check_axioms(Q);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r[Axiom::P2].holds);
    REQUIRE(r[Axiom::P2].witnesses.size() == 1);
    CHECK(r[Axiom::P2].witnesses[0] == std::vector<Element>{Q.index("a")});
}

TEST_CASE("every witness of a corrupted table replays, and serial equals parallel") {
    auto base = amalgam_z4_z6().P;
    const auto n = static_cast<Element>(base.size());
    std::size_t mutants = 0;
    for (Element a = 1; a < n; ++a)
        for (Element b = 1; b < n; ++b) {
            if (!base.defined(a, b)) continue;
            auto Q = without_entry(base, a, b);
            ++mutants;
            auto par = check_axioms(Q, 1000), ser = check_axioms_serial(Q, 1000);
            CHECK_FALSE(par.ok());
            for (int ax = 0; ax < 5; ++ax) {
                const auto& v = par.basic[static_cast<std::size_t>(ax)];
                CHECK(v.violations == ser.basic[static_cast<std::size_t>(ax)].violations);
                CHECK(v.witnesses == ser.basic[static_cast<std::size_t>(ax)].witnesses);
                CHECK(v.holds == (v.violations == 0));
                for (const auto& w : v.witnesses) CHECK(replays(Q, static_cast<Axiom>(ax), w));
            }
        }
    CHECK(mutants > 20);
}

TEST_CASE("P6, P7 and P8 on the corpus") {
    // Full group tables: everything is in the canonical subgroup.
    for (const auto& P : {cyclic_group(5), s3()}) {
        CHECK(check_p6(P).holds);
        CHECK(check_p7(P).holds);
        CHECK(check_p8(P).holds);
    }
    auto am = amalgam_z4_z6().P;
    CHECK(check_p6(am).holds);
    CHECK(check_p7(am).holds);
    auto p8 = check_p8(am);
    CHECK_FALSE(p8.holds);
    // x * x = h and y * y = y2 are not violations; x3 * x3 = h is in H.
    // y * y = y2: none of y, y, y2 lies in {e, h}.
    const std::vector<Element> yy{am.index("y"), am.index("y")};
    CHECK(std::find(p8.witnesses.begin(), p8.witnesses.end(), yy) != p8.witnesses.end());

    AxiomReport r = check_axioms(am);
    add_extra_axioms(am, r);
    CHECK(r.p6->holds);
    CHECK(r.p7->holds);
    CHECK_FALSE(r[Axiom::P8].holds);

    // D-infinity: no product of two letters is defined except aa and bb,
    // both ending in e.
    auto D = dinf();
    CHECK(check_p6(D).holds);
    CHECK(check_p8(D).holds);
}

TEST_CASE("P8 verdict matches a direct count") {
    auto am = amalgam_z4_z6().P;
    auto H = canonical_subgroup(am);
    auto in = [&](Element x) { return std::find(H.begin(), H.end(), x) != H.end(); };
    std::size_t expected = 0;
    for (Element a = 0; a < static_cast<Element>(am.size()); ++a)
        for (Element b = 0; b < static_cast<Element>(am.size()); ++b)
            if (am.defined(a, b) && !in(a) && !in(b) && !in(am.product(a, b))) ++expected;
    // Within Z4: x x, x3 x3 give h; x x3 gives e: all in H, so none count.
    // Within Z6: pairs of non-H elements whose sum mod 6 is not 0 or 3.
    std::size_t by_hand = 0;
    for (int i : {1, 2, 4, 5})
        for (int j : {1, 2, 4, 5})
            if ((i + j) % 3 != 0) ++by_hand;
    CHECK(expected == by_hand);
    CHECK(check_p8(am, 100).violations == by_hand);
}

TEST_CASE("canonical subgroup") {
    auto D = dinf();
    CHECK(canonical_subgroup(D) == std::vector<Element>{D.epsilon()});
    auto am = amalgam_z4_z6().P;
    auto H = canonical_subgroup(am);
    CHECK(std::set<Element>(H.begin(), H.end()) == set_of(am, {"e", "h"}));
    auto S = s3();
    CHECK(canonical_subgroup(S).size() == 6);
    for (const auto& P : corpus()) {
        auto G = canonical_subgroup(P);
        std::set<Element> g(G.begin(), G.end());
        for (Element x : G) {
            CHECK(g.count(P.inverse(x)) == 1);
            for (Element y : G) CHECK(g.count(P.product(x, y)) == 1);
        }
    }
}

TEST_CASE("systems derived from small pregroups") {
    auto D = dinf();
    auto S = derive_system(D, SystemVariant::of_pregroup);
    const auto& A = S.alphabet();
    CHECK(S.rules().size() == 2);
    CHECK(S.rules()[0] == testutil::rule(A, "a a ->"));
    CHECK(S.rules()[1] == testutil::rule(A, "b b ->"));
    CHECK(S.is_standard());
    CHECK(S.is_thue());
    CHECK(S.m() == 2);

    auto F = free_rank_one();
    auto SF = derive_system(F, SystemVariant::of_pregroup);
    CHECK(SF.rules().size() == 2);
    CHECK(SF.rules()[0] == testutil::rule(SF.alphabet(), "a A ->"));
    CHECK(SF.rules()[1] == testutil::rule(SF.alphabet(), "A a ->"));

    auto E = derive_system(D, SystemVariant::with_epsilon);
    const auto& EA = E.alphabet();
    CHECK(EA.size() == 3);
    CHECK(std::find(E.rules().begin(), E.rules().end(), testutil::rule(EA, "e ->")) != E.rules().end());
    CHECK(std::find(E.rules().begin(), E.rules().end(), testutil::rule(EA, "a a -> e")) != E.rules().end());
    CHECK(std::find(E.rules().begin(), E.rules().end(), testutil::rule(EA, "a e -> a")) != E.rules().end());
}

TEST_CASE("amalgam symmetric rules link letters of different factors") {
    auto [P, left, right] = amalgam_z4_z6();
    auto S = derive_system(P, SystemVariant::of_pregroup);
    const auto& A = S.alphabet();
    auto in = [](const std::vector<std::string>& v, const std::string& s) {
        return std::find(v.begin(), v.end(), s) != v.end();
    };
    std::set<Word> sides;
    std::size_t sym = 0;
    for (const auto& r : S.rules()) {
        if (!r.symmetric) {
            CHECK(r.lhs.size() == 2);
            CHECK(r.rhs.size() <= 1);
            continue;
        }
        ++sym;
        sides.insert(r.lhs);
        sides.insert(r.rhs);
    }
    std::set<Word> expected;
    for (const auto& a : left)
        for (const auto& b : right) {
            expected.insert(A.parse(a + " " + b));
            expected.insert(A.parse(b + " " + a));
        }
    CHECK(sides == expected);
    // Each two-letter word across factors pairs with exactly one other (via h).
    CHECK(sym == expected.size() / 2);
    for (const auto& r : S.rules())
        if (r.symmetric) {
            const auto& a = A.token(r.lhs[0]);
            CHECK((in(left, a) || in(right, a)));
        }
}

TEST_CASE("reduced words") {
    auto D = dinf();
    CHECK(is_reduced({}, D));
    CHECK(is_reduced(D.parse("a"), D));
    CHECK(is_reduced(D.parse("a b a b"), D));
    CHECK_FALSE(is_reduced(D.parse("a a"), D));
    CHECK_FALSE(is_reduced({D.epsilon()}, D));
    auto [P, left, right] = amalgam_z4_z6();
    CHECK(is_reduced(P.parse("x y x3 y4 x y5"), P));
    CHECK_FALSE(is_reduced(P.parse("x h"), P));
}

TEST_CASE("key lemma holds on valid pregroups") {
    for (const auto& P : corpus()) {
        auto par = key_lemma_check(P);
        CHECK(par.ok());
        auto ser = key_lemma_check_serial(P);
        for (std::size_t i = 0; i < 5; ++i) CHECK(par.parts[i].violations == ser.parts[i].violations);
    }
}

TEST_CASE("key lemma mutation harness pinpoints the first part") {
    // Removing the entry for xy breaks part 1 at a = [xy], b = y^-1: ab is
    // still x, but x y is now undefined.
    for (const auto& base : {s3(), amalgam_z4_z6().P}) {
        const auto n = static_cast<Element>(base.size());
        for (Element x = 1; x < n; ++x)
            for (Element y = 1; y < n; ++y) {
                if (!base.defined(x, y)) continue;
                auto Q = without_entry(base, x, y);
                auto par = key_lemma_check(Q, 1000), ser = key_lemma_check_serial(Q, 1000);
                CHECK_FALSE(par.parts[0].holds);
                const std::vector<Element> w{base.product(x, y), base.inverse(y)};
                const auto& ws = par.parts[0].witnesses;
                CHECK(std::find(ws.begin(), ws.end(), w) != ws.end());
                for (std::size_t i = 0; i < 5; ++i) {
                    CHECK(par.parts[i].violations == ser.parts[i].violations);
                    CHECK(par.parts[i].witnesses == ser.parts[i].witnesses);
                }
            }
    }
}

TEST_CASE("the system with the neutral letter is strongly confluent") {
    for (const auto& P : corpus()) {
        auto S = derive_system(P, SystemVariant::with_epsilon);
        auto rep = check_strong_confluence(S);
        CHECK(rep.ok);
        CHECK(S.is_thue());
    }
}

TEST_CASE("greedy reduction in the pregroup system reaches geodesic length") {
    for (const auto& P : corpus()) {
        auto S = derive_system(P, SystemVariant::of_pregroup);
        const std::size_t k = S.alphabet().size();
        const std::size_t len = k <= 2 ? 6 : (k <= 5 ? 4 : 3);
        std::size_t checked = 0;
        testutil::for_each_word(k, len, [&](const Word& w) {
            auto r = reduce_greedy(w, S, 1000);
            CHECK(r.size() == geodesic_length(w, S));
            CHECK(is_reduced(P.from_gamma(r), P));
            ++checked;
        });
        CHECK(checked > 0);
    }
}
