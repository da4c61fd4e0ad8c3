#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "test_util.hpp"

using namespace cycrw;
using namespace testutil;

namespace {

std::set<Word> results(const std::vector<Step>& steps) {
    std::set<Word> out;
    for (const auto& s : steps) out.insert(s.result);
    return out;
}

// Cyclic successors recomputed from linear successors of every rotation.
std::set<CyclicWord> rotation_oracle(const CyclicWord& c, const RewriteSystem& S) {
    std::set<CyclicWord> out;
    for (const auto& r : rotations(c.canon()))
        for (const auto& st : word_successors(r, S)) out.insert(CyclicWord(st.result));
    return out;
}

// Strong confluence tested directly on every word up to a length bound.
bool naive_strongly_confluent(const RewriteSystem& S, std::size_t max_len) {
    auto N = [&](const Word& y) {
        std::set<Word> s{y};
        for (auto& st : word_successors(y, S)) s.insert(st.result);
        return s;
    };
    bool ok = true;
    for_each_word(S.alphabet().size(), max_len, [&](const Word& x) {
        if (!ok) return;
        auto steps = word_successors(x, S);
        for (std::size_t i = 0; i < steps.size() && ok; ++i)
            for (std::size_t j = i + 1; j < steps.size() && ok; ++j) {
                auto ny = N(steps[i].result), nz = N(steps[j].result);
                bool met = std::any_of(ny.begin(), ny.end(), [&](const Word& t) { return nz.count(t) != 0; });
                if (!met) ok = false;
            }
    });
    return ok;
}

RewriteSystem random_system(std::mt19937& rng, std::size_t letters_n, bool allow_symmetric) {
    std::vector<std::string> toks;
    for (std::size_t i = 0; i < letters_n; ++i) toks.push_back(std::string(1, static_cast<char>('a' + i)));
    auto A = Alphabet::with_identity_involution(toks);
    std::uniform_int_distribution<int> letter(0, static_cast<int>(letters_n) - 1), nrules(1, 4), llen(1, 3);
    std::vector<Rule> rules;
    for (int k = nrules(rng); k > 0; --k) {
        Rule r;
        for (int i = llen(rng); i > 0; --i) r.lhs.push_back(letter(rng));
        std::uniform_int_distribution<int> rlen(0, static_cast<int>(r.lhs.size()));
        if (allow_symmetric && rng() % 3 == 0) {
            r.symmetric = true;
            for (std::size_t i = 0; i < r.lhs.size(); ++i) r.rhs.push_back(letter(rng));
        } else {
            for (int i = rlen(rng); i > 0; --i) r.rhs.push_back(letter(rng));
        }
        rules.push_back(r);
    }
    return RewriteSystem(A, rules);
}

}  // namespace

TEST_CASE("system flags") {
    auto F = free_group_system();
    CHECK(F.m() == 2);
    CHECK(F.is_standard());
    CHECK(F.is_thue());
    CHECK(F.is_2monadic());
    auto E = example_noncyclic_confluence();
    CHECK(E.m() == 3);
    CHECK_FALSE(E.is_thue());  // length-preserving but oriented
    auto A = letters("a b");
    CHECK_FALSE(system(A, {" -> a b"}).is_standard());
    CHECK_FALSE(system(A, {"a -> b"}).is_standard());  // m = 1
    CHECK(system(A, {"a b <-> b a"}).is_thue());
    CHECK_THROWS_AS(system(A, {"a b <-> a"}), std::invalid_argument);
}

TEST_CASE("word successors") {
    auto A = free_alphabet();
    auto S = system(A, {"a A ->"});
    auto st = word_successors(A.parse("a A b"), S);
    REQUIRE(st.size() == 1);
    CHECK(A.format(st[0].result) == "b");
    CHECK(st[0].rule == 0);
    CHECK(st[0].position == 0);

    auto L = letters("a b c");
    auto T = system(L, {"a b -> c"});
    st = word_successors(L.parse("a b a b"), T);
    REQUIRE(st.size() == 2);
    CHECK(L.format(st[0].result) == "c a b");
    CHECK(st[0].position == 0);
    CHECK(L.format(st[1].result) == "a b c");
    CHECK(st[1].position == 2);

    auto E = example_noncyclic_confluence();
    const auto& G = E.alphabet();
    st = word_successors(G.parse("a b c d a"), E);
    REQUIRE(st.size() == 2);
    CHECK(G.format(st[0].result) == "b a c d a");
    CHECK(st[0].position == 0);
    CHECK(G.format(st[1].result) == "a b d c a");
    CHECK(st[1].position == 2);
}

TEST_CASE("anchored and symmetric rules on words") {
    auto L = letters("a b");
    std::vector<Rule> rules{rule(L, "a -> b", Anchor::prefix), rule(L, "b -> a", Anchor::suffix),
                            rule(L, "a b -> b", Anchor::whole)};
    RewriteSystem S(L, rules);
    CHECK(results(word_successors(L.parse("a a"), S)) == std::set<Word>{L.parse("b a")});
    CHECK(results(word_successors(L.parse("b b"), S)) == std::set<Word>{L.parse("b a")});
    CHECK(results(word_successors(L.parse("a b"), S)) ==
          std::set<Word>{L.parse("b b"), L.parse("a a"), L.parse("b")});
    CHECK(results(word_successors(L.parse("a a b"), S)) ==
          std::set<Word>{L.parse("b a b"), L.parse("a a a")});

    auto T = system(L, {"a b <-> b a"});
    CHECK(results(word_successors(L.parse("a b a"), T)) ==
          std::set<Word>{L.parse("b a a"), L.parse("a a b")});

    auto I = system(L, {" -> a"});
    CHECK(results(word_successors(L.parse("b"), I)) == std::set<Word>{L.parse("a b"), L.parse("b a")});
    CHECK(word_successors(L.parse("b b"), I).size() == 3);
}

TEST_CASE("cyclic successors: worked examples") {
    auto E = example_noncyclic_confluence();
    const auto& G = E.alphabet();
    auto succ = cyclic_successors(cyc(G, "a b c d"), E);
    CHECK(std::set<CyclicWord>(succ.begin(), succ.end()) ==
          std::set<CyclicWord>{cyc(G, "b a c d"), cyc(G, "b d c a")});
    for (const auto& c : succ) CHECK(cyclic_successors(c, E).empty());

    auto N = example_cyclic_nontermination();
    const auto& L = N.alphabet();
    CHECK(cyclic_successors(cyc(L, "b a"), N) == std::vector<CyclicWord>{cyc(L, "b b a")});

    auto F = free_group_system();
    const auto& A = F.alphabet();
    CHECK(cyclic_successors(cyc(A, "a A"), F) == std::vector<CyclicWord>{CyclicWord()});
    CHECK(cyc(A, "A a") == cyc(A, "a A"));
}

TEST_CASE("cyclic successors: nonterminating iteration grows strictly") {
    auto N = example_cyclic_nontermination();
    const auto& L = N.alphabet();
    CyclicWord c = cyc(L, "b a");
    for (std::size_t k = 2; k <= 50; ++k) {
        auto s = cyclic_successors(c, N);
        REQUIRE(s.size() == 1);
        Word expect(k, L.index("b"));
        expect.push_back(L.index("a"));
        CHECK(s[0] == CyclicWord(expect));
        CHECK(s[0].length() == c.length() + 1);
        c = s[0];
    }
    // The linear system terminates from the same start.
    CHECK(results(word_successors(L.parse("a b b"), N)).empty());
}

TEST_CASE("cyclic successors agree with rotation enumeration") {
    std::mt19937 rng(3);
    for (int t = 0; t < 60; ++t) {
        auto S = random_system(rng, 3, true);
        for_each_word(3, 6, [&](const Word& w) {
            CyclicWord c(w);
            auto fast = cyclic_successors(c, S);
            std::set<CyclicWord> got(fast.begin(), fast.end());
            REQUIRE(got.size() == fast.size());
            // Rules whose source is longer than the cycle cannot match.
            REQUIRE(got == rotation_oracle(c, S));
        });
    }
}

TEST_CASE("cyclic successors: anchors dissolve, insertions use every gap") {
    auto L = letters("a b");
    RewriteSystem P(L, {rule(L, "a b -> b", Anchor::prefix)});
    CHECK(cyclic_successors(cyc(L, "b a b b"), P) == std::vector<CyclicWord>{cyc(L, "b b b")});
    RewriteSystem W(L, {rule(L, "a b -> a", Anchor::whole)});
    CHECK(cyclic_successors(cyc(L, "b a"), W) == std::vector<CyclicWord>{cyc(L, "a")});
    CHECK(cyclic_successors(cyc(L, "a b b"), W).empty());
    auto I = system(L, {" -> a"});
    CHECK(cyclic_successors(CyclicWord(), I) == std::vector<CyclicWord>{cyc(L, "a")});
    CHECK(cyclic_successors(cyc(L, "a b"), I) == std::vector<CyclicWord>{cyc(L, "a a b")});
    CHECK(cyclic_successors(cyc(L, "a b b"), I) ==
          std::vector<CyclicWord>{cyc(L, "a a b b"), cyc(L, "a b a b")});
}

TEST_CASE("reduce_greedy") {
    auto F = free_group_system();
    const auto& A = F.alphabet();
    CHECK(A.format(reduce_greedy(A.parse("a A b B a"), F, 100)) == "a");
    auto S = system(A, {"a A ->"});
    CHECK(A.format(reduce_greedy(A.parse("a b"), S, 1)) == "a b");
    auto L = letters("a b c d");
    auto T = system(L, {"a b -> c", "c a -> d"});
    CHECK(L.format(reduce_greedy(L.parse("a b a"), T, 10)) == "d");
    CHECK_THROWS_AS(reduce_greedy(A.parse("a A a A"), F, 1), BudgetExhausted);
    CHECK(reduce_greedy(A.parse("a A a A"), F, 2).empty());
}

TEST_CASE("reduce_greedy yields words without length-reducing redexes") {
    std::mt19937 rng(5);
    for (int t = 0; t < 40; ++t) {
        auto S = random_system(rng, 3, true);
        for_each_word(3, 6, [&](const Word& w) {
            Word r = reduce_greedy(w, S, 64);
            REQUIRE(r.size() <= w.size());
            for (const auto& st : word_successors(r, S)) REQUIRE(st.result.size() >= r.size());
        });
    }
}

TEST_CASE("weak termination sufficient condition") {
    auto L = letters("a b c");
    CHECK(check_weak_termination_sufficient(system(L, {"a b -> c"})));
    CHECK_FALSE(check_weak_termination_sufficient(example_cyclic_nontermination()));
    CHECK(check_weak_termination_sufficient(RewriteSystem(L, {})));
}

TEST_CASE("strong confluence: constructed divergence") {
    auto L = letters("a b c d");
    auto S = system(L, {"a b -> c", "a b -> d"});
    auto rep = check_strong_confluence(S);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.counterexample);
    CHECK(L.format((*rep.counterexample)[0]) == "a b");
    std::set<std::string> ends{L.format((*rep.counterexample)[1]), L.format((*rep.counterexample)[2])};
    CHECK(ends == std::set<std::string>{"c", "d"});
}

TEST_CASE("strong confluence: free group system passes") {
    auto rep = check_strong_confluence(free_group_system());
    CHECK(rep.ok);
    CHECK(rep.divergences_checked > 0);
}

TEST_CASE("strong confluence: the four-rule system needs two steps to rejoin") {
    // bacda <- abcda -> abdca rejoins only via bacda -> badca -> abdca, and
    // abdca is irreducible, so the one-step joinability condition fails.
    auto E = example_noncyclic_confluence();
    const auto& G = E.alphabet();
    auto rep = check_strong_confluence(E);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.counterexample);
    CHECK_FALSE(naive_strongly_confluent(E, 2 * E.m()));
    CHECK(word_successors(G.parse("a b d c a"), E).empty());
    auto two = word_successors(G.parse("b a c d a"), E);
    REQUIRE(two.size() == 1);
    CHECK(G.format(two[0].result) == "b a d c a");
    auto three = word_successors(two[0].result, E);
    REQUIRE(three.size() == 1);
    CHECK(G.format(three[0].result) == "a b d c a");
}

TEST_CASE("strong confluence agrees with exhaustive divergence enumeration") {
    std::mt19937 rng(17);
    int agree_ok = 0, agree_fail = 0;
    for (int t = 0; t < 150; ++t) {
        auto S = random_system(rng, 2 + t % 2, true);
        bool naive = naive_strongly_confluent(S, 2 * S.m() + 2);
        auto rep = check_strong_confluence(S);
        REQUIRE(rep.ok == naive);
        (naive ? agree_ok : agree_fail)++;
        if (!rep.ok) {
            const auto& [x, y, z] = *rep.counterexample;
            auto rx = results(word_successors(x, S));
            CHECK(rx.count(y));
            CHECK(rx.count(z));
        }
    }
    // Make sure both outcomes were exercised.
    CHECK(agree_ok > 0);
    CHECK(agree_fail > 0);
}

TEST_CASE("strong confluence rejects anchored systems") {
    auto L = letters("a b");
    RewriteSystem S(L, {rule(L, "a b -> b", Anchor::prefix)});
    CHECK_THROWS_AS(check_strong_confluence(S), PreconditionViolated);
}

TEST_CASE("cyclic joinability") {
    auto F = free_group_system();
    const auto& A = F.alphabet();
    auto r = cyclic_joinable(cyc(A, "a b"), cyc(A, "b a"), F, 10);
    CHECK(r.status == JoinStatus::joinable);
    CHECK(*r.witness == cyc(A, "a b"));

    r = cyclic_joinable(cyc(A, "a A b"), cyc(A, "b"), F, 100);
    CHECK(r.status == JoinStatus::joinable);
    CHECK(*r.witness == cyc(A, "b"));

    auto E = example_noncyclic_confluence();
    const auto& G = E.alphabet();
    r = cyclic_joinable(cyc(G, "b a c d"), cyc(G, "b d c a"), E, 100);
    CHECK(r.status == JoinStatus::disjoint);
    CHECK_FALSE(r.witness);

    auto N = example_cyclic_nontermination();
    const auto& L = N.alphabet();
    r = cyclic_joinable(cyc(L, "b a"), cyc(L, "a"), N, 50);
    CHECK(r.status == JoinStatus::budget_exhausted);
    CHECK(r.explored <= 50);
    CHECK_THROWS_AS(cyclic_joinable(cyc(L, "a"), cyc(L, "b"), N, 0), std::invalid_argument);
}

TEST_CASE("joinability matrix matches pairwise search") {
    std::mt19937 rng(23);
    for (int t = 0; t < 25; ++t) {
        auto S = random_system(rng, 2, true);
        std::vector<CyclicWord> words;
        std::set<CyclicWord> uniq;
        for_each_word(2, 4, [&](const Word& w) { uniq.insert(CyclicWord(w)); });
        words.assign(uniq.begin(), uniq.end());
        for (std::size_t budget : {3u, 8u, 40u}) {
            auto M = cyclic_joinable_matrix(words, cyclic_step_fn(S), budget);
            for (std::size_t i = 0; i < words.size(); ++i)
                for (std::size_t j = 0; j < words.size(); ++j) {
                    auto p = cyclic_joinable(words[i], words[j], S, budget);
                    REQUIRE(M[i][j].status == p.status);
                    if (p.witness) CHECK(*M[i][j].witness == *p.witness);
                }
        }
    }
}
