#include "cycrw/completion.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace cycrw {

InverseAssignment InverseAssignment::from_involution(const Alphabet& A) {
    InverseAssignment inv;
    for (std::size_t a = 0; a < A.size(); ++a) inv.of_letter.push_back({A.inverse(static_cast<Letter>(a))});
    return inv;
}

namespace {

// Searches for the empty word among the descendants of w under every rule
// direction, visiting at most `budget` words.
bool reaches_empty(const Word& w, const RewriteSystem& S, std::size_t budget) {
    std::unordered_set<Word, WordHash> seen{w};
    std::deque<Word> queue{w};
    while (!queue.empty()) {
        Word x = std::move(queue.front());
        queue.pop_front();
        if (x.empty()) return true;
        for (auto& st : word_successors(x, S)) {
            if (seen.size() >= budget) return false;
            if (seen.insert(st.result).second) queue.push_back(std::move(st.result));
        }
    }
    return false;
}

}  // namespace

std::optional<Letter> InverseAssignment::first_invalid(const RewriteSystem& S, std::size_t budget) const {
    const auto& A = S.alphabet();
    if (of_letter.size() != A.size()) return static_cast<Letter>(std::min(of_letter.size(), A.size()));
    for (std::size_t i = 0; i < A.size(); ++i) {
        const Letter a = static_cast<Letter>(i);
        if (!A.valid(of_letter[i])) return a;
        Word w = concat({a}, of_letter[i]);
        try {
            if (reduce_greedy(w, S, budget).empty()) continue;
        } catch (const BudgetExhausted&) {
        }
        if (!reaches_empty(w, S, budget)) return a;
    }
    return std::nullopt;
}

Word inverse_word(const Word& w, const InverseAssignment& inv) {
    Word out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const Word& piece = inv.of_letter.at(static_cast<std::size_t>(*it));
        out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
}

namespace {

void check_extension_preconditions(const RewriteSystem& S, const InverseAssignment& inv, bool assume_terminating) {
    if (!S.is_standard()) throw NotStandard("system is not standard");
    if (!assume_terminating && !check_weak_termination_sufficient(S))
        throw NotWeaklyTerminatingUnverified("system has length-increasing rules; weak termination is unverified");
    if (inv.of_letter.size() != S.alphabet().size())
        throw std::invalid_argument("inverse assignment does not cover the alphabet");
    for (const auto& w : inv.of_letter)
        if (!S.alphabet().valid(w)) throw std::invalid_argument("inverse word uses an unknown letter");
}

Word slice(const Word& w, std::size_t from, std::size_t to) {
    return Word(w.begin() + static_cast<std::ptrdiff_t>(from), w.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace

RewriteSystem hat_extension(const RewriteSystem& S, const InverseAssignment& inv, bool assume_terminating) {
    if (S.rules().empty()) return S;  // nothing to factor
    check_extension_preconditions(S, inv, assume_terminating);
    std::vector<Rule> added;
    auto push = [&](Word lhs, Word rhs, Anchor anchor) {
        if (lhs == rhs) return;  // the identity step contributes nothing
        added.push_back(Rule{std::move(lhs), std::move(rhs), anchor, false});
    };
    for (const auto& d : S.directions()) {
        const Word& l = S.from(d);
        const Word& r = S.to(d);
        const std::size_t n = l.size();
        for (std::size_t k = 1; k < n; ++k) {
            Word p = slice(l, 0, k), q = slice(l, k, n);
            push(q, concat(inverse_word(p, inv), r), Anchor::prefix);
            push(p, concat(r, inverse_word(q, inv)), Anchor::suffix);
        }
        for (std::size_t i = 1; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                Word p = slice(l, 0, i), mid = slice(l, i, j), q = slice(l, j, n);
                push(mid, concat(concat(inverse_word(p, inv), r), inverse_word(q, inv)), Anchor::whole);
            }
    }
    return S.with_rules(added);
}

std::vector<Rule> circle_rules(const Alphabet& A, const InverseAssignment& inv) {
    std::vector<Rule> out;
    for (std::size_t i = 0; i < A.size(); ++i) {
        const Word a{static_cast<Letter>(i)};
        for (Word rhs : {concat(a, inv.of_letter.at(i)), concat(inv.of_letter.at(i), a)}) {
            Rule r{{}, std::move(rhs), Anchor::none, false};
            if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
        }
    }
    return out;
}

RewriteSystem circle_extension(const RewriteSystem& S, const InverseAssignment& inv, bool assume_terminating) {
    check_extension_preconditions(S, inv, assume_terminating);
    return S.with_rules(circle_rules(S.alphabet(), inv));
}

std::vector<CyclicWord> cyclic_words_up_to(const Alphabet& A, std::size_t max_len) {
    std::vector<CyclicWord> out;
    const auto k = static_cast<Letter>(A.size());
    out.emplace_back();
    if (k == 0) return out;
    for (std::size_t len = 1; len <= max_len; ++len) {
        // Odometer over all words of this length in lexicographic order; a
        // word is kept when it is its own least rotation.
        Word w(len, 0);
        for (;;) {
            if (CyclicWord(w).canon() == w) out.push_back(CyclicWord::from_canonical(w));
            std::size_t i = len;
            while (i > 0 && w[i - 1] == k - 1) w[--i] = 0;
            if (i == 0) break;
            ++w[i - 1];
        }
    }
    return out;
}

std::vector<CyclicWord> enumerate_short_cyclic_words(const Alphabet& A, std::size_t m) {
    if (m < 2) throw std::invalid_argument("short cyclic words need m >= 2");
    return cyclic_words_up_to(A, 2 * m - 2);
}

// ---------------------------------------------------------------------------

bool CyclicRuleSet::add(const CyclicPair& p) {
    if (contains(p.from, p.to)) return false;
    extra_.push_back(p);
    auto& v = index_[p.from];
    v.insert(std::lower_bound(v.begin(), v.end(), p.to), p.to);
    return true;
}

bool CyclicRuleSet::contains(const CyclicWord& from, const CyclicWord& to) const {
    auto it = index_.find(from);
    return it != index_.end() && std::binary_search(it->second.begin(), it->second.end(), to);
}

void CyclicRuleSet::successors(const CyclicWord& c, std::vector<CyclicWord>& out) const {
    out = cyclic_successors(c, base_);
    auto it = index_.find(c);
    if (it == index_.end()) return;
    std::vector<CyclicWord> merged;
    merged.reserve(out.size() + it->second.size());
    std::set_union(out.begin(), out.end(), it->second.begin(), it->second.end(), std::back_inserter(merged));
    out = std::move(merged);
}

std::vector<CyclicWord> CyclicRuleSet::successors(const CyclicWord& c) const {
    std::vector<CyclicWord> out;
    successors(c, out);
    return out;
}

CyclicStepFn CyclicRuleSet::step_fn() const {
    return [this](const CyclicWord& c, std::vector<CyclicWord>& out) { successors(c, out); };
}

namespace {

using CyclicSet = std::set<CyclicWord>;

// All words reachable from `start` in zero or more steps that pass `keep`.
template <class Keep>
CyclicSet descendants(const CyclicRuleSet& C, const CyclicWord& start, Keep keep) {
    CyclicSet seen{start};
    std::vector<CyclicWord> stack{start}, next;
    while (!stack.empty()) {
        CyclicWord x = std::move(stack.back());
        stack.pop_back();
        C.successors(x, next);
        for (auto& y : next)
            if (keep(x, y) && seen.insert(y).second) stack.push_back(std::move(y));
    }
    return seen;
}

bool intersects(const CyclicSet& a, const CyclicSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i; else ++j;
    }
    return false;
}

void require_standard(const RewriteSystem& S) {
    if (!S.is_standard()) throw NotStandard("system is not standard");
}

}  // namespace

CompletionResult resolve_short_pairs(const RewriteSystem& S) {
    require_standard(S);
    for (const auto& r : S.rules())
        if (r.rhs.size() > r.lhs.size())
            throw PreconditionViolated("shortlex resolution needs |rhs| <= |lhs| for every rule");
    CompletionResult res{CyclicRuleSet(S), 0};
    CyclicRuleSet& C = res.rules;
    const auto shorts = enumerate_short_cyclic_words(S.alphabet(), S.m());
    const std::size_t cap = shorts.size() * shorts.size() + 1;
    auto descending = [](const CyclicWord& x, const CyclicWord& y) { return y < x; };

    for (std::size_t round = 1;; ++round) {
        if (round > cap) throw std::logic_error("resolve_short_pairs: iteration cap exceeded");
        bool added = false;
        std::vector<CyclicWord> succ;
        for (const auto& w : shorts) {
            C.successors(w, succ);
            for (std::size_t i = 0; i < succ.size(); ++i) {
                for (std::size_t j = i + 1; j < succ.size(); ++j) {
                    const CyclicWord& v = succ[i];  // the smaller one
                    const CyclicWord& u = succ[j];
                    if (intersects(descendants(C, u, descending), descendants(C, v, descending))) continue;
                    C.add({u, v, w, round});
                    added = true;
                }
            }
        }
        if (!added) break;
        res.stop_index = round;
    }
    return res;
}

CompletionResult thue_completion(const RewriteSystem& S) {
    require_standard(S);
    if (!S.is_thue()) throw PreconditionViolated("Thue completion needs a Thue system");
    if (!check_strong_confluence(S).ok)
        throw PreconditionViolated("Thue completion needs a strongly confluent system");
    CompletionResult res{CyclicRuleSet(S), 0};
    CyclicRuleSet& C = res.rules;
    const auto shorts = enumerate_short_cyclic_words(S.alphabet(), S.m());
    const std::size_t bound = 2 * S.m() - 2;
    auto any_step = [](const CyclicWord&, const CyclicWord&) { return true; };
    auto same_length = [](const CyclicWord& x, const CyclicWord& y) { return x.length() == y.length(); };

    for (std::size_t i = 0;; ++i) {
        std::map<CyclicWord, CyclicSet> reach;
        auto reach_of = [&](const CyclicWord& x) -> const CyclicSet& {
            auto it = reach.find(x);
            if (it == reach.end()) it = reach.emplace(x, descendants(C, x, any_step)).first;
            return it->second;
        };
        std::vector<CyclicPair> unresolved;
        std::set<std::pair<CyclicWord, CyclicWord>> queued;
        std::vector<CyclicWord> succ;
        for (const auto& w : shorts) {
            if (w.empty()) continue;
            CyclicSet targets;
            for (const auto& e : descendants(C, w, same_length)) {
                C.successors(e, succ);
                targets.insert(succ.begin(), succ.end());
            }
            std::vector<CyclicWord> t(targets.begin(), targets.end());
            for (std::size_t x = 0; x < t.size(); ++x) {
                for (std::size_t y = 0; y < t.size(); ++y) {
                    const CyclicWord& u = t[x];
                    const CyclicWord& v = t[y];
                    if (x == y || u.length() < v.length() || v.empty()) continue;
                    if (u.length() == v.length() && y < x) continue;  // unordered once
                    if (reach_of(u).count(v) || reach_of(v).count(u)) continue;
                    if (!queued.insert({u, v}).second) continue;
                    unresolved.push_back({u, v, w, i});
                    if (u.length() == v.length()) unresolved.push_back({v, u, w, i});
                }
            }
        }
        if (unresolved.empty()) {
            res.stop_index = i;
            break;
        }
        for (const auto& p : unresolved) C.add(p);
        if (i + 1 > bound)
            throw std::logic_error("thue_completion: stop index exceeds 2m-2");
    }
    return res;
}

CompletionResult cdagger(const RewriteSystem& S) {
    require_standard(S);
    if (!S.is_2monadic()) throw PreconditionViolated("cdagger needs a 2-monadic system");
    if (!S.is_thue()) throw PreconditionViolated("cdagger needs a Thue system");
    CompletionResult res{CyclicRuleSet(S), 0};
    for (const auto& w : enumerate_short_cyclic_words(S.alphabet(), S.m())) {
        auto succ = cyclic_successors(w, S);
        for (std::size_t i = 0; i < succ.size(); ++i)
            for (std::size_t j = i + 1; j < succ.size(); ++j) {
                const auto& u = succ[j];
                const auto& v = succ[i];
                if (v.empty() || u.length() >= w.length()) continue;
                if (res.rules.add({u, v, w, 1})) res.stop_index = 1;
                res.rules.add({v, u, w, 1});
            }
    }
    return res;
}

bool confluent_on_short_words(const CyclicRuleSet& C, std::size_t max_len, std::size_t budget,
                              std::optional<std::array<CyclicWord, 3>>* witness) {
    auto step = C.step_fn();
    for (const auto& w : cyclic_words_up_to(C.base().alphabet(), max_len)) {
        auto succ = C.successors(w);
        for (std::size_t i = 0; i < succ.size(); ++i)
            for (std::size_t j = i + 1; j < succ.size(); ++j) {
                auto r = cyclic_joinable(succ[i], succ[j], step, budget);
                if (r.status != JoinStatus::joinable) {
                    if (witness) *witness = std::array<CyclicWord, 3>{w, succ[i], succ[j]};
                    return false;
                }
            }
    }
    return true;
}

}  // namespace cycrw
