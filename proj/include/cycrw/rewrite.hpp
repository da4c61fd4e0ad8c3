// Semi-Thue rules and systems, rewriting on words and on cyclic words.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cycrw/alphabet.hpp"

namespace cycrw {

/// Where a rule is allowed to match on a linear word. On cyclic words the
/// prefix and suffix anchors have no effect; a whole-anchored rule applies
/// only when the cycle equals its left-hand side.
enum class Anchor { none, prefix, suffix, whole };

const char* anchor_name(Anchor a);

struct Rule {
    Word lhs;
    Word rhs;
    Anchor anchor = Anchor::none;
    bool symmetric = false;

    bool operator==(const Rule& o) const {
        return lhs == o.lhs && rhs == o.rhs && anchor == o.anchor && symmetric == o.symmetric;
    }
};

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One oriented use of a rule: `reversed` marks the right-to-left use of a
/// symmetric rule.
struct Direction {
    std::size_t rule;
    bool reversed;
};

class RewriteSystem {
public:
    RewriteSystem() = default;
    RewriteSystem(Alphabet alphabet, std::vector<Rule> rules);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<Direction>& directions() const { return directions_; }

    /// Largest left-hand side length (0 for the empty system).
    std::size_t m() const { return m_; }
    bool is_thue() const { return thue_; }
    bool is_standard() const { return standard_; }
    bool is_2monadic() const { return m_ == 2; }
    bool has_anchored_rules() const;

    /// New system with `extra` appended; rules already present are skipped.
    RewriteSystem with_rules(const std::vector<Rule>& extra) const;

    const Word& from(const Direction& d) const { return d.reversed ? rules_[d.rule].rhs : rules_[d.rule].lhs; }
    const Word& to(const Direction& d) const { return d.reversed ? rules_[d.rule].lhs : rules_[d.rule].rhs; }
    Anchor anchor(const Direction& d) const { return rules_[d.rule].anchor; }

    /// Directions whose source word is exactly `w`.
    const std::vector<std::size_t>* directions_from(const Word& w) const;
    /// Distinct non-zero source lengths, ascending.
    const std::vector<std::size_t>& source_lengths() const { return source_lengths_; }
    /// Directions with an empty source word.
    const std::vector<std::size_t>& inserting_directions() const { return inserting_; }

private:
    void rebuild();

    Alphabet alphabet_;
    std::vector<Rule> rules_;
    std::vector<Direction> directions_;
    std::unordered_map<Word, std::vector<std::size_t>, WordHash> by_source_;
    std::vector<std::size_t> source_lengths_;
    std::vector<std::size_t> inserting_;
    std::size_t m_ = 0;
    bool thue_ = true;
    bool standard_ = false;
};

struct Step {
    Word result;
    std::size_t rule;
    std::size_t position;
    bool reversed = false;
    std::size_t span = 0;  // length of the replaced factor
};

/// Every one-step rewrite of w, honoring anchors.
std::vector<Step> word_successors(const Word& w, const RewriteSystem& S);

/// Every one-step cyclic rewrite of c, deduplicated, in shortlex order.
std::vector<CyclicWord> cyclic_successors(const CyclicWord& c, const RewriteSystem& S);

/// Leftmost length-reducing rewriting to a fixpoint. Throws BudgetExhausted
/// when `budget` steps did not reach an irreducible word.
Word reduce_greedy(Word w, const RewriteSystem& S, std::size_t budget);

bool check_weak_termination_sufficient(const RewriteSystem& S);

struct ConfluenceReport {
    bool ok = true;
    /// (x, y, z) with y <- x -> z not joinable in at most one step each.
    std::optional<std::array<Word, 3>> counterexample;
    std::size_t divergences_checked = 0;
};

/// Strong confluence: every divergence y <- x -> z must satisfy
/// y ->(<=1) w <-(<=1) z. Divergences at disjoint positions always commute,
/// so only overlapping redexes are examined; their union is at most 2m-1
/// letters long. Requires a system without anchored rules.
ConfluenceReport check_strong_confluence(const RewriteSystem& S);

// ---------------------------------------------------------------------------
// Search over cyclic words.

using CyclicStepFn = std::function<void(const CyclicWord&, std::vector<CyclicWord>&)>;

CyclicStepFn cyclic_step_fn(const RewriteSystem& S);

enum class JoinStatus { joinable, disjoint, budget_exhausted };

const char* join_status_name(JoinStatus s);

struct JoinResult {
    JoinStatus status = JoinStatus::budget_exhausted;
    std::optional<CyclicWord> witness;
    std::size_t explored = 0;
};

/// Breadth-first exploration of the descendants of one cyclic word, capped
/// at `cap` discovered nodes (the start node included).
class CyclicExplorer {
public:
    CyclicExplorer(const CyclicWord& start, CyclicStepFn step, std::size_t cap);

    /// Expand one queued node. Returns false when nothing more can be done.
    bool advance();
    void run() { while (advance()) {} }

    bool capped() const { return capped_; }
    bool finished() const { return !capped_ && head_ >= order_.size(); }
    bool contains(const CyclicWord& c) const { return seen_.count(c) != 0; }
    const std::vector<CyclicWord>& discovered() const { return order_; }

private:
    CyclicStepFn step_;
    std::size_t cap_;
    std::vector<CyclicWord> order_;
    std::size_t head_ = 0;
    bool capped_ = false;
    std::unordered_set<CyclicWord, CyclicWordHash> seen_;
    std::vector<CyclicWord> scratch_;
};

/// Bidirectional search for a common descendant. The budget is split evenly
/// between the two sides.
JoinResult cyclic_joinable(const CyclicWord& u, const CyclicWord& v, const CyclicStepFn& step,
                           std::size_t budget);
JoinResult cyclic_joinable(const CyclicWord& u, const CyclicWord& v, const RewriteSystem& S,
                           std::size_t budget);

/// cyclic_joinable for every pair drawn from `words`, sharing one capped
/// exploration per word. Gives the same status as the pairwise call; the
/// witness of every joinable pair is confirmed by a pairwise search.
std::vector<std::vector<JoinResult>> cyclic_joinable_matrix(const std::vector<CyclicWord>& words,
                                                            const CyclicStepFn& step,
                                                            std::size_t budget);

}  // namespace cycrw
