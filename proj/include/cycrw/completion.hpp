// Extensions of a rewriting system and completions of its cyclic relation.
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cycrw/rewrite.hpp"

namespace cycrw {

class NotStandard : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

class NotWeaklyTerminatingUnverified : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

/// A chosen right inverse word for every letter.
struct InverseAssignment {
    std::vector<Word> of_letter;

    /// The involution of the alphabet, one letter per inverse.
    static InverseAssignment from_involution(const Alphabet& A);

    /// Checks that a·inv(a) reduces to the empty word for every letter, first
    /// by greedy reduction and then by a bounded search through all rules.
    /// Returns the first letter that fails, if any.
    std::optional<Letter> first_invalid(const RewriteSystem& S, std::size_t budget) const;
};

/// Right-to-left expansion: inv(u a) = inv(a) inv(u).
Word inverse_word(const Word& w, const InverseAssignment& inv);

/// Adds the prefix, suffix and whole-word anchored rules obtained by moving
/// the pieces of each left-hand side across the equation.
/// `assume_terminating` skips the check that no rule increases length.
RewriteSystem hat_extension(const RewriteSystem& S, const InverseAssignment& inv,
                            bool assume_terminating = false);

/// Adds the insertion rules 1 -> a inv(a) and 1 -> inv(a) a.
RewriteSystem circle_extension(const RewriteSystem& S, const InverseAssignment& inv,
                               bool assume_terminating = false);

/// The insertion rules used by circle_extension, deduplicated.
std::vector<Rule> circle_rules(const Alphabet& A, const InverseAssignment& inv);

/// Every cyclic word of length <= max_len, each once, in shortlex order.
std::vector<CyclicWord> cyclic_words_up_to(const Alphabet& A, std::size_t max_len);

/// Every cyclic word of length <= 2m-2, each once, in shortlex order.
std::vector<CyclicWord> enumerate_short_cyclic_words(const Alphabet& A, std::size_t m);

/// An oriented pair added to a cyclic relation, with the short cyclic word
/// whose divergence produced it.
struct CyclicPair {
    CyclicWord from;
    CyclicWord to;
    CyclicWord source;
    std::size_t round = 0;
};

/// The one-step cyclic relation of a base system, enlarged by extra pairs.
class CyclicRuleSet {
public:
    CyclicRuleSet() = default;
    explicit CyclicRuleSet(RewriteSystem base) : base_(std::move(base)) {}

    const RewriteSystem& base() const { return base_; }
    const std::vector<CyclicPair>& extra() const { return extra_; }

    /// Inserts the pair unless the same orientation is present already.
    bool add(const CyclicPair& p);
    bool contains(const CyclicWord& from, const CyclicWord& to) const;

    /// One-step successors: the base cyclic rewrites plus extra pairs, sorted
    /// and deduplicated.
    void successors(const CyclicWord& c, std::vector<CyclicWord>& out) const;
    std::vector<CyclicWord> successors(const CyclicWord& c) const;

    /// Step function bound to this object (which must outlive it).
    CyclicStepFn step_fn() const;

private:
    RewriteSystem base_;
    std::vector<CyclicPair> extra_;
    std::map<CyclicWord, std::vector<CyclicWord>> index_;
};

struct CompletionResult {
    CyclicRuleSet rules;
    /// Number of rounds that added pairs, i.e. the first index i with
    /// C_i = C_{i+1}.
    std::size_t stop_index = 0;
};

/// Shortlex resolution of short critical pairs. Requires a standard system
/// without length-increasing rules.
CompletionResult resolve_short_pairs(const RewriteSystem& S);

/// Round-based completion for standard, strongly confluent Thue systems.
/// Throws std::logic_error if the stop index exceeds 2m-2.
CompletionResult thue_completion(const RewriteSystem& S);

/// Relates the two single-letter results of every divergence from a short
/// word, in both orientations. Requires a standard 2-monadic Thue system.
CompletionResult cdagger(const RewriteSystem& S);

/// True when every divergence from a cyclic word of length <= max_len rejoins
/// under the relation, searching at most `budget` nodes per pair. The first
/// failing triple (source, left, right) is stored in `witness` if given.
bool confluent_on_short_words(const CyclicRuleSet& C, std::size_t max_len, std::size_t budget,
                              std::optional<std::array<CyclicWord, 3>>* witness = nullptr);

}  // namespace cycrw
