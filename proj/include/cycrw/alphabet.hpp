// Finite alphabets with an involution, words, and cyclic words.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cycrw {

using Letter = std::int32_t;
using Word = std::vector<Letter>;

/// Ordered letter set. The position of a token in the declaration list is
/// its rank in the total order used by shortlex comparisons.
class Alphabet {
public:
    Alphabet() = default;

    /// `inverse_of[i]` is the index of the formal inverse of letter i. The map
    /// must be self-inverse; fixed points are allowed.
    Alphabet(std::vector<std::string> tokens, std::vector<Letter> inverse_of);

    /// Every letter is its own inverse.
    static Alphabet with_identity_involution(std::vector<std::string> tokens);

    /// Letters given as pairs: {"a","A"} declares a and A as mutual inverses.
    /// Tokens appear in the order they are first mentioned.
    static Alphabet from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

    std::size_t size() const { return tokens_.size(); }
    const std::string& token(Letter a) const { return tokens_.at(static_cast<std::size_t>(a)); }
    const std::vector<std::string>& tokens() const { return tokens_; }
    Letter inverse(Letter a) const { return inverse_.at(static_cast<std::size_t>(a)); }

    bool contains(std::string_view tok) const;
    Letter index(std::string_view tok) const;  // throws std::out_of_range

    bool valid(const Word& w) const;

    /// Whitespace-separated tokens to a word.
    Word parse(std::string_view text) const;
    /// Word to whitespace-separated tokens; the empty word prints as "".
    std::string format(const Word& w) const;

    bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_ && inverse_ == o.inverse_; }

private:
    std::vector<std::string> tokens_;
    std::vector<Letter> inverse_;
    std::unordered_map<std::string, Letter> lookup_;
};

/// Reverse and replace each letter by its inverse.
Word involute(const Word& w, const Alphabet& A);

/// Three-way shortlex comparison: negative, zero or positive.
int shortlex_compare(const Word& u, const Word& v);

inline bool shortlex_less(const Word& u, const Word& v) { return shortlex_compare(u, v) < 0; }

/// All |w| rotations in positional order; a single empty word for |w| = 0.
std::vector<Word> rotations(const Word& w);

/// Start index of a lexicographically least rotation (Booth's algorithm).
std::size_t least_rotation_start(const Word& w);

Word rotate(const Word& w, std::size_t start);

/// A word up to cyclic permutation, stored as its least rotation.
class CyclicWord {
public:
    CyclicWord() = default;
    explicit CyclicWord(const Word& w);

    /// Wrap a word that is already its own least rotation.
    static CyclicWord from_canonical(Word canon);

    const Word& canon() const { return canon_; }
    std::size_t length() const { return canon_.size(); }
    bool empty() const { return canon_.empty(); }

    bool operator==(const CyclicWord& o) const { return canon_ == o.canon_; }
    bool operator!=(const CyclicWord& o) const { return canon_ != o.canon_; }
    bool operator<(const CyclicWord& o) const { return shortlex_compare(canon_, o.canon_) < 0; }

private:
    Word canon_;
};

CyclicWord canonical_rotation(const Word& w);

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

struct CyclicWordHash {
    std::size_t operator()(const CyclicWord& c) const noexcept { return WordHash{}(c.canon()); }
};

Word concat(const Word& a, const Word& b);

/// 64-bit mixing hash of a word, used as a compact set key.
std::uint64_t word_fingerprint(const Word& w) noexcept;

}  // namespace cycrw
