#include "cycrw/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cycrw {

Alphabet::Alphabet(std::vector<std::string> tokens, std::vector<Letter> inverse_of)
    : tokens_(std::move(tokens)), inverse_(std::move(inverse_of)) {
    if (inverse_.size() != tokens_.size())
        throw std::invalid_argument("alphabet: involution size does not match letter count");
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        const auto& t = tokens_[i];
        if (t.empty()) throw std::invalid_argument("alphabet: empty token");
        if (std::any_of(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }))
            throw std::invalid_argument("alphabet: token contains whitespace: " + t);
        if (!lookup_.emplace(t, static_cast<Letter>(i)).second)
            throw std::invalid_argument("alphabet: duplicate token " + t);
    }
    const auto n = static_cast<Letter>(tokens_.size());
    for (std::size_t i = 0; i < inverse_.size(); ++i) {
        Letter j = inverse_[i];
        if (j < 0 || j >= n) throw std::invalid_argument("alphabet: involution index out of range");
        if (inverse_[static_cast<std::size_t>(j)] != static_cast<Letter>(i))
            throw std::invalid_argument("alphabet: involution is not self-inverse at " + tokens_[i]);
    }
}

Alphabet Alphabet::with_identity_involution(std::vector<std::string> tokens) {
    std::vector<Letter> inv(tokens.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = static_cast<Letter>(i);
    return Alphabet(std::move(tokens), std::move(inv));
}

Alphabet Alphabet::from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<std::string> toks;
    std::unordered_map<std::string, Letter> idx;
    auto intern = [&](const std::string& t) {
        auto it = idx.find(t);
        if (it != idx.end()) return it->second;
        Letter k = static_cast<Letter>(toks.size());
        toks.push_back(t);
        idx.emplace(t, k);
        return k;
    };
    std::vector<std::pair<Letter, Letter>> links;
    for (const auto& [a, b] : pairs) {
        Letter x = intern(a);
        Letter y = intern(b);
        links.emplace_back(x, y);
    }
    std::vector<Letter> inv(toks.size(), -1);
    for (auto [a, b] : links) {
        auto set = [&](Letter x, Letter y) {
            auto& slot = inv[static_cast<std::size_t>(x)];
            if (slot != -1 && slot != y)
                throw std::invalid_argument("alphabet: conflicting involution for " + toks[x]);
            slot = y;
        };
        set(a, b);
        set(b, a);
    }
    return Alphabet(std::move(toks), std::move(inv));
}

bool Alphabet::contains(std::string_view tok) const { return lookup_.count(std::string(tok)) != 0; }

Letter Alphabet::index(std::string_view tok) const {
    auto it = lookup_.find(std::string(tok));
    if (it == lookup_.end()) throw std::out_of_range("unknown letter '" + std::string(tok) + "'");
    return it->second;
}

bool Alphabet::valid(const Word& w) const {
    const auto n = static_cast<Letter>(tokens_.size());
    return std::all_of(w.begin(), w.end(), [n](Letter a) { return a >= 0 && a < n; });
}

Word Alphabet::parse(std::string_view text) const {
    std::istringstream in{std::string(text)};
    Word w;
    std::string tok;
    while (in >> tok) w.push_back(index(tok));
    return w;
}

std::string Alphabet::format(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += token(w[i]);
    }
    return out;
}

Word involute(const Word& w, const Alphabet& A) {
    Word r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r[w.size() - 1 - i] = A.inverse(w[i]);
    return r;
}

int shortlex_compare(const Word& u, const Word& v) {
    if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != v[i]) return u[i] < v[i] ? -1 : 1;
    return 0;
}

std::vector<Word> rotations(const Word& w) {
    if (w.empty()) return {Word{}};
    std::vector<Word> out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out.push_back(rotate(w, i));
    return out;
}

Word rotate(const Word& w, std::size_t start) {
    Word r;
    r.reserve(w.size());
    r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(start), w.end());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(start));
    return r;
}

// Booth's failure-function scan over the doubled word.
std::size_t least_rotation_start(const Word& w) {
    const std::size_t n = w.size();
    if (n <= 1) return 0;
    std::vector<std::ptrdiff_t> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        Letter sj = w[j % n];
        std::ptrdiff_t i = f[j - k - 1];
        while (i != -1 && sj != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
            if (sj < w[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
            i = f[static_cast<std::size_t>(i)];
        }
        if (i == -1 && sj != w[(k + static_cast<std::size_t>(i) + 1) % n]) {
            if (sj < w[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

CyclicWord::CyclicWord(const Word& w) : canon_(rotate(w, least_rotation_start(w))) {}

CyclicWord CyclicWord::from_canonical(Word canon) {
    CyclicWord c;
    c.canon_ = std::move(canon);
    return c;
}

CyclicWord canonical_rotation(const Word& w) { return CyclicWord(w); }

std::size_t WordHash::operator()(const Word& w) const noexcept {
    return static_cast<std::size_t>(word_fingerprint(w));
}

std::uint64_t word_fingerprint(const Word& w) noexcept {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(w.size());
    for (Letter a : w) h = mix(h ^ static_cast<std::uint32_t>(a));
    return h;
}

Word concat(const Word& a, const Word& b) {
    Word r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

}  // namespace cycrw
