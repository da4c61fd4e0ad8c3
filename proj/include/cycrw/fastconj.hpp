// Linear-time conjugacy for finite pregroups, the string matcher it relies
// on, and a brute-force conjugator search used as a test oracle.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cycrw/universal.hpp"

namespace cycrw {

/// All start positions of `pattern` in `text`, left to right, overlapping
/// matches included. An empty pattern matches at every position.
template <class T>
std::vector<std::size_t> kmp_search(const std::vector<T>& pattern, const std::vector<T>& text) {
    std::vector<std::size_t> out;
    const std::size_t m = pattern.size();
    if (m == 0) {
        for (std::size_t i = 0; i <= text.size(); ++i) out.push_back(i);
        return out;
    }
    std::vector<std::size_t> fail(m, 0);
    for (std::size_t i = 1, k = 0; i < m; ++i) {
        while (k > 0 && pattern[i] != pattern[k]) k = fail[k - 1];
        if (pattern[i] == pattern[k]) ++k;
        fail[i] = k;
    }
    for (std::size_t i = 0, k = 0; i < text.size(); ++i) {
        while (k > 0 && text[i] != pattern[k]) k = fail[k - 1];
        if (text[i] == pattern[k]) ++k;
        if (k == m) {
            out.push_back(i + 1 - m);
            k = fail[k - 1];
        }
    }
    return out;
}

/// Counters describing one run of the linear algorithm.
struct LinearTrace {
    std::size_t conjugators_tried = 0;  // b values whose boundary products were defined
    std::size_t pattern_matches = 0;    // matches reported by the string search
    std::size_t seam_accepted = 0;      // matches passing the carry and last-letter tests
    std::size_t confirm_failures = 0;   // accepted matches rejected by the direct check
};

/// Parallel over the conjugating element b; the answer is the one for the
/// least successful b, so it matches the serial version exactly.
ConjugacyAnswer conjugate_linear(const ElementWord& u, const ElementWord& v, const UniversalContext& U,
                                 LinearTrace* trace = nullptr);
ConjugacyAnswer conjugate_linear_serial(const ElementWord& u, const ElementWord& v, const UniversalContext& U,
                                        LinearTrace* trace = nullptr);

/// Searches reduced words x with |x| <= max_len, shortest first, for
/// x u x^-1 = v. Returns nothing when no such x exists in range.
std::optional<ConjugacyAnswer> conjugate_oracle(const ElementWord& u, const ElementWord& v, const UniversalContext& U,
                                                std::size_t max_len);

}  // namespace cycrw
