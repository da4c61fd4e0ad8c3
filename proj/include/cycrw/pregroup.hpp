// Finite pregroups: a partial multiplication table with a neutral element and
// an involution, the axiom sweeps that validate it, and the rewriting systems
// it induces.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cycrw/rewrite.hpp"

namespace cycrw {

using Element = std::int32_t;
inline constexpr Element kUndefined = -1;

class Pregroup {
public:
    Pregroup() = default;

    /// `table[a * n + b]` is the product of a and b, or kUndefined. Throws
    /// std::invalid_argument on malformed data (sizes, ranges, an involution
    /// that is not self-inverse or moves the neutral element).
    Pregroup(std::vector<std::string> names, Element epsilon, std::vector<Element> inverse,
             std::vector<Element> table);

    /// Builds a table from named entries. Rows and columns of the neutral
    /// element that are not given are filled in; elements missing from the
    /// involution are their own inverses.
    static Pregroup from_entries(std::vector<std::string> names, const std::string& epsilon,
                                 const std::vector<std::pair<std::string, std::string>>& inverse_pairs,
                                 const std::vector<std::tuple<std::string, std::string, std::string>>& products);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Element e) const { return names_.at(static_cast<std::size_t>(e)); }
    const std::vector<std::string>& names() const { return names_; }
    Element epsilon() const { return epsilon_; }
    Element inverse(Element e) const { return inverse_[static_cast<std::size_t>(e)]; }
    Element product(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * size() + static_cast<std::size_t>(b)]; }
    bool defined(Element a, Element b) const { return product(a, b) != kUndefined; }
    const std::vector<Element>& table() const { return table_; }

    Element index(const std::string& name) const;  // throws std::out_of_range

    /// The value of abc if (ab)c or a(bc) is defined, else kUndefined.
    Element triple(Element a, Element b, Element c) const;

    /// Elements other than the neutral one, in declaration order.
    const std::vector<Element>& letters() const { return letters_; }
    bool is_letter(Element e) const { return e != epsilon_; }

    /// Alphabet of the non-neutral elements, and the full element alphabet.
    Alphabet gamma_alphabet() const;
    Alphabet element_alphabet() const;

    /// Conversions between element words and words over gamma_alphabet().
    Word to_gamma(const std::vector<Element>& w) const;
    std::vector<Element> from_gamma(const Word& w) const;

    /// Whitespace-separated element names; the neutral name is dropped.
    std::vector<Element> parse(const std::string& text) const;
    std::string format(const std::vector<Element>& w) const;

    bool operator==(const Pregroup& o) const {
        return names_ == o.names_ && epsilon_ == o.epsilon_ && inverse_ == o.inverse_ && table_ == o.table_;
    }

private:
    std::vector<std::string> names_;
    Element epsilon_ = 0;
    std::vector<Element> inverse_;
    std::vector<Element> table_;
    std::vector<Element> letters_;
    std::vector<Letter> letter_of_;
    std::unordered_map<std::string, Element> lookup_;
};

using ElementWord = std::vector<Element>;

enum class Axiom { P1, P2, P3, P4, P5, P6, P7, P8 };
const char* axiom_name(Axiom a);

struct AxiomVerdict {
    bool holds = true;
    std::size_t violations = 0;
    /// The first few violating tuples; their meaning depends on the axiom.
    std::vector<std::vector<Element>> witnesses;
};

struct AxiomReport {
    std::array<AxiomVerdict, 5> basic;  // P1..P5
    std::optional<AxiomVerdict> p6, p7, p8;
    bool ok() const;
    const AxiomVerdict& operator[](Axiom a) const;
};

/// Exhaustive sweep of P1-P5. Witnesses: P1, P2 the element; P3 (a, b);
/// P4 (a, b, c); P5 (a, b, c, d).
AxiomReport check_axioms(const Pregroup& P, std::size_t max_witnesses = 8);

/// Same verdicts and counts, single-threaded. Kept as a reference for the
/// parallel sweep.
AxiomReport check_axioms_serial(const Pregroup& P, std::size_t max_witnesses = 8);

/// Witnesses: P6 (f, g, b); P7 (x, y, z); P8 (a, b).
AxiomVerdict check_p6(const Pregroup& P, std::size_t max_witnesses = 8);
AxiomVerdict check_p7(const Pregroup& P, std::size_t max_witnesses = 8);
AxiomVerdict check_p8(const Pregroup& P, std::size_t max_witnesses = 8);

/// Fills the optional P6-P8 verdicts of a report and asserts that P7 and P8
/// each imply P6 (std::logic_error otherwise).
void add_extra_axioms(const Pregroup& P, AxiomReport& report, std::size_t max_witnesses = 8);

/// Elements whose products with every element are defined on both sides.
/// Throws std::logic_error if the result is not a subgroup.
std::vector<Element> canonical_subgroup(const Pregroup& P);

enum class SystemVariant { of_pregroup, with_epsilon };

/// The Thue system over the non-neutral letters (of_pregroup) or over all
/// elements including the neutral letter (with_epsilon). Letters of the
/// returned alphabet are ordered as the corresponding elements.
RewriteSystem derive_system(const Pregroup& P, SystemVariant variant);

/// No two adjacent letters multiply, and the neutral element does not occur.
bool is_reduced(const ElementWord& w, const Pregroup& P);

struct KeyLemmaReport {
    std::array<AxiomVerdict, 5> parts;
    bool ok() const;
};

/// Checks the five standard consequences of the axioms on the whole table.
KeyLemmaReport key_lemma_check(const Pregroup& P, std::size_t max_witnesses = 8);
KeyLemmaReport key_lemma_check_serial(const Pregroup& P, std::size_t max_witnesses = 8);

}  // namespace cycrw
