// Pregroups built from finite groups: amalgamated products and HNN
// extensions, standard cyclic forms for the latter, and checkers for the
// classical conjugacy criteria in both settings.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycrw/pregroup.hpp"
#include "cycrw/universal.hpp"

namespace cycrw {

struct InvalidEmbedding : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidGroup : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Complete multiplication table of a finite group. Index 0 is not special;
/// the identity is located by the constructor.
class FiniteGroupTable {
public:
    FiniteGroupTable() = default;
    /// Throws InvalidGroup unless the table is closed, associative, has an
    /// identity and inverses.
    FiniteGroupTable(std::vector<std::string> names, std::vector<int> table);

    /// Cyclic group of order n with elements e, g, g2, ..., named from `gen`.
    static FiniteGroupTable cyclic(int n, const std::string& gen = "g");
    /// Symmetric group on k <= 5 points, elements in cycle notation such as
    /// "(12)" or "(123)", identity "e".
    static FiniteGroupTable symmetric(int k);

    int size() const { return static_cast<int>(names_.size()); }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a * size() + b)]; }
    int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    const std::string& name(int a) const { return names_.at(static_cast<std::size_t>(a)); }
    const std::vector<std::string>& names() const { return names_; }
    int index(const std::string& name) const;  // throws std::out_of_range

    /// Smallest subgroup containing the given elements, sorted.
    std::vector<int> generated(const std::vector<int>& gens) const;
    bool is_subgroup(const std::vector<int>& s) const;

private:
    std::vector<std::string> names_;
    std::vector<int> table_;
    std::vector<int> inverse_;
    int identity_ = 0;
};

/// `image[i]` is the target of element i of the domain group.
struct Embedding {
    std::vector<int> image;
};

/// Throws InvalidEmbedding unless `e` is an injective homomorphism.
void validate_embedding(const FiniteGroupTable& from, const FiniteGroupTable& to, const Embedding& e);

/// Isomorphism between two subgroups of one group: domain[i] maps to image[i].
struct SubgroupIsomorphism {
    std::vector<int> domain;
    std::vector<int> image;
    int apply(int a) const;          // throws std::out_of_range outside the domain
    int apply_inverse(int b) const;  // throws std::out_of_range outside the image
};

enum class Side { shared, left, right };

struct AmalgamPregroup {
    Pregroup pregroup;
    FiniteGroupTable left, right;
    std::vector<Element> from_left, from_right;  // factor index -> element
    std::vector<Side> side;                      // per element
    std::vector<Element> shared;                 // the amalgamated subgroup
    bool in_factor(Element e, Side factor) const { return side[static_cast<std::size_t>(e)] == Side::shared || side[static_cast<std::size_t>(e)] == factor; }
};

/// Elements: the identity, the shared subgroup (named as in `left`), the
/// rest of `left`, then the rest of `right`. Right-hand names that clash
/// with a left-hand name get a "_2" suffix.
AmalgamPregroup amalgam_pregroup(const FiniteGroupTable& left, const FiniteGroupTable& right,
                                 const FiniteGroupTable& shared, const Embedding& into_left,
                                 const Embedding& into_right);

/// An element u t^sign v of an HNN pregroup (sign 0 for base elements, then
/// `left` is the base element and `right` is the identity).
struct HnnForm {
    int left = 0;
    int sign = 0;
    int right = 0;
    bool operator==(const HnnForm&) const = default;
};

struct HnnPregroup {
    Pregroup pregroup;
    FiniteGroupTable base;
    SubgroupIsomorphism phi;  // t^-1 a t = phi(a)
    std::vector<HnnForm> form;
    std::vector<Element> from_base;
    std::vector<int> domain_rep, image_rep;     // coset representatives of H/A and H/B
    std::vector<Element> plus_index, minus_index;  // (rep * |H| + v) -> element, or kUndefined
    /// Canonical element for u t^sign v (sign = +1 or -1).
    Element element(int u, int sign, int v) const;
    bool in_base(Element e) const { return form[static_cast<std::size_t>(e)].sign == 0; }
    bool in_domain(int h) const;  // h in A
    bool in_image(int h) const;   // h in B
};

/// Elements: the base group (identity first), then u t v for the coset
/// representatives u of H/A (the identity for A itself, otherwise the
/// least index in the coset), then u T v for those of H/B. Names are base
/// names, "t", "T", and products such as "(12)*t*(13)".
HnnPregroup hnn_pregroup(const FiniteGroupTable& base, const SubgroupIsomorphism& phi);

struct NotHnnContext : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InHSubgroup : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Rewrites a cyclically reduced word with stable letters as t^e1 z1 ...
/// t^en zn (each factor one pregroup element with trivial left part).
/// `conjugator` x satisfies x c x^-1 = word.
struct StandardForm {
    ElementWord word;
    ElementWord conjugator;
    std::vector<int> signs;
    std::vector<int> z;  // base elements
};
StandardForm standard_cyclic_form(const ElementWord& c, const HnnPregroup& ctx);

/// True when no seam t^e z t^e' (cyclically) lies in t^-1 A t or t B t^-1.
bool britton_cyclic(const StandardForm& s, const HnnPregroup& ctx);

/// Classification of a conjugate pair in an amalgam (case 0: none found).
struct MksVerdict {
    int case_number = 0;
    ElementWord g, f;            // cyclic reductions of the inputs
    std::vector<Element> chain;  // case 1: from f to g, interior in H
    std::vector<Element> chain_conjugators;  // case 1: a with a^-1 chain[i] a = chain[i+1]
    Element factor_conjugator = kUndefined;  // case 2
    std::size_t rotation = 0;                // case 3
    Element shared_conjugator = kUndefined;  // case 3
};

MksVerdict verify_mks(const ElementWord& g, const ElementWord& f, const AmalgamPregroup& ctx,
                      const UniversalContext& U);
/// Re-checks the witness data of a verdict against the factor tables.
bool replay_mks(const MksVerdict& v, const AmalgamPregroup& ctx, const UniversalContext& U);

/// One link of a Collins chain: next = k^-1 * t^-delta prev t^delta * k, or
/// for delta = 0 a plain conjugation next = k^-1 prev k by a base element.
struct CollinsLink {
    int delta = 0;
    int k = 0;
    int to = 0;
};

struct CollinsVerdict {
    int case_number = 0;
    ElementWord g, f;              // reduced inputs (standard forms if not in H)
    int start = 0;                 // case 1: base element the chain starts from
    std::vector<CollinsLink> chain;  // case 1
    int base_conjugator = -1;      // case 2
    std::size_t rotation = 0;      // case 3
    int c = -1;                    // case 3: in A when the rotated word starts with t, in B for t^-1
};

CollinsVerdict verify_collins(const ElementWord& g, const ElementWord& f, const HnnPregroup& ctx,
                              const UniversalContext& U);
bool replay_collins(const CollinsVerdict& v, const HnnPregroup& ctx, const UniversalContext& U);

}  // namespace cycrw
