// Computation in the universal group of a finite pregroup: reduction,
// equality via interleavings, shortlex normal forms, cyclic reduction and
// the reference conjugacy decision.
#pragma once

#include <optional>
#include <vector>

#include "cycrw/pregroup.hpp"

namespace cycrw {

/// Result of cyclic reduction: `conjugator * input * conjugator^-1` equals
/// `word` in the universal group, and `word` is cyclically reduced.
struct CyclicReduction {
    ElementWord word;
    ElementWord conjugator;
};

/// A yes/no answer with, for positive answers, a word x such that
/// x u x^-1 = v holds in the universal group.
enum class ConjugacyMethod { linear, quadratic, oracle };
const char* method_name(ConjugacyMethod m);

struct ConjugacyAnswer {
    bool conjugate = false;
    std::optional<ElementWord> conjugator;
    ConjugacyMethod method = ConjugacyMethod::quadratic;
};

class UniversalContext {
public:
    /// Throws std::invalid_argument if P fails one of the axioms P1-P5.
    explicit UniversalContext(Pregroup P);

    const Pregroup& pregroup() const { return P_; }
    const RewriteSystem& system() const { return system_; }

    /// Formal inverse: reversed word of inverse elements.
    ElementWord inverse(const ElementWord& w) const;
    ElementWord concat(const ElementWord& u, const ElementWord& v) const;

    /// Multiplies adjacent letters until no product is defined. The neutral
    /// element is dropped. The result is reduced and hence geodesic.
    ElementWord reduce(const ElementWord& w) const;

    bool equal(const ElementWord& u, const ElementWord& v) const;

    /// Shortlex-least word (by element index) equal to w.
    ElementWord shortlex_nf(const ElementWord& w) const;

    /// Same, for an already reduced w, also returning the carries: letter k
    /// of the result is [carries[k]^-1 w[k] carries[k+1]], with carries[0]
    /// and carries[|w|] neutral.
    ElementWord shortlex_nf_reduced(const ElementWord& w, std::vector<Element>& carries) const;

    CyclicReduction cyclic_reduce(const ElementWord& w) const;
    bool is_cyclically_reduced(const ElementWord& w) const;

    /// b c b^-1 with the end products merged, when those products are
    /// defined letters (for |c| >= 2), or [b c b^-1] for a single letter.
    std::optional<ElementWord> preconjugate(const ElementWord& c, Element b) const;

    /// Letters reachable from `a` by repeated single-letter preconjugation.
    /// Sorted by element index.
    const std::vector<Element>& closure(Element a) const { return closure_.at(static_cast<std::size_t>(a)); }

    /// Conjugator word x (over elements) with x a x^-1 = target, for target
    /// in closure(a).
    ElementWord closure_conjugator(Element a, Element target) const;

    ConjugacyAnswer conjugate_quadratic(const ElementWord& u, const ElementWord& v) const;

    /// Builds the final certificate from the cyclic reductions of u and v
    /// and a conjugator y with y ru y^-1 = rv. Throws std::logic_error if
    /// the assembled word fails verification.
    ElementWord assemble_certificate(const ElementWord& u, const ElementWord& v, const CyclicReduction& ru,
                                     const CyclicReduction& rv, const ElementWord& y) const;

private:
    // Carries c_i for which a_{i+1} .. a_n can still be interleaved into
    // some reduced word with the final carry neutral. Row i of the flat
    // table holds one flag per element.
    std::vector<char> feasible_carries(const ElementWord& w) const;

    Pregroup P_;
    RewriteSystem system_;
    std::vector<std::vector<Element>> closure_;
    // parent_[a][x] = (previous element, conjugating element), or (-1, -1).
    std::vector<std::vector<std::pair<Element, Element>>> parent_;
};

}  // namespace cycrw
