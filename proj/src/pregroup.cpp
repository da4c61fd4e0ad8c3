#include "cycrw/pregroup.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cycrw {

Pregroup::Pregroup(std::vector<std::string> names, Element epsilon, std::vector<Element> inverse,
                   std::vector<Element> table)
    : names_(std::move(names)), epsilon_(epsilon), inverse_(std::move(inverse)), table_(std::move(table)) {
    const std::size_t n = names_.size();
    const auto in_range = [n](Element e) { return e >= 0 && static_cast<std::size_t>(e) < n; };
    if (n == 0) throw std::invalid_argument("pregroup needs at least the neutral element");
    if (!in_range(epsilon_)) throw std::invalid_argument("neutral element index out of range");
    if (inverse_.size() != n) throw std::invalid_argument("involution size does not match element count");
    if (table_.size() != n * n) throw std::invalid_argument("product table must be n x n");
    for (std::size_t i = 0; i < n; ++i) {
        if (names_[i].empty()) throw std::invalid_argument("empty element name");
        if (!lookup_.emplace(names_[i], static_cast<Element>(i)).second)
            throw std::invalid_argument("duplicate element name " + names_[i]);
        if (!in_range(inverse_[i])) throw std::invalid_argument("involution entry out of range for " + names_[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (inverse_[static_cast<std::size_t>(inverse_[i])] != static_cast<Element>(i))
            throw std::invalid_argument("involution is not self-inverse at " + names_[i]);
    if (inverse_[static_cast<std::size_t>(epsilon_)] != epsilon_)
        throw std::invalid_argument("involution must fix the neutral element");
    for (Element e : table_)
        if (e != kUndefined && !in_range(e)) throw std::invalid_argument("product entry out of range");

    letter_of_.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<Element>(i) == epsilon_) continue;
        letter_of_[i] = static_cast<Letter>(letters_.size());
        letters_.push_back(static_cast<Element>(i));
    }
}

Pregroup Pregroup::from_entries(std::vector<std::string> names, const std::string& epsilon,
                                const std::vector<std::pair<std::string, std::string>>& inverse_pairs,
                                const std::vector<std::tuple<std::string, std::string, std::string>>& products) {
    std::unordered_map<std::string, Element> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx.emplace(names[i], static_cast<Element>(i));
    auto at = [&](const std::string& s) {
        auto it = idx.find(s);
        if (it == idx.end()) throw std::invalid_argument("unknown element " + s);
        return it->second;
    };
    const std::size_t n = names.size();
    const Element eps = at(epsilon);
    std::vector<Element> inv(n, kUndefined);
    for (const auto& [x, y] : inverse_pairs) {
        const Element a = at(x), b = at(y);
        for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}}) {
            auto& slot = inv[static_cast<std::size_t>(p)];
            if (slot != kUndefined && slot != q) throw std::invalid_argument("conflicting inverse for " + names[p]);
            slot = q;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (inv[i] == kUndefined) inv[i] = static_cast<Element>(i);
    std::vector<Element> table(n * n, kUndefined);
    for (const auto& [x, y, z] : products) {
        auto& slot = table[static_cast<std::size_t>(at(x)) * n + static_cast<std::size_t>(at(y))];
        const Element v = at(z);
        if (slot != kUndefined && slot != v)
            throw std::invalid_argument("conflicting product for " + x + " " + y);
        slot = v;
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& left = table[static_cast<std::size_t>(eps) * n + i];
        auto& right = table[i * n + static_cast<std::size_t>(eps)];
        if (left == kUndefined) left = static_cast<Element>(i);
        if (right == kUndefined) right = static_cast<Element>(i);
    }
    return Pregroup(std::move(names), eps, std::move(inv), std::move(table));
}

Element Pregroup::index(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) throw std::out_of_range("unknown element '" + name + "'");
    return it->second;
}

Element Pregroup::triple(Element a, Element b, Element c) const {
    const Element ab = product(a, b);
    if (ab != kUndefined) {
        const Element r = product(ab, c);
        if (r != kUndefined) return r;
    }
    const Element bc = product(b, c);
    return bc == kUndefined ? kUndefined : product(a, bc);
}

Alphabet Pregroup::gamma_alphabet() const {
    std::vector<std::string> toks;
    std::vector<Letter> inv;
    for (Element e : letters_) {
        toks.push_back(name(e));
        inv.push_back(letter_of_[static_cast<std::size_t>(inverse(e))]);
    }
    return Alphabet(std::move(toks), std::move(inv));
}

Alphabet Pregroup::element_alphabet() const {
    std::vector<Letter> inv(inverse_.begin(), inverse_.end());
    return Alphabet(names_, std::move(inv));
}

Word Pregroup::to_gamma(const ElementWord& w) const {
    Word out;
    out.reserve(w.size());
    for (Element e : w) {
        if (e == epsilon_) throw std::invalid_argument("the neutral element is not a letter");
        out.push_back(letter_of_.at(static_cast<std::size_t>(e)));
    }
    return out;
}

ElementWord Pregroup::from_gamma(const Word& w) const {
    ElementWord out;
    out.reserve(w.size());
    for (Letter a : w) out.push_back(letters_.at(static_cast<std::size_t>(a)));
    return out;
}

ElementWord Pregroup::parse(const std::string& text) const {
    std::istringstream in(text);
    ElementWord w;
    std::string tok;
    while (in >> tok) {
        const Element e = index(tok);
        if (e != epsilon_) w.push_back(e);
    }
    return w;
}

std::string Pregroup::format(const ElementWord& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += name(w[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sweeps

const char* axiom_name(Axiom a) {
    static const char* names[] = {"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8"};
    return names[static_cast<int>(a)];
}

bool AxiomReport::ok() const {
    return std::all_of(basic.begin(), basic.end(), [](const AxiomVerdict& v) { return v.holds; });
}

const AxiomVerdict& AxiomReport::operator[](Axiom a) const {
    switch (a) {
        case Axiom::P6: return p6.value();
        case Axiom::P7: return p7.value();
        case Axiom::P8: return p8.value();
        default: return basic[static_cast<std::size_t>(a)];
    }
}

bool KeyLemmaReport::ok() const {
    return std::all_of(parts.begin(), parts.end(), [](const AxiomVerdict& v) { return v.holds; });
}

namespace {

struct Collector {
    std::size_t cap = 0;
    std::size_t count = 0;
    std::vector<std::vector<Element>> witnesses;
    void hit(std::vector<Element> w) {
        ++count;
        if (witnesses.size() < cap) witnesses.push_back(std::move(w));
    }
};

// Runs body(a, collector) for every first index a and merges the per-index
// results in index order, so the parallel and serial runs agree exactly.
template <class Body>
AxiomVerdict sweep(std::size_t n, std::size_t cap, bool parallel, Body body) {
    std::vector<Collector> per(n, Collector{cap, 0, {}});
    const auto count = static_cast<std::ptrdiff_t>(n);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t a = 0; a < count; ++a) body(static_cast<Element>(a), per[static_cast<std::size_t>(a)]);
    } else {
        for (std::ptrdiff_t a = 0; a < count; ++a) body(static_cast<Element>(a), per[static_cast<std::size_t>(a)]);
    }
    AxiomVerdict v;
    for (auto& c : per) {
        v.violations += c.count;
        for (auto& w : c.witnesses)
            if (v.witnesses.size() < cap) v.witnesses.push_back(std::move(w));
    }
    v.holds = v.violations == 0;
    return v;
}

std::vector<char> subgroup_mask(const Pregroup& P) {
    const auto n = static_cast<Element>(P.size());
    std::vector<char> in(P.size(), 1);
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n && in[static_cast<std::size_t>(x)]; ++y)
            if (!P.defined(x, y) || !P.defined(y, x)) in[static_cast<std::size_t>(x)] = 0;
    return in;
}

AxiomReport axioms_impl(const Pregroup& P, std::size_t cap, bool parallel) {
    const auto n = static_cast<Element>(P.size());
    const Element eps = P.epsilon();
    AxiomReport r;
    r.basic[0] = sweep(P.size(), cap, false, [&](Element a, Collector& c) {
        if (P.product(a, eps) != a || P.product(eps, a) != a) c.hit({a});
    });
    r.basic[1] = sweep(P.size(), cap, false, [&](Element a, Collector& c) {
        const Element ai = P.inverse(a);
        if (P.product(ai, a) != eps || P.product(a, ai) != eps) c.hit({a});
    });
    r.basic[2] = sweep(P.size(), cap, parallel, [&](Element a, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            const Element ab = P.product(a, b);
            if (ab == kUndefined) continue;
            if (P.product(P.inverse(b), P.inverse(a)) != P.inverse(ab)) c.hit({a, b});
        }
    });
    r.basic[3] = sweep(P.size(), cap, parallel, [&](Element a, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            const Element ab = P.product(a, b);
            if (ab == kUndefined) continue;
            for (Element cc = 0; cc < n; ++cc) {
                const Element bc = P.product(b, cc);
                if (bc == kUndefined) continue;
                if (P.product(ab, cc) != P.product(a, bc)) c.hit({a, b, cc});
            }
        }
    });
    r.basic[4] = sweep(P.size(), cap, parallel, [&](Element a, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            if (!P.defined(a, b)) continue;
            for (Element cc = 0; cc < n; ++cc) {
                if (!P.defined(b, cc)) continue;
                const bool abc = P.triple(a, b, cc) != kUndefined;
                if (abc) continue;
                for (Element d = 0; d < n; ++d) {
                    if (!P.defined(cc, d)) continue;
                    if (P.triple(b, cc, d) == kUndefined) c.hit({a, b, cc, d});
                }
            }
        }
    });
    return r;
}

KeyLemmaReport key_lemma_impl(const Pregroup& P, std::size_t cap, bool parallel) {
    const auto n = static_cast<Element>(P.size());
    const Element eps = P.epsilon();
    KeyLemmaReport r;
    // 1: ab defined => [ab] b^-1 defined and equal to a.
    r.parts[0] = sweep(P.size(), cap, parallel, [&](Element a, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            const Element ab = P.product(a, b);
            if (ab != kUndefined && P.product(ab, P.inverse(b)) != a) c.hit({a, b});
        }
    });
    // 2: ab undefined, ac and c^-1 b defined => [ac][c^-1 b] undefined.
    r.parts[1] = sweep(P.size(), cap, parallel, [&](Element a, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            if (P.defined(a, b)) continue;
            for (Element x = 0; x < n; ++x) {
                const Element ax = P.product(a, x), xb = P.product(P.inverse(x), b);
                if (ax == kUndefined || xb == kUndefined) continue;
                if (P.defined(ax, xb)) c.hit({a, b, x});
            }
        }
    });
    // 3: abc reduced, a d^-1 and d b defined => [a d^-1][d b] c reduced.
    r.parts[2] = sweep(P.size(), cap, parallel, [&](Element a, Collector& c) {
        if (a == eps) return;
        for (Element b = 0; b < n; ++b) {
            if (b == eps || P.defined(a, b)) continue;
            for (Element cc = 0; cc < n; ++cc) {
                if (cc == eps || P.defined(b, cc)) continue;
                for (Element d = 0; d < n; ++d) {
                    const Element x = P.product(a, P.inverse(d)), y = P.product(d, b);
                    if (x == kUndefined || y == kUndefined) continue;
                    if (!is_reduced({x, y, cc}, P)) c.hit({a, b, cc, d});
                }
            }
        }
    });
    // 4: ab undefined, ac, c^-1 b, bd defined => [c^-1 b] d defined and
    // equal to c^-1 [bd].
    r.parts[3] = sweep(P.size(), cap, parallel, [&](Element a, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            if (P.defined(a, b)) continue;
            for (Element x = 0; x < n; ++x) {
                const Element xi = P.inverse(x);
                const Element xb = P.product(xi, b);
                if (!P.defined(a, x) || xb == kUndefined) continue;
                for (Element d = 0; d < n; ++d) {
                    const Element bd = P.product(b, d);
                    if (bd == kUndefined) continue;
                    const Element left = P.product(xb, d);
                    if (left == kUndefined || left != P.product(xi, bd)) c.hit({a, b, x, d});
                }
            }
        }
    });
    // 5: gb, b^-1 h, gbc, c^-1 b^-1 h defined and gh undefined => bc defined.
    r.parts[4] = sweep(P.size(), cap, parallel, [&](Element g, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            if (!P.defined(g, b)) continue;
            const Element bi = P.inverse(b);
            for (Element h = 0; h < n; ++h) {
                if (!P.defined(bi, h) || P.defined(g, h)) continue;
                for (Element x = 0; x < n; ++x) {
                    if (P.defined(b, x)) continue;
                    if (P.triple(g, b, x) == kUndefined) continue;
                    if (P.triple(P.inverse(x), bi, h) == kUndefined) continue;
                    c.hit({g, b, x, h});
                }
            }
        }
    });
    return r;
}

}  // namespace

AxiomReport check_axioms(const Pregroup& P, std::size_t max_witnesses) { return axioms_impl(P, max_witnesses, true); }

AxiomReport check_axioms_serial(const Pregroup& P, std::size_t max_witnesses) {
    return axioms_impl(P, max_witnesses, false);
}

KeyLemmaReport key_lemma_check(const Pregroup& P, std::size_t max_witnesses) {
    return key_lemma_impl(P, max_witnesses, true);
}

KeyLemmaReport key_lemma_check_serial(const Pregroup& P, std::size_t max_witnesses) {
    return key_lemma_impl(P, max_witnesses, false);
}

AxiomVerdict check_p6(const Pregroup& P, std::size_t max_witnesses) {
    const auto in = subgroup_mask(P);
    const auto n = static_cast<Element>(P.size());
    return sweep(P.size(), max_witnesses, true, [&](Element f, Collector& c) {
        for (Element g = 0; g < n; ++g) {
            if (P.defined(f, g)) continue;
            for (Element b = 0; b < n; ++b)
                if (P.defined(f, P.inverse(b)) && P.defined(b, g) && !in[static_cast<std::size_t>(b)])
                    c.hit({f, g, b});
        }
    });
}

AxiomVerdict check_p7(const Pregroup& P, std::size_t max_witnesses) {
    const auto in = subgroup_mask(P);
    const auto n = static_cast<Element>(P.size());
    return sweep(P.size(), max_witnesses, true, [&](Element x, Collector& c) {
        for (Element y = 0; y < n; ++y)
            for (Element z = 0; z < n; ++z) {
                const Element yz = P.product(y, z);
                if (yz == kUndefined || in[static_cast<std::size_t>(yz)] || !P.defined(x, yz)) continue;
                bool ok = true;
                for (Element s : {x, P.inverse(x)})
                    for (Element t : {y, z}) ok = ok && P.defined(s, t) && P.defined(t, s);
                if (!ok) c.hit({x, y, z});
            }
    });
}

AxiomVerdict check_p8(const Pregroup& P, std::size_t max_witnesses) {
    const auto in = subgroup_mask(P);
    const auto n = static_cast<Element>(P.size());
    return sweep(P.size(), max_witnesses, false, [&](Element a, Collector& c) {
        for (Element b = 0; b < n; ++b) {
            const Element ab = P.product(a, b);
            if (ab == kUndefined) continue;
            if (!in[static_cast<std::size_t>(a)] && !in[static_cast<std::size_t>(b)] &&
                !in[static_cast<std::size_t>(ab)])
                c.hit({a, b});
        }
    });
}

void add_extra_axioms(const Pregroup& P, AxiomReport& report, std::size_t max_witnesses) {
    report.p6 = check_p6(P, max_witnesses);
    report.p7 = check_p7(P, max_witnesses);
    report.p8 = check_p8(P, max_witnesses);
    if ((report.p7->holds || report.p8->holds) && !report.p6->holds)
        throw std::logic_error("P7 or P8 holds but P6 fails; the table is inconsistent");
}

std::vector<Element> canonical_subgroup(const Pregroup& P) {
    const auto in = subgroup_mask(P);
    std::vector<Element> out;
    for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i]) out.push_back(static_cast<Element>(i));
    if (!in[static_cast<std::size_t>(P.epsilon())]) throw std::logic_error("canonical subgroup misses the neutral element");
    for (Element x : out) {
        if (!in[static_cast<std::size_t>(P.inverse(x))]) throw std::logic_error("canonical subgroup not closed under inverse");
        for (Element y : out)
            if (!in[static_cast<std::size_t>(P.product(x, y))])
                throw std::logic_error("canonical subgroup not closed under product");
    }
    return out;
}

bool is_reduced(const ElementWord& w, const Pregroup& P) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == P.epsilon()) return false;
        if (i + 1 < w.size() && P.defined(w[i], w[i + 1])) return false;
    }
    return true;
}

RewriteSystem derive_system(const Pregroup& P, SystemVariant variant) {
    const bool with_eps = variant == SystemVariant::with_epsilon;
    const Alphabet A = with_eps ? P.element_alphabet() : P.gamma_alphabet();
    auto letter = [&](Element e) -> Letter {
        return with_eps ? static_cast<Letter>(e) : P.to_gamma({e}).front();
    };
    std::vector<Element> alphabet_elems;
    if (with_eps) {
        for (std::size_t i = 0; i < P.size(); ++i) alphabet_elems.push_back(static_cast<Element>(i));
    } else {
        alphabet_elems = P.letters();
    }
    const Element eps = P.epsilon();
    std::vector<Rule> rules;
    if (with_eps) rules.push_back(Rule{{letter(eps)}, {}, Anchor::none, false});
    for (Element a : alphabet_elems)
        for (Element b : alphabet_elems) {
            const Element ab = P.product(a, b);
            if (ab == kUndefined) continue;
            Word rhs;
            if (with_eps || ab != eps) rhs.push_back(letter(ab));
            rules.push_back(Rule{{letter(a), letter(b)}, std::move(rhs), Anchor::none, false});
        }
    std::set<std::pair<Word, Word>> seen;
    const auto n = static_cast<Element>(P.size());
    for (Element a : alphabet_elems)
        for (Element b : alphabet_elems) {
            if (!with_eps && P.defined(a, b)) continue;
            for (Element c = 0; c < n; ++c) {
                const Element ac = P.product(a, c), cb = P.product(P.inverse(c), b);
                if (ac == kUndefined || cb == kUndefined) continue;
                if (!with_eps && (ac == eps || cb == eps)) continue;
                Word l{letter(a), letter(b)}, r{letter(ac), letter(cb)};
                if (l == r) continue;
                if (shortlex_less(r, l)) std::swap(l, r);
                if (!seen.insert({l, r}).second) continue;
                rules.push_back(Rule{std::move(l), std::move(r), Anchor::none, true});
            }
        }
    return RewriteSystem(A, std::move(rules));
}

}  // namespace cycrw
