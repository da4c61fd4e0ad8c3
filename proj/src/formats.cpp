#include "cycrw/formats.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cycrw {

FormatError::FormatError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

// A file split into sections. Lines before the first header are an error.
struct Sections {
    struct Section {
        std::string header;
        std::size_t line;
        std::vector<Line> body;
    };
    std::vector<Section> list;
};

std::vector<std::string> split(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

Sections split_sections(const std::string& text) {
    Sections s;
    std::istringstream in(text);
    std::string raw;
    for (std::size_t n = 1; std::getline(in, raw); ++n) {
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        auto toks = split(raw);
        if (toks.empty()) continue;
        const auto first = raw.find_first_not_of(" \t\r");
        if (raw[first] == '[') {
            const auto close = raw.find(']', first);
            if (close == std::string::npos || !split(raw.substr(close + 1)).empty())
                throw FormatError(n, "malformed section header");
            std::string header = raw.substr(first + 1, close - first - 1);
            s.list.push_back({header, n, {}});
            continue;
        }
        if (s.list.empty()) throw FormatError(n, "content before the first section header");
        s.list.back().body.push_back({n, std::move(toks)});
    }
    return s;
}

// "key: values" lines. Returns the values, or throws if the key differs.
bool is_key(const Line& l, const std::string& key) { return !l.tokens.empty() && l.tokens[0] == key + ":"; }

std::vector<std::string> values(const Line& l) { return {l.tokens.begin() + 1, l.tokens.end()}; }

void check_name(const std::string& t, std::size_t line) {
    static const std::set<std::string> reserved{"->", "<->", "=", "1"};
    if (reserved.count(t) || t.find_first_of(":[]#") != std::string::npos)
        throw FormatError(line, "'" + t + "' cannot be used as a name");
}

void check_distinct(const std::vector<std::string>& names, std::size_t line) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        check_name(n, line);
        if (!seen.insert(n).second) throw FormatError(line, "duplicate name '" + n + "'");
    }
}

Word parse_side(const std::vector<std::string>& toks, const Alphabet& A, std::size_t line) {
    if (toks.size() == 1 && toks[0] == "1" && !A.contains("1")) return {};
    Word w;
    for (const auto& t : toks) {
        if (!A.contains(t)) throw FormatError(line, "unknown letter '" + t + "'");
        w.push_back(A.index(t));
    }
    return w;
}

std::string emit_side(const Word& w, const Alphabet& A) { return w.empty() ? "1" : A.format(w); }

// Splits at the single arrow token; returns the arrow.
std::string split_arrow(const std::vector<std::string>& toks, std::vector<std::string>& lhs, std::vector<std::string>& rhs,
                        std::size_t line, bool allow_symmetric) {
    std::size_t at = toks.size();
    for (std::size_t i = 0; i < toks.size(); ++i)
        if (toks[i] == "->" || (allow_symmetric && toks[i] == "<->")) {
            if (at != toks.size()) throw FormatError(line, "more than one arrow");
            at = i;
        }
    if (at == toks.size()) throw FormatError(line, "expected '->'" + std::string(allow_symmetric ? " or '<->'" : ""));
    lhs.assign(toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(at));
    rhs.assign(toks.begin() + static_cast<std::ptrdiff_t>(at) + 1, toks.end());
    return toks[at];
}

const Sections::Section* find_section(const Sections& s, const std::string& header, bool required) {
    const Sections::Section* found = nullptr;
    for (const auto& sec : s.list)
        if (sec.header == header) {
            if (found) throw FormatError(sec.line, "duplicate section [" + header + "]");
            found = &sec;
        }
    if (!found && required) throw FormatError(0, "missing section [" + header + "]");
    return found;
}

void reject_unknown_sections(const Sections& s, const std::vector<std::string>& known,
                             const std::vector<std::string>& prefixes = {}) {
    for (const auto& sec : s.list) {
        if (std::find(known.begin(), known.end(), sec.header) != known.end()) continue;
        if (std::any_of(prefixes.begin(), prefixes.end(), [&](const std::string& p) { return sec.header.rfind(p, 0) == 0; }))
            continue;
        throw FormatError(sec.line, "unknown section [" + sec.header + "]");
    }
}

// Shared reader for "elements:" plus "x y = z" product lines.
struct TableText {
    std::vector<std::string> elements;
    std::size_t elements_line = 0;
    std::vector<std::tuple<std::string, std::string, std::string>> products;
    std::vector<std::size_t> product_lines;
};

void read_products(const Sections::Section& sec, TableText& t) {
    std::set<std::string> known(t.elements.begin(), t.elements.end());
    for (const auto& l : sec.body) {
        if (l.tokens.size() != 4 || l.tokens[2] != "=") throw FormatError(l.number, "expected 'x y = z'");
        for (std::size_t i : {0, 1, 3})
            if (!known.count(l.tokens[i])) throw FormatError(l.number, "unknown element '" + l.tokens[i] + "'");
        t.products.emplace_back(l.tokens[0], l.tokens[1], l.tokens[3]);
        t.product_lines.push_back(l.number);
    }
    // Conflicting duplicates are reported at the second occurrence.
    std::map<std::pair<std::string, std::string>, std::string> seen;
    for (std::size_t i = 0; i < t.products.size(); ++i) {
        const auto& [x, y, z] = t.products[i];
        auto [it, fresh] = seen.emplace(std::pair{x, y}, z);
        if (!fresh && it->second != z) throw FormatError(t.product_lines[i], "conflicting product for '" + x + " " + y + "'");
    }
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(0, "cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// ---------------------------------------------------------------------------
// .rws

SystemFile parse_system(const std::string& text) {
    const Sections s = split_sections(text);
    reject_unknown_sections(s, {"alphabet", "rules", "cyclic-rules"});
    const auto* alpha = find_section(s, "alphabet", true);

    std::vector<std::string> letters, order;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t letters_line = alpha->line;
    for (const auto& l : alpha->body) {
        if (is_key(l, "letters")) {
            if (!letters.empty()) throw FormatError(l.number, "letters given twice");
            letters = values(l);
            letters_line = l.number;
            check_distinct(letters, l.number);
        } else if (is_key(l, "inverse")) {
            if (l.tokens.size() != 3) throw FormatError(l.number, "expected 'inverse: x y'");
            pairs.emplace_back(l.tokens[1], l.tokens[2]);
        } else if (is_key(l, "order")) {
            order = values(l);
        } else {
            throw FormatError(l.number, "expected 'letters:', 'inverse:' or 'order:'");
        }
    }
    if (letters.empty()) throw FormatError(alpha->line, "no letters");
    if (!order.empty()) {
        auto a = order, b = letters;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) throw FormatError(letters_line, "'order:' must list each letter once");
        letters = order;
    }
    std::unordered_map<std::string, Letter> idx;
    for (std::size_t i = 0; i < letters.size(); ++i) idx.emplace(letters[i], static_cast<Letter>(i));
    std::vector<Letter> inv(letters.size(), -1);
    for (const auto& l : alpha->body) {
        if (!is_key(l, "inverse")) continue;
        const auto a = idx.find(l.tokens[1]), b = idx.find(l.tokens[2]);
        if (a == idx.end() || b == idx.end()) throw FormatError(l.number, "unknown letter in inverse pair");
        for (auto [p, q] : {std::pair{a->second, b->second}, std::pair{b->second, a->second}}) {
            if (inv[static_cast<std::size_t>(p)] != -1 && inv[static_cast<std::size_t>(p)] != q)
                throw FormatError(l.number, "conflicting inverse for '" + letters[static_cast<std::size_t>(p)] + "'");
            inv[static_cast<std::size_t>(p)] = q;
        }
    }
    for (std::size_t i = 0; i < inv.size(); ++i)
        if (inv[i] == -1) inv[i] = static_cast<Letter>(i);
    Alphabet A(letters, inv);

    std::vector<Rule> rules;
    if (const auto* sec = find_section(s, "rules", false))
        for (const auto& l : sec->body) {
            Rule r;
            std::vector<std::string> toks = l.tokens;
            static const std::map<std::string, Anchor> anchors{
                {"prefix:", Anchor::prefix}, {"suffix:", Anchor::suffix}, {"whole:", Anchor::whole}};
            if (auto it = anchors.find(toks[0]); it != anchors.end()) {
                r.anchor = it->second;
                toks.erase(toks.begin());
            }
            std::vector<std::string> lhs, rhs;
            r.symmetric = split_arrow(toks, lhs, rhs, l.number, true) == "<->";
            r.lhs = parse_side(lhs, A, l.number);
            r.rhs = parse_side(rhs, A, l.number);
            rules.push_back(std::move(r));
        }
    SystemFile f;
    try {
        f.system = RewriteSystem(A, std::move(rules));
    } catch (const std::invalid_argument& e) {
        throw FormatError(0, e.what());
    }
    if (const auto* sec = find_section(s, "cyclic-rules", false))
        for (const auto& l : sec->body) {
            std::vector<std::string> lhs, rhs;
            split_arrow(l.tokens, lhs, rhs, l.number, false);
            f.cyclic_rules.emplace_back(CyclicWord(parse_side(lhs, A, l.number)), CyclicWord(parse_side(rhs, A, l.number)));
        }
    return f;
}

std::string emit_system(const SystemFile& f) {
    const Alphabet& A = f.system.alphabet();
    std::ostringstream out;
    out << "[alphabet]\nletters:";
    for (const auto& t : A.tokens()) out << ' ' << t;
    out << '\n';
    for (std::size_t i = 0; i < A.size(); ++i) {
        const Letter a = static_cast<Letter>(i), b = A.inverse(a);
        if (a < b) out << "inverse: " << A.token(a) << ' ' << A.token(b) << '\n';
    }
    out << "\n[rules]\n";
    for (const auto& r : f.system.rules()) {
        if (r.anchor != Anchor::none) out << anchor_name(r.anchor) << ": ";
        out << emit_side(r.lhs, A) << (r.symmetric ? " <-> " : " -> ") << emit_side(r.rhs, A) << '\n';
    }
    if (!f.cyclic_rules.empty()) {
        out << "\n[cyclic-rules]\n";
        for (const auto& [from, to] : f.cyclic_rules)
            out << emit_side(from.canon(), A) << " -> " << emit_side(to.canon(), A) << '\n';
    }
    return out.str();
}

SystemFile system_file_of(const CompletionResult& r) {
    SystemFile f{r.rules.base(), {}};
    for (const auto& p : r.rules.extra()) f.cyclic_rules.emplace_back(p.from, p.to);
    return f;
}

// ---------------------------------------------------------------------------
// .pg

Pregroup parse_pregroup(const std::string& text) {
    const Sections s = split_sections(text);
    reject_unknown_sections(s, {"pregroup", "product"});
    const auto* head = find_section(s, "pregroup", true);
    TableText t;
    std::string epsilon;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t epsilon_line = head->line;
    for (const auto& l : head->body) {
        if (is_key(l, "elements")) {
            if (!t.elements.empty()) throw FormatError(l.number, "elements given twice");
            t.elements = values(l);
            t.elements_line = l.number;
            check_distinct(t.elements, l.number);
        } else if (is_key(l, "epsilon")) {
            if (l.tokens.size() != 2) throw FormatError(l.number, "expected 'epsilon: name'");
            epsilon = l.tokens[1];
            epsilon_line = l.number;
        } else if (is_key(l, "inverse")) {
            if (l.tokens.size() != 3) throw FormatError(l.number, "expected 'inverse: x y'");
            pairs.emplace_back(l.tokens[1], l.tokens[2]);
        } else {
            throw FormatError(l.number, "expected 'elements:', 'epsilon:' or 'inverse:'");
        }
    }
    if (t.elements.empty()) throw FormatError(head->line, "no elements");
    if (epsilon.empty()) throw FormatError(head->line, "no 'epsilon:' line");
    if (std::find(t.elements.begin(), t.elements.end(), epsilon) == t.elements.end())
        throw FormatError(epsilon_line, "epsilon '" + epsilon + "' is not an element");
    for (const auto& l : head->body)
        if (is_key(l, "inverse"))
            for (std::size_t i : {1, 2})
                if (std::find(t.elements.begin(), t.elements.end(), l.tokens[i]) == t.elements.end())
                    throw FormatError(l.number, "unknown element '" + l.tokens[i] + "'");
    if (const auto* sec = find_section(s, "product", false)) read_products(*sec, t);
    try {
        return Pregroup::from_entries(t.elements, epsilon, pairs, t.products);
    } catch (const std::invalid_argument& e) {
        throw FormatError(0, e.what());
    }
}

std::string emit_pregroup(const Pregroup& P) {
    std::ostringstream out;
    out << "[pregroup]\nelements:";
    for (const auto& n : P.names()) out << ' ' << n;
    out << "\nepsilon: " << P.name(P.epsilon()) << '\n';
    for (Element a = 0; a < static_cast<Element>(P.size()); ++a)
        if (a < P.inverse(a)) out << "inverse: " << P.name(a) << ' ' << P.name(P.inverse(a)) << '\n';
    out << "\n[product]\n";
    const Element eps = P.epsilon();
    for (Element a = 0; a < static_cast<Element>(P.size()); ++a)
        for (Element b = 0; b < static_cast<Element>(P.size()); ++b) {
            const Element c = P.product(a, b);
            if (c == kUndefined) continue;
            // Neutral rows and columns that act as the identity are implied.
            if ((a == eps && c == b) || (b == eps && c == a)) continue;
            out << P.name(a) << ' ' << P.name(b) << " = " << P.name(c) << '\n';
        }
    return out.str();
}

// ---------------------------------------------------------------------------
// .grp

GroupFile parse_group(const std::string& text) {
    const Sections s = split_sections(text);
    reject_unknown_sections(s, {"group", "product"}, {"subgroup ", "map "});
    const auto* head = find_section(s, "group", true);
    GroupFile g;
    TableText t;
    std::string identity;
    std::size_t identity_line = head->line;
    for (const auto& l : head->body) {
        if (is_key(l, "name") && l.tokens.size() == 2) {
            g.name = l.tokens[1];
        } else if (is_key(l, "elements")) {
            t.elements = values(l);
            t.elements_line = l.number;
            check_distinct(t.elements, l.number);
        } else if (is_key(l, "identity") && l.tokens.size() == 2) {
            identity = l.tokens[1];
            identity_line = l.number;
        } else {
            throw FormatError(l.number, "expected 'name:', 'elements:' or 'identity:'");
        }
    }
    if (t.elements.empty()) throw FormatError(head->line, "no elements");
    const auto id_it = std::find(t.elements.begin(), t.elements.end(), identity);
    if (id_it == t.elements.end()) throw FormatError(identity_line, "identity is missing or not an element");
    const std::size_t n = t.elements.size(), id = static_cast<std::size_t>(id_it - t.elements.begin());
    if (const auto* sec = find_section(s, "product", false)) read_products(*sec, t);

    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < n; ++i) idx.emplace(t.elements[i], static_cast<int>(i));
    std::vector<int> table(n * n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        table[id * n + i] = static_cast<int>(i);
        table[i * n + id] = static_cast<int>(i);
    }
    for (std::size_t k = 0; k < t.products.size(); ++k) {
        const auto& [x, y, z] = t.products[k];
        auto& slot = table[static_cast<std::size_t>(idx[x]) * n + static_cast<std::size_t>(idx[y])];
        if ((x == identity || y == identity) && slot != idx[z])
            throw FormatError(t.product_lines[k], "product with the identity must return the other factor");
        slot = idx[z];
    }
    for (std::size_t i = 0; i < n * n; ++i)
        if (table[i] == -1)
            throw FormatError(0, "product '" + t.elements[i / n] + " " + t.elements[i % n] + "' is missing");
    try {
        g.group = FiniteGroupTable(t.elements, table);
    } catch (const InvalidGroup& e) {
        throw FormatError(0, e.what());
    }

    for (const auto& sec : s.list) {
        if (sec.header.rfind("subgroup ", 0) == 0) {
            const std::string name = sec.header.substr(9);
            std::vector<int> gens;
            bool listed = false;
            for (const auto& l : sec.body) {
                const bool elems = is_key(l, "elements");
                if (!elems && !is_key(l, "generators")) throw FormatError(l.number, "expected 'elements:' or 'generators:'");
                listed = listed || elems;
                for (const auto& v : values(l)) {
                    if (!idx.count(v)) throw FormatError(l.number, "unknown element '" + v + "'");
                    gens.push_back(idx[v]);
                }
            }
            std::vector<int> sub = g.group.generated(gens);
            if (listed) {
                std::sort(gens.begin(), gens.end());
                gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
                if (gens != sub) throw FormatError(sec.line, "subgroup '" + name + "' is not closed");
            }
            if (!g.subgroups.emplace(name, sub).second) throw FormatError(sec.line, "duplicate subgroup '" + name + "'");
        } else if (sec.header.rfind("map ", 0) == 0) {
            const std::string name = sec.header.substr(4);
            if (name.find("->") == std::string::npos) throw FormatError(sec.line, "map header must read 'map FROM->TO'");
            std::vector<std::pair<std::string, std::string>> entries;
            for (const auto& l : sec.body) {
                if (l.tokens.size() != 3 || l.tokens[1] != "->") throw FormatError(l.number, "expected 'x -> y'");
                entries.emplace_back(l.tokens[0], l.tokens[2]);
            }
            if (!g.maps.emplace(name, entries).second) throw FormatError(sec.line, "duplicate map '" + name + "'");
        }
    }
    return g;
}

}  // namespace cycrw
