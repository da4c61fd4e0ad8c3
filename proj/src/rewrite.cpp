#include "cycrw/rewrite.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace cycrw {

const char* anchor_name(Anchor a) {
    switch (a) {
        case Anchor::none: return "none";
        case Anchor::prefix: return "prefix";
        case Anchor::suffix: return "suffix";
        case Anchor::whole: return "whole";
    }
    return "?";
}

const char* join_status_name(JoinStatus s) {
    switch (s) {
        case JoinStatus::joinable: return "joinable";
        case JoinStatus::disjoint: return "disjoint";
        case JoinStatus::budget_exhausted: return "budget-exhausted";
    }
    return "?";
}

RewriteSystem::RewriteSystem(Alphabet alphabet, std::vector<Rule> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
    for (const auto& r : rules_) {
        if (!alphabet_.valid(r.lhs) || !alphabet_.valid(r.rhs))
            throw std::invalid_argument("rule uses a letter outside the alphabet");
        if (r.symmetric && r.lhs.size() != r.rhs.size())
            throw std::invalid_argument("symmetric rule must preserve length");
        if (r.symmetric && r.anchor != Anchor::none)
            throw std::invalid_argument("symmetric rules cannot be anchored");
    }
    rebuild();
}

void RewriteSystem::rebuild() {
    directions_.clear();
    by_source_.clear();
    source_lengths_.clear();
    inserting_.clear();
    m_ = 0;
    thue_ = true;
    bool empty_lhs = false;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        const auto& r = rules_[i];
        m_ = std::max(m_, r.lhs.size());
        if (r.symmetric) m_ = std::max(m_, r.rhs.size());
        if (r.lhs.empty() || (r.symmetric && r.rhs.empty())) empty_lhs = true;
        if (r.rhs.size() > r.lhs.size()) thue_ = false;
        if (r.rhs.size() == r.lhs.size() && !r.symmetric) thue_ = false;
        directions_.push_back({i, false});
        if (r.symmetric && r.lhs != r.rhs) directions_.push_back({i, true});
    }
    standard_ = !empty_lhs && m_ >= 2;
    std::set<std::size_t> lengths;
    for (std::size_t d = 0; d < directions_.size(); ++d) {
        const Word& src = from(directions_[d]);
        if (src.empty()) {
            inserting_.push_back(d);
        } else {
            by_source_[src].push_back(d);
            lengths.insert(src.size());
        }
    }
    source_lengths_.assign(lengths.begin(), lengths.end());
}

const std::vector<std::size_t>* RewriteSystem::directions_from(const Word& w) const {
    auto it = by_source_.find(w);
    return it == by_source_.end() ? nullptr : &it->second;
}

bool RewriteSystem::has_anchored_rules() const {
    return std::any_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.anchor != Anchor::none; });
}

RewriteSystem RewriteSystem::with_rules(const std::vector<Rule>& extra) const {
    std::vector<Rule> all = rules_;
    for (const auto& r : extra) {
        bool present = std::any_of(all.begin(), all.end(), [&](const Rule& q) {
            if (q == r) return true;
            return q.symmetric && r.symmetric && q.lhs == r.rhs && q.rhs == r.lhs;
        });
        if (!present) all.push_back(r);
    }
    return RewriteSystem(alphabet_, std::move(all));
}

namespace {

bool anchor_allows(Anchor a, std::size_t pos, std::size_t len, std::size_t n) {
    switch (a) {
        case Anchor::none: return true;
        case Anchor::prefix: return pos == 0;
        case Anchor::suffix: return pos + len == n;
        case Anchor::whole: return pos == 0 && len == n;
    }
    return false;
}

Word splice(const Word& w, std::size_t pos, std::size_t len, const Word& rep) {
    Word r;
    r.reserve(w.size() - len + rep.size());
    r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
    r.insert(r.end(), rep.begin(), rep.end());
    r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + len), w.end());
    return r;
}

}  // namespace

std::vector<Step> word_successors(const Word& w, const RewriteSystem& S) {
    std::vector<Step> out;
    const std::size_t n = w.size();
    const auto& dirs = S.directions();
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (std::size_t len : S.source_lengths()) {
            if (pos + len > n) break;
            Word window(w.begin() + static_cast<std::ptrdiff_t>(pos),
                        w.begin() + static_cast<std::ptrdiff_t>(pos + len));
            const auto* hits = S.directions_from(window);
            if (!hits) continue;
            for (std::size_t d : *hits) {
                const Direction& dir = dirs[d];
                if (!anchor_allows(S.anchor(dir), pos, len, n)) continue;
                out.push_back({splice(w, pos, len, S.to(dir)), dir.rule, pos, dir.reversed, len});
            }
        }
    }
    for (std::size_t d : S.inserting_directions()) {
        const Direction& dir = dirs[d];
        for (std::size_t gap = 0; gap <= n; ++gap) {
            if (!anchor_allows(S.anchor(dir), gap, 0, n)) continue;
            out.push_back({splice(w, gap, 0, S.to(dir)), dir.rule, gap, dir.reversed, 0});
        }
    }
    return out;
}

namespace {

void cyclic_successors_into(const CyclicWord& c, const RewriteSystem& S, std::vector<CyclicWord>& out) {
    const Word& w = c.canon();
    const std::size_t n = w.size();
    const auto& dirs = S.directions();
    std::vector<Word> raw;
    Word window;
    for (std::size_t len : S.source_lengths()) {
        if (len > n) break;
        for (std::size_t s = 0; s < n; ++s) {
            window.clear();
            for (std::size_t j = 0; j < len; ++j) window.push_back(w[(s + j) % n]);
            const auto* hits = S.directions_from(window);
            if (!hits) continue;
            for (std::size_t d : *hits) {
                const Direction& dir = dirs[d];
                if (S.anchor(dir) == Anchor::whole && len != n) continue;
                // A whole-anchored source of full length matches only if the
                // cycle equals it, which the window lookup already ensures.
                Word r = S.to(dir);
                for (std::size_t j = len; j < n; ++j) r.push_back(w[(s + j) % n]);
                raw.push_back(std::move(r));
            }
        }
    }
    for (std::size_t d : S.inserting_directions()) {
        const Direction& dir = dirs[d];
        if (S.anchor(dir) == Anchor::whole && n != 0) continue;
        const std::size_t gaps = n == 0 ? 1 : n;
        for (std::size_t g = 0; g < gaps; ++g) {
            Word r = S.to(dir);
            for (std::size_t j = 0; j < n; ++j) r.push_back(w[(g + j) % n]);
            raw.push_back(std::move(r));
        }
    }
    out.clear();
    out.reserve(raw.size());
    for (auto& r : raw) out.emplace_back(r);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

std::vector<CyclicWord> cyclic_successors(const CyclicWord& c, const RewriteSystem& S) {
    std::vector<CyclicWord> out;
    cyclic_successors_into(c, S, out);
    return out;
}

CyclicStepFn cyclic_step_fn(const RewriteSystem& S) {
    return [&S](const CyclicWord& c, std::vector<CyclicWord>& out) { cyclic_successors_into(c, S, out); };
}

Word reduce_greedy(Word w, const RewriteSystem& S, std::size_t budget) {
    const auto& dirs = S.directions();
    std::size_t steps = 0;
    for (;;) {
        bool applied = false;
        const std::size_t n = w.size();
        for (std::size_t pos = 0; pos < n && !applied; ++pos) {
            std::size_t best_rule = SIZE_MAX;
            const Direction* best = nullptr;
            std::size_t best_len = 0;
            for (std::size_t len : S.source_lengths()) {
                if (pos + len > n) break;
                Word window(w.begin() + static_cast<std::ptrdiff_t>(pos),
                            w.begin() + static_cast<std::ptrdiff_t>(pos + len));
                const auto* hits = S.directions_from(window);
                if (!hits) continue;
                for (std::size_t d : *hits) {
                    const Direction& dir = dirs[d];
                    if (S.to(dir).size() >= len) continue;
                    if (!anchor_allows(S.anchor(dir), pos, len, n)) continue;
                    if (dir.rule < best_rule) {
                        best_rule = dir.rule;
                        best = &dir;
                        best_len = len;
                    }
                }
            }
            if (best) {
                if (steps == budget) throw BudgetExhausted("reduce_greedy: step budget exhausted");
                w = splice(w, pos, best_len, S.to(*best));
                ++steps;
                applied = true;
            }
        }
        if (!applied) return w;
    }
}

bool check_weak_termination_sufficient(const RewriteSystem& S) {
    return std::none_of(S.rules().begin(), S.rules().end(),
                        [](const Rule& r) { return r.rhs.size() > r.lhs.size(); });
}

namespace {

bool spans_overlap(const Step& a, const Step& b) {
    const std::size_t a0 = a.position, a1 = a.position + a.span;
    const std::size_t b0 = b.position, b1 = b.position + b.span;
    if (a.span == 0 && b.span == 0) return a0 == b0;
    if (a.span == 0) return b0 < a0 && a0 < b1;
    if (b.span == 0) return a0 < b0 && b0 < a1;
    return a0 < b1 && b0 < a1;
}

}  // namespace

ConfluenceReport check_strong_confluence(const RewriteSystem& S) {
    if (S.has_anchored_rules())
        throw PreconditionViolated("strong confluence check needs a system without anchored rules");
    ConfluenceReport report;

    // Collect the windows formed by two overlapping redexes.
    std::vector<Word> sources;
    {
        std::unordered_set<Word, WordHash> uniq;
        for (const auto& d : S.directions()) {
            const Word& src = S.from(d);
            if (!src.empty() && uniq.insert(src).second) sources.push_back(src);
        }
    }
    std::unordered_map<Letter, std::vector<std::size_t>> by_first;
    for (std::size_t i = 0; i < sources.size(); ++i) by_first[sources[i].front()].push_back(i);

    std::unordered_set<Word, WordHash> windows;
    for (const Word& a : sources) {
        windows.insert(a);  // two rules at one position, or an insertion inside a
        for (std::size_t k = 0; k < a.size(); ++k) {
            auto it = by_first.find(a[k]);
            if (it == by_first.end()) continue;
            for (std::size_t j : it->second) {
                const Word& b = sources[j];
                const std::size_t common = std::min(b.size(), a.size() - k);
                if (!std::equal(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(common),
                                a.begin() + static_cast<std::ptrdiff_t>(k)))
                    continue;
                if (b.size() <= a.size() - k) continue;  // nested inside a: window a
                Word x = a;
                x.insert(x.end(), b.begin() + static_cast<std::ptrdiff_t>(common), b.end());
                windows.insert(std::move(x));
            }
        }
    }
    if (!S.inserting_directions().empty()) windows.insert(Word{});

    std::vector<Word> ordered(windows.begin(), windows.end());
    std::sort(ordered.begin(), ordered.end(), shortlex_less);

    std::unordered_map<Word, std::unordered_set<Word, WordHash>, WordHash> nbhd;
    auto neighbourhood = [&](const Word& y) -> const std::unordered_set<Word, WordHash>& {
        auto it = nbhd.find(y);
        if (it != nbhd.end()) return it->second;
        std::unordered_set<Word, WordHash> set{y};
        for (auto& st : word_successors(y, S)) set.insert(std::move(st.result));
        return nbhd.emplace(y, std::move(set)).first->second;
    };

    for (const Word& x : ordered) {
        auto steps = word_successors(x, S);
        for (std::size_t i = 0; i < steps.size(); ++i) {
            for (std::size_t j = i + 1; j < steps.size(); ++j) {
                if (!spans_overlap(steps[i], steps[j])) continue;
                const Word& y = steps[i].result;
                const Word& z = steps[j].result;
                ++report.divergences_checked;
                if (y == z) continue;
                const auto& ny = neighbourhood(y);
                if (ny.count(z)) continue;
                const auto& nz = neighbourhood(z);
                if (nz.count(y)) continue;
                const auto& small = ny.size() <= nz.size() ? ny : nz;
                const auto& large = ny.size() <= nz.size() ? nz : ny;
                bool met = std::any_of(small.begin(), small.end(), [&](const Word& t) { return large.count(t) != 0; });
                if (!met) {
                    report.ok = false;
                    report.counterexample = std::array<Word, 3>{x, y, z};
                    return report;
                }
            }
        }
        if (nbhd.size() > 200000) nbhd.clear();
    }
    return report;
}

// ---------------------------------------------------------------------------

CyclicExplorer::CyclicExplorer(const CyclicWord& start, CyclicStepFn step, std::size_t cap)
    : step_(std::move(step)), cap_(cap) {
    if (cap_ == 0) {
        capped_ = true;
        return;
    }
    seen_.insert(start);
    order_.push_back(start);
}

bool CyclicExplorer::advance() {
    if (capped_ || head_ >= order_.size()) return false;
    const CyclicWord node = order_[head_++];
    step_(node, scratch_);
    for (auto& s : scratch_) {
        if (seen_.count(s)) continue;
        if (order_.size() >= cap_) {
            capped_ = true;
            return false;
        }
        seen_.insert(s);
        order_.push_back(std::move(s));
    }
    return true;
}

JoinResult cyclic_joinable(const CyclicWord& u, const CyclicWord& v, const CyclicStepFn& step,
                           std::size_t budget) {
    if (budget == 0) throw std::invalid_argument("cyclic_joinable: budget must be positive");
    JoinResult res;
    if (u == v) {
        res.status = JoinStatus::joinable;
        res.witness = u;
        res.explored = 1;
        return res;
    }
    CyclicExplorer a(u, step, (budget + 1) / 2);
    CyclicExplorer b(v, step, budget / 2);
    std::size_t checked_a = 0, checked_b = 0;
    auto meet = [&](CyclicExplorer& mine, std::size_t& checked, const CyclicExplorer& other) -> bool {
        const auto& d = mine.discovered();
        for (; checked < d.size(); ++checked) {
            if (other.contains(d[checked])) {
                res.status = JoinStatus::joinable;
                res.witness = d[checked];
                return true;
            }
        }
        return false;
    };
    if (meet(a, checked_a, b) || meet(b, checked_b, a)) {
        res.explored = a.discovered().size() + b.discovered().size();
        return res;
    }
    for (;;) {
        bool pa = a.advance();
        if (meet(a, checked_a, b)) break;
        bool pb = b.advance();
        if (meet(b, checked_b, a)) break;
        if (!pa && !pb) {
            res.status = (a.finished() && b.finished()) ? JoinStatus::disjoint : JoinStatus::budget_exhausted;
            break;
        }
    }
    res.explored = a.discovered().size() + b.discovered().size();
    return res;
}

JoinResult cyclic_joinable(const CyclicWord& u, const CyclicWord& v, const RewriteSystem& S,
                           std::size_t budget) {
    return cyclic_joinable(u, v, cyclic_step_fn(S), budget);
}

std::vector<std::vector<JoinResult>> cyclic_joinable_matrix(const std::vector<CyclicWord>& words,
                                                            const CyclicStepFn& step,
                                                            std::size_t budget) {
    if (budget == 0) throw std::invalid_argument("cyclic_joinable_matrix: budget must be positive");
    struct Ball {
        std::vector<std::uint64_t> keys;
        bool finished = false;
    };
    auto explore = [&](const CyclicWord& w, std::size_t cap) {
        CyclicExplorer e(w, step, cap);
        e.run();
        Ball b;
        b.finished = e.finished();
        b.keys.reserve(e.discovered().size());
        for (const auto& c : e.discovered()) b.keys.push_back(word_fingerprint(c.canon()));
        std::sort(b.keys.begin(), b.keys.end());
        return b;
    };
    const std::size_t cap_u = (budget + 1) / 2, cap_v = budget / 2;
    const std::size_t n = words.size();
    std::vector<Ball> side_u(n), side_v;
    for (std::size_t i = 0; i < n; ++i) side_u[i] = explore(words[i], cap_u);
    const bool same = cap_u == cap_v;
    if (!same) {
        side_v.resize(n);
        for (std::size_t i = 0; i < n; ++i) side_v[i] = explore(words[i], cap_v);
    }
    const auto& vb = same ? side_u : side_v;

    // One merge over all sorted key lists marks every (i, j) whose balls
    // share a key. Entries are (key, list); lists n..2n-1 are the second side.
    std::vector<char> shares(n * n, 0);
    {
        const std::size_t lists = same ? n : 2 * n;
        auto keys_of = [&](std::size_t l) -> const std::vector<std::uint64_t>& {
            return l < n ? side_u[l].keys : vb[l - n].keys;
        };
        using Entry = std::pair<std::uint64_t, std::size_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        std::vector<std::size_t> pos(lists, 0);
        for (std::size_t l = 0; l < lists; ++l)
            if (!keys_of(l).empty()) heap.emplace(keys_of(l)[0], l);
        std::vector<std::size_t> group;
        while (!heap.empty()) {
            const std::uint64_t key = heap.top().first;
            group.clear();
            while (!heap.empty() && heap.top().first == key) {
                const std::size_t l = heap.top().second;
                heap.pop();
                group.push_back(l);
                const auto& k = keys_of(l);
                while (pos[l] < k.size() && k[pos[l]] == key) ++pos[l];
                if (pos[l] < k.size()) heap.emplace(k[pos[l]], l);
            }
            for (std::size_t a : group)
                for (std::size_t b : group) {
                    if (same) shares[a * n + b] = 1;
                    else if (a < n && b >= n) shares[a * n + (b - n)] = 1;
                }
        }
    }

    std::vector<std::vector<JoinResult>> out(n, std::vector<JoinResult>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            JoinResult& r = out[i][j];
            if (words[i] == words[j]) {
                r.status = JoinStatus::joinable;
                r.witness = words[i];
                r.explored = 1;
                continue;
            }
            if (shares[i * n + j]) {
                r = cyclic_joinable(words[i], words[j], step, budget);
                continue;
            }
            r.status = (side_u[i].finished && vb[j].finished) ? JoinStatus::disjoint : JoinStatus::budget_exhausted;
            r.explored = side_u[i].keys.size() + vb[j].keys.size();
        }
    }
    return out;
}

}  // namespace cycrw
