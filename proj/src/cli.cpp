#include "cycrw/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "cycrw/completion.hpp"
#include "cycrw/constructions.hpp"
#include "cycrw/fastconj.hpp"
#include "cycrw/formats.hpp"
#include "json.hpp"

namespace cycrw::cli {

using json = nlohmann::ordered_json;

namespace {

bool has_extension(const std::string& path, const std::string& ext) {
    return std::filesystem::path(path).extension() == ext;
}

Outcome error(const std::string& msg) { return {exit_error, "", "error: " + msg + "\n"}; }

// Runs a command body and turns exceptions into exit code 2.
Outcome guarded(const std::function<Outcome()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return error(e.what());
    }
}

std::string line_of(const std::string& s) { return s + "\n"; }

std::string names(const Pregroup& P, const std::vector<Element>& es) {
    std::string s;
    for (Element e : es) s += (s.empty() ? "" : " ") + P.name(e);
    return s;
}

json verdict_json(const Pregroup& P, const AxiomVerdict& v) {
    json w = json::array();
    for (const auto& t : v.witnesses) {
        json one = json::array();
        for (Element e : t) one.push_back(P.name(e));
        w.push_back(one);
    }
    return {{"holds", v.holds}, {"violations", v.violations}, {"witnesses", w}};
}

std::string verdict_text(const Pregroup& P, const char* name, const AxiomVerdict& v) {
    std::string s = std::string(name) + ": ";
    if (v.holds) return s + "ok\n";
    s += "FAIL (" + std::to_string(v.violations) + (v.violations == 1 ? " violation)" : " violations)");
    for (std::size_t i = 0; i < v.witnesses.size(); ++i) s += (i ? "; " : " witnesses: ") + names(P, v.witnesses[i]);
    return s + "\n";
}

Pregroup load_pregroup(const std::string& path) { return parse_pregroup(read_text_file(path)); }

std::string group_name(const GroupFile& g, const std::string& path) {
    return g.name.empty() ? std::filesystem::path(path).stem().string() : g.name;
}

Outcome write_pregroup(const Pregroup& P, const std::string& out_path, bool json_out) {
    const std::string text = emit_pregroup(P);
    Outcome o;
    if (out_path.empty()) {
        o.out = text;
        return o;
    }
    std::ofstream f(out_path);
    if (!f) return error("cannot write '" + out_path + "'");
    f << text;
    if (json_out) o.out = json{{"path", out_path}, {"elements", P.size()}}.dump() + "\n";
    return o;
}

// One query against a pregroup context.
Outcome run_query(const UniversalContext& U, const std::string& raw, bool json_out) {
    const Pregroup& P = U.pregroup();
    std::string line = raw.substr(0, raw.find('#'));
    std::istringstream in(line);
    std::string op;
    if (!(in >> op)) return {};
    std::string rest;
    std::getline(in, rest);
    return guarded([&]() -> Outcome {
        if (op == "conj") {
            const auto bar = rest.find('|');
            if (bar == std::string::npos) return error("expected 'conj U | V'");
            const auto u = P.parse(rest.substr(0, bar)), v = P.parse(rest.substr(bar + 1));
            const auto ans = conjugate_linear(u, v, U);
            if (json_out) {
                json j{{"query", "conj"}, {"conjugate", ans.conjugate}};
                if (ans.conjugator) j["conjugator"] = P.format(*ans.conjugator);
                return {ans.conjugate ? exit_yes : exit_no, j.dump(), ""};
            }
            return {ans.conjugate ? exit_yes : exit_no,
                    ans.conjugate ? "conjugate: " + P.format(*ans.conjugator) : "not conjugate", ""};
        }
        const auto w = P.parse(rest);
        ElementWord result;
        if (op == "reduce") result = U.reduce(w);
        else if (op == "nf") result = U.shortlex_nf(w);
        else if (op == "cyclic-reduce") result = U.cyclic_reduce(w).word;
        else return error("unknown query '" + op + "'");
        if (json_out) return {exit_yes, json{{"query", op}, {"result", P.format(result)}}.dump(), ""};
        return {exit_yes, P.format(result), ""};
    });
}

}  // namespace

Outcome cmd_axioms(const std::string& path, bool json_out) {
    return guarded([&]() -> Outcome {
        const Pregroup P = load_pregroup(path);
        AxiomReport report = check_axioms(P);
        const bool basic = report.ok();
        std::optional<std::vector<Element>> subgroup;
        std::string subgroup_note;
        if (basic) {
            add_extra_axioms(P, report);
            try {
                subgroup = canonical_subgroup(P);
            } catch (const std::logic_error& e) {
                subgroup_note = e.what();
            }
        }
        static const char* labels[] = {"P1", "P2", "P3", "P4", "P5"};
        Outcome o;
        o.code = basic ? exit_yes : exit_no;
        if (json_out) {
            json j{{"ok", basic}, {"elements", P.size()}};
            for (std::size_t i = 0; i < 5; ++i) j["axioms"][labels[i]] = verdict_json(P, report.basic[i]);
            if (basic) {
                j["axioms"]["P6"] = verdict_json(P, *report.p6);
                j["axioms"]["P7"] = verdict_json(P, *report.p7);
                j["axioms"]["P8"] = verdict_json(P, *report.p8);
            }
            if (subgroup) {
                json s = json::array();
                for (Element e : *subgroup) s.push_back(P.name(e));
                j["canonical_subgroup"] = s;
            } else {
                j["canonical_subgroup"] = nullptr;
            }
            o.out = j.dump(2) + "\n";
            return o;
        }
        for (std::size_t i = 0; i < 5; ++i) o.out += verdict_text(P, labels[i], report.basic[i]);
        if (basic) {
            o.out += verdict_text(P, "P6", *report.p6);
            o.out += verdict_text(P, "P7", *report.p7);
            o.out += verdict_text(P, "P8", *report.p8);
        } else {
            o.out += "P6-P8: not evaluated\n";
        }
        if (subgroup) {
            o.out += "G_P = {" + names(P, *subgroup) + "}\n";
        } else if (!subgroup_note.empty()) {
            o.err += "G_P: " + subgroup_note + "\n";
        }
        return o;
    });
}

Outcome cmd_word(WordOp op, const std::string& path, const std::string& word, bool json_out, std::size_t budget) {
    return guarded([&]() -> Outcome {
        if (has_extension(path, ".rws")) {
            if (op != WordOp::reduce) return error("only 'reduce' is available for rewriting systems");
            const SystemFile f = parse_system(read_text_file(path));
            const Alphabet& A = f.system.alphabet();
            Word result;
            try {
                result = reduce_greedy(A.parse(word), f.system, budget);
            } catch (const BudgetExhausted& e) {
                return {exit_inconclusive, "", std::string("inconclusive: ") + e.what() + "\n"};
            }
            if (json_out) return {exit_yes, json{{"input", word}, {"result", A.format(result)}}.dump() + "\n", ""};
            return {exit_yes, line_of(A.format(result)), ""};
        }
        const UniversalContext U(load_pregroup(path));
        const Pregroup& P = U.pregroup();
        const ElementWord w = P.parse(word);
        json j{{"input", P.format(w)}};
        std::string text;
        switch (op) {
            case WordOp::reduce: text = P.format(U.reduce(w)); break;
            case WordOp::nf: text = P.format(U.shortlex_nf(w)); break;
            case WordOp::cyclic_reduce: {
                const auto r = U.cyclic_reduce(w);
                text = P.format(r.word);
                j["conjugator"] = P.format(r.conjugator);
                break;
            }
        }
        j["result"] = text;
        if (json_out) return {exit_yes, j.dump() + "\n", ""};
        return {exit_yes, line_of(text), ""};
    });
}

Outcome cmd_conj(const std::string& path, const std::string& u_text, const std::string& v_text, const std::string& algo,
                 std::size_t max_conj_len, bool json_out) {
    return guarded([&]() -> Outcome {
        if (algo != "linear" && algo != "quadratic" && algo != "oracle") return error("unknown algorithm '" + algo + "'");
        const UniversalContext U(load_pregroup(path));
        const Pregroup& P = U.pregroup();
        const ElementWord u = P.parse(u_text), v = P.parse(v_text);
        std::optional<ConjugacyAnswer> ans;
        if (algo == "linear") ans = conjugate_linear(u, v, U);
        else if (algo == "quadratic") ans = U.conjugate_quadratic(u, v);
        else ans = conjugate_oracle(u, v, U, max_conj_len);
        Outcome o;
        if (!ans) {
            o.code = exit_inconclusive;
            o.out = json_out ? json{{"conjugate", nullptr}, {"method", "oracle"}}.dump() + "\n" : "inconclusive\n";
            return o;
        }
        o.code = ans->conjugate ? exit_yes : exit_no;
        if (json_out) {
            json j{{"conjugate", ans->conjugate}, {"method", method_name(ans->method)}};
            if (ans->conjugator) j["conjugator"] = P.format(*ans->conjugator);
            o.out = j.dump() + "\n";
        } else if (ans->conjugate) {
            o.out = "conjugate\nconjugator: " + P.format(*ans->conjugator) + "\n";
        } else {
            o.out = "not conjugate\n";
        }
        return o;
    });
}

Outcome cmd_join(const std::string& path, const std::string& u, const std::string& v, std::size_t budget, bool json_out) {
    return guarded([&]() -> Outcome {
        const SystemFile f = parse_system(read_text_file(path));
        const Alphabet& A = f.system.alphabet();
        const JoinResult r = cyclic_joinable(CyclicWord(A.parse(u)), CyclicWord(A.parse(v)), f.system, budget);
        Outcome o;
        o.code = r.status == JoinStatus::joinable ? exit_yes : r.status == JoinStatus::disjoint ? exit_no : exit_inconclusive;
        if (json_out) {
            json j{{"status", join_status_name(r.status)}, {"explored", r.explored}};
            if (r.witness) j["witness"] = A.format(r.witness->canon());
            o.out = j.dump() + "\n";
        } else {
            o.out = std::string(join_status_name(r.status)) + "\n";
            if (r.witness) o.out += "witness: " + A.format(r.witness->canon()) + "\n";
        }
        if (!f.cyclic_rules.empty()) o.err = "note: [cyclic-rules] are not used by join\n";
        return o;
    });
}

Outcome cmd_complete(const std::string& path, const std::string& mode, const std::string& out_path, bool json_out) {
    return guarded([&]() -> Outcome {
        const SystemFile in = parse_system(read_text_file(path));
        const RewriteSystem& S = in.system;
        SystemFile result;
        std::size_t stop_index = 0;
        if (mode == "hat" || mode == "circle") {
            const auto inv = InverseAssignment::from_involution(S.alphabet());
            result.system = mode == "hat" ? hat_extension(S, inv) : circle_extension(S, inv);
        } else if (mode == "cstar") {
            const CompletionResult r = S.is_thue() ? thue_completion(S) : resolve_short_pairs(S);
            result = system_file_of(r);
            stop_index = r.stop_index;
        } else if (mode == "cdagger") {
            const CompletionResult r = cdagger(S);
            result = system_file_of(r);
            stop_index = r.stop_index;
        } else {
            return error("unknown mode '" + mode + "'");
        }
        Outcome o;
        if (!in.cyclic_rules.empty()) o.err = "note: input [cyclic-rules] were ignored\n";
        const std::string text = emit_system(result);
        if (out_path.empty()) {
            o.out = text;
            return o;
        }
        std::ofstream f(out_path);
        if (!f) return error("cannot write '" + out_path + "'");
        f << text;
        if (json_out)
            o.out = json{{"path", out_path},
                         {"rules", result.system.rules().size()},
                         {"cyclic_rules", result.cyclic_rules.size()},
                         {"stop_index", stop_index}}
                        .dump() +
                    "\n";
        return o;
    });
}

namespace {

Embedding embedding_from(const std::vector<std::pair<std::string, std::string>>& entries, const FiniteGroupTable& from,
                         const FiniteGroupTable& to, const std::string& label) {
    Embedding e{std::vector<int>(static_cast<std::size_t>(from.size()), -1)};
    for (const auto& [x, y] : entries) {
        const int a = from.index(x), b = to.index(y);
        if (e.image[static_cast<std::size_t>(a)] != -1 && e.image[static_cast<std::size_t>(a)] != b)
            throw InvalidEmbedding("map " + label + " sends '" + x + "' twice");
        e.image[static_cast<std::size_t>(a)] = b;
    }
    for (int a = 0; a < from.size(); ++a)
        if (e.image[static_cast<std::size_t>(a)] == -1) {
            if (a == from.identity()) e.image[static_cast<std::size_t>(a)] = to.identity();
            else throw InvalidEmbedding("map " + label + " does not send '" + from.name(a) + "'");
        }
    return e;
}

}  // namespace

Outcome cmd_from_amalgam(const std::string& left_path, const std::string& right_path, const std::string& shared_path,
                         const std::string& left_map, const std::string& right_map, const std::string& out_path,
                         bool json_out) {
    return guarded([&]() -> Outcome {
        const GroupFile L = parse_group(read_text_file(left_path)), R = parse_group(read_text_file(right_path)),
                        H = parse_group(read_text_file(shared_path));
        const std::string hn = group_name(H, shared_path), ln = group_name(L, left_path), rn = group_name(R, right_path);
        auto find_map = [&](const std::string& header,
                             const FiniteGroupTable& to) -> Embedding {
            for (const GroupFile* g : {&H, &L, &R})
                if (auto it = g->maps.find(header); it != g->maps.end()) return embedding_from(it->second, H.group, to, header);
            if (H.group.size() == 1) return Embedding{{to.identity()}};
            throw InvalidEmbedding("no map block [map " + header + "]");
        };
        const Embedding into_left = find_map(left_map.empty() ? hn + "->" + ln : left_map, L.group);
        const Embedding into_right = find_map(right_map.empty() ? hn + "->" + rn : right_map, R.group);
        const AmalgamPregroup am = amalgam_pregroup(L.group, R.group, H.group, into_left, into_right);
        return write_pregroup(am.pregroup, out_path, json_out);
    });
}

Outcome cmd_from_hnn(const std::string& base_path, const std::string& subgroup, const std::string& map,
                     const std::string& out_path, bool json_out) {
    return guarded([&]() -> Outcome {
        if (subgroup.empty() == map.empty()) return error("give exactly one of --subgroup and --map");
        const GroupFile G = parse_group(read_text_file(base_path));
        SubgroupIsomorphism phi;
        if (!subgroup.empty()) {
            const auto it = G.subgroups.find(subgroup);
            if (it == G.subgroups.end()) return error("no subgroup '" + subgroup + "' in " + base_path);
            phi = {it->second, it->second};
        } else {
            const auto it = G.maps.find(map);
            if (it == G.maps.end()) return error("no map '" + map + "' in " + base_path);
            for (const auto& [x, y] : it->second) {
                phi.domain.push_back(G.group.index(x));
                phi.image.push_back(G.group.index(y));
            }
            if (std::find(phi.domain.begin(), phi.domain.end(), G.group.identity()) == phi.domain.end()) {
                phi.domain.push_back(G.group.identity());
                phi.image.push_back(G.group.identity());
            }
        }
        const HnnPregroup h = hnn_pregroup(G.group, phi);
        return write_pregroup(h.pregroup, out_path, json_out);
    });
}

std::vector<Outcome> run_batch_serial(const UniversalContext& U, const std::vector<std::string>& lines, bool json_out) {
    std::vector<Outcome> out(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) out[i] = run_query(U, lines[i], json_out);
    return out;
}

std::vector<Outcome> run_batch(const UniversalContext& U, const std::vector<std::string>& lines, bool json_out) {
    std::vector<Outcome> out(lines.size());
    const auto n = static_cast<std::ptrdiff_t>(lines.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_query(U, lines[static_cast<std::size_t>(i)], json_out);
    return out;
}

Outcome cmd_batch(const std::string& path, const std::string& queries_path, bool json_out, bool serial) {
    return guarded([&]() -> Outcome {
        const UniversalContext U(load_pregroup(path));
        std::istringstream in(read_text_file(queries_path));
        std::vector<std::string> lines;
        for (std::string l; std::getline(in, l);) lines.push_back(l);
        const auto results = serial ? run_batch_serial(U, lines, json_out) : run_batch(U, lines, json_out);
        Outcome o;
        for (std::size_t i = 0; i < results.size(); ++i) {
            o.out += results[i].out + "\n";
            if (results[i].code == exit_error) {
                o.code = exit_error;
                std::string msg = results[i].err;
                if (msg.rfind("error: ", 0) == 0) msg.erase(0, 7);
                o.err += "line " + std::to_string(i + 1) + ": " + msg;
            }
        }
        return o;
    });
}

}  // namespace cycrw::cli
