#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "cycrw/cli.hpp"
#include "cycrw/formats.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cycrw;
using namespace cycrw::cli;
using json = nlohmann::json;

namespace {

const std::string data = CYCRW_DATA_DIR;

std::string path(const std::string& name) { return data + "/" + name; }

struct Run {
    int code;
    std::string out;
};

// Runs the tool with stderr discarded.
Run run(const std::string& args) {
    const std::string cmd = std::string(CONJ_BINARY) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content = "") {
    const auto p = std::filesystem::temp_directory_path() / ("cycrw_cli_" + name);
    if (!content.empty()) std::ofstream(p) << content;
    return p.string();
}

}  // namespace

TEST_CASE("axioms command") {
    auto r = run("axioms " + path("dinf.pg"));
    CHECK(r.code == 0);
    CHECK(r.out.find("G_P = {e}") != std::string::npos);

    auto j = json::parse(run("--json axioms " + path("z4_z6.pg")).out);
    CHECK(j["ok"] == true);
    CHECK(j["axioms"]["P7"]["holds"] == true);
    CHECK(j["axioms"]["P8"]["holds"] == false);
    CHECK(j["canonical_subgroup"] == json::array({"e", "x2"}));

    std::string text = read_text_file(path("dinf.pg"));
    text.erase(text.find("a a = e"), 8);
    r = run("axioms " + temp_file("broken.pg", text));
    CHECK(r.code == 1);
    CHECK(r.out.find("P2: FAIL (1 violation) witnesses: a") != std::string::npos);

    auto o = cmd_axioms(temp_file("malformed.pg", "[pregroup]\nelements: e a\nepsilon: e\n[product]\na a e\n"), false);
    CHECK(o.code == 2);
    CHECK(o.err.find("line 5") != std::string::npos);
    CHECK(o.out.empty());
}

TEST_CASE("word commands") {
    CHECK(run("reduce " + path("dinf.pg") + " -w 'a a b'").out == "b\n");
    CHECK(run("reduce " + path("dinf.pg") + " -w ''").out == "\n");
    CHECK(run("cyclic-reduce " + path("dinf.pg") + " -w 'b a b'").out == "a\n");
    CHECK(run("nf " + path("z4_z6.pg") + " -w 'x y'").code == 0);
    CHECK(run("reduce " + path("free.rws") + " -w 'a b B A b'").out == "b\n");
    CHECK(run("nf " + path("free.rws") + " -w 'a'").code == 2);
    CHECK(run("reduce " + path("dinf.pg") + " -w 'a zz'").code == 2);
    // Greedy reduction never applies a lengthening rule.
    CHECK(run("reduce " + path("cyclic_nontermination.rws") + " -w 'b a' --budget 3").out == "b a\n");
    auto j = json::parse(run("--json cyclic-reduce " + path("dinf.pg") + " -w 'b a b'").out);
    CHECK(j["result"] == "a");
    CHECK(j["conjugator"] == "b");
}

TEST_CASE("conj command") {
    auto r = run("conj " + path("dinf.pg") + " -u 'a b' -v 'b a'");
    CHECK(r.code == 0);
    CHECK(r.out.find("conjugator:") != std::string::npos);
    CHECK(run("conj " + path("dinf.pg") + " -u a -v b").code == 1);
    CHECK(run("conj " + path("dinf.pg") + " -u a -v 'b a b' --algo oracle --max-conj-len 0").code == 3);
    CHECK(run("conj " + path("dinf.pg") + " -u a -v 'b a b' --algo oracle --max-conj-len 1").code == 0);
    CHECK(run("conj " + path("dinf.pg") + " -u a -v b --algo quadratic").code == 1);
    CHECK(run("conj " + path("dinf.pg") + " -u a -v b --algo bogus").code == 2);
    auto j = json::parse(run("--json conj " + path("z4_z6.pg") + " -u 'x y' -v 'y x'").out);
    CHECK(j["conjugate"] == true);
    CHECK(j["method"] == "linear");
    // A pregroup that fails the axioms cannot be used.
    std::string text = read_text_file(path("dinf.pg"));
    text.erase(text.find("a a = e"), 8);
    CHECK(run("conj " + temp_file("broken2.pg", text) + " -u a -v a").code == 2);
}

TEST_CASE("complete command") {
    auto r = run("complete " + path("free.rws") + " --mode circle");
    CHECK(r.code == 0);
    CHECK(r.out.find("1 -> a A") != std::string::npos);
    r = run("complete " + path("noncyclic_confluence.rws") + " --mode cstar");
    CHECK(r.code == 0);
    const auto f = parse_system(r.out);
    const auto& A = f.system.alphabet();
    const std::pair<CyclicWord, CyclicWord> expected{CyclicWord(A.parse("b a c d")), CyclicWord(A.parse("b d c a"))};
    CHECK(std::find(f.cyclic_rules.begin(), f.cyclic_rules.end(), expected) != f.cyclic_rules.end());
    r = run("complete " + path("noncyclic_confluence.rws") + " --mode cdagger");
    CHECK(r.code == 2);
    // In the free group every moved rule is trivial; Z3 gains anchored rules.
    CHECK(parse_system(run("complete " + path("free.rws") + " --mode hat").out).system.rules().size() == 4);
    const auto z3 = temp_file("z3.rws", "[alphabet]\nletters: x X\ninverse: x X\n[rules]\nx x -> X\nX X -> x\nx X -> 1\nX x -> 1\n");
    const auto out = temp_file("hat.rws");
    CHECK(run("complete " + z3 + " --mode hat -o " + out).code == 0);
    const auto hat = parse_system(read_text_file(out)).system;
    CHECK(hat.rules().size() > 4);
    CHECK(hat.has_anchored_rules());
    // Completing the free group twice gives the same file.
    CHECK(run("complete " + path("free.rws") + " --mode cstar").out == run("complete " + path("free.rws") + " --mode cstar").out);
}

TEST_CASE("join command") {
    CHECK(run("join " + path("free.rws") + " -u 'a b A' -v b").code == 0);
    CHECK(run("join " + path("free.rws") + " -u 'a b' -v b").code == 1);
    CHECK(run("join " + path("cyclic_nontermination.rws") + " -u 'b a' -v 'a' --budget 50").code == 3);
}

TEST_CASE("constructions from group files") {
    auto r = run("from-amalgam --left " + path("z2a.grp") + " --right " + path("z2b.grp") + " --shared " + path("trivial.grp"));
    CHECK(r.code == 0);
    const auto D = parse_pregroup(r.out);
    CHECK(D.size() == 3);
    CHECK(D.letters().size() == 2);
    r = run("from-amalgam --left " + path("z4.grp") + " --right " + path("z6.grp") + " --shared " + path("z2.grp"));
    CHECK(r.code == 0);
    CHECK(parse_pregroup(r.out).size() == 8);
    CHECK(parse_pregroup(r.out) == parse_pregroup(read_text_file(path("z4_z6.pg"))));
    // Sending the shared element to the wrong factor.
    CHECK(run("from-amalgam --left " + path("z4.grp") + " --right " + path("z6.grp") + " --shared " + path("z2.grp") +
              " --left-map 'Z2->Z6'")
              .code == 2);
    r = run("from-hnn --base " + path("s3.grp") + " --subgroup A");
    CHECK(r.code == 0);
    CHECK(parse_pregroup(r.out).size() == 42);
    CHECK(run("from-hnn --base " + path("s3.grp") + " --map 'A->B'").code == 0);
    CHECK(run("from-hnn --base " + path("s3.grp")).code == 2);
    CHECK(run("from-hnn --base " + path("s3.grp") + " --subgroup missing").code == 2);
}

TEST_CASE("every corpus file parses") {
    for (const auto& e : std::filesystem::directory_iterator(data)) {
        const auto p = e.path().string();
        const auto ext = e.path().extension();
        CAPTURE(p);
        if (ext == ".pg") CHECK(emit_pregroup(parse_pregroup(read_text_file(p))) == emit_pregroup(parse_pregroup(emit_pregroup(parse_pregroup(read_text_file(p))))));
        if (ext == ".rws") CHECK_NOTHROW(parse_system(read_text_file(p)));
        if (ext == ".grp") CHECK_NOTHROW(parse_group(read_text_file(p)));
    }
}

TEST_CASE("batch mode") {
    const std::string queries = "reduce a a b\n\nnf b a b\ncyclic-reduce b a b\nconj a b | b a\nconj a | b\nfrob a\n";
    const auto qpath = temp_file("queries.txt", queries);
    auto r = run("batch " + path("dinf.pg") + " --batch " + qpath);
    CHECK(r.code == 2);
    std::vector<std::string> lines;
    std::istringstream in(r.out);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "b");
    CHECK(lines[1].empty());
    CHECK(lines[2] == "b a b");
    CHECK(lines[3] == "a");
    CHECK(lines[4].rfind("conjugate: ", 0) == 0);
    CHECK(lines[5] == "not conjugate");
    CHECK(lines[6].empty());
    CHECK(run("batch " + path("dinf.pg") + " --batch " + qpath + " --serial").out == r.out);

    // Parallel and serial runs agree on a larger random batch.
    const UniversalContext U(parse_pregroup(read_text_file(path("z4_z6.pg"))));
    const auto& P = U.pregroup();
    std::mt19937 rng(9);
    auto word = [&] {
        std::string w;
        for (std::size_t i = 0, n = rng() % 8; i < n; ++i) w += P.name(P.letters()[rng() % P.letters().size()]) + " ";
        return w;
    };
    std::vector<std::string> batch;
    for (int i = 0; i < 300; ++i) {
        const char* ops[] = {"reduce ", "nf ", "cyclic-reduce "};
        batch.push_back(i % 4 == 3 ? "conj " + word() + "| " + word() : ops[i % 3] + word());
    }
    for (bool as_json : {false, true}) {
        const auto a = run_batch(U, batch, as_json), b = run_batch_serial(U, batch, as_json);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].code == b[i].code);
            CHECK(a[i].out == b[i].out);
        }
    }
}
