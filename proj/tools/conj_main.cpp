// conj: command-line access to rewriting systems, pregroups and conjugacy.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cycrw/cli.hpp"

using namespace cycrw::cli;

int main(int argc, char** argv) {
    CLI::App app{"Cyclic rewriting, pregroups and conjugacy in universal groups"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "Print structured JSON on stdout");

    std::string file, word, u, v, algo = "linear", mode, out, left, right, shared, left_map, right_map, base, subgroup,
                                  map, queries;
    std::size_t budget = default_budget, max_conj_len = 4;
    bool serial = false;

    auto* axioms = app.add_subcommand("axioms", "Check the pregroup axioms of a .pg file");
    axioms->add_option("file", file, "Pregroup file")->required();

    auto word_command = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("file", file, "Pregroup (.pg) or, for reduce, rewriting system (.rws)")->required();
        c->add_option("-w,--word", word, "Whitespace-separated letters")->required();
        c->add_option("--budget", budget, "Rewriting step budget for .rws files");
        return c;
    };
    auto* reduce = word_command("reduce", "Reduce a word");
    auto* nf = word_command("nf", "Shortlex normal form in the universal group");
    auto* cyc = word_command("cyclic-reduce", "Cyclically reduce a word");

    auto* conj = app.add_subcommand("conj", "Decide conjugacy in the universal group");
    conj->add_option("file", file, "Pregroup file")->required();
    conj->add_option("-u", u, "First word")->required();
    conj->add_option("-v", v, "Second word")->required();
    conj->add_option("--algo", algo, "linear, quadratic or oracle")->check(CLI::IsMember({"linear", "quadratic", "oracle"}));
    conj->add_option("--max-conj-len", max_conj_len, "Longest conjugator tried by the oracle");

    auto* join = app.add_subcommand("join", "Search for a common cyclic descendant of two words");
    join->add_option("file", file, "Rewriting system file")->required();
    join->add_option("-u", u, "First word")->required();
    join->add_option("-v", v, "Second word")->required();
    join->add_option("--budget", budget, "Search nodes explored in total");

    auto* complete = app.add_subcommand("complete", "Extend or complete a rewriting system");
    complete->add_option("file", file, "Rewriting system file")->required();
    complete->add_option("--mode", mode, "hat, circle, cstar or cdagger")
        ->required()
        ->check(CLI::IsMember({"hat", "circle", "cstar", "cdagger"}));
    complete->add_option("-o,--output", out, "Output file (default: stdout)");

    auto* amalgam = app.add_subcommand("from-amalgam", "Pregroup of an amalgamated free product");
    amalgam->add_option("--left", left, "First factor (.grp)")->required();
    amalgam->add_option("--right", right, "Second factor (.grp)")->required();
    amalgam->add_option("--shared", shared, "Amalgamated subgroup (.grp)")->required();
    amalgam->add_option("--left-map", left_map, "Map block for the first embedding");
    amalgam->add_option("--right-map", right_map, "Map block for the second embedding");
    amalgam->add_option("-o,--output", out, "Output file (default: stdout)");

    auto* hnn = app.add_subcommand("from-hnn", "Pregroup of an HNN extension");
    hnn->add_option("--base", base, "Base group (.grp)")->required();
    hnn->add_option("--subgroup", subgroup, "Subgroup block, associated to itself by the identity");
    hnn->add_option("--map", map, "Map block A->B giving the associated isomorphism");
    hnn->add_option("-o,--output", out, "Output file (default: stdout)");

    auto* batch = app.add_subcommand("batch", "Answer one query per line of a file");
    batch->add_option("file", file, "Pregroup file")->required();
    batch->add_option("--batch", queries, "Query file")->required();
    batch->add_flag("--serial", serial, "Process queries on one thread");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    Outcome o;
    if (*axioms) o = cmd_axioms(file, json);
    else if (*reduce) o = cmd_word(WordOp::reduce, file, word, json, budget);
    else if (*nf) o = cmd_word(WordOp::nf, file, word, json, budget);
    else if (*cyc) o = cmd_word(WordOp::cyclic_reduce, file, word, json, budget);
    else if (*conj) o = cmd_conj(file, u, v, algo, max_conj_len, json);
    else if (*join) o = cmd_join(file, u, v, budget, json);
    else if (*complete) o = cmd_complete(file, mode, out, json);
    else if (*amalgam) o = cmd_from_amalgam(left, right, shared, left_map, right_map, out, json);
    else if (*hnn) o = cmd_from_hnn(base, subgroup, map, out, json);
    else if (*batch) o = cmd_batch(file, queries, json, serial);
    std::cout << o.out;
    std::cerr << o.err;
    return o.code;
}
