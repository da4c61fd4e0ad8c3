// Commands behind the `conj` tool. Each returns its exit code and the text
// destined for stdout (answers) and stderr (diagnostics).
//
// Exit codes: 0 success or "yes"; 1 "no" (an axiom violation, or a pair
// that is not conjugate or not joinable); 2 bad input or a failed
// precondition; 3 inconclusive (search budget or conjugator length exhausted).
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cycrw/universal.hpp"

namespace cycrw::cli {

enum ExitCode { exit_yes = 0, exit_no = 1, exit_error = 2, exit_inconclusive = 3 };

struct Outcome {
    int code = exit_yes;
    std::string out;
    std::string err;
};

inline constexpr std::size_t default_budget = 100000;

Outcome cmd_axioms(const std::string& path, bool json);

enum class WordOp { reduce, nf, cyclic_reduce };
/// Pregroup files (.pg) use the universal group; rewriting systems (.rws)
/// support `reduce` only, by greedy length-reducing rewriting.
Outcome cmd_word(WordOp op, const std::string& path, const std::string& word, bool json, std::size_t budget);

/// algo is "linear", "quadratic" or "oracle".
Outcome cmd_conj(const std::string& path, const std::string& u, const std::string& v, const std::string& algo,
                 std::size_t max_conj_len, bool json);

/// Cyclic joinability of two words under a rewriting system.
Outcome cmd_join(const std::string& path, const std::string& u, const std::string& v, std::size_t budget, bool json);

/// mode is "hat", "circle", "cstar" or "cdagger". An empty out_path writes
/// the result to stdout.
Outcome cmd_complete(const std::string& path, const std::string& mode, const std::string& out_path, bool json);

/// Embeddings come from "[map SHARED->FACTOR]" blocks found in any of the
/// three files, or the named blocks if given. A trivial shared group needs
/// no map.
Outcome cmd_from_amalgam(const std::string& left, const std::string& right, const std::string& shared,
                         const std::string& left_map, const std::string& right_map, const std::string& out_path,
                         bool json);

/// Either `subgroup` (the identity on it) or `map` (a block "A->B" of base
/// elements) defines the associated isomorphism.
Outcome cmd_from_hnn(const std::string& base, const std::string& subgroup, const std::string& map,
                     const std::string& out_path, bool json);

/// One query per line: "reduce W", "nf W", "cyclic-reduce W" or
/// "conj U | V". Blank lines and '#' comments give empty results.
std::vector<Outcome> run_batch(const UniversalContext& U, const std::vector<std::string>& lines, bool json);
std::vector<Outcome> run_batch_serial(const UniversalContext& U, const std::vector<std::string>& lines, bool json);

/// Answers are printed one per query line, in input order.
Outcome cmd_batch(const std::string& path, const std::string& queries_path, bool json, bool serial);

}  // namespace cycrw::cli
