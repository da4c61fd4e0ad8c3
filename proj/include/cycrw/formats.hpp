// Line-oriented text formats for rewriting systems (.rws), pregroups (.pg)
// and finite groups with subgroups and maps (.grp). '#' starts a comment.
#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cycrw/completion.hpp"
#include "cycrw/constructions.hpp"
#include "cycrw/pregroup.hpp"

namespace cycrw {

/// A malformed file. `line` is 1-based, or 0 when the problem concerns the
/// file as a whole.
class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A rewriting system together with extra relations on cyclic words.
struct SystemFile {
    RewriteSystem system;
    std::vector<std::pair<CyclicWord, CyclicWord>> cyclic_rules;
};

SystemFile parse_system(const std::string& text);
std::string emit_system(const SystemFile& f);
/// The base system of a completion and its extra pairs.
SystemFile system_file_of(const CompletionResult& r);

/// The table is built but not checked against the axioms.
Pregroup parse_pregroup(const std::string& text);
std::string emit_pregroup(const Pregroup& P);

struct GroupFile {
    std::string name;
    FiniteGroupTable group;
    std::map<std::string, std::vector<int>> subgroups;  // sorted element indices
    /// Blocks "[map FROM->TO]": name pairs in file order, keyed by header.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> maps;
};

GroupFile parse_group(const std::string& text);

/// Reads a whole file; throws FormatError if it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace cycrw
