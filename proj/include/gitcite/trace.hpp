#pragma once

#include "gitcite/citation_file.hpp"
#include "gitcite/record.hpp"
#include "gitcite/versionstore.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gitcite {

// Scenario traces: one operation per line, '#' starts a comment, tokens are
// separated by blanks and may be double-quoted. Paths are rendered canonical
// paths. A record is a list of field=value tokens:
//
//   owner=Bob repo_name=B locator=https://example.org/B version_id=v1
//   date=2020-01-01T00:00:00Z authors=Bob,Alice extra.doi=10.1/x
//
// Operations:
//   repo       <repo> <branch> <record>
//   commit     <repo> <branch> [<edit> {; <edit>}]
//                edit: create <file> <digest> | modify <file> <digest>
//                    | delete <path> | rename <from> <to>
//   addcite    <repo> <branch> <path> <record>
//   delcite    <repo> <branch> <path>
//   modifycite <repo> <branch> <path> <record>
//   branch     <repo> <name> <from-branch>
//   copy       <src-repo> <src-branch> <src-dir> <dst-repo> <dst-branch> <dst-dir>
//   merge      <repo> <into> <from> ours|theirs
//   fork       <src-repo> <new-repo>
//   expect     <repo> <branch> <path> <field>=<value>...

struct TraceOp {
    enum class Kind { repo, commit, addcite, delcite, modifycite, branch, copy, merge, fork, expect };

    Kind kind;
    int line = 0;
    std::vector<std::string> args;         // positional operands
    std::vector<TreeEdit> tree_edits;      // commit
    std::optional<CitationRecord> record;  // repo, addcite, modifycite
    std::map<std::string, std::string> expected; // expect
};

/// Throws TraceSyntax with the offending line number.
std::vector<TraceOp> parse_trace(std::string_view text);

/// Record built from field=value tokens. Throws TraceSyntax.
CitationRecord parse_record_tokens(const std::vector<std::string>& tokens);

/// Field of a record by name: a named field, "authors" (comma-joined), or "extra.<key>".
std::string record_field(const CitationRecord& record, std::string_view name);

/// The branch heads reached after each version-producing operation.
struct CommitPoint {
    std::size_t op_index;
    std::string repo;
    std::string branch;
    CitationFile cf;
};

struct TraceRun {
    std::map<std::string, Repository> repos;
    std::vector<CommitPoint> commit_points;
};

/// Replays a trace against in-memory repositories. `expect` lines that do
/// not hold throw InvariantBroken.
TraceRun replay_trace(const std::vector<TraceOp>& ops);

} // namespace gitcite
