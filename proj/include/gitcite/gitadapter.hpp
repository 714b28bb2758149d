#pragma once

#include "gitcite/citation_file.hpp"
#include "gitcite/conflict.hpp"
#include "gitcite/git.hpp"
#include "gitcite/tree.hpp"

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace gitcite {

inline constexpr const char* kDefaultCitationFileName = "citation.cite";

/// `$GITCITE_FILE` when set and non-empty, otherwise "citation.cite".
std::string citation_file_name();
std::filesystem::path citation_file_path(const std::filesystem::path& worktree_root);

/// Throws FileMissing, MalformedDocument, MissingRoot.
CitationFile load_citation_file(const std::filesystem::path& worktree_root);

struct LoadedCitationFile {
    CitationFile cf;
    bool canonical = true; // false: the bytes were not written by this tool
};
LoadedCitationFile load_citation_file_checked(const std::filesystem::path& worktree_root);

/// Writes exactly `serialize_document(cf)` (via a temporary file and a
/// rename). Throws IoFailure.
void store_citation_file(const std::filesystem::path& worktree_root, const CitationFile& cf);

struct PathRename {
    CanonicalPath from;
    CanonicalPath to;
};

/// Rewrites keys for renames (all taken relative to the previous commit,
/// the most specific matching rename wins) and drops keys at or below
/// deleted paths. The root entry always stays.
CitationFile apply_renames_and_deletions(const CitationFile& cf, const std::vector<PathRename>& renames,
                                         const std::vector<CanonicalPath>& deleted);

/// Loads the work tree's citation file, applies the renames and deletions
/// and stores the result, which is returned.
CitationFile sync_on_commit(const std::filesystem::path& worktree_root, const std::vector<PathRename>& renames,
                            const std::vector<CanonicalPath>& deleted);

struct DetectedChanges {
    std::vector<PathRename> renames;
    std::vector<CanonicalPath> deleted;
    std::vector<std::string> warnings;
};

/// What a commit of the current index would do to the keys of `cf`:
/// file renames as reported by Git, directory renames inferred when every
/// file of a cited directory moved under one new directory, and deletions
/// for every other key that would no longer exist.
DetectedChanges detect_changes(const GitRepo& repo, const CitationFile& cf);

struct FileMergeOutcome {
    CitationFile cf;
    std::vector<ConflictReport> conflicts;
    std::vector<CanonicalPath> pruned;
};

/// Merges two citation files key by key instead of line by line: union of
/// entries; when both sides cite a key differently and only one changed it
/// relative to `base`, that side wins; otherwise `resolver` decides. Keys
/// absent from `merged_tree` are pruned.
FileMergeOutcome merge_citation_files(const CitationFile& base, const CitationFile& left, const CitationFile& right,
                                      const TreeSnapshot& merged_tree, const ConflictResolver& resolver);

/// GETs a raw citation file over HTTP(S) and parses it. Throws
/// NetworkFailure, HttpStatusError, MalformedDocument.
CitationFile fetch_remote_citation_file(const std::string& url,
                                        std::chrono::seconds timeout = std::chrono::seconds(20));
/// The raw bytes behind `fetch_remote_citation_file`.
std::string fetch_remote_bytes(const std::string& url, std::chrono::seconds timeout = std::chrono::seconds(20));

} // namespace gitcite
