#pragma once

#include "gitcite/cite_edit.hpp"
#include "gitcite/citation_file.hpp"
#include "gitcite/conflict.hpp"
#include "gitcite/tree.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gitcite {

using VersionId = std::string;

/// One commit. Never modified after it is appended to a repository.
struct Version {
    VersionId id;
    std::vector<VersionId> parents; // two for a merge
    TreeSnapshot tree;
    CitationFile cf;
    std::uint64_t timestamp = 0; // logical clock
};

using VersionPtr = std::shared_ptr<const Version>;

struct MergeOutcome;

enum class TreeEditKind { create_file, remove, rename, modify_content };

struct TreeEdit {
    TreeEditKind kind;
    CanonicalPath from;
    std::optional<CanonicalPath> to; // rename only
    std::string digest;              // create_file and modify_content

    static TreeEdit create_file(CanonicalPath path, std::string digest);
    static TreeEdit remove(CanonicalPath path);
    static TreeEdit rename(CanonicalPath from, CanonicalPath to);
    static TreeEdit modify_content(CanonicalPath path, std::string digest);
};

/// In-memory version DAG with named branches and per-branch staged
/// citation edits. History is append-only: versions are shared immutable
/// values, and the operations below only ever add new ones.
class Repository {
public:
    /// A repository with a single root version holding `initial_tree` and a
    /// citation file containing only `root_record`.
    Repository(std::string id, CitationRecord root_record, TreeSnapshot initial_tree = {},
               std::string default_branch = "main");

    const std::string& id() const noexcept { return id_; }
    const std::string& default_branch() const noexcept { return default_branch_; }
    const std::map<std::string, VersionId>& branches() const noexcept { return branches_; }

    bool has_version(const VersionId& id) const { return versions_.contains(id); }
    bool has_branch(const std::string& name) const { return branches_.contains(name); }

    /// Throws UnknownVersion.
    const VersionPtr& version(const VersionId& id) const;
    /// Throws UnknownBranch.
    const VersionId& head_id(const std::string& branch) const;
    const Version& head(const std::string& branch) const { return *version(head_id(branch)); }

    /// All version ids, oldest first.
    std::vector<VersionId> version_ids() const;
    std::size_t version_count() const noexcept { return versions_.size(); }

    const std::vector<CiteEdit>& staged(const std::string& branch) const;
    /// Head citation file of `branch` with its staged edits applied.
    CitationFile staged_citations(const std::string& branch) const;
    void stage(const std::string& branch, CiteEdit edit);

    /// `ancestor` is reachable from `descendant` (or equal to it).
    bool is_ancestor(const VersionId& ancestor, const VersionId& descendant) const;
    /// Most recent common ancestor of two versions.
    std::optional<VersionId> merge_base(const VersionId& a, const VersionId& b) const;

private:
    Repository() = default;

    const Version& append(const std::string& branch, std::vector<VersionId> parents, TreeSnapshot tree,
                          CitationFile cf);
    void add_version(VersionPtr version);

    friend const Version& commit(Repository&, const std::string&, const std::vector<TreeEdit>&,
                                 const std::vector<CiteEdit>&);
    friend std::string create_branch(Repository&, const std::string&, const VersionId&);
    friend const Version& copy_cite(const Repository&, const VersionId&, const CanonicalPath&, Repository&,
                                    const std::string&, const CanonicalPath&);
    friend MergeOutcome merge_cite(Repository&, const std::string&, const std::string&,
                                          const ConflictResolver&);
    friend Repository fork_cite(const Repository&, std::string, const std::optional<VersionId>&);

    std::string id_;
    std::string default_branch_;
    std::map<VersionId, VersionPtr> versions_;
    std::map<std::string, VersionId> branches_;
    std::map<std::string, std::vector<CiteEdit>> staged_;
    std::uint64_t clock_ = 0;
};

/// Creates a version on `branch` from its head: tree edits applied in
/// order, and a citation file built from the head's by
///   (a) applying the branch's staged edits, then `cite_edits`, against the head tree,
///   (b) rewriting keys under every renamed path by prefix substitution,
///   (c) dropping keys whose path no longer exists.
/// Removing the last entry of a directory removes the directory, as in Git.
/// Throws EditConflict for edits that do not apply to the head tree.
const Version& commit(Repository& repo, const std::string& branch, const std::vector<TreeEdit>& edits,
                      const std::vector<CiteEdit>& cite_edits = {});

/// New branch `name` at `from_version`. Throws BranchExists / UnknownVersion.
std::string create_branch(Repository& repo, const std::string& name, const VersionId& from_version);

/// Citation entries a subtree copy brings along: every explicit entry inside
/// `src_subtree` re-keyed under `dst_path`, plus an explicit entry at
/// `dst_path` holding the source subtree's resolved citation.
CitationFile::Entries migrated_citations(const CitationFile& src_cf, const TreeSnapshot& src_tree,
                                         const CanonicalPath& src_subtree, const CanonicalPath& dst_path);

/// Copies the directory `src_subtree` of `src_version` in `src` to
/// `dst_path` on the head of `dst_branch`, migrating its citations so every
/// copied node resolves to the same record as at the source.
const Version& copy_cite(const Repository& src, const VersionId& src_version, const CanonicalPath& src_subtree,
                         Repository& dst, const std::string& dst_branch, const CanonicalPath& dst_path);

struct TreeMergeResult {
    TreeSnapshot tree;
    std::vector<std::string> warnings;
};

/// File-level three-way merge: union of files; a file deleted on one side
/// and untouched on the other is deleted; a file changed differently on both
/// sides keeps the left content with a warning.
TreeMergeResult merge_trees(const TreeSnapshot& base, const TreeSnapshot& left, const TreeSnapshot& right);

struct MergeOutcome {
    VersionPtr version;                   // the merge version, or the new head
    std::vector<ConflictReport> conflicts; // with the resolver's answers
    std::vector<CanonicalPath> pruned;     // cited paths missing from the merged tree
    std::vector<std::string> warnings;     // from the tree merge
    bool fast_forward = false;
    bool up_to_date = false;
};

/// Merges `from_branch` into `into_branch`. Citation files are unioned;
/// keys cited on both sides with different records are conflicts unless
/// only one side changed the record since the merge base, in which case
/// that side wins. Conflicts go to `resolver` in key order; a pending
/// answer aborts with UnresolvedConflict and leaves the repository as it
/// was. Entries for paths absent from the merged tree are pruned.
MergeOutcome merge_cite(Repository& repo, const std::string& into_branch, const std::string& from_branch,
                        const ConflictResolver& resolver);

/// A new repository holding `version` (default: head of the default
/// branch) and all its ancestors, citation files copied verbatim, with one
/// branch named like the source's default branch.
Repository fork_cite(const Repository& src, std::string new_id, const std::optional<VersionId>& version = {});

} // namespace gitcite
