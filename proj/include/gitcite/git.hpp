#pragma once

#include "gitcite/citeops.hpp"
#include "gitcite/process.hpp"
#include "gitcite/tree.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gitcite {

/// Thin wrapper over the `git` executable for one work tree.
///
/// Commands issued (all with `-C <root>`):
///   rev-parse --show-toplevel | HEAD | --verify <rev>^{commit} | --abbrev-ref HEAD
///   ls-files -s -z, ls-files -o --exclude-standard -z     (index / work tree snapshot)
///   ls-tree -r -z <rev>                                    (historical snapshot)
///   show <rev>:<path>, cat-file blob <object>              (file contents)
///   diff --cached -M --name-status -z HEAD                 (renames and deletions)
///   log, config --get                                      (repository metadata)
class GitRepo {
public:
    /// The work tree containing `dir`. Throws NotARepository.
    static GitRepo discover(const std::filesystem::path& dir);

    const std::filesystem::path& root() const noexcept { return root_; }

    /// Runs `git <args>` in the work tree; throws GitFailure on a non-zero exit.
    std::string run(const std::vector<std::string>& args) const;
    ProcessResult try_run(const std::vector<std::string>& args, std::string input = {}) const;

    std::optional<std::string> head_commit() const;
    /// Checked-out branch; empty when HEAD is detached.
    std::optional<std::string> current_branch() const;
    /// Full commit id for `rev`. Throws UnknownVersion.
    std::string resolve_commit(const std::string& rev) const;
    bool merge_in_progress() const;

    /// Tracked files (every index stage), optionally with untracked,
    /// non-ignored files. Digests are blob ids; untracked files get none.
    TreeSnapshot index_tree(bool include_untracked) const;
    TreeSnapshot tree_at(const std::string& rev) const;

    /// Blob contents of `path` at `rev`, or nothing when it does not exist there.
    std::optional<std::string> show_file(const std::string& rev, const std::string& path) const;
    std::string blob(const std::string& object) const;

    struct Change {
        char status; // 'R', 'D', 'A', 'M', ...
        std::string path;
        std::string new_path; // renames only
    };
    /// Staged changes relative to HEAD, with rename detection.
    std::vector<Change> staged_changes() const;

    /// Repository facts for a default root citation: owner and name from
    /// the origin remote when there is one, otherwise the configured user
    /// and the work tree's directory name; head commit and its UTC date;
    /// authors in order of first commit.
    RepositoryMetadata metadata() const;

private:
    explicit GitRepo(std::filesystem::path root) : root_(std::move(root)) {}

    std::filesystem::path root_;
};

struct RemoteIdentity {
    std::string owner;
    std::string repo_name;
    std::string locator;
};

/// Reads owner/name out of "https://host/owner/repo(.git)", "git@host:owner/repo.git"
/// or "ssh://git@host/owner/repo"; the locator becomes "https://host/owner/repo".
std::optional<RemoteIdentity> parse_remote_url(const std::string& url);

} // namespace gitcite
