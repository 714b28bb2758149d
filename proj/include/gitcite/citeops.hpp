#pragma once

#include "gitcite/cite_edit.hpp"
#include "gitcite/versionstore.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gitcite {

// Project-member edits are staged on the branch head and become part of the
// next version created on that branch. When `at_version` is given it must be
// the branch head, otherwise NotLatestVersion: only the latest version of a
// branch accepts citation updates.

CitationFile add_cite(Repository& repo, const RoleContext& who, const std::string& branch,
                      const CanonicalPath& path, CitationRecord record,
                      const std::optional<VersionId>& at_version = std::nullopt);

CitationFile del_cite(Repository& repo, const RoleContext& who, const std::string& branch,
                      const CanonicalPath& path, const std::optional<VersionId>& at_version = std::nullopt);

CitationFile modify_cite(Repository& repo, const RoleContext& who, const std::string& branch,
                         const CanonicalPath& path, CitationRecord record,
                         const std::optional<VersionId>& at_version = std::nullopt);

/// Read-only; any role, any version.
CitationRecord gen_cite(const Repository& repo, const VersionId& version, const CanonicalPath& path);

struct RepositoryMetadata {
    std::string owner;
    std::string repo_name;
    std::string locator;
    std::string head_commit;
    std::string head_date;
    std::vector<std::string> contributors;
};

/// The root citation synthesized for a repository that has none yet.
/// Authors default to the owner when no contributors are known.
CitationRecord default_root_citation(const RepositoryMetadata& meta);

} // namespace gitcite
