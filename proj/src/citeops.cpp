#include "gitcite/citeops.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/errors.hpp"

namespace gitcite {

namespace {

void require_latest(const Repository& repo, const std::string& branch, const std::optional<VersionId>& at_version) {
    const auto& head = repo.head_id(branch);
    if (!at_version || *at_version == head) {
        return;
    }
    repo.version(*at_version);
    throw Error(ErrorCode::NotLatestVersion,
                *at_version + " is not the latest version of " + branch + " (head is " + head + ")");
}

CitationFile stage(Repository& repo, const RoleContext& who, const std::string& branch,
                   const std::optional<VersionId>& at_version, CiteEdit edit) {
    require_project_member(who);
    require_latest(repo, branch, at_version);
    repo.stage(branch, std::move(edit));
    return repo.staged_citations(branch);
}

} // namespace

CitationFile add_cite(Repository& repo, const RoleContext& who, const std::string& branch,
                      const CanonicalPath& path, CitationRecord record, const std::optional<VersionId>& at_version) {
    return stage(repo, who, branch, at_version, CiteEdit::add(path, std::move(record)));
}

CitationFile del_cite(Repository& repo, const RoleContext& who, const std::string& branch,
                      const CanonicalPath& path, const std::optional<VersionId>& at_version) {
    require_project_member(who); // before the root check below
    return stage(repo, who, branch, at_version, CiteEdit::remove(path));
}

CitationFile modify_cite(Repository& repo, const RoleContext& who, const std::string& branch,
                         const CanonicalPath& path, CitationRecord record,
                         const std::optional<VersionId>& at_version) {
    return stage(repo, who, branch, at_version, CiteEdit::modify(path, std::move(record)));
}

CitationRecord gen_cite(const Repository& repo, const VersionId& version, const CanonicalPath& path) {
    const auto& v = repo.version(version);
    return resolve(v->cf, v->tree, path);
}

CitationRecord default_root_citation(const RepositoryMetadata& meta) {
    std::string missing;
    for (const auto& [name, value] : {std::pair{"owner", &meta.owner}, std::pair{"repo_name", &meta.repo_name},
                                      std::pair{"locator", &meta.locator}}) {
        if (value->empty()) {
            missing += missing.empty() ? name : std::string(", ") + name;
        }
    }
    if (!missing.empty()) {
        throw Error(ErrorCode::MissingMetadata, "repository metadata lacks " + missing);
    }
    CitationRecord record;
    record.owner = meta.owner;
    record.repo_name = meta.repo_name;
    record.locator = meta.locator;
    record.version_id = meta.head_commit;
    record.date = meta.head_date;
    record.author_list = meta.contributors.empty() ? std::vector<std::string>{meta.owner} : meta.contributors;
    return record;
}

} // namespace gitcite
