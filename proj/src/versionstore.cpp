#include "gitcite/versionstore.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace gitcite {

namespace {

void ensure_consistent(const CitationFile& cf, const TreeSnapshot& tree, std::string_view operation) {
    auto problems = validate(cf, tree);
    if (!problems.empty()) {
        throw Error(ErrorCode::InvariantBroken, std::string(operation) + " produced " + problems.front().message());
    }
}

// Directories exist only to hold something, so removing a directory's last
// child removes the directory too. The root always stays.
TreeSnapshot drop_empty_directories(TreeSnapshot tree, CanonicalPath dir) {
    while (!dir.is_root() && tree.contains(dir) && tree.children(dir).empty()) {
        tree = tree.without(dir);
        dir = dir.parent();
    }
    return tree;
}

CitationFile rekey(const CitationFile& cf, const CanonicalPath& from, const CanonicalPath& to) {
    CitationFile::Entries entries;
    for (const auto& [key, record] : cf.entries()) {
        auto moved = key.rebased(from, to);
        entries.insert_or_assign(moved ? *moved : key, record);
    }
    return CitationFile(std::move(entries));
}

CitationFile drop_within(const CitationFile& cf, const CanonicalPath& removed) {
    CitationFile::Entries entries;
    for (const auto& [key, record] : cf.entries()) {
        if (!removed.contains(key)) {
            entries.emplace(key, record);
        }
    }
    return CitationFile(std::move(entries));
}

CitationFile drop_missing(const CitationFile& cf, const TreeSnapshot& tree) {
    CitationFile::Entries entries;
    for (const auto& [key, record] : cf.entries()) {
        if (tree.contains(key)) {
            entries.emplace(key, record);
        }
    }
    return CitationFile(std::move(entries));
}

} // namespace

TreeEdit TreeEdit::create_file(CanonicalPath path, std::string digest) {
    return {TreeEditKind::create_file, std::move(path), std::nullopt, std::move(digest)};
}

TreeEdit TreeEdit::remove(CanonicalPath path) {
    return {TreeEditKind::remove, std::move(path), std::nullopt, {}};
}

TreeEdit TreeEdit::rename(CanonicalPath from, CanonicalPath to) {
    return {TreeEditKind::rename, std::move(from), std::move(to), {}};
}

TreeEdit TreeEdit::modify_content(CanonicalPath path, std::string digest) {
    return {TreeEditKind::modify_content, std::move(path), std::nullopt, std::move(digest)};
}

Repository::Repository(std::string id, CitationRecord root_record, TreeSnapshot initial_tree,
                       std::string default_branch)
    : id_(std::move(id)), default_branch_(std::move(default_branch)) {
    check_record(root_record);
    append(default_branch_, {}, std::move(initial_tree), CitationFile::with_root(std::move(root_record)));
}

const VersionPtr& Repository::version(const VersionId& id) const {
    auto it = versions_.find(id);
    if (it == versions_.end()) {
        throw Error(ErrorCode::UnknownVersion, id + " in repository " + id_);
    }
    return it->second;
}

const VersionId& Repository::head_id(const std::string& branch) const {
    auto it = branches_.find(branch);
    if (it == branches_.end()) {
        throw Error(ErrorCode::UnknownBranch, branch + " in repository " + id_);
    }
    return it->second;
}

std::vector<VersionId> Repository::version_ids() const {
    std::vector<VersionPtr> all;
    all.reserve(versions_.size());
    for (const auto& [id, version] : versions_) {
        all.push_back(version);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a->timestamp < b->timestamp; });
    std::vector<VersionId> ids;
    ids.reserve(all.size());
    for (const auto& version : all) {
        ids.push_back(version->id);
    }
    return ids;
}

const std::vector<CiteEdit>& Repository::staged(const std::string& branch) const {
    static const std::vector<CiteEdit> none;
    head_id(branch);
    auto it = staged_.find(branch);
    return it == staged_.end() ? none : it->second;
}

CitationFile Repository::staged_citations(const std::string& branch) const {
    const auto& base = head(branch);
    auto cf = base.cf;
    for (const auto& edit : staged(branch)) {
        cf = apply_cite_edit(cf, base.tree, edit);
    }
    return cf;
}

void Repository::stage(const std::string& branch, CiteEdit edit) {
    // Fails (and stages nothing) if the edit does not apply on top of what is already staged.
    apply_cite_edit(staged_citations(branch), head(branch).tree, edit);
    staged_[branch].push_back(std::move(edit));
}

bool Repository::is_ancestor(const VersionId& ancestor, const VersionId& descendant) const {
    std::unordered_set<VersionId> seen;
    std::vector<VersionId> todo{descendant};
    while (!todo.empty()) {
        auto current = std::move(todo.back());
        todo.pop_back();
        if (current == ancestor) {
            return true;
        }
        if (!seen.insert(current).second) {
            continue;
        }
        for (const auto& parent : version(current)->parents) {
            todo.push_back(parent);
        }
    }
    return false;
}

std::optional<VersionId> Repository::merge_base(const VersionId& a, const VersionId& b) const {
    std::unordered_set<VersionId> above_a;
    std::vector<VersionId> todo{a};
    while (!todo.empty()) {
        auto current = std::move(todo.back());
        todo.pop_back();
        if (above_a.insert(current).second) {
            for (const auto& parent : version(current)->parents) {
                todo.push_back(parent);
            }
        }
    }
    std::optional<VersionId> best;
    std::unordered_set<VersionId> seen;
    todo = {b};
    while (!todo.empty()) {
        auto current = std::move(todo.back());
        todo.pop_back();
        if (!seen.insert(current).second) {
            continue;
        }
        if (above_a.contains(current)) {
            if (!best || version(current)->timestamp > version(*best)->timestamp) {
                best = current;
            }
            continue; // its ancestors are older
        }
        for (const auto& parent : version(current)->parents) {
            todo.push_back(parent);
        }
    }
    return best;
}

const Version& Repository::append(const std::string& branch, std::vector<VersionId> parents, TreeSnapshot tree,
                                  CitationFile cf) {
    auto version = std::make_shared<Version>();
    version->timestamp = ++clock_;
    version->id = "v" + std::to_string(version->timestamp);
    version->parents = std::move(parents);
    version->tree = std::move(tree);
    version->cf = std::move(cf);
    const auto& id = version->id;
    branches_[branch] = id;
    staged_.erase(branch);
    return *versions_.emplace(id, std::move(version)).first->second;
}

void Repository::add_version(VersionPtr version) {
    versions_.emplace(version->id, std::move(version));
}

const Version& commit(Repository& repo, const std::string& branch, const std::vector<TreeEdit>& edits,
                      const std::vector<CiteEdit>& cite_edits) {
    const auto& head = repo.head(branch);

    auto cf = repo.staged_citations(branch);
    for (const auto& edit : cite_edits) {
        cf = apply_cite_edit(cf, head.tree, edit);
    }

    auto tree = head.tree;
    for (const auto& edit : edits) {
        const auto& path = edit.from;
        switch (edit.kind) {
        case TreeEditKind::create_file:
            if (tree.kind_at(path)) {
                throw Error(ErrorCode::EditConflict, "create " + path.str() + ": already exists");
            }
            tree = tree.with_file(path, edit.digest);
            break;
        case TreeEditKind::modify_content:
            if (!path.is_file() || !tree.contains(path)) {
                throw Error(ErrorCode::EditConflict, "modify " + path.str() + ": no such file");
            }
            tree = tree.with_file(path, edit.digest);
            break;
        case TreeEditKind::remove:
            if (path.is_root() || !tree.contains(path)) {
                throw Error(ErrorCode::EditConflict, "delete " + path.str() + ": no such path");
            }
            tree = drop_empty_directories(tree.without(path), path.parent());
            cf = drop_within(cf, path);
            break;
        case TreeEditKind::rename: {
            if (!edit.to) {
                throw Error(ErrorCode::EditConflict, "rename " + path.str() + ": no destination");
            }
            const auto& to = *edit.to;
            if (path.is_root() || !tree.contains(path)) {
                throw Error(ErrorCode::EditConflict, "rename " + path.str() + ": no such path");
            }
            if (to.is_root() || to.kind() != path.kind() || path.contains(to) || tree.kind_at(to)) {
                throw Error(ErrorCode::EditConflict, "rename " + path.str() + " -> " + to.str() + ": bad destination");
            }
            auto moved = tree.subtree(path);
            auto next = tree.without(path);
            for (const auto& node : moved) {
                auto target = *node.rebased(path, to);
                next = node.is_file() ? next.with_file(target, *tree.digest(node)) : next.with_directory(target);
            }
            tree = drop_empty_directories(std::move(next), path.parent());
            cf = rekey(cf, path, to);
            break;
        }
        }
    }
    cf = drop_missing(cf, tree);

    ensure_consistent(cf, tree, "commit");
    return repo.append(branch, {head.id}, std::move(tree), std::move(cf));
}

std::string create_branch(Repository& repo, const std::string& name, const VersionId& from_version) {
    if (repo.has_branch(name)) {
        throw Error(ErrorCode::BranchExists, name);
    }
    repo.version(from_version);
    repo.branches_.emplace(name, from_version);
    return name;
}

CitationFile::Entries migrated_citations(const CitationFile& src_cf, const TreeSnapshot& src_tree,
                                         const CanonicalPath& src_subtree, const CanonicalPath& dst_path) {
    CitationFile::Entries entries;
    for (const auto& [key, record] : src_cf.entries()) {
        if (auto moved = key.rebased(src_subtree, dst_path)) {
            entries.emplace(std::move(*moved), record);
        }
    }
    entries.insert_or_assign(dst_path, resolve(src_cf, src_tree, src_subtree));
    return entries;
}

const Version& copy_cite(const Repository& src, const VersionId& src_version, const CanonicalPath& src_subtree,
                         Repository& dst, const std::string& dst_branch, const CanonicalPath& dst_path) {
    if (!src.has_version(src_version)) {
        throw Error(ErrorCode::SourceVersionUnknown, src_version + " in repository " + src.id());
    }
    const VersionPtr source = src.version(src_version);
    if (!src_subtree.is_directory() || !source->tree.contains(src_subtree)) {
        throw Error(ErrorCode::SubtreeMissing, src_subtree.str() + " in " + src.id() + "@" + src_version);
    }
    const auto& head = dst.head(dst_branch);
    if (!dst_path.is_directory() || dst_path.is_root() || head.tree.kind_at(dst_path)) {
        throw Error(ErrorCode::DestinationCollision, dst_path.str() + " already exists in " + dst.id());
    }
    if (!head.tree.contains(dst_path.parent())) {
        throw Error(ErrorCode::PathNotInTree, "destination parent " + dst_path.parent().str());
    }

    auto tree = head.tree.with_directory(dst_path);
    for (const auto& node : source->tree.subtree(src_subtree)) {
        auto target = *node.rebased(src_subtree, dst_path);
        tree = node.is_file() ? tree.with_file(target, *source->tree.digest(node)) : tree.with_directory(target);
    }
    auto entries = dst.staged_citations(dst_branch).entries();
    for (auto& [key, record] : migrated_citations(source->cf, source->tree, src_subtree, dst_path)) {
        entries.insert_or_assign(key, std::move(record));
    }
    CitationFile cf(std::move(entries));

    ensure_consistent(cf, tree, "copy");
    return dst.append(dst_branch, {head.id}, std::move(tree), std::move(cf));
}

TreeMergeResult merge_trees(const TreeSnapshot& base, const TreeSnapshot& left, const TreeSnapshot& right) {
    struct Pick {
        CanonicalPath path;
        std::string digest;
    };
    std::vector<Pick> from_left;
    std::vector<Pick> from_right;
    std::vector<std::string> warnings;

    std::set<CanonicalPath, PathLess> files;
    std::set<CanonicalPath, PathLess> dirs;
    for (const auto* tree : {&base, &left, &right}) {
        for (const auto& path : tree->paths()) {
            (path.is_file() ? files : dirs).insert(path);
        }
    }

    for (const auto& file : files) {
        const auto* b = base.digest(file);
        const auto* l = left.digest(file);
        const auto* r = right.digest(file);
        if (l && r) {
            if (*l != *r && b && *b == *l) {
                from_right.push_back({file, *r});
            } else {
                if (*l != *r && !(b && *b == *r)) {
                    warnings.push_back(file.str() + ": changed on both sides, keeping the left content");
                }
                from_left.push_back({file, *l});
            }
        } else if (l) {
            if (!b) {
                from_left.push_back({file, *l});
            } else if (*b != *l) {
                warnings.push_back(file.str() + ": changed on the left, deleted on the right, keeping it");
                from_left.push_back({file, *l});
            }
        } else if (r) {
            if (!b) {
                from_right.push_back({file, *r});
            } else if (*b != *r) {
                warnings.push_back(file.str() + ": deleted on the left, changed on the right, keeping it");
                from_right.push_back({file, *r});
            }
        }
    }
    for (const auto& dir : dirs) {
        const bool l = left.contains(dir);
        const bool r = right.contains(dir);
        const bool b = base.contains(dir);
        if ((l && r) || (l && !b)) {
            from_left.push_back({dir, {}});
        } else if (r && !b) {
            from_right.push_back({dir, {}});
        }
    }

    TreeSnapshot merged;
    for (const auto* picks : {&from_left, &from_right}) {
        for (const auto& pick : *picks) {
            try {
                merged = pick.path.is_file() ? merged.with_file(pick.path, pick.digest) : merged.with_directory(pick.path);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::EditConflict) {
                    throw;
                }
                warnings.push_back(pick.path.str() + ": file/directory clash, keeping the left side");
            }
        }
    }
    // As in Git, a directory whose entries were all deleted by the merge goes
    // too. Directories that were already empty on an input stay. Children come
    // after their parent in rendered order, so walk backwards.
    auto merged_paths = merged.paths();
    for (auto it = merged_paths.rbegin(); it != merged_paths.rend(); ++it) {
        const auto& dir = *it;
        if (!dir.is_directory() || dir.is_root() || !merged.children(dir).empty()) {
            continue;
        }
        bool emptied = false;
        for (const auto* tree : {&base, &left, &right}) {
            emptied = emptied || (tree->contains(dir) && !tree->children(dir).empty());
        }
        if (emptied) {
            merged = merged.without(dir);
        }
    }
    return {std::move(merged), std::move(warnings)};
}

MergeOutcome merge_cite(Repository& repo, const std::string& into_branch, const std::string& from_branch,
                        const ConflictResolver& resolver) {
    const auto into_head = repo.head_id(into_branch);
    const auto from_head = repo.head_id(from_branch);
    MergeOutcome outcome;

    if (repo.is_ancestor(from_head, into_head)) {
        outcome.version = repo.version(into_head);
        outcome.up_to_date = true;
        return outcome;
    }
    auto base_id = repo.merge_base(into_head, from_head);
    if (!base_id) {
        throw Error(ErrorCode::NoCommonAncestor, into_branch + " and " + from_branch);
    }
    if (*base_id == into_head && repo.staged(into_branch).empty()) {
        repo.branches_[into_branch] = from_head;
        outcome.version = repo.version(from_head);
        outcome.fast_forward = true;
        return outcome;
    }

    const auto& base = *repo.version(*base_id);
    const auto& left = *repo.version(into_head);
    const auto& right = *repo.version(from_head);
    const auto left_cf = repo.staged_citations(into_branch);

    auto trees = merge_trees(base.tree, left.tree, right.tree);
    outcome.warnings = std::move(trees.warnings);

    std::set<CanonicalPath, PathLess> keys;
    for (const auto* cf : {&left_cf, &right.cf}) {
        for (const auto& [key, record] : cf->entries()) {
            keys.insert(key);
        }
    }

    CitationFile::Entries merged;
    for (const auto& key : keys) {
        if (!trees.tree.contains(key)) {
            outcome.pruned.push_back(key);
            continue;
        }
        const auto* l = left_cf.find(key);
        const auto* r = right.cf.find(key);
        if (!l || !r || *l == *r) {
            merged.emplace(key, l ? *l : *r);
            continue;
        }
        const auto* b = base.cf.find(key);
        if (b && *b == *l) {
            merged.emplace(key, *r);
        } else if (b && *b == *r) {
            merged.emplace(key, *l);
        } else {
            ConflictReport report{key, *l, *r, Resolution::pending()};
            report.resolution = resolver(report);
            if (report.resolution.choice == Resolution::Choice::pending) {
                throw Error(ErrorCode::UnresolvedConflict, key.str());
            }
            if (report.resolution.replacement) {
                check_record(*report.resolution.replacement);
            }
            merged.emplace(key, chosen_record(report));
            outcome.conflicts.push_back(std::move(report));
        }
    }
    CitationFile cf(std::move(merged));

    ensure_consistent(cf, trees.tree, "merge");
    const auto& version = repo.append(into_branch, {into_head, from_head}, std::move(trees.tree), std::move(cf));
    outcome.version = repo.version(version.id);
    return outcome;
}

Repository fork_cite(const Repository& src, std::string new_id, const std::optional<VersionId>& version) {
    const auto head = version ? *version : src.head_id(src.default_branch());
    src.version(head);

    Repository fork;
    fork.id_ = std::move(new_id);
    fork.default_branch_ = src.default_branch_;
    fork.clock_ = src.clock_;
    std::deque<VersionId> todo{head};
    while (!todo.empty()) {
        auto current = std::move(todo.front());
        todo.pop_front();
        if (fork.has_version(current)) {
            continue;
        }
        const auto& shared = src.version(current);
        fork.add_version(shared);
        todo.insert(todo.end(), shared->parents.begin(), shared->parents.end());
    }
    fork.branches_.emplace(fork.default_branch_, head);
    return fork;
}

} // namespace gitcite
