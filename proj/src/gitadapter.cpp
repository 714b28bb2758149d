#include "gitcite/gitadapter.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/document.hpp"
#include "gitcite/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace gitcite {

namespace fs = std::filesystem;

std::string citation_file_name() {
    const char* override_name = std::getenv("GITCITE_FILE");
    if (override_name != nullptr && *override_name != '\0') {
        return override_name;
    }
    return kDefaultCitationFileName;
}

fs::path citation_file_path(const fs::path& worktree_root) {
    return worktree_root / citation_file_name();
}

LoadedCitationFile load_citation_file_checked(const fs::path& worktree_root) {
    const auto path = citation_file_path(worktree_root);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::FileMissing, path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::IoFailure, "reading " + path.string());
    }
    const auto bytes = text.str();
    LoadedCitationFile loaded{parse_document(bytes), true};
    loaded.canonical = serialize_document(loaded.cf) == bytes;
    return loaded;
}

CitationFile load_citation_file(const fs::path& worktree_root) {
    return load_citation_file_checked(worktree_root).cf;
}

void store_citation_file(const fs::path& worktree_root, const CitationFile& cf) {
    const auto path = citation_file_path(worktree_root);
    const auto bytes = serialize_document(cf);
    auto temporary = path;
    temporary += ".tmp";
    {
        std::ofstream out(temporary, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::IoFailure, "cannot write " + temporary.string());
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out.flush()) {
            throw Error(ErrorCode::IoFailure, "cannot write " + temporary.string());
        }
    }
    std::error_code ec;
    fs::rename(temporary, path, ec);
    if (ec) {
        fs::remove(temporary, ec);
        throw Error(ErrorCode::IoFailure, "cannot replace " + path.string());
    }
}

CitationFile apply_renames_and_deletions(const CitationFile& cf, const std::vector<PathRename>& renames,
                                         const std::vector<CanonicalPath>& deleted) {
    CitationFile::Entries entries;
    for (const auto& [key, record] : cf.entries()) {
        if (key.is_root()) {
            entries.insert_or_assign(key, record);
            continue;
        }
        bool gone = false;
        for (const auto& path : deleted) {
            gone = gone || path.contains(key);
        }
        const PathRename* best = nullptr;
        for (const auto& rename : renames) {
            if (rename.from.contains(key) &&
                (best == nullptr || rename.from.segments().size() > best->from.segments().size())) {
                best = &rename;
            }
        }
        if (best != nullptr) {
            entries.insert_or_assign(*key.rebased(best->from, best->to), record);
        } else if (!gone) {
            entries.emplace(key, record);
        }
    }
    return CitationFile(std::move(entries));
}

CitationFile sync_on_commit(const fs::path& worktree_root, const std::vector<PathRename>& renames,
                            const std::vector<CanonicalPath>& deleted) {
    const auto loaded = load_citation_file_checked(worktree_root);
    if (renames.empty() && deleted.empty() && loaded.canonical) {
        return loaded.cf;
    }
    auto synced = apply_renames_and_deletions(loaded.cf, renames, deleted);
    store_citation_file(worktree_root, synced);
    return synced;
}

DetectedChanges detect_changes(const GitRepo& repo, const CitationFile& cf) {
    DetectedChanges detected;
    if (!repo.head_commit()) {
        return detected;
    }
    const auto old_tree = repo.tree_at("HEAD");
    const auto new_tree = repo.index_tree(false);

    std::map<CanonicalPath, CanonicalPath, PathLess> file_moves;
    for (const auto& change : repo.staged_changes()) {
        if (change.status == 'R') {
            auto from = canonicalize(change.path, KindHint::file);
            auto to = canonicalize(change.new_path, KindHint::file);
            file_moves.emplace(from, to);
            detected.renames.push_back({std::move(from), std::move(to)});
        }
    }

    for (const auto& [key, record] : cf.entries()) {
        if (key.is_root() || !old_tree.contains(key)) {
            continue;
        }
        if (key.is_directory() && !new_tree.kind_at(key)) {
            // Git reports file moves only; a directory counts as renamed when
            // all of its files landed under one new directory, same layout.
            std::optional<CanonicalPath> target;
            bool consistent = true;
            for (const auto& node : old_tree.subtree(key)) {
                if (!node.is_file()) {
                    continue;
                }
                auto moved = file_moves.find(node);
                if (moved == file_moves.end()) {
                    consistent = false;
                    break;
                }
                const auto depth = node.segments().size() - key.segments().size();
                const auto& to_segments = moved->second.segments();
                if (to_segments.size() <= depth ||
                    !std::equal(to_segments.end() - static_cast<std::ptrdiff_t>(depth), to_segments.end(),
                                node.segments().end() - static_cast<std::ptrdiff_t>(depth))) {
                    consistent = false;
                    break;
                }
                auto candidate = CanonicalPath::from_segments(
                    {to_segments.begin(), to_segments.end() - static_cast<std::ptrdiff_t>(depth)}, PathKind::directory);
                if (target && *target != candidate) {
                    consistent = false;
                    break;
                }
                target = std::move(candidate);
            }
            if (consistent && target && new_tree.contains(*target)) {
                detected.renames.push_back({key, *target});
                continue;
            }
        }
        auto mapped = apply_renames_and_deletions(CitationFile({{key, record}}), detected.renames, {});
        if (!new_tree.contains(mapped.entries().begin()->first)) {
            detected.deleted.push_back(key);
            detected.warnings.push_back("citation for " + key.str() +
                                        " dropped: the path is gone and no rename was detected");
        }
    }
    return detected;
}

FileMergeOutcome merge_citation_files(const CitationFile& base, const CitationFile& left, const CitationFile& right,
                                      const TreeSnapshot& merged_tree, const ConflictResolver& resolver) {
    FileMergeOutcome outcome;
    CitationFile::Entries merged;
    auto l = left.entries().begin();
    auto r = right.entries().begin();
    const auto l_end = left.entries().end();
    const auto r_end = right.entries().end();
    // Both maps are sorted by key; walk them together.
    while (l != l_end || r != r_end) {
        const bool take_left = r == r_end || (l != l_end && l->first <= r->first);
        const bool take_right = l == l_end || (r != r_end && r->first <= l->first);
        const auto& key = take_left ? l->first : r->first;
        if (!merged_tree.contains(key)) {
            outcome.pruned.push_back(key);
        } else if (take_left && take_right && l->second != r->second) {
            const auto* ancestor = base.find(key);
            if (ancestor != nullptr && *ancestor == r->second) {
                merged.emplace(key, l->second);
            } else if (ancestor != nullptr && *ancestor == l->second) {
                merged.emplace(key, r->second);
            } else {
                ConflictReport report{key, l->second, r->second, {}};
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
        } else {
            merged.emplace(key, take_left ? l->second : r->second);
        }
        if (take_left) {
            ++l;
        }
        if (take_right) {
            ++r;
        }
    }
    outcome.cf = CitationFile(std::move(merged));
    return outcome;
}

} // namespace gitcite
