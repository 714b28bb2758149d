#include "gitcite/cite_edit.hpp"

#include "gitcite/conflict.hpp"
#include "gitcite/errors.hpp"

namespace gitcite {

void require_project_member(const RoleContext& who) {
    if (who.role != Role::project_member) {
        throw Error(ErrorCode::RoleForbidden,
                    (who.actor.empty() ? std::string("a citer") : who.actor) + " may only read citations");
    }
}

CiteEdit CiteEdit::add(CanonicalPath path, CitationRecord record) {
    return {EditKind::add, std::move(path), std::move(record)};
}

CiteEdit CiteEdit::remove(CanonicalPath path) {
    if (path.is_root()) {
        throw Error(ErrorCode::RootUndeletable, "the root citation cannot be deleted");
    }
    return {EditKind::remove, std::move(path), std::nullopt};
}

CiteEdit CiteEdit::modify(CanonicalPath path, CitationRecord record) {
    return {EditKind::modify, std::move(path), std::move(record)};
}

CitationFile apply_cite_edit(const CitationFile& cf, const TreeSnapshot& tree, const CiteEdit& edit) {
    switch (edit.kind) {
    case EditKind::add:
        if (!tree.contains(edit.path)) {
            throw Error(ErrorCode::PathNotInTree, edit.path.str());
        }
        if (cf.contains(edit.path)) {
            throw Error(ErrorCode::AlreadyCited, edit.path.str() + " already has a citation; modify it instead");
        }
        check_record(edit.record.value());
        return cf.with(edit.path, *edit.record);
    case EditKind::remove:
        if (edit.path.is_root()) {
            throw Error(ErrorCode::RootUndeletable, "the root citation cannot be deleted");
        }
        if (!cf.contains(edit.path)) {
            throw Error(ErrorCode::NotCited, edit.path.str());
        }
        return cf.without(edit.path);
    case EditKind::modify:
        if (!cf.contains(edit.path)) {
            throw Error(ErrorCode::NotCited, edit.path.str());
        }
        check_record(edit.record.value());
        return cf.with(edit.path, *edit.record);
    }
    return cf;
}

std::string_view to_string(Resolution::Choice choice) {
    switch (choice) {
    case Resolution::Choice::pending: return "pending";
    case Resolution::Choice::chose_left: return "chose_left";
    case Resolution::Choice::chose_right: return "chose_right";
    case Resolution::Choice::replaced: return "replaced";
    }
    return "unknown";
}

const CitationRecord& chosen_record(const ConflictReport& report) {
    switch (report.resolution.choice) {
    case Resolution::Choice::chose_left: return report.left;
    case Resolution::Choice::chose_right: return report.right;
    case Resolution::Choice::replaced: return report.resolution.replacement.value();
    case Resolution::Choice::pending: break;
    }
    throw Error(ErrorCode::UnresolvedConflict, report.key.str());
}

} // namespace gitcite
