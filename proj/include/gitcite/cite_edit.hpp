#pragma once

#include "gitcite/citation_file.hpp"
#include "gitcite/path.hpp"
#include "gitcite/record.hpp"
#include "gitcite/tree.hpp"

#include <optional>
#include <string>

namespace gitcite {

enum class Role { project_member, citer };

struct RoleContext {
    Role role = Role::project_member;
    std::string actor;
};

/// Throws RoleForbidden unless the caller is a project member.
void require_project_member(const RoleContext& who);

enum class EditKind { add, remove, modify };

/// One staged change to a citation function.
struct CiteEdit {
    EditKind kind;
    CanonicalPath path;
    std::optional<CitationRecord> record; // present iff kind != remove

    static CiteEdit add(CanonicalPath path, CitationRecord record);
    static CiteEdit remove(CanonicalPath path);
    static CiteEdit modify(CanonicalPath path, CitationRecord record);

    bool operator==(const CiteEdit&) const = default;
};

/// Applies one edit to `cf` under the preconditions of its kind, checked
/// against `tree`:
///   add    - path in tree, not yet cited (AlreadyCited), valid record
///   remove - path cited (NotCited), not the root (RootUndeletable)
///   modify - path cited (NotCited), valid record
CitationFile apply_cite_edit(const CitationFile& cf, const TreeSnapshot& tree, const CiteEdit& edit);

} // namespace gitcite
