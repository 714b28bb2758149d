#pragma once

#include "gitcite/citation_file.hpp"
#include "gitcite/path.hpp"
#include "gitcite/record.hpp"
#include "gitcite/tree.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gitcite {

/// Turns a user-supplied relative or root-anchored path into its canonical
/// form. "." segments are dropped; "..", empty segments and backslashes are
/// rejected with InvalidPath. A trailing "/" marks a directory. When the
/// hint is `unknown` and the path has no trailing "/", the kind is looked up
/// in `tree`; without a tree that is UnknownKind.
CanonicalPath canonicalize(std::string_view raw, KindHint hint);
CanonicalPath canonicalize(std::string_view raw, KindHint hint, const TreeSnapshot& tree);

/// Closest-ancestor citation of `path`: its own entry when cited,
/// otherwise the entry of the nearest enclosing directory that is.
/// Throws PathNotInTree when `tree` does not contain `path`.
CitationRecord resolve(const CitationFile& cf, const TreeSnapshot& tree, const CanonicalPath& path);

/// Same lookup without a tree membership check (for remote files whose
/// tree is not at hand). Throws MissingRoot if nothing on the way is cited.
CitationRecord resolve_unchecked(const CitationFile& cf, const CanonicalPath& path);

/// The path whose entry `resolve` would return.
CanonicalPath resolving_key(const CitationFile& cf, const CanonicalPath& path);

struct Inconsistency {
    enum class Rule { missing_root, dangling_key, kind_mismatch };

    Rule rule;
    CanonicalPath key;

    std::string message() const;
    bool operator==(const Inconsistency&) const = default;
};

std::string_view to_string(Inconsistency::Rule rule);

/// Empty iff "/" is cited, every key exists in `tree`, and every key's kind
/// matches the node found there. One entry per violation, root first, then
/// in key order.
std::vector<Inconsistency> validate(const CitationFile& cf, const TreeSnapshot& tree);

} // namespace gitcite
