#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gitcite {

enum class PathKind { root, directory, file };

enum class KindHint { file, directory, unknown };

/// A node position inside one version's tree.
///
/// The rendered form is the identity: it starts with "/", directories end
/// with "/", and the root is exactly "/". Two paths are equal iff their
/// rendered forms are byte-equal, so "/a" (file) and "/a/" (directory) are
/// different paths.
class CanonicalPath {
public:
    /// The root.
    CanonicalPath();

    static CanonicalPath root() { return {}; }

    /// Build from already-validated segments. Throws InvalidPath on an
    /// empty, "." or ".." segment or one containing a separator.
    static CanonicalPath from_segments(std::vector<std::string> segments, PathKind kind);

    const std::vector<std::string>& segments() const noexcept { return segments_; }
    PathKind kind() const noexcept { return kind_; }
    const std::string& str() const noexcept { return rendered_; }

    bool is_root() const noexcept { return kind_ == PathKind::root; }
    bool is_file() const noexcept { return kind_ == PathKind::file; }
    /// True for directories and for the root.
    bool is_directory() const noexcept { return kind_ != PathKind::file; }

    /// Last segment; empty for the root.
    std::string_view name() const noexcept;

    /// Kind-agnostic location: "/a/b" for both "/a/b" and "/a/b/", "/" for the root.
    std::string location() const;

    /// Enclosing directory. The root is its own parent.
    CanonicalPath parent() const;

    CanonicalPath child(std::string name, PathKind kind) const;

    /// Proper ancestry: `this` is a directory strictly above `other`.
    bool is_ancestor_of(const CanonicalPath& other) const noexcept;

    /// `other == *this` or `*this` is a proper ancestor of `other`.
    bool contains(const CanonicalPath& other) const noexcept;

    /// If `*this` lies within `from` (a directory, or equal to it), return
    /// the same position with the `from` prefix replaced by `to`.
    std::optional<CanonicalPath> rebased(const CanonicalPath& from, const CanonicalPath& to) const;

    friend bool operator==(const CanonicalPath& a, const CanonicalPath& b) noexcept {
        return a.rendered_ == b.rendered_;
    }
    friend std::strong_ordering operator<=>(const CanonicalPath& a, const CanonicalPath& b) noexcept {
        return a.rendered_.compare(b.rendered_) <=> 0;
    }

private:
    CanonicalPath(std::vector<std::string> segments, PathKind kind);

    std::vector<std::string> segments_;
    PathKind kind_ = PathKind::root;
    std::string rendered_;
};

/// Ordering by rendered bytes, usable for heterogeneous lookup by string.
struct PathLess {
    using is_transparent = void;
    bool operator()(const CanonicalPath& a, const CanonicalPath& b) const noexcept { return a.str() < b.str(); }
    bool operator()(const CanonicalPath& a, std::string_view b) const noexcept { return a.str() < b; }
    bool operator()(std::string_view a, const CanonicalPath& b) const noexcept { return a < b.str(); }
};

std::string_view to_string(PathKind kind);

} // namespace gitcite
