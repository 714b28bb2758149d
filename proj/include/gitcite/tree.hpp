#pragma once

#include "gitcite/path.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gitcite {

/// The directory tree of one version. Interior nodes are directories,
/// leaves are files carrying an opaque content digest. Values are
/// immutable; the `with*`/`without` members return modified copies.
class TreeSnapshot {
public:
    struct Node {
        CanonicalPath path;
        std::string digest; // empty for directories

        bool operator==(const Node&) const = default;
    };

    /// A tree holding only the root directory.
    TreeSnapshot();

    /// Exact membership, kind included: "/a" is not contained when "/a/" is.
    bool contains(const CanonicalPath& path) const;

    /// Kind of whatever node sits at the location of `path`, ignoring the
    /// kind carried by `path` itself.
    std::optional<PathKind> kind_at(const CanonicalPath& path) const;

    /// Digest of a file node, nullptr when absent or a directory.
    const std::string* digest(const CanonicalPath& file) const;

    std::vector<CanonicalPath> children(const CanonicalPath& directory) const;

    /// Every node in the subtree rooted at `directory`, itself included.
    std::vector<CanonicalPath> subtree(const CanonicalPath& directory) const;

    /// All nodes in rendered order, the root first.
    std::vector<CanonicalPath> paths() const;

    std::vector<Node> nodes() const;
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Adds or replaces a file, creating missing parent directories.
    /// Throws EditConflict if a directory sits at the file's location or a
    /// file sits where a parent directory is needed.
    [[nodiscard]] TreeSnapshot with_file(const CanonicalPath& file, std::string digest) const;

    /// Adds a directory (and its parents). Throws EditConflict on a file in the way.
    [[nodiscard]] TreeSnapshot with_directory(const CanonicalPath& directory) const;

    /// Removes a node with its whole subtree. Removing the root leaves an empty root.
    [[nodiscard]] TreeSnapshot without(const CanonicalPath& path) const;

    bool operator==(const TreeSnapshot&) const = default;

private:
    void insert_parents(const CanonicalPath& path);

    std::map<std::string, Node> nodes_; // keyed by location
};

} // namespace gitcite
