#include "gitcite/tree.hpp"

#include "gitcite/errors.hpp"

namespace gitcite {

namespace {

// Locations strictly below `location` start with this prefix.
std::string below(const std::string& location) {
    return location == "/" ? location : location + "/";
}

} // namespace

TreeSnapshot::TreeSnapshot() {
    nodes_.emplace("/", Node{CanonicalPath::root(), {}});
}

bool TreeSnapshot::contains(const CanonicalPath& path) const {
    auto it = nodes_.find(path.location());
    return it != nodes_.end() && it->second.path == path;
}

std::optional<PathKind> TreeSnapshot::kind_at(const CanonicalPath& path) const {
    auto it = nodes_.find(path.location());
    if (it == nodes_.end()) {
        return std::nullopt;
    }
    return it->second.path.kind();
}

const std::string* TreeSnapshot::digest(const CanonicalPath& file) const {
    auto it = nodes_.find(file.location());
    if (it == nodes_.end() || !it->second.path.is_file() || it->second.path != file) {
        return nullptr;
    }
    return &it->second.digest;
}

std::vector<CanonicalPath> TreeSnapshot::children(const CanonicalPath& directory) const {
    std::vector<CanonicalPath> result;
    if (!contains(directory) || directory.is_file()) {
        return result;
    }
    const auto depth = directory.segments().size() + 1;
    for (const auto& path : subtree(directory)) {
        if (path.segments().size() == depth) {
            result.push_back(path);
        }
    }
    return result;
}

std::vector<CanonicalPath> TreeSnapshot::subtree(const CanonicalPath& directory) const {
    std::vector<CanonicalPath> result;
    if (!contains(directory)) {
        return result;
    }
    result.push_back(directory);
    if (directory.is_file()) {
        return result;
    }
    const auto prefix = below(directory.location());
    for (auto it = nodes_.lower_bound(prefix); it != nodes_.end() && it->first.starts_with(prefix); ++it) {
        if (it->first != "/") {
            result.push_back(it->second.path);
        }
    }
    return result;
}

std::vector<CanonicalPath> TreeSnapshot::paths() const {
    std::vector<CanonicalPath> result;
    result.reserve(nodes_.size());
    for (const auto& [location, node] : nodes_) {
        result.push_back(node.path);
    }
    return result;
}

std::vector<TreeSnapshot::Node> TreeSnapshot::nodes() const {
    std::vector<Node> result;
    result.reserve(nodes_.size());
    for (const auto& [location, node] : nodes_) {
        result.push_back(node);
    }
    return result;
}

void TreeSnapshot::insert_parents(const CanonicalPath& path) {
    std::vector<std::string> segments;
    const auto& all = path.segments();
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        segments.push_back(all[i]);
        auto dir = CanonicalPath::from_segments(segments, PathKind::directory);
        auto [it, inserted] = nodes_.try_emplace(dir.location(), Node{dir, {}});
        if (!inserted && it->second.path.is_file()) {
            throw Error(ErrorCode::EditConflict, "file " + it->second.path.str() + " is in the way of " + path.str());
        }
    }
}

TreeSnapshot TreeSnapshot::with_file(const CanonicalPath& file, std::string digest) const {
    if (!file.is_file()) {
        throw Error(ErrorCode::EditConflict, file.str() + " is not a file path");
    }
    auto copy = *this;
    copy.insert_parents(file);
    auto it = copy.nodes_.find(file.location());
    if (it == copy.nodes_.end()) {
        copy.nodes_.emplace(file.location(), Node{file, std::move(digest)});
    } else if (!it->second.path.is_file()) {
        throw Error(ErrorCode::EditConflict, "directory " + it->second.path.str() + " is in the way");
    } else {
        it->second.digest = std::move(digest);
    }
    return copy;
}

TreeSnapshot TreeSnapshot::with_directory(const CanonicalPath& directory) const {
    if (directory.is_root()) {
        return *this;
    }
    if (!directory.is_directory()) {
        throw Error(ErrorCode::EditConflict, directory.str() + " is not a directory path");
    }
    auto copy = *this;
    copy.insert_parents(directory);
    auto [it, inserted] = copy.nodes_.try_emplace(directory.location(), Node{directory, {}});
    if (!inserted && it->second.path.is_file()) {
        throw Error(ErrorCode::EditConflict, "file " + it->second.path.str() + " is in the way");
    }
    return copy;
}

TreeSnapshot TreeSnapshot::without(const CanonicalPath& path) const {
    auto copy = *this;
    if (path.is_root()) {
        return TreeSnapshot();
    }
    const auto location = path.location();
    copy.nodes_.erase(location);
    const auto prefix = below(location);
    auto it = copy.nodes_.lower_bound(prefix);
    while (it != copy.nodes_.end() && it->first.starts_with(prefix)) {
        it = copy.nodes_.erase(it);
    }
    return copy;
}

} // namespace gitcite
