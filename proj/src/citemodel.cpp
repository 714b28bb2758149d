#include "gitcite/citemodel.hpp"

#include "gitcite/errors.hpp"

namespace gitcite {

namespace {

struct SplitPath {
    std::vector<std::string> segments;
    bool trailing_slash = false;
};

SplitPath split(std::string_view raw) {
    if (raw.find('\\') != std::string_view::npos) {
        throw Error(ErrorCode::InvalidPath, "backslash separator in \"" + std::string(raw) + "\"");
    }
    SplitPath result;
    std::string_view rest = raw;
    if (rest.starts_with('/')) {
        rest.remove_prefix(1);
    }
    if (rest.empty()) {
        return result;
    }
    if (rest.ends_with('/')) {
        result.trailing_slash = true;
        rest.remove_suffix(1);
    }
    std::size_t start = 0;
    while (true) {
        auto end = rest.find('/', start);
        auto segment = rest.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        if (segment.empty()) {
            throw Error(ErrorCode::InvalidPath, "empty segment in \"" + std::string(raw) + "\"");
        }
        if (segment == "..") {
            throw Error(ErrorCode::InvalidPath, "\"..\" in \"" + std::string(raw) + "\"");
        }
        if (segment != ".") {
            result.segments.emplace_back(segment);
        }
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    // "." alone, or "./": the root.
    return result;
}

CanonicalPath canonicalize_impl(std::string_view raw, KindHint hint, const TreeSnapshot* tree) {
    auto parts = split(raw);
    if (parts.segments.empty()) {
        return CanonicalPath::root();
    }
    if (parts.trailing_slash && hint == KindHint::file) {
        throw Error(ErrorCode::InvalidPath, "\"" + std::string(raw) + "\" names a directory but a file was expected");
    }
    PathKind kind;
    if (hint == KindHint::file) {
        kind = PathKind::file;
    } else if (hint == KindHint::directory || parts.trailing_slash) {
        kind = PathKind::directory;
    } else if (tree != nullptr) {
        auto probe = CanonicalPath::from_segments(parts.segments, PathKind::file);
        auto found = tree->kind_at(probe);
        if (!found) {
            throw Error(ErrorCode::UnknownKind, "\"" + std::string(raw) + "\" is not in the tree");
        }
        kind = *found;
    } else {
        throw Error(ErrorCode::UnknownKind, "cannot tell whether \"" + std::string(raw) + "\" is a file or directory");
    }
    return CanonicalPath::from_segments(std::move(parts.segments), kind);
}

} // namespace

CanonicalPath canonicalize(std::string_view raw, KindHint hint) {
    return canonicalize_impl(raw, hint, nullptr);
}

CanonicalPath canonicalize(std::string_view raw, KindHint hint, const TreeSnapshot& tree) {
    return canonicalize_impl(raw, hint, &tree);
}

CanonicalPath resolving_key(const CitationFile& cf, const CanonicalPath& path) {
    // Ancestors of a path are exactly the prefixes of its rendered form that
    // end in '/', so the lookup never builds intermediate path objects.
    std::string_view rendered = path.str();
    if (cf.find(rendered) != nullptr) {
        return path;
    }
    auto end = rendered.size();
    if (path.is_directory() && end > 1) {
        --end; // skip the directory's own trailing '/'
    }
    while (end > 0) {
        auto slash = rendered.rfind('/', end - 1);
        if (slash == std::string_view::npos) {
            break;
        }
        auto prefix = rendered.substr(0, slash + 1);
        if (auto it = cf.entries().find(prefix); it != cf.entries().end()) {
            return it->first;
        }
        end = slash;
    }
    throw Error(ErrorCode::MissingRoot, "no citation covers " + path.str());
}

CitationRecord resolve_unchecked(const CitationFile& cf, const CanonicalPath& path) {
    return *cf.find(resolving_key(cf, path));
}

CitationRecord resolve(const CitationFile& cf, const TreeSnapshot& tree, const CanonicalPath& path) {
    if (!tree.contains(path)) {
        throw Error(ErrorCode::PathNotInTree, path.str());
    }
    return resolve_unchecked(cf, path);
}

std::string_view to_string(Inconsistency::Rule rule) {
    switch (rule) {
    case Inconsistency::Rule::missing_root: return "MissingRoot";
    case Inconsistency::Rule::dangling_key: return "DanglingKey";
    case Inconsistency::Rule::kind_mismatch: return "KindMismatch";
    }
    return "Unknown";
}

std::string Inconsistency::message() const {
    switch (rule) {
    case Rule::missing_root: return "MissingRoot: the root \"/\" has no citation";
    case Rule::dangling_key: return "DanglingKey(\"" + key.str() + "\"): no such path in the tree";
    case Rule::kind_mismatch: return "KindMismatch(\"" + key.str() + "\"): the tree has a node of the other kind there";
    }
    return {};
}

std::vector<Inconsistency> validate(const CitationFile& cf, const TreeSnapshot& tree) {
    std::vector<Inconsistency> found;
    if (!cf.has_root()) {
        found.push_back({Inconsistency::Rule::missing_root, CanonicalPath::root()});
    }
    for (const auto& [key, record] : cf.entries()) {
        auto kind = tree.kind_at(key);
        if (!kind) {
            found.push_back({Inconsistency::Rule::dangling_key, key});
        } else if (*kind != key.kind()) {
            found.push_back({Inconsistency::Rule::kind_mismatch, key});
        }
    }
    return found;
}

} // namespace gitcite
