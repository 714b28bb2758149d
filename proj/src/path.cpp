#include "gitcite/path.hpp"

#include "gitcite/errors.hpp"

#include <utility>

namespace gitcite {

namespace {

void check_segment(const std::string& segment) {
    if (segment.empty() || segment == "." || segment == ".." ||
        segment.find('/') != std::string::npos || segment.find('\\') != std::string::npos) {
        throw Error(ErrorCode::InvalidPath, "bad path segment \"" + segment + "\"");
    }
}

} // namespace

CanonicalPath::CanonicalPath() : rendered_("/") {}

CanonicalPath::CanonicalPath(std::vector<std::string> segments, PathKind kind)
    : segments_(std::move(segments)), kind_(segments_.empty() ? PathKind::root : kind) {
    rendered_ = "/";
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        rendered_ += segments_[i];
        if (i + 1 < segments_.size() || kind_ == PathKind::directory) {
            rendered_ += '/';
        }
    }
}

CanonicalPath CanonicalPath::from_segments(std::vector<std::string> segments, PathKind kind) {
    for (const auto& segment : segments) {
        check_segment(segment);
    }
    if (!segments.empty() && kind == PathKind::root) {
        throw Error(ErrorCode::InvalidPath, "non-empty path cannot have root kind");
    }
    return CanonicalPath(std::move(segments), kind);
}

std::string_view CanonicalPath::name() const noexcept {
    if (segments_.empty()) {
        return {};
    }
    return segments_.back();
}

std::string CanonicalPath::location() const {
    if (is_directory() && !is_root()) {
        return rendered_.substr(0, rendered_.size() - 1);
    }
    return rendered_;
}

CanonicalPath CanonicalPath::parent() const {
    if (segments_.size() <= 1) {
        return root();
    }
    return CanonicalPath({segments_.begin(), segments_.end() - 1}, PathKind::directory);
}

CanonicalPath CanonicalPath::child(std::string name, PathKind kind) const {
    if (is_file()) {
        throw Error(ErrorCode::InvalidPath, "file " + rendered_ + " has no children");
    }
    check_segment(name);
    auto segments = segments_;
    segments.push_back(std::move(name));
    return CanonicalPath(std::move(segments), kind == PathKind::root ? PathKind::directory : kind);
}

bool CanonicalPath::is_ancestor_of(const CanonicalPath& other) const noexcept {
    return is_directory() && other.rendered_.size() > rendered_.size() &&
           other.rendered_.starts_with(rendered_);
}

bool CanonicalPath::contains(const CanonicalPath& other) const noexcept {
    return *this == other || is_ancestor_of(other);
}

std::optional<CanonicalPath> CanonicalPath::rebased(const CanonicalPath& from, const CanonicalPath& to) const {
    if (!from.contains(*this)) {
        return std::nullopt;
    }
    if (*this == from) {
        return to;
    }
    auto segments = to.segments_;
    segments.insert(segments.end(), segments_.begin() + static_cast<std::ptrdiff_t>(from.segments_.size()),
                    segments_.end());
    return CanonicalPath(std::move(segments), kind_);
}

std::string_view to_string(PathKind kind) {
    switch (kind) {
    case PathKind::root: return "root";
    case PathKind::directory: return "directory";
    case PathKind::file: return "file";
    }
    return "unknown";
}

} // namespace gitcite
