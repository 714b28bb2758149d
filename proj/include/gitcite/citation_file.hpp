#pragma once

#include "gitcite/path.hpp"
#include "gitcite/record.hpp"

#include <cstddef>
#include <map>
#include <string_view>

namespace gitcite {

/// The citation function of one version: explicit records keyed by path.
/// Its keys are the active domain. Iteration is in rendered-path byte order.
///
/// A value may transiently lack the root entry (for instance right after
/// reading a damaged document); `validate` reports that.
class CitationFile {
public:
    using Entries = std::map<CanonicalPath, CitationRecord, PathLess>;

    CitationFile() = default;
    explicit CitationFile(Entries entries) : entries_(std::move(entries)) {}

    static CitationFile with_root(CitationRecord root_record);

    const Entries& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool has_root() const { return contains(CanonicalPath::root()); }

    bool contains(const CanonicalPath& path) const { return entries_.contains(path); }
    const CitationRecord* find(const CanonicalPath& path) const;
    const CitationRecord* find(std::string_view rendered) const;

    [[nodiscard]] CitationFile with(const CanonicalPath& path, CitationRecord record) const;
    [[nodiscard]] CitationFile without(const CanonicalPath& path) const;

    bool operator==(const CitationFile&) const = default;

private:
    Entries entries_;
};

} // namespace gitcite
