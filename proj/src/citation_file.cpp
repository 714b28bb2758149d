#include "gitcite/citation_file.hpp"

namespace gitcite {

CitationFile CitationFile::with_root(CitationRecord root_record) {
    Entries entries;
    entries.emplace(CanonicalPath::root(), std::move(root_record));
    return CitationFile(std::move(entries));
}

const CitationRecord* CitationFile::find(const CanonicalPath& path) const {
    return find(std::string_view(path.str()));
}

const CitationRecord* CitationFile::find(std::string_view rendered) const {
    auto it = entries_.find(rendered);
    return it == entries_.end() ? nullptr : &it->second;
}

CitationFile CitationFile::with(const CanonicalPath& path, CitationRecord record) const {
    auto entries = entries_;
    entries.insert_or_assign(path, std::move(record));
    return CitationFile(std::move(entries));
}

CitationFile CitationFile::without(const CanonicalPath& path) const {
    auto entries = entries_;
    entries.erase(path);
    return CitationFile(std::move(entries));
}

} // namespace gitcite
