#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace gitcite {

/// The snippets that make up one citation.
struct CitationRecord {
    std::string owner;
    std::string repo_name;
    std::string locator; // URL or DOI
    std::string version_id;
    std::string date; // ISO-8601
    std::vector<std::string> author_list;
    std::map<std::string, std::string> extras;

    bool operator==(const CitationRecord&) const = default;
};

/// Named fields in their serialized order.
inline constexpr std::array<std::string_view, 7> kRecordFields{
    "owner", "repo_name", "locator", "version_id", "date", "author_list", "extras"};

bool is_record_field(std::string_view name) noexcept;

/// Human-readable list of broken record invariants; empty when valid.
std::vector<std::string> record_problems(const CitationRecord& record);

/// Throws InvalidRecord when `record_problems` is non-empty.
void check_record(const CitationRecord& record);

} // namespace gitcite
