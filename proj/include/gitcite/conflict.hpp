#pragma once

#include "gitcite/path.hpp"
#include "gitcite/record.hpp"

#include <functional>
#include <optional>
#include <string_view>

namespace gitcite {

/// What the user (or a policy) decided for one conflicting key.
struct Resolution {
    enum class Choice { pending, chose_left, chose_right, replaced };

    Choice choice = Choice::pending;
    std::optional<CitationRecord> replacement; // set iff choice == replaced

    static Resolution pending() { return {}; }
    static Resolution left() { return {Choice::chose_left, std::nullopt}; }
    static Resolution right() { return {Choice::chose_right, std::nullopt}; }
    static Resolution replace(CitationRecord record) { return {Choice::replaced, std::move(record)}; }

    bool operator==(const Resolution&) const = default;
};

std::string_view to_string(Resolution::Choice choice);

/// Same key cited on both sides of a merge with byte-different records.
/// "Left" is the branch being merged into.
struct ConflictReport {
    CanonicalPath key;
    CitationRecord left;
    CitationRecord right;
    Resolution resolution;

    bool operator==(const ConflictReport&) const = default;
};

/// Called once per conflict, in key order. Returning `pending` aborts the
/// merge with UnresolvedConflict.
using ConflictResolver = std::function<Resolution(const ConflictReport&)>;

inline ConflictResolver always_left() {
    return [](const ConflictReport&) { return Resolution::left(); };
}
inline ConflictResolver always_right() {
    return [](const ConflictReport&) { return Resolution::right(); };
}

/// Record selected by a non-pending resolution.
const CitationRecord& chosen_record(const ConflictReport& report);

} // namespace gitcite
