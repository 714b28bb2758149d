#include "gitcite/record.hpp"

#include "gitcite/errors.hpp"

#include <algorithm>

namespace gitcite {

bool is_record_field(std::string_view name) noexcept {
    return std::find(kRecordFields.begin(), kRecordFields.end(), name) != kRecordFields.end();
}

std::vector<std::string> record_problems(const CitationRecord& record) {
    std::vector<std::string> problems;
    if (record.owner.empty()) {
        problems.emplace_back("owner is empty");
    }
    if (record.repo_name.empty()) {
        problems.emplace_back("repo_name is empty");
    }
    if (record.locator.empty()) {
        problems.emplace_back("locator is empty");
    }
    for (const auto& [key, value] : record.extras) {
        if (is_record_field(key)) {
            problems.push_back("extras key \"" + key + "\" shadows a named field");
        }
    }
    return problems;
}

void check_record(const CitationRecord& record) {
    auto problems = record_problems(record);
    if (problems.empty()) {
        return;
    }
    std::string message;
    for (const auto& problem : problems) {
        if (!message.empty()) {
            message += "; ";
        }
        message += problem;
    }
    throw Error(ErrorCode::InvalidRecord, message);
}

} // namespace gitcite
