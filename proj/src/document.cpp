#include "gitcite/document.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/errors.hpp"

#include <json.hpp>

#include <set>
#include <vector>

namespace gitcite {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void malformed(const std::string& message) {
    throw Error(ErrorCode::MalformedDocument, message);
}

Json to_json(const CitationRecord& record) {
    Json object = Json::object();
    object["owner"] = record.owner;
    object["repo_name"] = record.repo_name;
    object["locator"] = record.locator;
    object["version_id"] = record.version_id;
    object["date"] = record.date;
    object["author_list"] = record.author_list;
    Json extras = Json::object();
    for (const auto& [key, value] : record.extras) {
        extras[key] = value;
    }
    object["extras"] = std::move(extras);
    return object;
}

std::string dump(const Json& json) {
    try {
        return json.dump(2) + "\n";
    } catch (const Json::type_error& e) {
        throw Error(ErrorCode::InvalidRecord, std::string("text is not valid UTF-8: ") + e.what());
    }
}

// Parses with duplicate-key detection at every nesting level; the stock
// parser would silently keep one of the values.
Json parse_strict(std::string_view text) {
    std::vector<std::set<std::string>> open_objects;
    auto callback = [&](int, Json::parse_event_t event, Json& parsed) {
        switch (event) {
        case Json::parse_event_t::object_start:
            open_objects.emplace_back();
            break;
        case Json::parse_event_t::object_end:
            open_objects.pop_back();
            break;
        case Json::parse_event_t::key: {
            auto key = parsed.get<std::string>();
            if (!open_objects.back().insert(key).second) {
                malformed("duplicate key \"" + key + "\"");
            }
            break;
        }
        default:
            break;
        }
        return true;
    };
    try {
        return Json::parse(text.begin(), text.end(), callback);
    } catch (const Json::parse_error& e) {
        malformed(e.what());
    }
}

std::string field_string(const Json& value, std::string_view where, std::string_view field) {
    if (!value.is_string()) {
        malformed(std::string(where) + ": field \"" + std::string(field) + "\" must be a string");
    }
    return value.get<std::string>();
}

CitationRecord record_from_json(const Json& object, std::string_view where) {
    if (!object.is_object()) {
        malformed(std::string(where) + ": citation must be an object");
    }
    CitationRecord record;
    std::vector<std::pair<std::string, std::string>> unknown;
    for (const auto& [field, value] : object.items()) {
        if (field == "owner") {
            record.owner = field_string(value, where, field);
        } else if (field == "repo_name") {
            record.repo_name = field_string(value, where, field);
        } else if (field == "locator") {
            record.locator = field_string(value, where, field);
        } else if (field == "version_id") {
            record.version_id = field_string(value, where, field);
        } else if (field == "date") {
            record.date = field_string(value, where, field);
        } else if (field == "author_list") {
            if (!value.is_array()) {
                malformed(std::string(where) + ": author_list must be an array");
            }
            for (const auto& author : value) {
                record.author_list.push_back(field_string(author, where, "author_list[]"));
            }
        } else if (field == "extras") {
            if (!value.is_object()) {
                malformed(std::string(where) + ": extras must be an object");
            }
            for (const auto& [key, extra] : value.items()) {
                record.extras[key] = field_string(extra, where, "extras." + key);
            }
        } else {
            unknown.emplace_back(field, value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    for (auto& [field, value] : unknown) {
        if (!record.extras.emplace(field, std::move(value)).second) {
            malformed(std::string(where) + ": \"" + field + "\" given both as a field and in extras");
        }
    }
    if (auto problems = record_problems(record); !problems.empty()) {
        malformed(std::string(where) + ": " + problems.front());
    }
    return record;
}

} // namespace

std::string serialize_record(const CitationRecord& record) {
    return dump(to_json(record));
}

std::string serialize_document(const CitationFile& cf) {
    Json document = Json::object();
    for (const auto& [key, record] : cf.entries()) {
        document[key.str()] = to_json(record);
    }
    return dump(document);
}

CitationRecord parse_record(std::string_view text) {
    return record_from_json(parse_strict(text), "record");
}

CitationFile parse_document(std::string_view text) {
    const auto document = parse_strict(text);
    if (!document.is_object()) {
        malformed("top level must be an object of path -> citation entries");
    }
    CitationFile::Entries entries;
    for (const auto& [raw_key, value] : document.items()) {
        const auto where = "entry \"" + raw_key + "\"";
        CanonicalPath key;
        try {
            key = canonicalize(raw_key, raw_key.ends_with('/') ? KindHint::directory : KindHint::file);
        } catch (const Error& e) {
            malformed(where + ": " + e.what());
        }
        if (!entries.emplace(key, record_from_json(value, where)).second) {
            malformed(where + ": duplicates the key " + key.str());
        }
    }
    CitationFile cf(std::move(entries));
    if (!cf.has_root()) {
        throw Error(ErrorCode::MissingRoot, "citation file has no \"/\" entry");
    }
    return cf;
}

bool is_canonical_document(std::string_view text) {
    try {
        return serialize_document(parse_document(text)) == text;
    } catch (const Error&) {
        return false;
    }
}

} // namespace gitcite
