#include "gitcite/cli.hpp"

#include "gitcite/document.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace gitcite::cli {

namespace {

std::string join(const std::vector<std::string>& items, std::string_view separator) {
    std::string joined;
    for (const auto& item : items) {
        if (!joined.empty()) {
            joined += separator;
        }
        joined += item;
    }
    return joined;
}

// The year of an ISO-8601 date, or nothing when the date does not start with one.
std::string year_of(const std::string& date) {
    if (date.size() >= 4 && std::all_of(date.begin(), date.begin() + 4, [](unsigned char c) { return std::isdigit(c); })) {
        return date.substr(0, 4);
    }
    return {};
}

// Owner first, then the authors, each name once.
std::vector<std::string> credited_names(const CitationRecord& record) {
    std::vector<std::string> names;
    auto push = [&](const std::string& name) {
        if (!name.empty() && std::find(names.begin(), names.end(), name) == names.end()) {
            names.push_back(name);
        }
    };
    push(record.owner);
    for (const auto& author : record.author_list) {
        push(author);
    }
    return names;
}

std::string bibtex_escape(std::string_view text) {
    std::string escaped;
    for (char c : text) {
        switch (c) {
        case '{': case '}': case '&': case '%': case '$': case '#': case '_':
            escaped += '\\';
            escaped += c;
            break;
        case '\\':
            escaped += "\\textbackslash{}";
            break;
        case '~':
            escaped += "\\textasciitilde{}";
            break;
        case '^':
            escaped += "\\textasciicircum{}";
            break;
        default:
            escaped += c;
        }
    }
    return escaped;
}

std::string bibtex_key(const CitationRecord& record) {
    std::string key;
    for (unsigned char c : record.repo_name) {
        if (std::isalnum(c)) {
            key += static_cast<char>(c);
        } else if (!key.empty() && key.back() != '_') {
            key += '_';
        }
    }
    while (!key.empty() && key.back() == '_') {
        key.pop_back();
    }
    if (key.empty()) {
        key = "software";
    }
    auto year = year_of(record.date);
    return year.empty() ? key : key + "_" + year;
}

std::vector<std::string> record_lines(const CitationRecord& record) {
    std::vector<std::string> lines{
        "owner:      " + record.owner,
        "repo_name:  " + record.repo_name,
        "locator:    " + record.locator,
        "version_id: " + record.version_id,
        "date:       " + record.date,
        "authors:    " + join(record.author_list, ", "),
    };
    for (const auto& [key, value] : record.extras) {
        lines.push_back(key + ": " + value);
    }
    return lines;
}

} // namespace

OutputFormat parse_format(std::string_view name) {
    if (name == "json") return OutputFormat::json;
    if (name == "text") return OutputFormat::text;
    if (name == "bibtex") return OutputFormat::bibtex;
    throw std::invalid_argument("unknown output format \"" + std::string(name) + "\"");
}

std::string render_text(const CitationRecord& record) {
    // Authors (Year). Name (version V) [Software]. Owner. Locator
    std::ostringstream out;
    out << join(credited_names(record), ", ");
    auto year = year_of(record.date);
    if (!year.empty()) {
        out << " (" << year << ")";
    }
    out << ". " << record.repo_name;
    if (!record.version_id.empty()) {
        out << " (version " << record.version_id << ")";
    }
    out << " [Software]. " << record.owner << ". " << record.locator << "\n";
    for (const auto& [key, value] : record.extras) {
        out << "  " << key << ": " << value << "\n";
    }
    return out.str();
}

std::string render_bibtex(const CitationRecord& record) {
    std::ostringstream out;
    out << "@software{" << bibtex_key(record) << ",\n";
    out << "  author = {" << bibtex_escape(join(credited_names(record), " and ")) << "},\n";
    out << "  title = {" << bibtex_escape(record.repo_name) << "},\n";
    out << "  url = {" << record.locator << "},\n";
    if (!record.version_id.empty()) {
        out << "  version = {" << bibtex_escape(record.version_id) << "},\n";
    }
    if (auto year = year_of(record.date); !year.empty()) {
        out << "  year = {" << year << "},\n";
    }
    if (auto doi = record.extras.find("doi"); doi != record.extras.end()) {
        out << "  doi = {" << bibtex_escape(doi->second) << "},\n";
    }
    out << "}\n";
    return out.str();
}

std::string render(const CitationRecord& record, OutputFormat format) {
    switch (format) {
    case OutputFormat::json:
        return serialize_record(record);
    case OutputFormat::text:
        return render_text(record);
    case OutputFormat::bibtex:
        return render_bibtex(record);
    }
    return {};
}

std::string render_side_by_side(const CitationRecord& left, const CitationRecord& right,
                                std::string_view left_title, std::string_view right_title) {
    auto left_lines = record_lines(left);
    auto right_lines = record_lines(right);
    std::size_t width = left_title.size();
    for (const auto& line : left_lines) {
        width = std::max(width, line.size());
    }
    auto row = [&](std::string_view a, std::string_view b, char marker) {
        std::string line(a);
        line.resize(width, ' ');
        return line + " " + marker + " " + std::string(b) + "\n";
    };
    std::string text = row(left_title, right_title, '|');
    text += std::string(width, '-') + "-+-" + std::string(std::max<std::size_t>(right_title.size(), 10), '-') + "\n";
    auto rows = std::max(left_lines.size(), right_lines.size());
    for (std::size_t i = 0; i < rows; ++i) {
        std::string a = i < left_lines.size() ? left_lines[i] : "";
        std::string b = i < right_lines.size() ? right_lines[i] : "";
        text += row(a, b, a == b ? '|' : '*');
    }
    return text;
}

} // namespace gitcite::cli
