#pragma once

#include "gitcite/errors.hpp"
#include "gitcite/record.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace gitcite::cli {

enum class OutputFormat { json, text, bibtex };

/// Throws std::invalid_argument for anything but json, text, bibtex.
OutputFormat parse_format(std::string_view name);

/// json: exactly `serialize_record`; text: one human-readable citation line
/// followed by any extra fields; bibtex: an `@software` entry.
std::string render(const CitationRecord& record, OutputFormat format);
std::string render_text(const CitationRecord& record);
std::string render_bibtex(const CitationRecord& record);

/// Two records side by side, as shown for a merge conflict.
std::string render_side_by_side(const CitationRecord& left, const CitationRecord& right,
                                std::string_view left_title, std::string_view right_title);

/// 0 success, 1 domain error, 2 usage error, 3 environment or I/O error.
int exit_code_for(ErrorCode code);

/// Runs one `gitcite` invocation. `args` excludes the program name.
/// Interactive prompts read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace gitcite::cli
