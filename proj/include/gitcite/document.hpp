#pragma once

#include "gitcite/citation_file.hpp"
#include "gitcite/record.hpp"

#include <string>
#include <string_view>

namespace gitcite {

// The on-disk citation file is a single JSON object mapping rendered paths
// to record objects. The canonical text has keys in byte order, record
// fields in `kRecordFields` order, two-space indentation and a trailing
// newline, so equal citation files always have equal bytes.

std::string serialize_document(const CitationFile& cf);
std::string serialize_record(const CitationRecord& record);

/// Strict parse. Syntax errors, duplicate keys, non-object entries, wrongly
/// typed fields and invalid records raise MalformedDocument; a document
/// without the "/" entry raises MissingRoot. Unknown record fields are kept
/// in `extras` (non-string values as their JSON text).
CitationFile parse_document(std::string_view text);
CitationRecord parse_record(std::string_view text);

/// True when `text` parses and is byte-identical to its canonical form.
/// False for anything else, including unparsable input.
bool is_canonical_document(std::string_view text);

} // namespace gitcite
