#include "gitcite/document.hpp"
#include "gitcite/errors.hpp"
#include "gitcite/gitadapter.hpp"

#include <httplib.h>

#include <regex>

namespace gitcite {

std::string fetch_remote_bytes(const std::string& url, std::chrono::seconds timeout) {
    static const std::regex pattern(R"(^(https?://[^/?#]+)(/[^#]*)?$)", std::regex::icase);
    std::smatch match;
    if (!std::regex_match(url, match, pattern)) {
        throw Error(ErrorCode::NetworkFailure, "unsupported URL " + url);
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (url.starts_with("https") || url.starts_with("HTTPS")) {
        throw Error(ErrorCode::NetworkFailure, "built without TLS support, cannot fetch " + url);
    }
#endif
    const auto target = match[2].matched ? match[2].str() : std::string("/");

    httplib::Client client(match[1].str());
    client.set_follow_location(true);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    auto response = client.Get(target);
    if (!response) {
        throw Error(ErrorCode::NetworkFailure, url + ": " + httplib::to_string(response.error()));
    }
    if (response->status < 200 || response->status >= 300) {
        throw HttpStatusError(response->status, url);
    }
    return response->body;
}

CitationFile fetch_remote_citation_file(const std::string& url, std::chrono::seconds timeout) {
    return parse_document(fetch_remote_bytes(url, timeout));
}

} // namespace gitcite
