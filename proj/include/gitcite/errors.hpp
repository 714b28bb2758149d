#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gitcite {

enum class ErrorCode {
    InvalidPath,
    UnknownKind,
    PathNotInTree,
    InvalidRecord,
    RoleForbidden,
    NotLatestVersion,
    AlreadyCited,
    NotCited,
    RootUndeletable,
    MissingMetadata,
    UnknownVersion,
    UnknownBranch,
    BranchExists,
    EditConflict,
    InvariantBroken,
    SubtreeMissing,
    DestinationCollision,
    SourceVersionUnknown,
    NoCommonAncestor,
    UnresolvedConflict,
    FileMissing,
    MalformedDocument,
    MissingRoot,
    IoFailure,
    NetworkFailure,
    HttpStatus,
    NotARepository,
    AlreadyInitialized,
    GitFailure,
    TraceSyntax,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code is stable and is what
/// the CLI maps onto exit statuses; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Non-2xx answer from a remote citation file fetch.
class HttpStatusError : public Error {
public:
    HttpStatusError(int status, const std::string& url)
        : Error(ErrorCode::HttpStatus, std::to_string(status) + " fetching " + url), status_(status) {}

    int status() const noexcept { return status_; }

private:
    int status_;
};

} // namespace gitcite
