#include "gitcite/errors.hpp"

namespace gitcite {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::PathNotInTree: return "PathNotInTree";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::RoleForbidden: return "RoleForbidden";
    case ErrorCode::NotLatestVersion: return "NotLatestVersion";
    case ErrorCode::AlreadyCited: return "AlreadyCited";
    case ErrorCode::NotCited: return "NotCited";
    case ErrorCode::RootUndeletable: return "RootUndeletable";
    case ErrorCode::MissingMetadata: return "MissingMetadata";
    case ErrorCode::UnknownVersion: return "UnknownVersion";
    case ErrorCode::UnknownBranch: return "UnknownBranch";
    case ErrorCode::BranchExists: return "BranchExists";
    case ErrorCode::EditConflict: return "EditConflict";
    case ErrorCode::InvariantBroken: return "InvariantBroken";
    case ErrorCode::SubtreeMissing: return "SubtreeMissing";
    case ErrorCode::DestinationCollision: return "DestinationCollision";
    case ErrorCode::SourceVersionUnknown: return "SourceVersionUnknown";
    case ErrorCode::NoCommonAncestor: return "NoCommonAncestor";
    case ErrorCode::UnresolvedConflict: return "UnresolvedConflict";
    case ErrorCode::FileMissing: return "FileMissing";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::MissingRoot: return "MissingRoot";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::NetworkFailure: return "NetworkFailure";
    case ErrorCode::HttpStatus: return "HttpStatus";
    case ErrorCode::NotARepository: return "NotARepository";
    case ErrorCode::AlreadyInitialized: return "AlreadyInitialized";
    case ErrorCode::GitFailure: return "GitFailure";
    case ErrorCode::TraceSyntax: return "TraceSyntax";
    }
    return "Unknown";
}

} // namespace gitcite
