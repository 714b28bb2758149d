#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gitcite {

struct ProcessResult {
    int status = -1; // exit status, or 128 + signal
    std::string out;
    std::string err;

    bool ok() const noexcept { return status == 0; }
};

struct ProcessOptions {
    std::filesystem::path cwd;
    std::string input;                                       // fed to stdin
    std::vector<std::pair<std::string, std::string>> env;    // added to the inherited environment
};

/// Runs `argv[0]` (looked up on PATH) without a shell and collects its
/// output. Throws IoFailure only when the process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv, const ProcessOptions& options = {});

} // namespace gitcite
