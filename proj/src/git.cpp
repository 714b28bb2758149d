#include "gitcite/git.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/errors.hpp"

#include <regex>
#include <set>
#include <string_view>

namespace gitcite {

namespace {

ProcessResult git(const std::filesystem::path& cwd, const std::vector<std::string>& args, std::string input = {}) {
    std::vector<std::string> argv{"git", "-C", cwd.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    ProcessOptions options;
    options.input = std::move(input);
    options.env = {{"GIT_TERMINAL_PROMPT", "0"}, {"LC_ALL", "C"}, {"TZ", "UTC"}};
    return run_process(argv, options);
}

std::string trim(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
        text.pop_back();
    }
    return text;
}

std::vector<std::string_view> split_nul(std::string_view text) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\0', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        fields.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return fields;
}

// "<meta>\t<path>" records as produced by ls-files -s and ls-tree.
void add_listing(TreeSnapshot& tree, std::string_view listing, bool digest_is_second_field) {
    for (auto record : split_nul(listing)) {
        auto tab = record.find('\t');
        std::string_view meta = tab == std::string_view::npos ? std::string_view{} : record.substr(0, tab);
        std::string_view path = tab == std::string_view::npos ? record : record.substr(tab + 1);
        std::string digest;
        if (!meta.empty()) {
            auto first = meta.find(' ');
            auto second = meta.find(' ', first + 1);
            digest = digest_is_second_field ? std::string(meta.substr(first + 1, second - first - 1))
                                            : std::string(meta.substr(second + 1, meta.find(' ', second + 1) - second - 1));
        }
        tree = tree.with_file(canonicalize(path, KindHint::file), std::move(digest));
    }
}

} // namespace

GitRepo GitRepo::discover(const std::filesystem::path& dir) {
    auto result = git(dir, {"rev-parse", "--show-toplevel"});
    if (!result.ok()) {
        throw Error(ErrorCode::NotARepository, dir.string() + " is not inside a Git work tree");
    }
    return GitRepo(trim(result.out));
}

ProcessResult GitRepo::try_run(const std::vector<std::string>& args, std::string input) const {
    return git(root_, args, std::move(input));
}

std::string GitRepo::run(const std::vector<std::string>& args) const {
    auto result = try_run(args);
    if (!result.ok()) {
        std::string command = "git";
        for (const auto& arg : args) {
            command += " " + arg;
        }
        throw Error(ErrorCode::GitFailure, command + ": " + trim(result.err));
    }
    return std::move(result.out);
}

std::optional<std::string> GitRepo::head_commit() const {
    auto result = try_run({"rev-parse", "-q", "--verify", "HEAD^{commit}"});
    if (!result.ok()) {
        return std::nullopt;
    }
    return trim(result.out);
}

std::optional<std::string> GitRepo::current_branch() const {
    auto result = try_run({"symbolic-ref", "-q", "--short", "HEAD"});
    if (!result.ok()) {
        return std::nullopt;
    }
    return trim(result.out);
}

std::string GitRepo::resolve_commit(const std::string& rev) const {
    auto result = try_run({"rev-parse", "-q", "--verify", rev + "^{commit}"});
    if (!result.ok()) {
        throw Error(ErrorCode::UnknownVersion, rev);
    }
    return trim(result.out);
}

bool GitRepo::merge_in_progress() const {
    return try_run({"rev-parse", "-q", "--verify", "MERGE_HEAD"}).ok();
}

TreeSnapshot GitRepo::index_tree(bool include_untracked) const {
    TreeSnapshot tree;
    add_listing(tree, run({"ls-files", "-s", "-z"}), true);
    if (include_untracked) {
        add_listing(tree, run({"ls-files", "-o", "--exclude-standard", "-z"}), true);
    }
    return tree;
}

TreeSnapshot GitRepo::tree_at(const std::string& rev) const {
    const auto commit = resolve_commit(rev);
    TreeSnapshot tree;
    add_listing(tree, run({"ls-tree", "-r", "-z", commit}), false);
    return tree;
}

std::optional<std::string> GitRepo::show_file(const std::string& rev, const std::string& path) const {
    auto result = try_run({"show", rev + ":" + path});
    if (!result.ok()) {
        return std::nullopt;
    }
    return std::move(result.out);
}

std::string GitRepo::blob(const std::string& object) const {
    return run({"cat-file", "blob", object});
}

std::vector<GitRepo::Change> GitRepo::staged_changes() const {
    std::vector<Change> changes;
    if (!head_commit()) {
        return changes;
    }
    const auto output = run({"diff", "--cached", "-M", "--name-status", "-z", "HEAD"});
    auto fields = split_nul(output);
    for (std::size_t i = 0; i < fields.size();) {
        Change change{fields[i].empty() ? '?' : fields[i][0], {}, {}};
        if (i + 1 >= fields.size()) {
            break;
        }
        change.path = std::string(fields[i + 1]);
        i += 2;
        if (change.status == 'R' || change.status == 'C') {
            if (i >= fields.size()) {
                break;
            }
            change.new_path = std::string(fields[i]);
            ++i;
        }
        changes.push_back(std::move(change));
    }
    return changes;
}

std::optional<RemoteIdentity> parse_remote_url(const std::string& url) {
    static const std::regex pattern(
        R"(^(?:(?:https?|ssh|git)://(?:[^@/]+@)?([^/:]+)(?::\d+)?/|[^@/]+@([^:/]+):)(.+?)/([^/]+?)(?:\.git)?/?$)");
    std::smatch match;
    if (!std::regex_match(url, match, pattern)) {
        return std::nullopt;
    }
    const std::string host = match[1].matched ? match[1].str() : match[2].str();
    std::string owner_path = match[3].str();
    const std::string repo = match[4].str();
    auto slash = owner_path.rfind('/');
    std::string owner = slash == std::string::npos ? owner_path : owner_path.substr(slash + 1);
    return RemoteIdentity{owner, repo, "https://" + host + "/" + owner_path + "/" + repo};
}

RepositoryMetadata GitRepo::metadata() const {
    RepositoryMetadata meta;
    auto remote = try_run({"config", "--get", "remote.origin.url"});
    if (remote.ok()) {
        const auto url = trim(remote.out);
        if (auto identity = parse_remote_url(url)) {
            meta.owner = identity->owner;
            meta.repo_name = identity->repo_name;
            meta.locator = identity->locator;
        } else {
            meta.locator = url;
        }
    }
    if (meta.owner.empty()) {
        auto user = try_run({"config", "--get", "user.name"});
        if (user.ok()) {
            meta.owner = trim(user.out);
        }
    }
    if (meta.repo_name.empty()) {
        meta.repo_name = root_.filename().string();
    }
    if (meta.locator.empty()) {
        meta.locator = "file://" + root_.string();
    }
    if (auto head = head_commit()) {
        meta.head_commit = *head;
        meta.head_date = trim(run({"log", "-1", "--date=format-local:%Y-%m-%dT%H:%M:%SZ", "--format=%cd", "HEAD"}));
        std::set<std::string> seen;
        const auto log = run({"log", "--reverse", "--format=%aN", "HEAD"});
        std::string_view names = log;
        std::size_t start = 0;
        while (start < names.size()) {
            auto end = names.find('\n', start);
            if (end == std::string_view::npos) {
                end = names.size();
            }
            std::string name(names.substr(start, end - start));
            if (!name.empty() && seen.insert(name).second) {
                meta.contributors.push_back(std::move(name));
            }
            start = end + 1;
        }
    }
    return meta;
}

} // namespace gitcite
