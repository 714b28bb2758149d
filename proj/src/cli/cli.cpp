#include "gitcite/cli.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/citeops.hpp"
#include "gitcite/document.hpp"
#include "gitcite/git.hpp"
#include "gitcite/gitadapter.hpp"
#include "gitcite/versionstore.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include <unistd.h>

namespace fs = std::filesystem;

namespace gitcite::cli {

namespace {

struct Context {
    fs::path cwd;
    RoleContext who;
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

std::string trim(std::string text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

// A user-supplied path as a root-anchored string. Absolute paths ("/src/")
// are taken relative to the work tree root, everything else relative to the
// current directory. A trailing slash is kept: it marks a directory.
std::string repo_relative(const Context& ctx, const GitRepo& repo, const std::string& raw) {
    if (raw.starts_with('/')) {
        return raw;
    }
    auto here = fs::weakly_canonical(ctx.cwd);
    auto prefix = here.lexically_relative(fs::weakly_canonical(repo.root()));
    if (prefix.empty() || prefix.native().starts_with("..")) {
        prefix = ".";
    }
    auto joined = (prefix / raw).lexically_normal().generic_string();
    if (joined.starts_with("..")) {
        throw Error(ErrorCode::InvalidPath, "\"" + raw + "\" lies outside the work tree");
    }
    if (joined == "." || joined == "./") {
        return "/";
    }
    if (raw.ends_with('/') && !joined.ends_with('/')) {
        joined += '/';
    }
    return "/" + joined;
}

// A path that must exist in `tree`.
CanonicalPath locate(const Context& ctx, const GitRepo& repo, const std::string& raw, const TreeSnapshot& tree) {
    auto rooted = repo_relative(ctx, repo, raw);
    CanonicalPath path;
    try {
        path = canonicalize(rooted, KindHint::unknown, tree);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UnknownKind) {
            throw Error(ErrorCode::PathNotInTree, raw);
        }
        throw;
    }
    if (!tree.contains(path)) {
        throw Error(ErrorCode::PathNotInTree, path.str());
    }
    return path;
}

// A path that must carry an explicit entry; it may already be gone from
// the tree (a stale entry can still be deleted or modified).
CanonicalPath locate_cited(const Context& ctx, const GitRepo& repo, const std::string& raw, const TreeSnapshot& tree,
                           const CitationFile& cf) {
    auto rooted = repo_relative(ctx, repo, raw);
    auto as_dir = canonicalize(rooted, KindHint::directory);
    if (as_dir.is_root()) {
        return as_dir;
    }
    if (auto kind = tree.kind_at(as_dir)) {
        auto path = CanonicalPath::from_segments(as_dir.segments(), *kind);
        if (!cf.contains(path)) {
            throw Error(ErrorCode::NotCited, path.str());
        }
        return path;
    }
    if (!rooted.ends_with('/')) {
        auto as_file = CanonicalPath::from_segments(as_dir.segments(), PathKind::file);
        if (cf.contains(as_file)) {
            return as_file;
        }
    }
    if (cf.contains(as_dir)) {
        return as_dir;
    }
    throw Error(ErrorCode::NotCited, rooted);
}

GitRepo open_repo(const Context& ctx) {
    return GitRepo::discover(ctx.cwd);
}

CitationFile load_for_edit(const Context& ctx, const GitRepo& repo) {
    auto loaded = load_citation_file_checked(repo.root());
    if (!loaded.canonical) {
        ctx.err << "warning: " << citation_file_name()
                << " is not in canonical form (edited by hand?); it will be rewritten by this command\n";
    }
    return std::move(loaded.cf);
}

// Only the checked-out head of a branch accepts citation edits.
void require_latest(const GitRepo& repo, const std::optional<std::string>& version) {
    auto head = repo.head_commit();
    auto branch = repo.current_branch();
    if (head && (!branch || branch->empty())) {
        throw Error(ErrorCode::NotLatestVersion, "HEAD is detached; check out a branch to edit citations");
    }
    if (version && !version->empty()) {
        auto wanted = repo.resolve_commit(*version);
        if (!head || wanted != *head) {
            throw Error(ErrorCode::NotLatestVersion, *version + " is not the head of " + branch.value_or("HEAD"));
        }
    }
}

struct RecordOverrides {
    std::vector<std::string> fields; // key=value
    std::optional<std::string> authors;

    bool empty() const { return fields.empty() && !authors; }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

CitationRecord apply_overrides(CitationRecord record, const RecordOverrides& overrides) {
    for (const auto& assignment : overrides.fields) {
        auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw CLI::ValidationError("--field", "expected key=value, got \"" + assignment + "\"");
        }
        auto key = assignment.substr(0, eq);
        auto value = assignment.substr(eq + 1);
        if (key == "owner") {
            record.owner = value;
        } else if (key == "repo_name") {
            record.repo_name = value;
        } else if (key == "locator") {
            record.locator = value;
        } else if (key == "version_id") {
            record.version_id = value;
        } else if (key == "date") {
            record.date = value;
        } else if (key == "author_list" || key == "authors") {
            record.author_list = split_list(value);
        } else if (key == "extras") {
            throw CLI::ValidationError("--field", "set extra fields by name, e.g. --field doi=10.1/x");
        } else if (value.empty()) {
            record.extras.erase(key);
        } else {
            record.extras[key] = value;
        }
    }
    if (overrides.authors) {
        record.author_list = split_list(*overrides.authors);
    }
    return record;
}

void print_entry(const Context& ctx, const CanonicalPath& key, const CitationRecord& record) {
    ctx.out << key.str() << "\n" << serialize_record(record);
}

void note_regenerable(const Context& ctx, const CitationRecord& before, const CitationRecord& after) {
    if (before.version_id != after.version_id || before.date != after.date) {
        ctx.err << "note: version_id and date are normally generated from the repository; "
                   "they were set by hand for this entry\n";
    }
}

// ---- commands --------------------------------------------------------------

struct InitOptions {
    std::string owner, repo_name, url;
};

int cmd_init(const Context& ctx, const InitOptions& options) {
    require_project_member(ctx.who);
    auto repo = open_repo(ctx);
    if (fs::exists(citation_file_path(repo.root()))) {
        throw Error(ErrorCode::AlreadyInitialized, citation_file_path(repo.root()).string());
    }
    auto meta = repo.metadata();
    if (!options.owner.empty()) meta.owner = options.owner;
    if (!options.repo_name.empty()) meta.repo_name = options.repo_name;
    if (!options.url.empty()) meta.locator = options.url;
    auto cf = CitationFile::with_root(default_root_citation(meta));
    store_citation_file(repo.root(), cf);
    ctx.out << "created " << citation_file_name() << " with a draft root citation:\n"
            << serialize_document(cf)
            << "edit it with: gitcite modify / --field key=value ... --authors a,b\n";
    return 0;
}

struct EditOptions {
    std::string path;
    RecordOverrides overrides;
    std::optional<std::string> version;
};

int cmd_add(const Context& ctx, const EditOptions& options) {
    require_project_member(ctx.who);
    auto repo = open_repo(ctx);
    require_latest(repo, options.version);
    auto cf = load_for_edit(ctx, repo);
    auto tree = repo.index_tree(true);
    auto path = locate(ctx, repo, options.path, tree);
    if (cf.contains(path)) {
        throw Error(ErrorCode::AlreadyCited, path.str() + " (use gitcite modify)");
    }
    const auto inherited = resolve(cf, tree, path);
    auto record = apply_overrides(inherited, options.overrides);
    if (options.overrides.empty()) {
        ctx.err << "note: no fields given; " << path.str() << " gets a copy of the citation it inherited\n";
    }
    note_regenerable(ctx, inherited, record);
    cf = apply_cite_edit(cf, tree, CiteEdit::add(path, record));
    store_citation_file(repo.root(), cf);
    print_entry(ctx, path, record);
    return 0;
}

int cmd_del(const Context& ctx, const EditOptions& options) {
    require_project_member(ctx.who);
    auto repo = open_repo(ctx);
    require_latest(repo, options.version);
    auto cf = load_for_edit(ctx, repo);
    auto tree = repo.index_tree(true);
    auto path = locate_cited(ctx, repo, options.path, tree, cf);
    cf = apply_cite_edit(cf, tree, CiteEdit::remove(path));
    store_citation_file(repo.root(), cf);
    ctx.out << "removed " << path.str() << "; it now inherits from " << resolving_key(cf, path).str() << "\n";
    return 0;
}

int cmd_modify(const Context& ctx, const EditOptions& options) {
    require_project_member(ctx.who);
    auto repo = open_repo(ctx);
    require_latest(repo, options.version);
    auto cf = load_for_edit(ctx, repo);
    auto tree = repo.index_tree(true);
    auto path = locate_cited(ctx, repo, options.path, tree, cf);
    const auto before = *cf.find(path);
    auto record = apply_overrides(before, options.overrides);
    note_regenerable(ctx, before, record);
    cf = apply_cite_edit(cf, tree, CiteEdit::modify(path, record));
    store_citation_file(repo.root(), cf);
    print_entry(ctx, path, record);
    return 0;
}

struct GenOptions {
    std::string path = ".";
    std::optional<std::string> version;
    std::optional<std::string> remote;
    std::string format = "text";
};

// Remote files come without a tree: the path's kind is taken from a
// trailing slash, or from the citation file when it cites the directory.
CanonicalPath remote_path(const std::string& raw, const CitationFile& cf) {
    std::string rooted = raw.starts_with('/') ? raw : "/" + raw;
    if (rooted.ends_with('/')) {
        return canonicalize(rooted, KindHint::directory);
    }
    auto as_dir = canonicalize(rooted, KindHint::directory);
    if (as_dir.is_root() || cf.contains(as_dir)) {
        return as_dir;
    }
    return canonicalize(rooted, KindHint::file);
}

int cmd_gen(const Context& ctx, const GenOptions& options) {
    const auto format = parse_format(options.format);
    if (options.remote) {
        auto cf = fetch_remote_citation_file(*options.remote);
        ctx.out << render(resolve_unchecked(cf, remote_path(options.path, cf)), format);
        return 0;
    }
    auto repo = open_repo(ctx);
    CitationFile cf;
    TreeSnapshot tree;
    if (options.version) {
        auto commit = repo.resolve_commit(*options.version);
        auto text = repo.show_file(commit, citation_file_name());
        if (!text) {
            throw Error(ErrorCode::FileMissing, citation_file_name() + " at " + *options.version);
        }
        cf = parse_document(*text);
        tree = repo.tree_at(commit);
    } else {
        cf = load_citation_file(repo.root());
        tree = repo.index_tree(true);
    }
    auto path = locate(ctx, repo, options.path, tree);
    ctx.out << render(resolve(cf, tree, path), format);
    return 0;
}

struct CopyOptions {
    std::string source;
    std::string subtree;
    std::string destination;
    std::string rev = "HEAD";
    std::optional<std::string> cite_url;
};

bool looks_like_url(const std::string& text) {
    static const std::regex scp_like(R"(^[^/@:]+@[^/:]+:.*$)");
    return text.find("://") != std::string::npos || std::regex_match(text, scp_like);
}

// Removes a temporary clone on scope exit.
struct TempDir {
    fs::path path;
    ~TempDir() {
        if (!path.empty()) {
            std::error_code ignored;
            fs::remove_all(path, ignored);
        }
    }
};

void write_file(const fs::path& target, const std::string& bytes) {
    fs::create_directories(target.parent_path());
    std::ofstream stream(target, std::ios::binary | std::ios::trunc);
    stream.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!stream) {
        throw Error(ErrorCode::IoFailure, "cannot write " + target.string());
    }
}

int cmd_copy(const Context& ctx, const CopyOptions& options) {
    require_project_member(ctx.who);
    auto repo = open_repo(ctx);
    require_latest(repo, std::nullopt);
    auto dst_cf = load_for_edit(ctx, repo);
    auto dst_tree = repo.index_tree(true);

    TempDir clone;
    fs::path source_dir;
    if (looks_like_url(options.source)) {
        clone.path = fs::temp_directory_path() / ("gitcite-copy-" + std::to_string(::getpid()));
        fs::remove_all(clone.path);
        ProcessOptions quiet;
        quiet.env = {{"GIT_TERMINAL_PROMPT", "0"}};
        auto cloned = run_process({"git", "clone", "--quiet", "--no-checkout", options.source, clone.path.string()},
                                  quiet);
        if (!cloned.ok()) {
            throw Error(ErrorCode::NetworkFailure, "git clone " + options.source + ": " + trim(cloned.err));
        }
        source_dir = clone.path;
    } else {
        source_dir = fs::path(options.source).is_absolute() ? fs::path(options.source) : ctx.cwd / options.source;
    }
    auto source = GitRepo::discover(source_dir);
    const auto rev = source.resolve_commit(options.rev);
    const auto src_tree = source.tree_at(rev);

    auto src_subtree = canonicalize(options.subtree.starts_with('/') ? options.subtree : "/" + options.subtree,
                                    KindHint::directory);
    if (!src_tree.contains(src_subtree)) {
        throw Error(ErrorCode::SubtreeMissing, options.subtree + " at " + options.rev + " in " + options.source);
    }
    CitationFile src_cf;
    if (options.cite_url) {
        src_cf = fetch_remote_citation_file(*options.cite_url);
    } else if (auto text = source.show_file(rev, citation_file_name())) {
        src_cf = parse_document(*text);
    } else {
        ctx.err << "warning: the source has no " << citation_file_name()
                << "; its files are credited to a root citation built from its metadata\n";
        src_cf = CitationFile::with_root(default_root_citation(source.metadata()));
    }

    auto dst_path = canonicalize(repo_relative(ctx, repo, options.destination), KindHint::directory);
    if (dst_path.is_root() || dst_tree.kind_at(dst_path)) {
        throw Error(ErrorCode::DestinationCollision, dst_path.str() + " already exists");
    }
    if (!dst_tree.contains(dst_path.parent())) {
        throw Error(ErrorCode::PathNotInTree, dst_path.parent().str() + " (create the parent directory first)");
    }

    auto migrated = migrated_citations(src_cf, src_tree, src_subtree, dst_path);
    std::size_t copied = 0;
    for (const auto& node : src_tree.nodes()) {
        if (!node.path.is_file() || !src_subtree.contains(node.path)) {
            continue;
        }
        if (src_subtree.is_root() && node.path.str() == "/" + citation_file_name()) {
            continue;
        }
        auto target = node.path.rebased(src_subtree, dst_path);
        write_file(repo.root() / target->location().substr(1), source.blob(node.digest));
        ++copied;
    }
    for (const auto& [key, record] : migrated) {
        dst_cf = dst_cf.with(key, record);
    }
    store_citation_file(repo.root(), dst_cf);
    repo.run({"add", "--", dst_path.location().substr(1), citation_file_name()});

    ctx.out << "copied " << copied << " file(s) from " << options.source << ":" << src_subtree.str() << " to "
            << dst_path.str() << "\n";
    for (const auto& [key, record] : migrated) {
        ctx.out << "  + " << key.str() << "  " << record.owner << "/" << record.repo_name << "\n";
    }
    ctx.out << "changes are staged; commit them with git commit\n";
    return 0;
}

struct MergeOptions {
    std::string branch;
    bool ours = false;
    bool theirs = false;
    bool interactive = false;
    std::optional<std::string> answers;
    bool no_commit = false;
};

// Asks about each conflict on `out` and reads answers line by line from `in`.
// End of input or "a" leaves the conflict pending, which aborts the merge.
ConflictResolver prompt_resolver(std::istream& in, std::ostream& out, const std::string& ours, const std::string& theirs) {
    return [&in, &out, ours, theirs](const ConflictReport& report) {
        out << "\nconflicting citations for " << report.key.str() << "\n"
            << render_side_by_side(report.left, report.right, "ours (" + ours + ")", "theirs (" + theirs + ")");
        std::string line;
        while (true) {
            out << "keep [l]eft/ours, [r]ight/theirs, [e]dit, or [a]bort? " << std::flush;
            if (!std::getline(in, line)) {
                out << "\n";
                return Resolution::pending();
            }
            auto answer = trim(line);
            if (answer == "l" || answer == "left" || answer == "ours") {
                return Resolution::left();
            }
            if (answer == "r" || answer == "right" || answer == "theirs") {
                return Resolution::right();
            }
            if (answer == "a" || answer == "abort") {
                return Resolution::pending();
            }
            if (answer == "e" || answer == "edit") {
                out << "record as one line of JSON: " << std::flush;
                if (!std::getline(in, line)) {
                    out << "\n";
                    return Resolution::pending();
                }
                try {
                    auto record = parse_record(line);
                    check_record(record);
                    return Resolution::replace(std::move(record));
                } catch (const Error& e) {
                    out << "not a valid record: " << e.what() << "\n";
                    continue;
                }
            }
            out << "unrecognized answer \"" << answer << "\"\n";
        }
    };
}

// Marks the citation file so that Git never merges it line by line: the
// "gitcite" driver, defined per invocation as `true`, keeps our side and the
// merged file is then written from merge_citation_files.
void protect_citation_file(const GitRepo& repo) {
    fs::path attributes = trim(repo.run({"rev-parse", "--git-path", "info/attributes"}));
    if (attributes.is_relative()) {
        attributes = repo.root() / attributes;
    }
    const auto line = "/" + citation_file_name() + " merge=gitcite";
    std::ifstream existing(attributes);
    for (std::string current; std::getline(existing, current);) {
        if (current == line) {
            return;
        }
    }
    fs::create_directories(attributes.parent_path());
    std::ofstream append(attributes, std::ios::app);
    append << line << "\n";
    if (!append) {
        throw Error(ErrorCode::IoFailure, "cannot write " + attributes.string());
    }
}

int cmd_merge(const Context& ctx, const MergeOptions& options) {
    require_project_member(ctx.who);
    auto repo = open_repo(ctx);
    auto branch = repo.current_branch();
    if (!branch || branch->empty()) {
        throw Error(ErrorCode::NotLatestVersion, "HEAD is detached; check out the branch to merge into");
    }
    const auto name = citation_file_name();

    if (!repo.merge_in_progress()) {
        protect_citation_file(repo);
        const auto before = repo.head_commit();
        auto started = repo.try_run({"-c", "merge.gitcite.name=gitcite citation file", "-c", "merge.gitcite.driver=true",
                                     "merge", "--no-commit", "--no-edit", options.branch});
        if (!repo.merge_in_progress()) {
            if (!started.ok()) {
                throw Error(ErrorCode::GitFailure, "git merge " + options.branch + ": " + trim(started.err + started.out));
            }
            if (repo.head_commit() == before) {
                ctx.out << "already up to date with " << options.branch << "\n";
            } else {
                ctx.out << "fast-forwarded " << *branch << " to " << options.branch << "\n";
            }
            return 0;
        }
    }

    auto base_rev = repo.try_run({"merge-base", "HEAD", "MERGE_HEAD"});
    auto left_text = repo.show_file("HEAD", name);
    auto right_text = repo.show_file("MERGE_HEAD", name);
    std::optional<std::string> base_text;
    if (base_rev.ok()) {
        base_text = repo.show_file(trim(base_rev.out), name);
    }
    if (left_text || right_text) {
        auto left = left_text ? parse_document(*left_text) : parse_document(*right_text);
        auto right = right_text ? parse_document(*right_text) : left;
        auto base = base_text ? parse_document(*base_text) : CitationFile();

        std::ifstream answers_file;
        if (options.answers) {
            answers_file.open(*options.answers);
            if (!answers_file) {
                throw Error(ErrorCode::IoFailure, "cannot read " + *options.answers);
            }
        }
        ConflictResolver resolver;
        if (options.ours) {
            resolver = always_left();
        } else if (options.theirs) {
            resolver = always_right();
        } else {
            resolver = prompt_resolver(options.answers ? answers_file : ctx.in, ctx.out, *branch, options.branch);
        }

        FileMergeOutcome outcome;
        try {
            outcome = merge_citation_files(base, left, right, repo.index_tree(false), resolver);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::UnresolvedConflict) {
                repo.try_run({"merge", "--abort"});
                throw Error(ErrorCode::UnresolvedConflict, std::string(e.what()) + "; merge aborted");
            }
            throw;
        }
        store_citation_file(repo.root(), outcome.cf);
        repo.run({"add", "--", name});
        for (const auto& report : outcome.conflicts) {
            ctx.out << "conflict at " << report.key.str() << ": " << to_string(report.resolution.choice) << "\n";
        }
        for (const auto& key : outcome.pruned) {
            ctx.out << "pruned " << key.str() << " (not in the merged tree)\n";
        }
    }

    auto unmerged = trim(repo.run({"diff", "--name-only", "--diff-filter=U"}));
    if (!unmerged.empty()) {
        ctx.out << "citation file merged; other files still conflict:\n" << unmerged
                << "\nresolve them, then run git commit\n";
        return 1;
    }
    if (options.no_commit) {
        ctx.out << "citation file merged and staged; run git commit to conclude the merge\n";
        return 0;
    }
    repo.run({"commit", "--quiet", "--no-edit"});
    ctx.out << "merged " << options.branch << " into " << *branch << "\n";
    return 0;
}

int cmd_validate(const Context& ctx) {
    auto repo = open_repo(ctx);
    auto loaded = load_citation_file_checked(repo.root());
    if (!loaded.canonical) {
        ctx.err << "warning: " << citation_file_name() << " is not in canonical form (edited by hand?)\n";
    }
    auto problems = validate(loaded.cf, repo.index_tree(true));
    for (const auto& problem : problems) {
        ctx.out << to_string(problem.rule) << " " << problem.key.str() << ": " << problem.message() << "\n";
    }
    if (problems.empty()) {
        ctx.out << "ok: " << loaded.cf.size() << " entr" << (loaded.cf.size() == 1 ? "y" : "ies") << "\n";
        return 0;
    }
    return 1;
}

int cmd_sync(const Context& ctx) {
    require_project_member(ctx.who);
    auto repo = open_repo(ctx);
    auto cf = load_for_edit(ctx, repo);
    auto changes = detect_changes(repo, cf);
    for (const auto& warning : changes.warnings) {
        ctx.err << "warning: " << warning << "\n";
    }
    auto updated = sync_on_commit(repo.root(), changes.renames, changes.deleted);
    repo.run({"add", "--", citation_file_name()});
    for (const auto& rename : changes.renames) {
        ctx.out << "renamed " << rename.from.str() << " -> " << rename.to.str() << "\n";
    }
    for (const auto& key : changes.deleted) {
        ctx.out << "dropped " << key.str() << "\n";
    }
    if (updated == cf && changes.renames.empty() && changes.deleted.empty()) {
        ctx.out << "citation file up to date\n";
    }
    return 0;
}

} // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidPath:
    case ErrorCode::UnknownKind:
    case ErrorCode::TraceSyntax:
        return 2;
    case ErrorCode::FileMissing:
    case ErrorCode::MalformedDocument:
    case ErrorCode::MissingRoot:
    case ErrorCode::IoFailure:
    case ErrorCode::NetworkFailure:
    case ErrorCode::HttpStatus:
    case ErrorCode::NotARepository:
    case ErrorCode::GitFailure:
        return 3;
    default:
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Path-level software citations kept in a Git repository", "gitcite"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string directory;
    std::string role = "member";
    app.add_option("-C", directory, "Run as if started in this directory");
    app.add_option("--role", role, "Acting role; citers may only read")
        ->check(CLI::IsMember({"member", "citer"}));

    std::function<int(const Context&)> action;

    InitOptions init;
    auto* init_cmd = app.add_subcommand("init", "Create the citation file with a draft root citation");
    init_cmd->add_option("--owner", init.owner, "Owner (default: from the origin remote or user.name)");
    init_cmd->add_option("--repo-name", init.repo_name, "Repository name (default: from the remote or directory)");
    init_cmd->add_option("--url", init.url, "Locator (default: from the origin remote)");
    init_cmd->callback([&] { action = [&](const Context& ctx) { return cmd_init(ctx, init); }; });

    EditOptions edit;
    auto add_edit_command = [&](const std::string& name, const std::string& help, bool with_fields,
                                int (*command)(const Context&, const EditOptions&)) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("path", edit.path, "File or directory (trailing '/' for a directory)")->required();
        if (with_fields) {
            sub->add_option("--field", edit.overrides.fields, "key=value; named fields or extra fields")
                ->allow_extra_args(false);
            sub->add_option("--authors", edit.overrides.authors, "Comma-separated author list");
        }
        sub->add_option("--version", edit.version, "Must name the current head (only the latest version is editable)");
        sub->callback([&, command] { action = [&, command](const Context& ctx) { return command(ctx, edit); }; });
    };
    add_edit_command("add", "Cite a file or directory explicitly", true, cmd_add);
    add_edit_command("del", "Remove an explicit citation", false, cmd_del);
    add_edit_command("modify", "Change an explicit citation", true, cmd_modify);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Print the citation of a file or directory");
    gen_cmd->add_option("path", gen.path, "File or directory (default: the current directory)");
    auto* gen_version = gen_cmd->add_option("--version", gen.version, "Any commit, branch or tag");
    gen_cmd->add_option("--remote", gen.remote, "URL of a raw citation file to read instead")->excludes(gen_version);
    gen_cmd->add_option("--format", gen.format, "Output format")->check(CLI::IsMember({"text", "json", "bibtex"}));
    gen_cmd->callback([&] { action = [&](const Context& ctx) { return cmd_gen(ctx, gen); }; });

    CopyOptions copy;
    auto* copy_cmd = app.add_subcommand("copy", "Copy a directory from another repository with its citations");
    copy_cmd->add_option("source", copy.source, "Path or URL of the source repository")->required();
    copy_cmd->add_option("subtree", copy.subtree, "Directory in the source, relative to its root")->required();
    copy_cmd->add_option("destination", copy.destination, "New directory here")->required();
    copy_cmd->add_option("--rev", copy.rev, "Source revision (default HEAD)");
    copy_cmd->add_option("--cite-url", copy.cite_url, "Fetch the source citation file from this URL");
    copy_cmd->callback([&] { action = [&](const Context& ctx) { return cmd_copy(ctx, copy); }; });

    MergeOptions merge;
    auto* merge_cmd = app.add_subcommand("merge", "Merge a branch, merging citation files entry by entry");
    merge_cmd->add_option("branch", merge.branch, "Branch to merge into the current one")->required();
    auto* ours = merge_cmd->add_flag("--ours", merge.ours, "Keep our record for every conflicting entry");
    auto* theirs = merge_cmd->add_flag("--theirs", merge.theirs, "Take their record for every conflicting entry");
    auto* interactive = merge_cmd->add_flag("--interactive", merge.interactive, "Ask for each conflict (default)");
    merge_cmd->add_option("--answers", merge.answers, "Read interactive answers from this file");
    merge_cmd->add_flag("--no-commit", merge.no_commit, "Stage the merge result without committing");
    ours->excludes(theirs)->excludes(interactive);
    theirs->excludes(interactive);
    merge_cmd->callback([&] { action = [&](const Context& ctx) { return cmd_merge(ctx, merge); }; });

    auto* validate_cmd = app.add_subcommand("validate", "Check the citation file against the work tree");
    validate_cmd->callback([&] { action = [](const Context& ctx) { return cmd_validate(ctx); }; });

    auto* sync_cmd = app.add_subcommand("sync", "Re-key citations for staged renames and deletions");
    sync_cmd->callback([&] { action = [](const Context& ctx) { return cmd_sync(ctx); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    Context ctx{directory.empty() ? fs::current_path() : fs::absolute(directory),
                {role == "citer" ? Role::citer : Role::project_member, ""}, in, out, err};
    try {
        return action(ctx);
    } catch (const Error& e) {
        err << "gitcite: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const CLI::ValidationError& e) {
        err << "gitcite: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "gitcite: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        err << "gitcite: IoFailure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace gitcite::cli
