#include "git_sandbox.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/document.hpp"
#include "gitcite/errors.hpp"
#include "gitcite/git.hpp"
#include "gitcite/gitadapter.hpp"
#include "gitcite/versionstore.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace gitcite;
using namespace gitcite::testing;

namespace {

CanonicalPath file(std::string_view raw) { return canonicalize(raw, KindHint::file); }
CanonicalPath dir(std::string_view raw) { return canonicalize(raw, KindHint::directory); }

CitationRecord person(const std::string& name) {
    return {name, name + "-repo", "https://example.org/" + name, "", "", {name}, {}};
}

ErrorCode code_of(auto&& action) {
    try {
        action();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvariantBroken;
}

class GitAdapter : public ::testing::Test {
protected:
    void SetUp() override {
        init_repo(root());
        write_file(root() / "src/a.c", "a\n");
        write_file(root() / "src/lib/b.c", "b\n");
        write_file(root() / "README", "r\n");
        cf = CitationFile::with_root(person("Bob"))
                 .with(dir("/src/"), person("Carlos"))
                 .with(file("/src/lib/b.c"), person("Dana"));
        store_citation_file(root(), cf);
        git(root(), {"add", "-A"});
        git(root(), {"commit", "-q", "-m", "initial"});
    }

    const fs::path& root() const { return work.path(); }

    TempDir work;
    CitationFile cf;
};

class EnvGuard {
public:
    EnvGuard(const char* name, const char* value) : name_(name) {
        if (const char* old = std::getenv(name)) old_ = old;
        ::setenv(name, value, 1);
    }
    ~EnvGuard() {
        if (old_) {
            ::setenv(name_, old_->c_str(), 1);
        } else {
            ::unsetenv(name_);
        }
    }

private:
    const char* name_;
    std::optional<std::string> old_;
};

} // namespace

TEST_F(GitAdapter, StoreWritesCanonicalBytesAndLoadReadsThemBack) {
    EXPECT_EQ(read_file(root() / "citation.cite"), serialize_document(cf));
    EXPECT_EQ(load_citation_file(root()), cf);
    EXPECT_TRUE(load_citation_file_checked(root()).canonical);
    write_file(root() / "citation.cite", R"({"/": {"owner": "o", "repo_name": "r", "locator": "l"}})");
    EXPECT_FALSE(load_citation_file_checked(root()).canonical);
}

TEST_F(GitAdapter, LoadErrors) {
    TempDir empty;
    EXPECT_EQ(code_of([&] { load_citation_file(empty.path()); }), ErrorCode::FileMissing);
    write_file(empty.path() / "citation.cite", "{");
    EXPECT_EQ(code_of([&] { load_citation_file(empty.path()); }), ErrorCode::MalformedDocument);
    write_file(empty.path() / "citation.cite", R"({"/x": {"owner": "o", "repo_name": "r", "locator": "l"}})");
    EXPECT_EQ(code_of([&] { load_citation_file(empty.path()); }), ErrorCode::MissingRoot);
    EXPECT_EQ(code_of([&] { store_citation_file(empty.path() / "no" / "such", cf); }), ErrorCode::IoFailure);
}

TEST_F(GitAdapter, FileNameComesFromTheEnvironment) {
    EXPECT_EQ(citation_file_name(), "citation.cite");
    EnvGuard guard("GITCITE_FILE", "CITES.json");
    EXPECT_EQ(citation_file_name(), "CITES.json");
    store_citation_file(root(), cf);
    EXPECT_TRUE(fs::exists(root() / "CITES.json"));
    EXPECT_EQ(load_citation_file(root()), cf);
}

TEST_F(GitAdapter, EmptyOverrideFallsBackToTheDefault) {
    EnvGuard guard("GITCITE_FILE", "");
    EXPECT_EQ(citation_file_name(), "citation.cite");
}

TEST_F(GitAdapter, RenamesAndDeletionsRewriteKeys) {
    auto out = apply_renames_and_deletions(cf, {{dir("/src/"), dir("/code/")}, {file("/src/lib/b.c"), file("/b.c")}},
                                           {file("/README")});
    EXPECT_TRUE(out.contains(dir("/code/")));
    EXPECT_TRUE(out.contains(file("/b.c")));
    EXPECT_EQ(out.size(), 3u);
    auto pruned = apply_renames_and_deletions(cf, {}, {dir("/src/")});
    EXPECT_EQ(pruned.size(), 1u);
    auto root_kept = apply_renames_and_deletions(cf, {}, {CanonicalPath::root()});
    EXPECT_TRUE(root_kept.has_root());
}

TEST_F(GitAdapter, DetectsFileRenames) {
    git(root(), {"mv", "src/lib/b.c", "src/lib/c.c"});
    auto changes = detect_changes(GitRepo::discover(root()), cf);
    ASSERT_EQ(changes.renames.size(), 1u);
    EXPECT_EQ(changes.renames[0].from, file("/src/lib/b.c"));
    EXPECT_EQ(changes.renames[0].to, file("/src/lib/c.c"));
    EXPECT_TRUE(changes.deleted.empty());
}

TEST_F(GitAdapter, DetectsDirectoryRenames) {
    git(root(), {"mv", "src", "code"});
    auto repo = GitRepo::discover(root());
    auto changes = detect_changes(repo, cf);
    auto synced = sync_on_commit(root(), changes.renames, changes.deleted);
    EXPECT_TRUE(synced.contains(dir("/code/")));
    EXPECT_TRUE(synced.contains(file("/code/lib/b.c")));
    EXPECT_TRUE(validate(synced, repo.index_tree(false)).empty());
}

TEST_F(GitAdapter, DetectsDeletionsWithAWarning) {
    git(root(), {"rm", "-q", "-r", "src"});
    auto changes = detect_changes(GitRepo::discover(root()), cf);
    EXPECT_EQ(changes.deleted.size(), 2u);
    EXPECT_EQ(changes.warnings.size(), 2u);
    auto synced = sync_on_commit(root(), changes.renames, changes.deleted);
    EXPECT_EQ(synced.size(), 1u);
}

TEST_F(GitAdapter, SyncWithoutChangesLeavesTheFileAlone) {
    const auto before = fs::last_write_time(root() / "citation.cite");
    EXPECT_EQ(sync_on_commit(root(), {}, {}), cf);
    EXPECT_EQ(fs::last_write_time(root() / "citation.cite"), before);
}

TEST_F(GitAdapter, AddingACitationIsAOneEntryDiff) {
    store_citation_file(root(), cf.with(file("/README"), person("Eve")));
    auto diff = git(root(), {"diff", "--numstat", "--", "citation.cite"});
    // one record is 11 lines including its key and closing brace
    EXPECT_EQ(diff.substr(0, diff.find('\t')), "11");
    EXPECT_NE(diff.find("\t0\t"), std::string::npos);
}

TEST_F(GitAdapter, RepositoryQueries) {
    auto repo = GitRepo::discover(root() / "src" / "lib");
    EXPECT_EQ(fs::canonical(repo.root()), fs::canonical(root()));
    EXPECT_EQ(repo.current_branch(), "main");
    EXPECT_TRUE(repo.head_commit());
    EXPECT_FALSE(repo.merge_in_progress());
    auto tree = repo.tree_at("HEAD");
    EXPECT_TRUE(tree.contains(file("/src/lib/b.c")));
    EXPECT_TRUE(tree.contains(file("/citation.cite")));
    EXPECT_EQ(repo.show_file("HEAD", "README"), "r\n");
    EXPECT_FALSE(repo.show_file("HEAD", "nope"));
    EXPECT_EQ(code_of([&] { repo.resolve_commit("no-such-rev"); }), ErrorCode::UnknownVersion);
    auto meta = repo.metadata();
    EXPECT_EQ(meta.owner, "Tester");
    EXPECT_FALSE(meta.head_commit.empty());
    EXPECT_EQ(meta.contributors, std::vector<std::string>{"Tester"});
    TempDir outside;
    EXPECT_EQ(code_of([&] { GitRepo::discover(outside.path()); }), ErrorCode::NotARepository);
}

TEST(RemoteUrl, Shapes) {
    auto https = parse_remote_url("https://github.com/bob/b.git");
    ASSERT_TRUE(https);
    EXPECT_EQ(https->owner, "bob");
    EXPECT_EQ(https->repo_name, "b");
    EXPECT_EQ(https->locator, "https://github.com/bob/b");
    auto scp = parse_remote_url("git@github.com:bob/b.git");
    ASSERT_TRUE(scp);
    EXPECT_EQ(scp->locator, "https://github.com/bob/b");
    EXPECT_TRUE(parse_remote_url("ssh://git@host/bob/b"));
    EXPECT_FALSE(parse_remote_url("/local/path"));
}

TEST(MergeCitationFiles, AgreesWithTheVersionStore) {
    auto base = CitationFile::with_root(person("Bob")).with(dir("/a/"), person("A"));
    auto left = base.with(dir("/a/"), person("L")).with(file("/x"), person("X"));
    auto right = base.with(file("/y"), person("Y")).with(file("/x"), person("Z"));
    auto tree = TreeSnapshot().with_file(file("/a/f"), "1").with_file(file("/x"), "2").with_file(file("/y"), "3");
    auto outcome = merge_citation_files(base, left, right, tree, always_right());
    EXPECT_EQ(*outcome.cf.find(dir("/a/")), person("L"));
    EXPECT_EQ(*outcome.cf.find(file("/x")), person("Z"));
    ASSERT_EQ(outcome.conflicts.size(), 1u);
    EXPECT_EQ(outcome.conflicts[0].key, file("/x"));
    EXPECT_TRUE(outcome.pruned.empty());

    auto smaller = TreeSnapshot().with_file(file("/x"), "2");
    auto pruned = merge_citation_files(base, left, right, smaller, always_left());
    EXPECT_EQ(pruned.pruned.size(), 2u);
    EXPECT_EQ(pruned.cf.size(), 2u);
    EXPECT_EQ(code_of([&] {
                  merge_citation_files(base, left, right, tree, [](const ConflictReport&) { return Resolution::pending(); });
              }),
              ErrorCode::UnresolvedConflict);
}
