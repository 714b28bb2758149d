#include "git_sandbox.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/citeops.hpp"
#include "gitcite/cli.hpp"
#include "gitcite/document.hpp"
#include "gitcite/errors.hpp"
#include "gitcite/gitadapter.hpp"
#include "gitcite/versionstore.hpp"

#include <gtest/gtest.h>

using namespace gitcite;
using namespace gitcite::testing;

namespace {

CanonicalPath file(std::string_view raw) { return canonicalize(raw, KindHint::file); }
CanonicalPath dir(std::string_view raw) { return canonicalize(raw, KindHint::directory); }

void commit_all(const fs::path& dir, const std::string& message) {
    git(dir, {"add", "-A"});
    git(dir, {"commit", "-q", "-m", message});
}

// A repository of Bob's with one committed root citation.
class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        init_repo(root(), "main", "Bob");
        write_file(root() / "src/a.c", "a\n");
        write_file(root() / "src/lib/b.c", "b\n");
        write_file(root() / "README", "r\n");
        commit_all(root(), "initial");
        auto init = run({"init", "--url", "https://example.org/bob/B", "--repo-name", "B"});
        ASSERT_EQ(init.status, 0) << init.err;
        commit_all(root(), "cite");
    }

    CliResult run(const std::vector<std::string>& args, const std::string& input = {}) {
        return gitcite::testing::gitcite(root(), args, input);
    }
    const fs::path& root() const { return work.path(); }
    CitationFile cf() const { return load_citation_file(root()); }

    TempDir work;
};

} // namespace

TEST_F(Cli, InitWritesADraftRootOnce) {
    auto root_record = *cf().find(CanonicalPath::root());
    EXPECT_EQ(root_record.owner, "Bob");
    EXPECT_EQ(root_record.repo_name, "B");
    EXPECT_EQ(root_record.locator, "https://example.org/bob/B");
    // Authors come from the commit log; the sandbox commits as Tester.
    EXPECT_EQ(root_record.author_list, std::vector<std::string>{"Tester"});
    EXPECT_EQ(root_record.version_id.size(), 40u);
    auto again = run({"init"});
    EXPECT_EQ(again.status, 1);
    EXPECT_NE(again.err.find("AlreadyInitialized"), std::string::npos) << again.err;
}

TEST_F(Cli, AddThenGenerate) {
    auto add = run({"add", "src/lib/", "--field", "owner=Carlos", "--field", "repo_name=C", "--field",
                    "locator=https://c", "--authors", "Carlos,Dana", "--field", "doi=10.1/c"});
    ASSERT_EQ(add.status, 0) << add.err;
    EXPECT_EQ(add.out.substr(0, add.out.find('\n')), "/src/lib/");
    auto gen = run({"gen", "src/lib/b.c", "--format", "json"});
    ASSERT_EQ(gen.status, 0) << gen.err;
    auto record = parse_record(gen.out);
    EXPECT_EQ(record.owner, "Carlos");
    EXPECT_EQ(record.author_list, (std::vector<std::string>{"Carlos", "Dana"}));
    EXPECT_EQ(record.extras.at("doi"), "10.1/c");
    auto outside = run({"gen", "README", "--format", "json"});
    EXPECT_EQ(parse_record(outside.out).owner, "Bob");
    auto text = run({"gen", "/src/lib/b.c"});
    EXPECT_NE(text.out.find("Carlos, Dana"), std::string::npos) << text.out;
    auto bib = run({"gen", "/src/lib/b.c", "--format", "bibtex"});
    EXPECT_EQ(bib.out.rfind("@software{", 0), 0u) << bib.out;
    EXPECT_NE(bib.out.find("doi = {10.1/c}"), std::string::npos) << bib.out;
}

TEST_F(Cli, PathsAreRelativeToTheWorkingDirectory) {
    ASSERT_EQ(run({"add", "lib/", "--field", "owner=Carlos"}).status, 1); // no /lib/ at the top
    auto in_src = gitcite::testing::gitcite(root() / "src", {"add", "lib/", "--field", "owner=Carlos"});
    ASSERT_EQ(in_src.status, 0) << in_src.err;
    EXPECT_TRUE(cf().contains(dir("/src/lib/")));
    EXPECT_EQ(gitcite::testing::gitcite(root() / "src", {"gen", "../../etc/passwd"}).status, 2);
}

TEST_F(Cli, EditErrorsAndExitCodes) {
    auto del_root = run({"del", "/"});
    EXPECT_EQ(del_root.status, 1);
    EXPECT_NE(del_root.err.find("RootUndeletable"), std::string::npos);
    auto modify_missing = run({"modify", "README", "--field", "owner=X"});
    EXPECT_EQ(modify_missing.status, 1);
    EXPECT_NE(modify_missing.err.find("NotCited"), std::string::npos);
    auto bad_record = run({"add", "README", "--field", "owner="});
    EXPECT_EQ(bad_record.status, 1);
    EXPECT_NE(bad_record.err.find("InvalidRecord"), std::string::npos) << bad_record.err;
    EXPECT_EQ(run({"gen", "nope.c"}).status, 1);
    EXPECT_EQ(run({"frobnicate"}).status, 2);
    EXPECT_EQ(run({"gen", "--format", "yaml"}).status, 2);
    TempDir outside;
    EXPECT_EQ(gitcite::testing::gitcite(outside.path(), {"gen"}).status, 3);
}

TEST_F(Cli, CiterCannotWrite) {
    const auto before = read_file(root() / "citation.cite");
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--role", "citer", "add", "README", "--field", "owner=Eve"},
             {"--role", "citer", "modify", "/", "--field", "owner=Eve"},
             {"--role", "citer", "del", "/"}}) {
        auto result = run(args);
        EXPECT_EQ(result.status, 1);
        EXPECT_NE(result.err.find("RoleForbidden"), std::string::npos) << result.err;
    }
    EXPECT_EQ(read_file(root() / "citation.cite"), before);
    EXPECT_EQ(run({"--role", "citer", "gen"}).status, 0);
}

TEST_F(Cli, OnlyTheLatestVersionIsEditable) {
    auto first = git(root(), {"rev-parse", "HEAD~1"});
    first.pop_back();
    auto old = run({"add", "README", "--field", "owner=Eve", "--version", first});
    EXPECT_EQ(old.status, 1);
    EXPECT_NE(old.err.find("NotLatestVersion"), std::string::npos) << old.err;
    EXPECT_EQ(run({"add", "README", "--field", "owner=Eve", "--version", "HEAD"}).status, 0);
}

TEST_F(Cli, GenReadsHistory) {
    ASSERT_EQ(run({"modify", "/", "--field", "owner=Robert"}).status, 0);
    commit_all(root(), "rename owner");
    EXPECT_EQ(parse_record(run({"gen", "--format", "json"}).out).owner, "Robert");
    EXPECT_EQ(parse_record(run({"gen", "--version", "HEAD~1", "--format", "json"}).out).owner, "Bob");
    EXPECT_EQ(run({"gen", "--version", "HEAD~2"}).status, 3); // before init
    EXPECT_EQ(run({"gen", "--version", "no-such"}).status, 1);
}

TEST_F(Cli, ValidateReportsDanglingKeys) {
    EXPECT_EQ(run({"validate"}).status, 0);
    store_citation_file(root(), cf().with(file("/gone.c"), *cf().find(CanonicalPath::root())));
    auto result = run({"validate"});
    EXPECT_EQ(result.status, 1);
    EXPECT_NE(result.out.find("/gone.c"), std::string::npos) << result.out;
    write_file(root() / "citation.cite", R"({"/": {"owner": "o", "repo_name": "r", "locator": "l"}})");
    auto hand_edited = run({"validate"});
    EXPECT_EQ(hand_edited.status, 0);
    EXPECT_NE(hand_edited.err.find("canonical"), std::string::npos);
}

TEST_F(Cli, SyncFollowsRenames) {
    ASSERT_EQ(run({"add", "src/lib/", "--field", "owner=Carlos"}).status, 0);
    commit_all(root(), "cite lib");
    git(root(), {"mv", "src/lib", "src/core"});
    auto sync = run({"sync"});
    ASSERT_EQ(sync.status, 0) << sync.err;
    EXPECT_NE(sync.out.find("renamed /src/lib/ -> /src/core/"), std::string::npos) << sync.out;
    EXPECT_TRUE(cf().contains(dir("/src/core/")));
    EXPECT_EQ(run({"validate"}).status, 0);
}

TEST_F(Cli, MergeWithoutConflicts) {
    git(root(), {"checkout", "-q", "-b", "alice"});
    ASSERT_EQ(run({"add", "src/", "--field", "owner=Alice"}).status, 0);
    commit_all(root(), "alice");
    git(root(), {"checkout", "-q", "main"});
    ASSERT_EQ(run({"add", "README", "--field", "owner=Eve"}).status, 0);
    commit_all(root(), "eve");
    auto merge = run({"merge", "alice"});
    ASSERT_EQ(merge.status, 0) << merge.err << merge.out;
    EXPECT_EQ(cf().size(), 3u);
    EXPECT_EQ(git(root(), {"status", "--porcelain"}), "");
    EXPECT_EQ(read_file(root() / "citation.cite"), serialize_document(cf()));
}

TEST_F(Cli, MergeConflictsFollowTheChosenSideAndMatchTheVersionStore) {
    git(root(), {"checkout", "-q", "-b", "alice"});
    ASSERT_EQ(run({"add", "src/", "--field", "owner=Alice"}).status, 0);
    commit_all(root(), "alice");
    git(root(), {"checkout", "-q", "main"});
    ASSERT_EQ(run({"add", "src/", "--field", "owner=Carlos"}).status, 0);
    commit_all(root(), "carlos");
    const auto base = parse_document(git(root(), {"show", "HEAD~1:citation.cite"}));
    const auto left = cf();
    const auto right = parse_document(git(root(), {"show", "alice:citation.cite"}));

    auto merge = run({"merge", "alice", "--theirs"});
    ASSERT_EQ(merge.status, 0) << merge.err << merge.out;
    EXPECT_NE(merge.out.find("conflict at /src/: chose_right"), std::string::npos) << merge.out;
    EXPECT_EQ(cf().find(dir("/src/"))->owner, "Alice");
    auto expected = merge_citation_files(base, left, right, GitRepo::discover(root()).tree_at("HEAD"), always_right());
    EXPECT_EQ(read_file(root() / "citation.cite"), serialize_document(expected.cf));
}

TEST_F(Cli, InteractiveMergeAnswers) {
    git(root(), {"checkout", "-q", "-b", "alice"});
    ASSERT_EQ(run({"add", "src/", "--field", "owner=Alice"}).status, 0);
    ASSERT_EQ(run({"add", "README", "--field", "owner=Alice"}).status, 0);
    commit_all(root(), "alice");
    git(root(), {"checkout", "-q", "main"});
    ASSERT_EQ(run({"add", "src/", "--field", "owner=Carlos"}).status, 0);
    ASSERT_EQ(run({"add", "README", "--field", "owner=Carlos"}).status, 0);
    commit_all(root(), "carlos");
    const std::string edited = R"({"owner": "Both", "repo_name": "B", "locator": "https://b"})";
    auto merge = run({"merge", "alice"}, "bogus\nl\ne\n" + edited + "\n");
    ASSERT_EQ(merge.status, 0) << merge.err << merge.out;
    EXPECT_NE(merge.out.find("unrecognized answer"), std::string::npos);
    EXPECT_EQ(cf().find(file("/README"))->owner, "Carlos");
    EXPECT_EQ(cf().find(dir("/src/"))->owner, "Both");
}

TEST_F(Cli, AbortedInteractiveMergeRestoresTheBranch) {
    git(root(), {"checkout", "-q", "-b", "alice"});
    ASSERT_EQ(run({"add", "src/", "--field", "owner=Alice"}).status, 0);
    commit_all(root(), "alice");
    git(root(), {"checkout", "-q", "main"});
    ASSERT_EQ(run({"add", "src/", "--field", "owner=Carlos"}).status, 0);
    commit_all(root(), "carlos");
    const auto head = git(root(), {"rev-parse", "HEAD"});
    auto merge = run({"merge", "alice"}, "");
    EXPECT_EQ(merge.status, 1);
    EXPECT_NE(merge.err.find("UnresolvedConflict"), std::string::npos) << merge.err;
    EXPECT_EQ(git(root(), {"rev-parse", "HEAD"}), head);
    EXPECT_FALSE(GitRepo::discover(root()).merge_in_progress());
    EXPECT_EQ(cf().find(dir("/src/"))->owner, "Carlos");
}

TEST_F(Cli, MergeUpToDateAndFastForward) {
    git(root(), {"branch", "dev"});
    EXPECT_NE(run({"merge", "dev"}).out.find("already up to date"), std::string::npos);
    git(root(), {"checkout", "-q", "dev"});
    ASSERT_EQ(run({"add", "README", "--field", "owner=Eve"}).status, 0);
    commit_all(root(), "eve");
    git(root(), {"checkout", "-q", "main"});
    auto ff = run({"merge", "dev"});
    EXPECT_NE(ff.out.find("fast-forwarded"), std::string::npos) << ff.out << ff.err;
    EXPECT_EQ(cf().find(file("/README"))->owner, "Eve");
}

TEST_F(Cli, CopyBringsCitationsAlong) {
    TempDir other;
    init_repo(other.path(), "main", "Carlos");
    write_file(other.path() / "g/f2", "f2\n");
    write_file(other.path() / "g/h/f3", "f3\n");
    commit_all(other.path(), "initial");
    ASSERT_EQ(gitcite::testing::gitcite(other.path(), {"init", "--url", "https://example.org/carlos/C"}).status, 0);
    ASSERT_EQ(gitcite::testing::gitcite(other.path(), {"add", "g/h/f3", "--field", "owner=Dana"}).status, 0);
    commit_all(other.path(), "cite");

    auto copy = run({"copy", other.path().string(), "g", "vendor"});
    ASSERT_EQ(copy.status, 0) << copy.err;
    EXPECT_EQ(read_file(root() / "vendor/h/f3"), "f3\n");
    auto copied = cf();
    EXPECT_EQ(copied.size(), 3u);
    EXPECT_EQ(copied.find(dir("/vendor/"))->owner, "Carlos");
    EXPECT_EQ(copied.find(file("/vendor/h/f3"))->owner, "Dana");
    EXPECT_EQ(parse_record(run({"gen", "vendor/f2", "--format", "json"}).out).owner, "Carlos");
    EXPECT_EQ(parse_record(run({"gen", "README", "--format", "json"}).out).owner, "Bob");
    EXPECT_NE(git(root(), {"diff", "--cached", "--name-only"}).find("vendor/f2"), std::string::npos);

    auto collision = run({"copy", other.path().string(), "g", "vendor"});
    EXPECT_EQ(collision.status, 1);
    EXPECT_NE(collision.err.find("DestinationCollision"), std::string::npos);
    EXPECT_EQ(run({"copy", other.path().string(), "nope", "x"}).status, 1);
    EXPECT_EQ(run({"copy", other.path().string(), "g", "a/b/c"}).status, 1);
}

TEST_F(Cli, CopyingFromAnUncitedRepositoryAddsOneEntry) {
    TempDir other;
    init_repo(other.path(), "main", "Carlos");
    write_file(other.path() / "lib/x.c", "x\n");
    commit_all(other.path(), "initial");
    auto copy = run({"copy", other.path().string(), "lib", "third_party"});
    ASSERT_EQ(copy.status, 0) << copy.err;
    EXPECT_NE(copy.err.find("warning"), std::string::npos);
    EXPECT_EQ(cf().size(), 2u);
    EXPECT_EQ(cf().find(dir("/third_party/"))->owner, "Carlos");
}

TEST(CliFormat, ParseFormat) {
    EXPECT_EQ(cli::parse_format("json"), cli::OutputFormat::json);
    EXPECT_THROW(cli::parse_format("xml"), std::invalid_argument);
}

TEST(CliFormat, BibtexEscapesSpecialCharacters) {
    CitationRecord record{"R&D {Lab}", "tool_x", "https://x", "1.0", "2020-03-04", {"Ana"}, {}};
    auto bib = cli::render_bibtex(record);
    EXPECT_NE(bib.find("R\\&D \\{Lab\\}"), std::string::npos) << bib;
    EXPECT_NE(bib.find("year = {2020}"), std::string::npos) << bib;
}
