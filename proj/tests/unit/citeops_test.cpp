#include "gitcite/citemodel.hpp"
#include "gitcite/citeops.hpp"
#include "gitcite/errors.hpp"

#include <gtest/gtest.h>

using namespace gitcite;

namespace {

CanonicalPath file(std::string_view raw) { return canonicalize(raw, KindHint::file); }
CanonicalPath dir(std::string_view raw) { return canonicalize(raw, KindHint::directory); }

CitationRecord person(const std::string& name) {
    return {name, name + "-repo", "https://example.org/" + name, "v1", "2021-05-01", {name}, {}};
}

const RoleContext kMember{Role::project_member, "bob"};
const RoleContext kCiter{Role::citer, "reader"};

ErrorCode code_of(auto&& action) {
    try {
        action();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvariantBroken;
}

class CiteOps : public ::testing::Test {
protected:
    Repository repo{"B", person("Bob"),
                    TreeSnapshot().with_file(file("/src/lib/util.c"), "u").with_file(file("/README"), "r")};
};

} // namespace

TEST_F(CiteOps, AddIsStagedUntilTheNextCommit) {
    auto staged = add_cite(repo, kMember, "main", dir("/src/lib/"), person("Carlos"));
    EXPECT_TRUE(staged.contains(dir("/src/lib/")));
    EXPECT_FALSE(repo.head("main").cf.contains(dir("/src/lib/")));
    const auto& v2 = commit(repo, "main", {});
    EXPECT_EQ(gen_cite(repo, v2.id, file("/src/lib/util.c")), person("Carlos"));
    EXPECT_EQ(gen_cite(repo, "v1", file("/src/lib/util.c")), person("Bob"));
}

TEST_F(CiteOps, AddPreconditions) {
    add_cite(repo, kMember, "main", file("/README"), person("Eve"));
    EXPECT_EQ(code_of([&] { add_cite(repo, kMember, "main", file("/README"), person("Eve")); }),
              ErrorCode::AlreadyCited);
    EXPECT_EQ(code_of([&] { add_cite(repo, kMember, "main", file("/nope"), person("Eve")); }),
              ErrorCode::PathNotInTree);
    EXPECT_EQ(code_of([&] { add_cite(repo, kMember, "main", file("/src"), person("Eve")); }),
              ErrorCode::PathNotInTree);
    CitationRecord invalid = person("Eve");
    invalid.locator.clear();
    EXPECT_EQ(code_of([&] { add_cite(repo, kMember, "main", dir("/src/"), invalid); }), ErrorCode::InvalidRecord);
    EXPECT_EQ(code_of([&] { add_cite(repo, kCiter, "main", dir("/src/"), person("Eve")); }),
              ErrorCode::RoleForbidden);
}

TEST_F(CiteOps, DeleteAndModify) {
    add_cite(repo, kMember, "main", dir("/src/"), person("Carlos"));
    commit(repo, "main", {});
    modify_cite(repo, kMember, "main", dir("/src/"), person("Dana"));
    EXPECT_EQ(*repo.staged_citations("main").find(dir("/src/")), person("Dana"));
    del_cite(repo, kMember, "main", dir("/src/"));
    const auto& v = commit(repo, "main", {});
    EXPECT_EQ(gen_cite(repo, v.id, file("/src/lib/util.c")), person("Bob"));
}

TEST_F(CiteOps, DeleteAndModifyErrors) {
    EXPECT_EQ(code_of([&] { del_cite(repo, kMember, "main", CanonicalPath::root()); }), ErrorCode::RootUndeletable);
    EXPECT_EQ(code_of([&] { del_cite(repo, kMember, "main", file("/README")); }), ErrorCode::NotCited);
    EXPECT_EQ(code_of([&] { modify_cite(repo, kMember, "main", file("/missing.c"), person("X")); }),
              ErrorCode::NotCited);
    EXPECT_EQ(code_of([&] { del_cite(repo, kCiter, "main", CanonicalPath::root()); }), ErrorCode::RoleForbidden);
    EXPECT_EQ(code_of([&] { modify_cite(repo, kCiter, "main", CanonicalPath::root(), person("X")); }),
              ErrorCode::RoleForbidden);
}

TEST_F(CiteOps, OnlyTheLatestVersionIsEditable) {
    commit(repo, "main", {TreeEdit::create_file(file("/new.c"), "n")});
    EXPECT_EQ(code_of([&] { add_cite(repo, kMember, "main", file("/README"), person("X"), "v1"); }),
              ErrorCode::NotLatestVersion);
    EXPECT_EQ(code_of([&] { add_cite(repo, kMember, "main", file("/README"), person("X"), "v99"); }),
              ErrorCode::UnknownVersion);
    EXPECT_NO_THROW(add_cite(repo, kMember, "main", file("/README"), person("X"), repo.head_id("main")));
}

TEST_F(CiteOps, FailedEditStagesNothing) {
    EXPECT_THROW(add_cite(repo, kMember, "main", file("/nope"), person("X")), Error);
    EXPECT_TRUE(repo.staged("main").empty());
}

TEST_F(CiteOps, GenIsReadOnlyAndWorksOnHistory) {
    add_cite(repo, kMember, "main", file("/README"), person("Eve"));
    commit(repo, "main", {});
    const auto before = repo.version_count();
    EXPECT_EQ(gen_cite(repo, "v1", file("/README")), person("Bob"));
    EXPECT_EQ(gen_cite(repo, "v2", file("/README")), person("Eve"));
    EXPECT_EQ(repo.version_count(), before);
    EXPECT_EQ(code_of([&] { gen_cite(repo, "v7", file("/README")); }), ErrorCode::UnknownVersion);
    EXPECT_EQ(code_of([&] { gen_cite(repo, "v1", file("/nope")); }), ErrorCode::PathNotInTree);
}

TEST(DefaultRootCitation, FromMetadata) {
    RepositoryMetadata meta{"Bob", "B", "https://example.org/Bob/B", "abc123", "2020-01-01T00:00:00Z", {}};
    auto record = default_root_citation(meta);
    EXPECT_EQ(record.owner, "Bob");
    EXPECT_EQ(record.version_id, "abc123");
    EXPECT_EQ(record.author_list, std::vector<std::string>{"Bob"});
    meta.contributors = {"Alice", "Bob"};
    EXPECT_EQ(default_root_citation(meta).author_list, meta.contributors);
    meta.locator.clear();
    EXPECT_EQ(code_of([&] { default_root_citation(meta); }), ErrorCode::MissingMetadata);
}
