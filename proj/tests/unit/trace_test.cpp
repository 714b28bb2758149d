#include "gitcite/errors.hpp"
#include "gitcite/trace.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gitcite;

namespace {

ErrorCode code_of(auto&& action) {
    try {
        action();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvariantBroken;
}

const char* kSmall = R"(# two branches and a merge
repo P main owner=Bob repo_name=P locator=https://example.org/P "authors=Bob,Alice B."
commit P main create /src/a.c d1 ; create /doc/x d2
branch P dev main
addcite P dev /src/ owner=Carlos repo_name=C locator=https://c extra.doi=10.1/c
commit P dev
merge P main dev ours
expect P main /src/a.c owner=Carlos extra.doi=10.1/c
expect P main /doc/x owner=Bob "authors=Bob,Alice B."
)";

} // namespace

TEST(Trace, ParsesOperations) {
    auto ops = parse_trace(kSmall);
    ASSERT_EQ(ops.size(), 8u);
    EXPECT_EQ(ops[0].kind, TraceOp::Kind::repo);
    EXPECT_EQ(ops[0].line, 2);
    EXPECT_EQ(ops[0].record->author_list, (std::vector<std::string>{"Bob", "Alice B."}));
    EXPECT_EQ(ops[1].tree_edits.size(), 2u);
    EXPECT_EQ(ops[3].record->extras.at("doi"), "10.1/c");
    EXPECT_TRUE(ops[4].tree_edits.empty());
    EXPECT_EQ(ops[7].expected.at("authors"), "Bob,Alice B.");
}

TEST(Trace, ReplayRecordsCommitPoints) {
    auto run = replay_trace(parse_trace(kSmall));
    // repo, commit, commit on dev, merge (a fast-forward: main did not move)
    ASSERT_EQ(run.commit_points.size(), 4u);
    EXPECT_EQ(run.commit_points.back().branch, "main");
    EXPECT_EQ(run.commit_points.back().cf.size(), 2u);
    const auto& repo = run.repos.at("P");
    EXPECT_EQ(repo.head_id("main"), repo.head_id("dev"));
}

TEST(Trace, SyntaxErrors) {
    EXPECT_EQ(code_of([] { parse_trace("frobnicate P"); }), ErrorCode::TraceSyntax);
    EXPECT_EQ(code_of([] { parse_trace("repo P"); }), ErrorCode::TraceSyntax);
    EXPECT_EQ(code_of([] { parse_trace("repo P main owner"); }), ErrorCode::TraceSyntax);
    EXPECT_EQ(code_of([] { parse_trace("repo P main owner=o repo_name=r locator=l colour=red"); }),
              ErrorCode::TraceSyntax);
    EXPECT_EQ(code_of([] { parse_trace("commit P main explode /x"); }), ErrorCode::TraceSyntax);
    EXPECT_EQ(code_of([] { parse_trace("merge P main dev sideways"); }), ErrorCode::TraceSyntax);
    EXPECT_EQ(code_of([] { parse_trace("repo P main \"owner=o"); }), ErrorCode::TraceSyntax);
    try {
        parse_trace("# ok\n\nbranch P\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Trace, FailedExpectationNamesTheLine) {
    auto ops = parse_trace("repo P main owner=Bob repo_name=P locator=l\nexpect P main / owner=Eve\n");
    try {
        replay_trace(ops);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvariantBroken);
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(Trace, DomainErrorsPropagate) {
    auto ops = parse_trace("repo P main owner=Bob repo_name=P locator=l\ndelcite P main /\n");
    EXPECT_EQ(code_of([&] { replay_trace(ops); }), ErrorCode::RootUndeletable);
}

TEST(Trace, RecordFields) {
    CitationRecord r{"o", "r", "l", "v", "d", {"a", "b"}, {{"k", "x"}}};
    EXPECT_EQ(record_field(r, "owner"), "o");
    EXPECT_EQ(record_field(r, "authors"), "a,b");
    EXPECT_EQ(record_field(r, "extra.k"), "x");
    EXPECT_EQ(record_field(r, "extra.none"), "");
    EXPECT_EQ(parse_record_tokens({"owner=o", "repo_name=r", "locator=l", "version_id=v", "date=d", "authors=a,b",
                                 "extra.k=x"}),
              r);
}

TEST(Trace, ShippedScenariosReplayCleanly) {
    int count = 0;
    for (const auto& entry : std::filesystem::directory_iterator(GITCITE_SCENARIO_DIR)) {
        if (entry.path().extension() != ".trace") continue;
        std::ifstream in(entry.path());
        std::stringstream text;
        text << in.rdbuf();
        EXPECT_NO_THROW(replay_trace(parse_trace(text.str()))) << entry.path();
        ++count;
    }
    EXPECT_GE(count, 20);
}
