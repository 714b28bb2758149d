#include "gitcite/trace.hpp"

#include "gitcite/citemodel.hpp"
#include "gitcite/citeops.hpp"
#include "gitcite/errors.hpp"

namespace gitcite {

namespace {

[[noreturn]] void syntax(int line, const std::string& message) {
    throw Error(ErrorCode::TraceSyntax, "line " + std::to_string(line) + ": " + message);
}

std::vector<std::string> tokenize(std::string_view line, int number) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) {
            ++i;
        }
        if (i >= line.size() || line[i] == '#') {
            break;
        }
        std::string token;
        bool quoted = false;
        while (i < line.size() && (quoted || (line[i] != ' ' && line[i] != '\t'))) {
            if (line[i] == '"') {
                quoted = !quoted;
            } else if (line[i] == '\\' && quoted && i + 1 < line.size()) {
                token += line[++i];
            } else {
                token += line[i];
            }
            ++i;
        }
        if (quoted) {
            syntax(number, "unterminated quote");
        }
        tokens.push_back(std::move(token));
    }
    return tokens;
}

CanonicalPath path_operand(const std::string& text, int line) {
    if (!text.starts_with('/')) {
        syntax(line, "paths must start with '/': " + text);
    }
    try {
        return canonicalize(text, text.ends_with('/') ? KindHint::directory : KindHint::file);
    } catch (const Error& e) {
        syntax(line, e.what());
    }
}

std::vector<TreeEdit> parse_edits(const std::vector<std::string>& tokens, std::size_t start, int line) {
    std::vector<TreeEdit> edits;
    std::vector<std::string> current;
    auto flush = [&] {
        if (current.empty()) {
            return;
        }
        const auto& verb = current[0];
        if (verb == "create" && current.size() == 3) {
            edits.push_back(TreeEdit::create_file(path_operand(current[1], line), current[2]));
        } else if (verb == "modify" && current.size() == 3) {
            edits.push_back(TreeEdit::modify_content(path_operand(current[1], line), current[2]));
        } else if (verb == "delete" && current.size() == 2) {
            edits.push_back(TreeEdit::remove(path_operand(current[1], line)));
        } else if (verb == "rename" && current.size() == 3) {
            edits.push_back(TreeEdit::rename(path_operand(current[1], line), path_operand(current[2], line)));
        } else {
            syntax(line, "bad tree edit \"" + verb + "\" with " + std::to_string(current.size() - 1) + " operands");
        }
        current.clear();
    };
    for (auto i = start; i < tokens.size(); ++i) {
        if (tokens[i] == ";") {
            flush();
        } else {
            current.push_back(tokens[i]);
        }
    }
    flush();
    return edits;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size() && !text.empty()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        parts.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

} // namespace

CitationRecord parse_record_tokens(const std::vector<std::string>& tokens) {
    CitationRecord record;
    for (const auto& token : tokens) {
        auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw Error(ErrorCode::TraceSyntax, "expected field=value, got \"" + token + "\"");
        }
        auto field = token.substr(0, eq);
        auto value = token.substr(eq + 1);
        if (field == "owner") {
            record.owner = value;
        } else if (field == "repo_name") {
            record.repo_name = value;
        } else if (field == "locator") {
            record.locator = value;
        } else if (field == "version_id") {
            record.version_id = value;
        } else if (field == "date") {
            record.date = value;
        } else if (field == "authors") {
            record.author_list = split_commas(value);
        } else if (field.starts_with("extra.") && field.size() > 6) {
            record.extras[field.substr(6)] = value;
        } else {
            throw Error(ErrorCode::TraceSyntax, "unknown record field \"" + field + "\"");
        }
    }
    return record;
}

std::string record_field(const CitationRecord& record, std::string_view name) {
    if (name == "owner") return record.owner;
    if (name == "repo_name") return record.repo_name;
    if (name == "locator") return record.locator;
    if (name == "version_id") return record.version_id;
    if (name == "date") return record.date;
    if (name == "authors") {
        std::string joined;
        for (const auto& author : record.author_list) {
            joined += (joined.empty() ? "" : ",") + author;
        }
        return joined;
    }
    if (name.starts_with("extra.")) {
        auto it = record.extras.find(std::string(name.substr(6)));
        return it == record.extras.end() ? std::string() : it->second;
    }
    throw Error(ErrorCode::TraceSyntax, "unknown record field \"" + std::string(name) + "\"");
}

std::vector<TraceOp> parse_trace(std::string_view text) {
    std::vector<TraceOp> ops;
    int number = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++number;
        auto tokens = tokenize(text.substr(start, end - start), number);
        start = end + 1;
        if (tokens.empty()) {
            continue;
        }
        const auto& verb = tokens[0];
        TraceOp op{};
        op.line = number;
        auto positional = [&](std::size_t count) {
            if (tokens.size() < count + 1) {
                syntax(number, verb + " needs " + std::to_string(count) + " operands");
            }
            op.args.assign(tokens.begin() + 1, tokens.begin() + 1 + static_cast<std::ptrdiff_t>(count));
        };
        auto rest = [&](std::size_t from) {
            return std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(from), tokens.end());
        };
        auto exact = [&](std::size_t count) {
            positional(count);
            if (tokens.size() != count + 1) {
                syntax(number, verb + " takes exactly " + std::to_string(count) + " operands");
            }
        };
        try {
            if (verb == "repo") {
                op.kind = TraceOp::Kind::repo;
                positional(2);
                op.record = parse_record_tokens(rest(3));
            } else if (verb == "commit") {
                op.kind = TraceOp::Kind::commit;
                positional(2);
                op.tree_edits = parse_edits(tokens, 3, number);
            } else if (verb == "addcite" || verb == "modifycite") {
                op.kind = verb == "addcite" ? TraceOp::Kind::addcite : TraceOp::Kind::modifycite;
                positional(3);
                path_operand(op.args[2], number);
                op.record = parse_record_tokens(rest(4));
            } else if (verb == "delcite") {
                op.kind = TraceOp::Kind::delcite;
                exact(3);
                path_operand(op.args[2], number);
            } else if (verb == "branch") {
                op.kind = TraceOp::Kind::branch;
                exact(3);
            } else if (verb == "copy") {
                op.kind = TraceOp::Kind::copy;
                exact(6);
                path_operand(op.args[2], number);
                path_operand(op.args[5], number);
            } else if (verb == "merge") {
                op.kind = TraceOp::Kind::merge;
                exact(4);
                if (op.args[3] != "ours" && op.args[3] != "theirs") {
                    syntax(number, "merge policy must be ours or theirs");
                }
            } else if (verb == "fork") {
                op.kind = TraceOp::Kind::fork;
                exact(2);
            } else if (verb == "expect") {
                op.kind = TraceOp::Kind::expect;
                positional(3);
                path_operand(op.args[2], number);
                for (const auto& token : rest(4)) {
                    auto eq = token.find('=');
                    if (eq == std::string::npos) {
                        syntax(number, "expected field=value, got \"" + token + "\"");
                    }
                    op.expected[token.substr(0, eq)] = token.substr(eq + 1);
                }
            } else {
                syntax(number, "unknown operation \"" + verb + "\"");
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::TraceSyntax && std::string_view(e.what()).find("line ") == std::string_view::npos) {
                syntax(number, e.what());
            }
            throw;
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

TraceRun replay_trace(const std::vector<TraceOp>& ops) {
    TraceRun run;
    const RoleContext member{Role::project_member, "trace"};
    auto repo = [&](const std::string& name) -> Repository& {
        auto it = run.repos.find(name);
        if (it == run.repos.end()) {
            throw Error(ErrorCode::TraceSyntax, "unknown repository " + name);
        }
        return it->second;
    };
    auto record_point = [&](std::size_t index, const std::string& name, const std::string& branch) {
        run.commit_points.push_back({index, name, branch, repo(name).head(branch).cf});
    };

    for (std::size_t index = 0; index < ops.size(); ++index) {
        const auto& op = ops[index];
        const auto& a = op.args;
        try {
            switch (op.kind) {
            case TraceOp::Kind::repo:
                run.repos.insert_or_assign(a[0], Repository(a[0], *op.record, {}, a[1]));
                record_point(index, a[0], a[1]);
                break;
            case TraceOp::Kind::commit:
                commit(repo(a[0]), a[1], op.tree_edits);
                record_point(index, a[0], a[1]);
                break;
            case TraceOp::Kind::addcite:
                add_cite(repo(a[0]), member, a[1], path_operand(a[2], op.line), *op.record);
                break;
            case TraceOp::Kind::modifycite:
                modify_cite(repo(a[0]), member, a[1], path_operand(a[2], op.line), *op.record);
                break;
            case TraceOp::Kind::delcite:
                del_cite(repo(a[0]), member, a[1], path_operand(a[2], op.line));
                break;
            case TraceOp::Kind::branch: {
                auto& r = repo(a[0]);
                create_branch(r, a[1], r.head_id(a[2]));
                break;
            }
            case TraceOp::Kind::copy: {
                const auto& src = repo(a[0]);
                copy_cite(src, src.head_id(a[1]), path_operand(a[2], op.line), repo(a[3]), a[4],
                          path_operand(a[5], op.line));
                record_point(index, a[3], a[4]);
                break;
            }
            case TraceOp::Kind::merge: {
                auto outcome = merge_cite(repo(a[0]), a[1], a[2], a[3] == "ours" ? always_left() : always_right());
                if (!outcome.up_to_date) {
                    record_point(index, a[0], a[1]);
                }
                break;
            }
            case TraceOp::Kind::fork: {
                auto forked = fork_cite(repo(a[0]), a[1]);
                auto branch = forked.default_branch();
                run.repos.insert_or_assign(a[1], std::move(forked));
                record_point(index, a[1], branch);
                break;
            }
            case TraceOp::Kind::expect: {
                const auto& r = repo(a[0]);
                auto record = gen_cite(r, r.head_id(a[1]), path_operand(a[2], op.line));
                for (const auto& [field, value] : op.expected) {
                    auto actual = record_field(record, field);
                    if (actual != value) {
                        throw Error(ErrorCode::InvariantBroken, "expected " + field + "=" + value + " at " + a[2] +
                                                                    ", got \"" + actual + "\"");
                    }
                }
                break;
            }
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvariantBroken || e.code() == ErrorCode::TraceSyntax) {
                throw Error(e.code(), "line " + std::to_string(op.line) + ": " + e.what());
            }
            throw;
        }
    }
    return run;
}

} // namespace gitcite
