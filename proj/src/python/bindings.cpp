#include "gitcite/citemodel.hpp"
#include "gitcite/citeops.hpp"
#include "gitcite/cli.hpp"
#include "gitcite/document.hpp"
#include "gitcite/errors.hpp"
#include "gitcite/gitadapter.hpp"
#include "gitcite/versionstore.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace gitcite;

namespace {

CanonicalPath to_path(const py::handle& value) {
    if (py::isinstance<CanonicalPath>(value)) {
        return value.cast<CanonicalPath>();
    }
    auto text = value.cast<std::string>();
    if (text == "/" || text.ends_with('/')) {
        return canonicalize(text, KindHint::directory);
    }
    return canonicalize(text, KindHint::file);
}

std::map<std::string, CitationRecord> entries_dict(const CitationFile& cf) {
    std::map<std::string, CitationRecord> entries;
    for (const auto& [key, record] : cf.entries()) {
        entries.emplace(key.str(), record);
    }
    return entries;
}

CitationFile from_dict(const std::map<std::string, CitationRecord>& entries) {
    CitationFile::Entries result;
    for (const auto& [key, record] : entries) {
        result.emplace(to_path(py::str(key)), record);
    }
    return CitationFile(std::move(result));
}

ConflictResolver to_resolver(const py::object& resolver) {
    if (py::isinstance<py::str>(resolver)) {
        auto policy = resolver.cast<std::string>();
        if (policy == "ours" || policy == "left") return always_left();
        if (policy == "theirs" || policy == "right") return always_right();
        throw py::value_error("resolver must be 'ours', 'theirs' or a callable");
    }
    auto callable = resolver.cast<std::function<Resolution(const ConflictReport&)>>();
    return [callable](const ConflictReport& report) {
        py::gil_scoped_acquire gil;
        return callable(report);
    };
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Path-level software citations kept alongside version history";

    // ---- errors ---------------------------------------------------------------
    py::enum_<ErrorCode> error_code(m, "ErrorCode");
    for (int i = 0; i <= static_cast<int>(ErrorCode::TraceSyntax); ++i) {
        auto code = static_cast<ErrorCode>(i);
        error_code.value(std::string(to_string(code)).c_str(), code);
    }
    static py::handle error_type = py::exception<Error>(m, "GitCiteError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error& e) {
            py::object instance = py::reinterpret_borrow<py::object>(error_type)(e.what());
            instance.attr("code") = py::cast(e.code());
            if (e.code() == ErrorCode::HttpStatus) {
                instance.attr("status") = dynamic_cast<const HttpStatusError&>(e).status();
            }
            PyErr_SetObject(error_type.ptr(), instance.ptr());
        }
    });

    // ---- paths, records, citation files ----------------------------------------
    py::enum_<PathKind>(m, "PathKind")
        .value("root", PathKind::root)
        .value("directory", PathKind::directory)
        .value("file", PathKind::file);
    py::enum_<KindHint>(m, "KindHint")
        .value("file", KindHint::file)
        .value("directory", KindHint::directory)
        .value("unknown", KindHint::unknown);

    py::class_<CanonicalPath>(m, "CanonicalPath")
        .def(py::init([](const std::string& text) { return to_path(py::str(text)); }), py::arg("path"),
             "A trailing '/' makes a directory, anything else is a file.")
        .def_static("root", &CanonicalPath::root)
        .def_property_readonly("kind", &CanonicalPath::kind)
        .def_property_readonly("segments", &CanonicalPath::segments)
        .def_property_readonly("parent", &CanonicalPath::parent)
        .def("is_ancestor_of", &CanonicalPath::is_ancestor_of)
        .def("contains", &CanonicalPath::contains)
        .def("__str__", &CanonicalPath::str)
        .def("__repr__", [](const CanonicalPath& p) { return "CanonicalPath('" + p.str() + "')"; })
        .def("__eq__", [](const CanonicalPath& a, const CanonicalPath& b) { return a == b; })
        .def("__lt__", [](const CanonicalPath& a, const CanonicalPath& b) { return a < b; })
        .def("__hash__", [](const CanonicalPath& p) { return py::hash(py::str(p.str())); });
    m.def("canonicalize", py::overload_cast<std::string_view, KindHint>(&canonicalize), py::arg("raw"),
          py::arg("hint") = KindHint::unknown);
    m.def("canonicalize_in", py::overload_cast<std::string_view, KindHint, const TreeSnapshot&>(&canonicalize),
          py::arg("raw"), py::arg("hint"), py::arg("tree"));

    py::class_<CitationRecord>(m, "CitationRecord")
        .def(py::init([](std::string owner, std::string repo_name, std::string locator, std::string version_id,
                         std::string date, std::vector<std::string> author_list,
                         std::map<std::string, std::string> extras) {
                 return CitationRecord{std::move(owner),     std::move(repo_name), std::move(locator),
                                       std::move(version_id), std::move(date),      std::move(author_list),
                                       std::move(extras)};
             }),
             py::arg("owner") = "", py::arg("repo_name") = "", py::arg("locator") = "", py::arg("version_id") = "",
             py::arg("date") = "", py::arg("author_list") = std::vector<std::string>{},
             py::arg("extras") = std::map<std::string, std::string>{})
        .def_readwrite("owner", &CitationRecord::owner)
        .def_readwrite("repo_name", &CitationRecord::repo_name)
        .def_readwrite("locator", &CitationRecord::locator)
        .def_readwrite("version_id", &CitationRecord::version_id)
        .def_readwrite("date", &CitationRecord::date)
        .def_readwrite("author_list", &CitationRecord::author_list)
        .def_readwrite("extras", &CitationRecord::extras)
        .def("__eq__", [](const CitationRecord& a, const CitationRecord& b) { return a == b; })
        .def("__repr__", [](const CitationRecord& r) { return "CitationRecord(" + serialize_record(r) + ")"; });
    m.def("record_problems", &record_problems);

    py::class_<CitationFile>(m, "CitationFile")
        .def(py::init(&from_dict), py::arg("entries"))
        .def_static("with_root", &CitationFile::with_root, py::arg("root_record"))
        .def_property_readonly("entries", &entries_dict)
        .def("__len__", &CitationFile::size)
        .def("__contains__", [](const CitationFile& cf, const py::object& key) { return cf.contains(to_path(key)); })
        .def("__getitem__",
             [](const CitationFile& cf, const py::object& key) {
                 const auto* record = cf.find(to_path(key));
                 if (record == nullptr) {
                     throw py::key_error(py::str(key));
                 }
                 return *record;
             })
        .def("with_entry", [](const CitationFile& cf, const py::object& key,
                              const CitationRecord& record) { return cf.with(to_path(key), record); })
        .def("without", [](const CitationFile& cf, const py::object& key) { return cf.without(to_path(key)); })
        .def("__eq__", [](const CitationFile& a, const CitationFile& b) { return a == b; });

    py::class_<TreeSnapshot>(m, "TreeSnapshot")
        .def(py::init<>())
        .def("with_file", [](const TreeSnapshot& t, const py::object& p,
                             std::string digest) { return t.with_file(to_path(p), std::move(digest)); },
             py::arg("path"), py::arg("digest") = "")
        .def("with_directory", [](const TreeSnapshot& t, const py::object& p) { return t.with_directory(to_path(p)); })
        .def("without", [](const TreeSnapshot& t, const py::object& p) { return t.without(to_path(p)); })
        .def("__contains__", [](const TreeSnapshot& t, const py::object& p) { return t.contains(to_path(p)); })
        .def("paths",
             [](const TreeSnapshot& t) {
                 std::vector<std::string> paths;
                 for (const auto& p : t.paths()) {
                     paths.push_back(p.str());
                 }
                 return paths;
             })
        .def("__len__", &TreeSnapshot::size)
        .def("__eq__", [](const TreeSnapshot& a, const TreeSnapshot& b) { return a == b; });

    // ---- citemodel ---------------------------------------------------------------
    m.def("resolve", [](const CitationFile& cf, const TreeSnapshot& tree,
                        const py::object& p) { return resolve(cf, tree, to_path(p)); });
    m.def("resolving_key", [](const CitationFile& cf, const py::object& p) {
        return resolving_key(cf, to_path(p)).str();
    });
    m.def("validate", [](const CitationFile& cf, const TreeSnapshot& tree) {
        std::vector<std::pair<std::string, std::string>> problems;
        for (const auto& problem : validate(cf, tree)) {
            problems.emplace_back(std::string(to_string(problem.rule)), problem.key.str());
        }
        return problems;
    }, "List of (rule, key) pairs; empty when the citation file is consistent with the tree.");

    // ---- document -----------------------------------------------------------------
    m.def("serialize_document", &serialize_document);
    m.def("parse_document", &parse_document);
    m.def("serialize_record", &serialize_record);
    m.def("parse_record", &parse_record);
    m.def("is_canonical_document", &is_canonical_document);

    // ---- versionstore -------------------------------------------------------------
    py::class_<Version>(m, "Version")
        .def_readonly("id", &Version::id)
        .def_readonly("parents", &Version::parents)
        .def_readonly("tree", &Version::tree)
        .def_readonly("cf", &Version::cf)
        .def_readonly("timestamp", &Version::timestamp);

    py::class_<TreeEdit>(m, "TreeEdit")
        .def_static("create_file", [](const py::object& p, std::string digest) {
            return TreeEdit::create_file(to_path(p), std::move(digest));
        }, py::arg("path"), py::arg("digest"))
        .def_static("modify_content", [](const py::object& p, std::string digest) {
            return TreeEdit::modify_content(to_path(p), std::move(digest));
        }, py::arg("path"), py::arg("digest"))
        .def_static("remove", [](const py::object& p) { return TreeEdit::remove(to_path(p)); })
        .def_static("rename", [](const py::object& from, const py::object& to) {
            return TreeEdit::rename(to_path(from), to_path(to));
        });

    py::class_<Repository>(m, "Repository")
        .def(py::init<std::string, CitationRecord, TreeSnapshot, std::string>(), py::arg("id"),
             py::arg("root_record"), py::arg("initial_tree") = TreeSnapshot(), py::arg("default_branch") = "main")
        .def_property_readonly("id", &Repository::id)
        .def_property_readonly("default_branch", &Repository::default_branch)
        .def("branches", &Repository::branches)
        .def("head_id", &Repository::head_id)
        .def("head", [](const Repository& r, const std::string& branch) { return Version(r.head(branch)); },
             py::arg("branch") = "main")
        .def("version", [](const Repository& r, const VersionId& id) { return Version(*r.version(id)); })
        .def("version_ids", &Repository::version_ids)
        .def("staged_citations", &Repository::staged_citations);

    const RoleContext member{Role::project_member, "python"};
    m.def("commit", [](Repository& repo, const std::string& branch, const std::vector<TreeEdit>& edits) {
        return commit(repo, branch, edits).id;
    }, py::arg("repo"), py::arg("branch"), py::arg("edits") = std::vector<TreeEdit>{});
    m.def("create_branch", &create_branch);
    m.def("add_cite", [member](Repository& repo, const std::string& branch, const py::object& p,
                               const CitationRecord& record) {
        return add_cite(repo, member, branch, to_path(p), record);
    });
    m.def("del_cite", [member](Repository& repo, const std::string& branch, const py::object& p) {
        return del_cite(repo, member, branch, to_path(p));
    });
    m.def("modify_cite", [member](Repository& repo, const std::string& branch, const py::object& p,
                                  const CitationRecord& record) {
        return modify_cite(repo, member, branch, to_path(p), record);
    });
    m.def("gen_cite", [](const Repository& repo, const VersionId& version, const py::object& p) {
        return gen_cite(repo, version, to_path(p));
    });
    m.def("copy_cite", [](const Repository& src, const VersionId& version, const py::object& subtree,
                          Repository& dst, const std::string& branch, const py::object& dst_path) {
        return copy_cite(src, version, to_path(subtree), dst, branch, to_path(dst_path)).id;
    });

    py::class_<Resolution>(m, "Resolution")
        .def_static("left", &Resolution::left)
        .def_static("right", &Resolution::right)
        .def_static("replace", &Resolution::replace)
        .def_static("pending", &Resolution::pending);
    py::class_<ConflictReport>(m, "ConflictReport")
        .def_property_readonly("key", [](const ConflictReport& r) { return r.key.str(); })
        .def_readonly("left", &ConflictReport::left)
        .def_readonly("right", &ConflictReport::right)
        .def_property_readonly("choice", [](const ConflictReport& r) {
            return std::string(to_string(r.resolution.choice));
        });

    m.def("merge_cite", [](Repository& repo, const std::string& into, const std::string& from,
                           const py::object& resolver) {
        auto outcome = merge_cite(repo, into, from, to_resolver(resolver));
        py::dict result;
        result["version"] = outcome.version ? py::cast(outcome.version->id) : py::none();
        result["conflicts"] = outcome.conflicts;
        std::vector<std::string> pruned;
        for (const auto& key : outcome.pruned) {
            pruned.push_back(key.str());
        }
        result["pruned"] = pruned;
        result["fast_forward"] = outcome.fast_forward;
        result["up_to_date"] = outcome.up_to_date;
        return result;
    }, py::arg("repo"), py::arg("into"), py::arg("from_branch"), py::arg("resolver") = "ours");
    m.def("fork_cite", [](const Repository& src, std::string new_id) { return fork_cite(src, std::move(new_id)); });

    // ---- gitadapter ---------------------------------------------------------------
    m.def("citation_file_name", &citation_file_name);
    m.def("load_citation_file", &load_citation_file, py::arg("worktree_root"));
    m.def("store_citation_file", &store_citation_file, py::arg("worktree_root"), py::arg("cf"));
    m.def("merge_citation_files", [](const CitationFile& base, const CitationFile& left, const CitationFile& right,
                                     const TreeSnapshot& merged_tree, const py::object& resolver) {
        auto outcome = merge_citation_files(base, left, right, merged_tree, to_resolver(resolver));
        return py::make_tuple(outcome.cf, outcome.conflicts);
    }, py::arg("base"), py::arg("left"), py::arg("right"), py::arg("merged_tree"), py::arg("resolver") = "ours");
    m.def("fetch_remote_citation_file", [](const std::string& url, int timeout_seconds) {
        py::gil_scoped_release release;
        return fetch_remote_citation_file(url, std::chrono::seconds(timeout_seconds));
    }, py::arg("url"), py::arg("timeout_seconds") = 20);

    // ---- cli -------------------------------------------------------------------------
    m.def("run_cli", [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out;
        std::ostringstream err;
        int status = cli::run(args, in, out, err);
        return py::make_tuple(status, out.str(), err.str());
    }, py::arg("args"), py::arg("input") = "", "Runs one gitcite command; returns (exit status, stdout, stderr).");
}
