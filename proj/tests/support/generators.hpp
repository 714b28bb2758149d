#pragma once

// Seeded random inputs for the property tests.

#include "oracle.hpp"

#include "gitcite/citation_file.hpp"
#include "gitcite/tree.hpp"
#include "gitcite/versionstore.hpp"

#include <optional>
#include <random>
#include <vector>

namespace gitcite::gen {

using Rng = std::mt19937_64;

bool chance(Rng& rng, double p);
std::size_t below(Rng& rng, std::size_t n);

/// A path segment. Short names from a small pool so that siblings collide often.
std::string random_name(Rng& rng);

/// A valid record. `nasty` mixes in quotes, backslashes, control characters
/// and non-ASCII text, and leaves optional fields empty now and then.
CitationRecord random_record(Rng& rng, bool nasty = false);

/// A tree of at most `max_nodes` nodes, the root included.
TreeSnapshot random_tree(Rng& rng, std::size_t max_nodes);

/// The root entry plus each other node with probability `density`.
CitationFile random_citations(Rng& rng, const TreeSnapshot& tree, double density, bool nasty = false);

CanonicalPath pick_node(Rng& rng, const TreeSnapshot& tree);
CanonicalPath pick_directory(Rng& rng, const TreeSnapshot& tree);
std::optional<CanonicalPath> pick_file(Rng& rng, const TreeSnapshot& tree);
std::optional<CanonicalPath> pick_non_root(Rng& rng, const TreeSnapshot& tree);

/// A child of `dir` that does not exist in `tree` yet.
CanonicalPath fresh_child(Rng& rng, const TreeSnapshot& tree, const CanonicalPath& dir, PathKind kind);

/// The tree after one edit, with the same rules a commit applies (removing
/// the last entry of a directory removes the directory).
TreeSnapshot apply_edit(const TreeSnapshot& tree, const TreeEdit& edit);

/// `count` edits that apply one after another to `tree`.
std::vector<TreeEdit> random_tree_edits(Rng& rng, TreeSnapshot tree, std::size_t count);

oracle::Entries as_entries(const CitationFile& cf);
oracle::Nodes as_nodes(const TreeSnapshot& tree);

} // namespace gitcite::gen
