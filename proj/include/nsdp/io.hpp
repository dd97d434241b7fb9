#pragma once

// File formats.
//
// Problem files are JSON documents:
//
//   {
//     "version": 1,
//     "variables":   [{"name": "x1"}, {"name": "y", "domain": [0, 1, 2]}],
//     "objective":   {"linear": [{"var": "x1", "coef": 2}],
//                     "tables": [{"scope": ["x1", "y"], "values": [...]}]},
//     "constraints": [{"label": "C1", "terms": [{"var": "x1", "coef": 3}],
//                      "relation": "<=", "rhs": 6}]
//   }
//
// Domains default to [0, 1]. Table values are row-major over the scope
// domains, last scope variable fastest. Relations are "<=", "=" or ">=".
//
// Ordering and partition files are plain text: one block per line, variable
// names separated by commas. Blank lines and '#' comments are skipped.
//
// Tree decomposition documents are JSON: {"bags": [["x2", "x5"], ...],
// "edges": [[0, 1], ...], "root": 0}.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "nsdp/model.hpp"
#include "nsdp/ordering.hpp"
#include "nsdp/treedec.hpp"

namespace nsdp::io {

inline constexpr int kFormatVersion = 1;

/// Throws InputError with the offending JSON path or line.
Problem problem_from_json(const nlohmann::json& doc);
Problem parse_problem_text(const std::string& text);
Problem parse_problem(const std::filesystem::path& path);

/// Canonical form: linear terms first, then tables; default domains omitted.
nlohmann::ordered_json problem_to_json(const Problem& p);

std::vector<std::vector<VarId>> parse_blocks_text(const std::string& text, const Problem& p);
std::vector<std::vector<VarId>> parse_blocks(const std::filesystem::path& path, const Problem& p);
std::string format_blocks(const std::vector<std::vector<VarId>>& blocks, const Problem& p);

TreeDecomposition td_from_json(const nlohmann::json& doc, const Problem& p);
TreeDecomposition parse_td(const std::filesystem::path& path, const Problem& p);
nlohmann::ordered_json td_to_json(const TreeDecomposition& td, const Problem& p);

/// Names joined by commas, e.g. "x1,x4".
std::string block_label(const std::vector<VarId>& block, const Problem& p);

std::string read_file(const std::filesystem::path& path);

}  // namespace nsdp::io

namespace nsdp::dot {

/// Undirected graph; `dashed` edges are drawn with style=dashed.
std::string graph(const Problem& p, const InteractionGraph& g, const std::vector<Edge>& dashed = {},
                  const std::string& name = "interaction");

/// Elimination tree over blocks, edges pointing child -> parent.
std::string elimination_tree(const Problem& p, const EliminationRecord& rec);

std::string tree_decomposition(const Problem& p, const TreeDecomposition& td);

}  // namespace nsdp::dot
