#include "nsdp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "nsdp/elim_solver.hpp"
#include "nsdp/io.hpp"
#include "nsdp/oracle.hpp"
#include "nsdp/treedec.hpp"

namespace nsdp::cli {

using nlohmann::ordered_json;

namespace {

struct Options {
  std::string problem;
  std::string second;  // export-dot target or verify-td document
  std::string method = "nsdp";
  std::string order = "min-fill";
  std::string order_file;
  std::string partition_file;
  std::size_t cap = kDefaultBruteForceCap;
  std::string out;
  bool timing = false;
  bool no_absorb = false;
};

struct Ordered {
  EliminationSequence seq;
  std::string source;
};

EliminationSequence by_heuristic(const InteractionGraph& g, const std::string& name) {
  if (name == "min-fill") return order_min_fill(g);
  if (name == "min-degree") return order_min_degree(g);
  if (name == "mcs") return order_mcs(g);
  throw InputError("unknown ordering heuristic '" + name + "' (expected min-fill, min-degree or mcs)");
}

Ordered choose_order(const Problem& p, const InteractionGraph& g, const Options& o) {
  if (!o.order_file.empty())
    return {EliminationSequence::from_blocks(g, io::parse_blocks(o.order_file, p)), "file:" + o.order_file};
  return {by_heuristic(g, o.order), o.order};
}

Ordered choose_partition(const Problem& p, const InteractionGraph& g, const Options& o) {
  if (!o.partition_file.empty())
    return {EliminationSequence::from_blocks(g, io::parse_blocks(o.partition_file, p)), "file:" + o.partition_file};
  const auto partition = indistinguishable_partition(g, Indistinguishability::kUnion);
  return {order_blocks_min_fill(g, partition), "indistinguishable+min-fill"};
}

ordered_json blocks_json(const std::vector<std::vector<VarId>>& blocks, const Problem& p) {
  auto out = ordered_json::array();
  for (const auto& b : blocks) {
    auto names = ordered_json::array();
    for (VarId v : b) names.push_back(p.variable(v).name);
    out.push_back(std::move(names));
  }
  return out;
}

ordered_json edges_json(const std::vector<Edge>& edges, const Problem& p) {
  auto out = ordered_json::array();
  for (const auto& [u, v] : edges) out.push_back({p.variable(u).name, p.variable(v).name});
  return out;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw InputError("cannot write '" + o.out + "'");
  file << text;
}

void emit(const ordered_json& doc, const Options& o, std::ostream& out) { emit(doc.dump(2) + "\n", o, out); }

int cmd_solve(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Problem p = io::parse_problem(o.problem);
  const InteractionGraph g = build_interaction_graph(p);

  ordered_json report;
  report["method"] = o.method;
  Solution sol;
  ordered_json stats;
  if (o.method == "brute") {
    sol = brute_force(p, o.cap);
    report["ordering"] = nullptr;
    report["sequence"] = nullptr;
  } else if (o.method == "nsdp" || o.method == "block" || o.method == "treedec") {
    const auto ordered = o.method == "block" ? choose_partition(p, g, o) : choose_order(p, g, o);
    report["ordering"] = ordered.source;
    report["sequence"] = blocks_json(ordered.seq.blocks(), p);
    const auto rec = elimination_game(g, ordered.seq);
    stats["induced_width"] = rec.induced_width;
    stats["fill"] = rec.fill.size();
    if (o.method == "treedec") {
      auto td = td_from_elimination(g, rec);
      if (!o.no_absorb) td = absorb(std::move(td));
      sol = solve_tree_dp(p, td);
      stats["width"] = width(td);
      stats["bags"] = td.bags.size();
    } else {
      sol = solve(p, ordered.seq);
    }
    stats["tables"] = sol.stats.tables;
    stats["max_table_entries"] = sol.stats.max_table_entries;
  } else {
    throw InputError("unknown method '" + o.method + "' (expected nsdp, block, treedec or brute)");
  }

  report["status"] = std::string(to_string(sol.status));
  if (sol.optimal()) {
    report["value"] = *sol.value;
    ordered_json assignment;
    for (const auto& v : p.variables()) assignment[v.name] = (*sol.assignment)[v.id];
    report["assignment"] = std::move(assignment);
  } else {
    report["value"] = nullptr;
    report["assignment"] = nullptr;
  }
  if (o.timing) {
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    stats["wall_time_ms"] = elapsed.count();
  }
  report["stats"] = stats.is_null() ? ordered_json::object() : std::move(stats);
  emit(report, o, out);
  return sol.optimal() ? kOk : kInfeasible;
}

int cmd_order(const Options& o, std::ostream& out) {
  const Problem p = io::parse_problem(o.problem);
  const InteractionGraph g = build_interaction_graph(p);
  const auto ordered = choose_order(p, g, o);
  const auto rec = elimination_game(g, ordered.seq);
  ordered_json doc;
  doc["ordering"] = ordered.source;
  doc["sequence"] = blocks_json(ordered.seq.blocks(), p);
  doc["induced_width"] = rec.induced_width;
  doc["fill"] = rec.fill.size();
  doc["fill_edges"] = edges_json(rec.fill, p);
  emit(doc, o, out);
  return kOk;
}

TreeDecomposition build_td(const Problem& p, const InteractionGraph& g, const Options& o) {
  const auto rec = elimination_game(g, choose_order(p, g, o).seq);
  auto td = td_from_elimination(g, rec);
  return o.no_absorb ? td : absorb(std::move(td));
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  const Problem p = io::parse_problem(o.problem);
  const InteractionGraph g = build_interaction_graph(p);
  if (o.second == "interaction") {
    emit(dot::graph(p, g), o, out);
  } else if (o.second == "filled") {
    const auto rec = elimination_game(g, choose_order(p, g, o).seq);
    emit(dot::graph(p, rec.filled, rec.fill, "filled"), o, out);
  } else if (o.second == "etree") {
    emit(dot::elimination_tree(p, elimination_game(g, choose_order(p, g, o).seq)), o, out);
  } else if (o.second == "td") {
    emit(dot::tree_decomposition(p, build_td(p, g, o)), o, out);
  } else {
    throw InputError("unknown export target '" + o.second + "' (expected interaction, filled, etree or td)");
  }
  return kOk;
}

int cmd_treedec(const Options& o, std::ostream& out) {
  const Problem p = io::parse_problem(o.problem);
  const InteractionGraph g = build_interaction_graph(p);
  emit(io::td_to_json(build_td(p, g, o), p), o, out);
  return kOk;
}

int cmd_verify_td(const Options& o, std::ostream& out) {
  const Problem p = io::parse_problem(o.problem);
  const auto td = io::parse_td(o.second, p);
  const auto issues = verify_td(build_interaction_graph(p), td);
  ordered_json doc;
  doc["valid"] = issues.empty();
  doc["violations"] = issues;
  emit(doc, o, out);
  return issues.empty() ? kOk : kInvalid;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const Problem p = io::parse_problem(o.problem);
  const InteractionGraph g = build_interaction_graph(p);
  std::size_t linear = 0, tables = 0;
  for (const auto& c : p.objective()) (std::holds_alternative<LinearTerm>(c) ? linear : tables)++;
  int max_degree = 0;
  for (VarId v : g.vertices()) max_degree = std::max(max_degree, g.degree(v));
  ordered_json doc;
  doc["variables"] = p.num_variables();
  doc["constraints"] = p.constraints().size();
  doc["linear_terms"] = linear;
  doc["tables"] = tables;
  doc["edges"] = g.num_edges();
  doc["max_degree"] = max_degree;
  doc["chordal"] = is_chordal(g);
  ordered_json widths;
  for (const char* h : {"min-degree", "min-fill", "mcs"}) widths[h] = induced_width(g, by_heuristic(g, h));
  doc["induced_width"] = std::move(widths);
  emit(doc, o, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact solver for sparse discrete optimization problems by local elimination", "nsdp"};
  app.require_subcommand(1);

  const auto add_ordering = [&](CLI::App* cmd) {
    cmd->add_option("--order", o.order, "Ordering heuristic: min-fill, min-degree or mcs")->capture_default_str();
    cmd->add_option("--order-file", o.order_file, "Elimination sequence file (one block per line)");
  };
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("problem", o.problem, "Problem file")->required();
    cmd->add_option("--out", o.out, "Write the report to this file");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem and print a run report");
  add_common(solve_cmd);
  add_ordering(solve_cmd);
  solve_cmd->add_option("--method", o.method, "nsdp, block, treedec or brute")->capture_default_str();
  solve_cmd->add_option("--partition-file", o.partition_file, "Ordered block partition for --method block");
  solve_cmd->add_option("--cap", o.cap, "Assignment-space cap for --method brute")->capture_default_str();
  solve_cmd->add_flag("--timing", o.timing, "Include wall time in the report");
  solve_cmd->add_flag("--no-absorb", o.no_absorb, "Skip absorption for --method treedec");

  auto* order_cmd = app.add_subcommand("order", "Print an elimination sequence with its width and fill");
  add_common(order_cmd);
  add_ordering(order_cmd);

  auto* dot_cmd = app.add_subcommand("export-dot", "Emit a DOT rendering of a graph structure");
  add_common(dot_cmd);
  dot_cmd->add_option("target", o.second, "interaction, filled, etree or td")->required();
  add_ordering(dot_cmd);
  dot_cmd->add_flag("--no-absorb", o.no_absorb, "Keep one bag per elimination step");

  auto* td_cmd = app.add_subcommand("treedec", "Emit a tree decomposition document");
  add_common(td_cmd);
  add_ordering(td_cmd);
  td_cmd->add_flag("--no-absorb", o.no_absorb, "Keep one bag per elimination step");

  auto* verify_cmd = app.add_subcommand("verify-td", "Check a tree decomposition document against a problem");
  add_common(verify_cmd);
  verify_cmd->add_option("td", o.second, "Tree decomposition document")->required();

  auto* stats_cmd = app.add_subcommand("stats", "Print structural statistics of a problem");
  add_common(stats_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (order_cmd->parsed()) return cmd_order(o, out);
    if (dot_cmd->parsed()) return cmd_export_dot(o, out);
    if (td_cmd->parsed()) return cmd_treedec(o, out);
    if (verify_cmd->parsed()) return cmd_verify_td(o, out);
    return cmd_stats(o, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace nsdp::cli
