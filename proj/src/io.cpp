#include "nsdp/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nsdp::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError((where.empty() ? "/" : where) + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

Value integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<Value>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

VarId lookup(const Problem& p, const json& name, const std::string& where) {
  const auto s = text(name, where);
  auto id = p.find(s);
  if (!id) fail(where, "unknown variable '" + s + "'");
  return *id;
}

Relation relation(const json& v, const std::string& where) {
  const auto s = text(v, where);
  if (s == "<=") return Relation::kLessEqual;
  if (s == "=") return Relation::kEqual;
  if (s == ">=") return Relation::kGreaterEqual;
  fail(where, "unsupported relation '" + s + "' (expected <=, = or >=)");
}

LinearTerm term(const Problem& p, const json& t, const std::string& where) {
  return LinearTerm{lookup(p, field(t, "var", where), where + "/var"), integer(field(t, "coef", where), where + "/coef")};
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Problem problem_from_json(const json& doc) {
  if (!doc.is_object()) fail("/", "expected an object");
  if (auto it = doc.find("version"); it != doc.end() && integer(*it, "/version") != kFormatVersion)
    fail("/version", "unsupported format version");

  Problem p;
  const auto& vars = array(field(doc, "variables", ""), "/variables");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string where = "/variables/" + std::to_string(i);
    const auto name = text(field(vars[i], "name", where), where + "/name");
    std::vector<Value> domain{0, 1};
    if (auto it = vars[i].find("domain"); it != vars[i].end()) {
      domain.clear();
      const auto& d = array(*it, where + "/domain");
      for (std::size_t k = 0; k < d.size(); ++k) domain.push_back(integer(d[k], where + "/domain/" + std::to_string(k)));
    }
    p.add_variable(name, std::move(domain));
  }

  if (auto obj = doc.find("objective"); obj != doc.end()) {
    if (!obj->is_object()) fail("/objective", "expected an object");
    if (auto lin = obj->find("linear"); lin != obj->end()) {
      const auto& terms = array(*lin, "/objective/linear");
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto t = term(p, terms[i], "/objective/linear/" + std::to_string(i));
        p.add_linear(t.var, t.coef);
      }
    }
    if (auto tabs = obj->find("tables"); tabs != obj->end()) {
      const auto& tables = array(*tabs, "/objective/tables");
      for (std::size_t i = 0; i < tables.size(); ++i) {
        const std::string where = "/objective/tables/" + std::to_string(i);
        std::vector<VarId> scope;
        const auto& s = array(field(tables[i], "scope", where), where + "/scope");
        for (std::size_t k = 0; k < s.size(); ++k) scope.push_back(lookup(p, s[k], where + "/scope/" + std::to_string(k)));
        std::vector<Value> values;
        const auto& v = array(field(tables[i], "values", where), where + "/values");
        for (std::size_t k = 0; k < v.size(); ++k) values.push_back(integer(v[k], where + "/values/" + std::to_string(k)));
        p.add_table(std::move(scope), std::move(values));
      }
    }
  }

  if (auto cons = doc.find("constraints"); cons != doc.end()) {
    const auto& list = array(*cons, "/constraints");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "/constraints/" + std::to_string(i);
      LinearConstraint c;
      const auto& terms = array(field(list[i], "terms", where), where + "/terms");
      for (std::size_t k = 0; k < terms.size(); ++k) c.terms.push_back(term(p, terms[k], where + "/terms/" + std::to_string(k)));
      c.relation = relation(field(list[i], "relation", where), where + "/relation");
      c.rhs = integer(field(list[i], "rhs", where), where + "/rhs");
      if (auto label = list[i].find("label"); label != list[i].end()) c.label = text(*label, where + "/label");
      p.add_constraint(std::move(c));
    }
  }

  if (auto issues = validate_problem(p); !issues.empty()) throw InputError("invalid problem: " + issues.front());
  return p;
}

Problem parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed problem document: ") + e.what());
  }
  return problem_from_json(doc);
}

Problem parse_problem(const std::filesystem::path& path) {
  try {
    return parse_problem_text(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

ordered_json problem_to_json(const Problem& p) {
  ordered_json doc;
  doc["version"] = kFormatVersion;
  auto& vars = doc["variables"] = ordered_json::array();
  for (const auto& v : p.variables()) {
    ordered_json entry{{"name", v.name}};
    if (v.domain != std::vector<Value>{0, 1}) entry["domain"] = v.domain;
    vars.push_back(std::move(entry));
  }
  auto linear = ordered_json::array();
  auto tables = ordered_json::array();
  for (const auto& c : p.objective()) {
    if (const auto* lin = std::get_if<LinearTerm>(&c)) {
      linear.push_back({{"var", p.variable(lin->var).name}, {"coef", lin->coef}});
      continue;
    }
    const auto& t = std::get<TableComponent>(c);
    auto scope = ordered_json::array();
    for (VarId v : t.scope) scope.push_back(p.variable(v).name);
    tables.push_back({{"scope", std::move(scope)}, {"values", t.values}});
  }
  doc["objective"] = {{"linear", std::move(linear)}, {"tables", std::move(tables)}};
  auto& cons = doc["constraints"] = ordered_json::array();
  for (const auto& c : p.constraints()) {
    auto terms = ordered_json::array();
    for (const auto& t : c.terms) terms.push_back({{"var", p.variable(t.var).name}, {"coef", t.coef}});
    ordered_json entry;
    if (!c.label.empty()) entry["label"] = c.label;
    entry["terms"] = std::move(terms);
    entry["relation"] = std::string(to_string(c.relation));
    entry["rhs"] = c.rhs;
    cons.push_back(std::move(entry));
  }
  return doc;
}

std::vector<std::vector<VarId>> parse_blocks_text(const std::string& text, const Problem& p) {
  std::vector<std::vector<VarId>> blocks;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::vector<VarId> block;
    std::istringstream fields(line);
    std::string name;
    while (std::getline(fields, name, ',')) {
      name = trim(name);
      if (name.empty()) throw InputError("line " + std::to_string(lineno) + ": empty variable name");
      auto id = p.find(name);
      if (!id) throw InputError("line " + std::to_string(lineno) + ": unknown variable '" + name + "'");
      block.push_back(*id);
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::vector<std::vector<VarId>> parse_blocks(const std::filesystem::path& path, const Problem& p) {
  try {
    return parse_blocks_text(read_file(path), p);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string block_label(const std::vector<VarId>& block, const Problem& p) {
  std::string out;
  for (std::size_t i = 0; i < block.size(); ++i) out += (i ? "," : "") + p.variable(block[i]).name;
  return out;
}

std::string format_blocks(const std::vector<std::vector<VarId>>& blocks, const Problem& p) {
  std::string out;
  for (const auto& b : blocks) out += block_label(b, p) + "\n";
  return out;
}

TreeDecomposition td_from_json(const json& doc, const Problem& p) {
  TreeDecomposition td;
  const auto& bags = array(field(doc, "bags", ""), "/bags");
  for (std::size_t i = 0; i < bags.size(); ++i) {
    const std::string where = "/bags/" + std::to_string(i);
    std::vector<VarId> bag;
    const auto& names = array(bags[i], where);
    for (std::size_t k = 0; k < names.size(); ++k) bag.push_back(lookup(p, names[k], where + "/" + std::to_string(k)));
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
  }
  const auto& edges = array(field(doc, "edges", ""), "/edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "/edges/" + std::to_string(i);
    const auto& e = array(edges[i], where);
    if (e.size() != 2) fail(where, "expected a pair of bag indices");
    td.edges.emplace_back(static_cast<int>(integer(e[0], where + "/0")), static_cast<int>(integer(e[1], where + "/1")));
  }
  if (auto root = doc.find("root"); root != doc.end()) td.root = static_cast<int>(integer(*root, "/root"));
  return td;
}

TreeDecomposition parse_td(const std::filesystem::path& path, const Problem& p) {
  try {
    return td_from_json(json::parse(read_file(path)), p);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": malformed tree decomposition: " + e.what());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

ordered_json td_to_json(const TreeDecomposition& td, const Problem& p) {
  ordered_json doc;
  auto& bags = doc["bags"] = ordered_json::array();
  for (const auto& bag : td.bags) {
    auto names = ordered_json::array();
    for (VarId v : bag) names.push_back(p.variable(v).name);
    bags.push_back(std::move(names));
  }
  auto& edges = doc["edges"] = ordered_json::array();
  for (const auto& [a, b] : td.edges) edges.push_back({a, b});
  doc["root"] = td.root;
  return doc;
}

}  // namespace nsdp::io

namespace nsdp::dot {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string graph(const Problem& p, const InteractionGraph& g, const std::vector<Edge>& dashed,
                  const std::string& name) {
  std::ostringstream out;
  out << "graph " << quoted(name) << " {\n";
  for (VarId v : g.vertices()) out << "  " << quoted(p.variable(v).name) << ";\n";
  for (const auto& e : g.edges()) {
    out << "  " << quoted(p.variable(e.first).name) << " -- " << quoted(p.variable(e.second).name);
    if (std::find(dashed.begin(), dashed.end(), e) != dashed.end()) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string elimination_tree(const Problem& p, const EliminationRecord& rec) {
  const auto tree = nsdp::elimination_tree(rec);
  std::ostringstream out;
  out << "digraph \"etree\" {\n";
  for (std::size_t i = 0; i < rec.steps.size(); ++i)
    out << "  s" << i << " [label=" << quoted(io::block_label(rec.steps[i].block, p)) << "];\n";
  for (std::size_t i = 0; i < tree.parent.size(); ++i)
    if (tree.parent[i] != EliminationTree::kRoot) out << "  s" << i << " -> s" << tree.parent[i] << ";\n";
  out << "}\n";
  return out.str();
}

std::string tree_decomposition(const Problem& p, const TreeDecomposition& td) {
  std::ostringstream out;
  out << "graph \"td\" {\n";
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "  b" << i << " [shape=box, label=" << quoted(io::block_label(td.bags[i], p));
    if (static_cast<int>(i) == td.root) out << ", peripheries=2";
    out << "];\n";
  }
  for (const auto& [a, b] : td.edges) out << "  b" << a << " -- b" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace nsdp::dot
