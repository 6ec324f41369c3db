#include "growth/formats.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace growth {

namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + e.what(),
                     line, col);
  }
}

Rational rational_from_json(const ordered_json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a rational string \"p/q\" or an integer");
}

}  // namespace

LoadedSystem load_system(const std::string& text) {
  ordered_json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("functions") || !doc["functions"].is_array()) {
    throw ParseError("system file must be an object with a \"functions\" array");
  }
  LoadedSystem out;
  std::unordered_map<std::string, FunctionId> ids;
  const auto& fns = doc["functions"];
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const auto& f = fns[i];
    std::string where = "functions[" + std::to_string(i) + "]";
    if (!f.is_object() || !f.contains("name") || !f["name"].is_string() || !f.contains("value") ||
        !f.contains("rule") || !f["rule"].is_array() || f["rule"].size() != 2) {
      throw ParseError(where + ": expected {\"name\", \"value\", \"rule\": [left, right]}");
    }
    std::string name = f["name"].get<std::string>();
    out.system.functions.push_back({name, rational_from_json(f["value"], where + ".value")});
    ids.emplace(name, static_cast<FunctionId>(i));
  }
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const auto& rule = fns[i]["rule"];
    FunctionId pair[2];
    for (int s = 0; s < 2; ++s) {
      if (!rule[s].is_string()) {
        throw ParseError("functions[" + std::to_string(i) + "].rule: targets must be names");
      }
      std::string target = rule[s].get<std::string>();
      auto it = ids.find(target);
      if (it == ids.end()) {
        out.violations.push_back({"unknown-rule-target",
                                  "rule of '" + out.system.functions[i].name +
                                      "' points at unknown function '" + target + "'",
                                  static_cast<std::int64_t>(i)});
        pair[s] = static_cast<FunctionId>(out.system.functions.size());  // out of range
      } else {
        pair[s] = it->second;
      }
    }
    out.system.rule.emplace_back(pair[0], pair[1]);
  }
  return out;
}

ReplacementSystem parse_system(const std::string& text) {
  LoadedSystem loaded = load_system(text);
  std::vector<Violation> violations = std::move(loaded.violations);
  for (auto& v : validate(loaded.system)) violations.push_back(std::move(v));
  if (!violations.empty()) {
    throw FormatError(violations.front().code,
                      "invalid system: " + violations.front().detail);
  }
  return std::move(loaded.system);
}

std::string format_system(const ReplacementSystem& system) {
  ordered_json fns = ordered_json::array();
  for (FunctionId v = 0; v < system.size(); ++v) {
    ordered_json f;
    f["name"] = system.name(v);
    f["value"] = system.c(v).str();
    f["rule"] = {system.name(system.left(v)), system.name(system.right(v))};
    fns.push_back(std::move(f));
  }
  ordered_json doc;
  doc["functions"] = std::move(fns);
  return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

Rational parse_rational_at(const std::string& text, int line) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " at line " + std::to_string(line), line);
  }
}

}  // namespace

ChipFireGraph parse_chipfire(const std::string& text) {
  ChipFireGraph g;
  std::unordered_map<std::string, std::size_t> seen;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "vertex" && toks.size() == 3) {
      if (!seen.emplace(toks[1], g.vertices.size()).second) {
        throw ParseError("duplicate vertex '" + toks[1] + "' at line " + std::to_string(lineno),
                         lineno);
      }
      g.vertices.push_back({toks[1], parse_rational_at(toks[2], lineno)});
    } else if (toks[0] == "edge" && toks.size() == 3) {
      g.edges.emplace_back(toks[1], toks[2]);
    } else {
      throw ParseError("expected 'vertex <name> <value>' or 'edge <from> <to>' at line " +
                           std::to_string(lineno),
                       lineno);
    }
  }
  for (const auto& [from, to] : g.edges) {
    for (const std::string& name : {from, to}) {
      if (!seen.contains(name)) {
        throw ParseError("edge mentions undeclared vertex '" + name + "'");
      }
    }
  }
  return g;
}

std::string format_chipfire(const ChipFireGraph& graph) {
  std::ostringstream os;
  for (const auto& v : graph.vertices) os << "vertex " << v.name << " " << v.chips << "\n";
  for (const auto& [from, to] : graph.edges) os << "edge " << from << " " << to << "\n";
  return os.str();
}

ReplacementSystem system_from_chipfire(const ChipFireGraph& graph) {
  ReplacementSystem system;
  std::unordered_map<std::string, FunctionId> ids;
  for (const auto& v : graph.vertices) {
    ids.emplace(v.name, static_cast<FunctionId>(system.functions.size()));
    system.functions.push_back({v.name, v.chips});
  }
  std::vector<std::vector<std::string>> out(graph.vertices.size());
  for (const auto& [from, to] : graph.edges) out[ids.at(from)].push_back(to);
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (out[v].size() != 2) {
      throw FormatError("outdegree-not-2",
                        "vertex '" + graph.vertices[v].name + "' has outdegree " +
                            std::to_string(out[v].size()) +
                            "; replacements must produce exactly two chips, otherwise the best "
                            "average may fail to converge");
    }
    // Canonical pair order: self-loops first, then sorted by target name.
    auto& pair = out[v];
    const std::string& self = graph.vertices[v].name;
    std::sort(pair.begin(), pair.end(), [&](const std::string& a, const std::string& b) {
      bool la = a == self, lb = b == self;
      if (la != lb) return la;
      return a < b;
    });
    system.rule.emplace_back(ids.at(pair[0]), ids.at(pair[1]));
  }
  return system;
}

ChipFireGraph chipfire_from_system(const ReplacementSystem& system) {
  ChipFireGraph g;
  for (FunctionId v = 0; v < system.size(); ++v) {
    g.vertices.push_back({system.name(v), system.c(v)});
    g.edges.emplace_back(system.name(v), system.name(system.left(v)));
    g.edges.emplace_back(system.name(v), system.name(system.right(v)));
  }
  return g;
}

Grammar parse_grammar(const std::string& text) {
  Grammar g;
  std::unordered_map<std::string, std::size_t> index;
  auto entry = [&](const std::string& name) -> Grammar::Entry& {
    auto [it, inserted] = index.emplace(name, g.entries.size());
    if (inserted) g.entries.push_back({name, std::nullopt, std::nullopt});
    return g.entries[it->second];
  };
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() == 4 && toks[1] == "->") {
      Grammar::Entry& e = entry(toks[0]);
      if (e.production) {
        throw ParseError("duplicate production for '" + toks[0] + "' at line " +
                             std::to_string(lineno),
                         lineno);
      }
      e.production = {toks[2], toks[3]};
      entry(toks[2]);
      entry(toks[3]);
    } else if (toks.size() == 3 && toks[1] == "=>") {
      Grammar::Entry& e = entry(toks[0]);
      if (e.weight) {
        throw ParseError("duplicate weight for '" + toks[0] + "' at line " + std::to_string(lineno),
                         lineno);
      }
      e.weight = parse_rational_at(toks[2], lineno);
    } else {
      throw ParseError("expected 'V -> U W' or 'V => weight' at line " + std::to_string(lineno),
                       lineno);
    }
  }
  return g;
}

std::string format_grammar(const Grammar& grammar) {
  std::ostringstream os;
  for (const auto& e : grammar.entries) {
    if (e.production) os << e.name << " -> " << e.production->first << " " << e.production->second << "\n";
  }
  for (const auto& e : grammar.entries) {
    if (e.weight) os << e.name << " => " << *e.weight << "\n";
  }
  return os.str();
}

ReplacementSystem system_from_grammar(const Grammar& grammar) {
  ReplacementSystem system;
  std::unordered_map<std::string, FunctionId> ids;
  for (const auto& e : grammar.entries) {
    if (!e.production) {
      throw FormatError("missing-production", "nonterminal '" + e.name + "' has no production");
    }
    if (!e.weight) {
      throw FormatError("missing-weight", "nonterminal '" + e.name + "' has no terminal weight");
    }
    ids.emplace(e.name, static_cast<FunctionId>(system.functions.size()));
    system.functions.push_back({e.name, *e.weight});
  }
  for (const auto& e : grammar.entries) {
    system.rule.emplace_back(ids.at(e.production->first), ids.at(e.production->second));
  }
  return system;
}

Grammar grammar_from_system(const ReplacementSystem& system) {
  Grammar g;
  for (FunctionId v = 0; v < system.size(); ++v) {
    g.entries.push_back({system.name(v),
                         std::make_pair(system.name(system.left(v)), system.name(system.right(v))),
                         system.c(v)});
  }
  return g;
}

namespace {

std::vector<Rational> rational_map_from_json(const ordered_json& j, const ReplacementSystem& system,
                                             const std::string& where, bool require_all) {
  if (!j.is_object()) throw ParseError(where + ": expected an object mapping names to rationals");
  std::vector<Rational> out(system.size(), Rational(0));
  std::vector<bool> present(system.size(), false);
  for (const auto& [name, value] : j.items()) {
    FunctionId id = system.size();
    for (FunctionId v = 0; v < system.size(); ++v) {
      if (system.name(v) == name) {
        id = v;
        break;
      }
    }
    if (id == system.size()) {
      throw FormatError("unknown-function", where + " mentions unknown function '" + name + "'");
    }
    out[id] = rational_from_json(value, where + "." + name);
    present[id] = true;
  }
  if (require_all) {
    for (FunctionId v = 0; v < system.size(); ++v) {
      if (!present[v]) {
        throw FormatError("missing-function",
                          where + " is missing an entry for '" + system.name(v) + "'");
      }
    }
  }
  return out;
}

}  // namespace

CertificateFile parse_certificate(const std::string& text, const ReplacementSystem& system) {
  ordered_json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("certificate file must be a JSON object");
  CertificateFile out;
  if (doc.contains("theta")) {
    PrimalCertificate cert;
    cert.theta = rational_from_json(doc["theta"], "theta");
    if (!doc.contains("z")) throw ParseError("primal certificate needs a \"z\" map");
    cert.z = rational_map_from_json(doc["z"], system, "z", /*require_all=*/true);
    out.certificate = std::move(cert);
  } else if (doc.contains("x") && doc.contains("y")) {
    DualCertificate cert;
    cert.x = rational_map_from_json(doc["x"], system, "x", /*require_all=*/false);
    cert.y = rational_map_from_json(doc["y"], system, "y", /*require_all=*/false);
    out.certificate = std::move(cert);
  } else {
    throw ParseError("certificate must contain \"theta\"/\"z\" (primal) or \"x\"/\"y\" (dual)");
  }
  if (doc.contains("objective")) {
    out.stated_objective = rational_from_json(doc["objective"], "objective");
  }
  return out;
}

std::string format_primal(const ReplacementSystem& system, const PrimalCertificate& cert) {
  ordered_json z;
  for (FunctionId v = 0; v < system.size(); ++v) z[system.name(v)] = cert.z[v].str();
  ordered_json doc;
  doc["theta"] = cert.theta.str();
  doc["z"] = std::move(z);
  return doc.dump(2) + "\n";
}

std::string format_dual(const ReplacementSystem& system, const DualCertificate& cert) {
  ordered_json x, y;
  for (FunctionId v = 0; v < system.size(); ++v) {
    if (cert.x[v] != Rational(0)) x[system.name(v)] = cert.x[v].str();
    if (cert.y[v] != Rational(0)) y[system.name(v)] = cert.y[v].str();
  }
  ordered_json doc;
  doc["x"] = std::move(x);
  doc["y"] = std::move(y);
  doc["objective"] = dual_objective(system, cert).str();
  return doc.dump(2) + "\n";
}

}  // namespace growth
