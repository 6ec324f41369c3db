#include "growth/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "growth/evaluator.hpp"
#include "growth/formats.hpp"
#include "growth/rates.hpp"

namespace growth {

namespace {

constexpr int kOk = 0;
constexpr int kSemanticError = 1;
constexpr int kParseError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ReplacementSystem load_valid_system(const std::string& path) {
  return parse_system(read_file(path));
}

int cmd_validate(const std::string& path, std::ostream& out) {
  LoadedSystem loaded = load_system(read_file(path));
  std::vector<Violation> violations = std::move(loaded.violations);
  for (auto& v : validate(loaded.system)) {
    // Loader violations already cover unresolved names for the same slot.
    bool duplicate = false;
    for (const auto& prior : violations) {
      if (prior.code == v.code && prior.index == v.index) duplicate = true;
    }
    if (!duplicate) violations.push_back(std::move(v));
  }
  if (violations.empty()) {
    out << "ok\n";
    return kOk;
  }
  for (const auto& v : violations) out << v.code << ": " << v.detail << "\n";
  return kSemanticError;
}

int cmd_table(const std::string& path, std::size_t n, bool dot, std::ostream& out) {
  ReplacementSystem system = load_valid_system(path);
  if (dot) {
    out << tree_dot(system, best_tree(system, n));
    return kOk;
  }
  std::vector<Rational> table = g_table(system, n);
  for (std::size_t k = 1; k <= n; ++k) out << k << "\t" << table[k - 1] << "\n";
  return kOk;
}

int cmd_rate(const std::string& path, const std::string& eps_text, std::ostream& out) {
  ReplacementSystem system = load_valid_system(path);
  if (eps_text.empty()) {
    out << exact_rate(system) << "\n";
    return kOk;
  }
  Rational eps;
  try {
    eps = Rational::parse(eps_text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (eps <= Rational(0)) throw ParseError("--eps must be positive");
  RateInterval interval = approx_rate(system, eps);
  out << interval.lo << "\t" << interval.hi << "\n";
  return kOk;
}

int cmd_witness(const std::string& path, bool dot, std::ostream& out) {
  ReplacementSystem system = load_valid_system(path);
  PrimalCertificate primal = certificate_at_rate(system);
  PseudoLoop loop = pseudo_loop_from_optimum(system, primal);
  DualCertificate dual = dual_from_pseudo_loop(system, loop);
  if (dot) {
    out << loop_dot(system, loop);
    return kOk;
  }
  Rational objective = dual_objective(system, dual);
  bool primal_ok = check_primal(system, primal).empty();
  bool dual_ok = check_dual(system, dual).empty();
  bool equal = objective == primal.theta && rate(system, loop) == primal.theta;

  nlohmann::ordered_json doc;
  doc["rate"] = primal.theta.str();
  nlohmann::ordered_json jloop;
  jloop["text"] = loop_text(system, loop);
  jloop["marked_path"] = path_string(loop.marked_path);
  jloop["value"] = loop_value(system, loop).str();
  jloop["leaves_excluding_marked"] = loop_size(loop);
  jloop["rate"] = rate(system, loop).str();
  doc["loop"] = std::move(jloop);
  doc["primal"] = nlohmann::ordered_json::parse(format_primal(system, primal));
  doc["dual"] = nlohmann::ordered_json::parse(format_dual(system, dual));
  nlohmann::ordered_json checks;
  checks["primal_feasible"] = primal_ok;
  checks["dual_feasible"] = dual_ok;
  checks["dual_objective_equals_theta"] = equal;
  doc["checks"] = std::move(checks);
  out << doc.dump(2) << "\n";
  return primal_ok && dual_ok && equal ? kOk : kSemanticError;
}

int cmd_certify(const std::string& path, const std::string& cert_path, std::ostream& out) {
  ReplacementSystem system = load_valid_system(path);
  CertificateFile file = parse_certificate(read_file(cert_path), system);
  std::vector<Violation> violations;
  Rational objective;
  const char* kind;
  if (auto* primal = std::get_if<PrimalCertificate>(&file.certificate)) {
    kind = "primal";
    violations = check_primal(system, *primal);
    objective = primal->theta;
  } else {
    kind = "dual";
    const auto& dual = std::get<DualCertificate>(file.certificate);
    violations = check_dual(system, dual);
    objective = dual_objective(system, dual);
  }
  if (file.stated_objective && *file.stated_objective != objective) {
    violations.push_back({"objective-mismatch",
                          "stated objective " + file.stated_objective->str() +
                              " differs from computed " + objective.str(),
                          -1});
  }
  if (violations.empty()) {
    out << kind << " feasible, objective " << objective << "\n";
    return kOk;
  }
  for (const auto& v : violations) out << v.code << ": " << v.detail << "\n";
  return kSemanticError;
}

int cmd_convert(const std::string& from, const std::string& path, std::ostream& out) {
  std::string text = read_file(path);
  ReplacementSystem system;
  if (from == "chipfire") {
    system = system_from_chipfire(parse_chipfire(text));
  } else if (from == "grammar") {
    system = system_from_grammar(parse_grammar(text));
  } else {
    throw ParseError("--from must be 'chipfire' or 'grammar'");
  }
  require_valid(system);
  out << format_system(system);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact growth rates of binary replacement systems"};
  app.require_subcommand(1);

  std::string path, cert_path, eps_text, from;
  std::size_t n = 10;
  bool exact = false, dot = false;

  auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a system file");
  validate_cmd->add_option("file", path, "system file")->required();

  auto* table_cmd = app.add_subcommand("table", "Print n, g(n) pairs");
  table_cmd->add_option("file", path, "system file")->required();
  table_cmd->add_option("--n", n, "table length")->required()->check(CLI::PositiveNumber);
  table_cmd->add_flag("--dot", dot, "emit the optimal tree at n as dot instead");

  auto* rate_cmd = app.add_subcommand("rate", "Exact growth rate or a bounding interval");
  rate_cmd->add_option("file", path, "system file")->required();
  auto* exact_flag = rate_cmd->add_flag("--exact", exact, "exact rational rate (default)");
  rate_cmd->add_option("--eps", eps_text, "interval width bound, e.g. 1/100")
      ->excludes(exact_flag);

  auto* witness_cmd =
      app.add_subcommand("witness", "Witness pseudo-loop with primal and dual certificates");
  witness_cmd->add_option("file", path, "system file")->required();
  witness_cmd->add_flag("--dot", dot, "emit the loop as dot instead");

  auto* certify_cmd = app.add_subcommand("certify", "Check a certificate file exactly");
  certify_cmd->add_option("file", path, "system file")->required();
  certify_cmd->add_option("--cert", cert_path, "certificate file")->required();

  auto* convert_cmd = app.add_subcommand("convert", "Convert chipfire/grammar input to a system file");
  convert_cmd->add_option("--from", from, "input format: chipfire | grammar")->required();
  convert_cmd->add_option("file", path, "input file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    if (app.got_subcommand(validate_cmd)) return cmd_validate(path, out);
    if (app.got_subcommand(table_cmd)) return cmd_table(path, n, dot, out);
    if (app.got_subcommand(rate_cmd)) return cmd_rate(path, eps_text, out);
    if (app.got_subcommand(witness_cmd)) return cmd_witness(path, dot, out);
    if (app.got_subcommand(certify_cmd)) return cmd_certify(path, cert_path, out);
    if (app.got_subcommand(convert_cmd)) return cmd_convert(from, path, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const FormatError& e) {
    err << e.code() << ": " << e.what() << "\n";
    return kSemanticError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kSemanticError;
  }
  return kParseError;
}

}  // namespace growth
