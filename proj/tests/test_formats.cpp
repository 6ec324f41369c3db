#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "growth/formats.hpp"
#include "support/fixtures.hpp"

using namespace growth;
namespace gt = growth::testing;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(GROWTH_FIXTURE_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// The chip-firing game does not order a vertex's two out-edges, so decoding
// canonicalizes each pair; systems are compared up to that per-rule swap.
bool equivalent_mod_swap(const ReplacementSystem& a, const ReplacementSystem& b) {
  if (a.size() != b.size()) return false;
  for (FunctionId v = 0; v < a.size(); ++v) {
    if (a.functions[v].name != b.functions[v].name || a.functions[v].c != b.functions[v].c) {
      return false;
    }
    auto [au, aw] = a.rule[v];
    auto [bu, bw] = b.rule[v];
    if (!((au == bu && aw == bw) || (au == bw && aw == bu))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("system files parse and round-trip byte-stably") {
  for (const char* name : {"rot4.json", "s1.json", "remark1.json", "remark2.json"}) {
    ReplacementSystem system = parse_system(fixture(name));
    CHECK(validate(system).empty());
    std::string canonical = format_system(system);
    ReplacementSystem again = parse_system(canonical);
    CHECK(again == system);
    CHECK(format_system(again) == canonical);
  }
  CHECK(parse_system(fixture("rot4.json")) == gt::rot4());
  CHECK(parse_system(fixture("remark1.json")) == gt::remark_family(1));

  // Canonical formatting is the identity under reparsing for every fixture.
  for (const auto& system : gt::all_fixtures()) {
    CHECK(parse_system(format_system(system)) == system);
  }
}

TEST_CASE("system files accept integer values") {
  ReplacementSystem s = parse_system(
      R"({"functions": [{"name": "a", "value": -2, "rule": ["a", "a"]}]})");
  CHECK(s.c(0) == Rational(-2));
}

TEST_CASE("system file errors") {
  CHECK_THROWS_AS(parse_system("{"), ParseError);
  CHECK_THROWS_AS(parse_system("[]"), ParseError);
  CHECK_THROWS_AS(parse_system(fixture("bad_rational.json")), ParseError);
  CHECK_THROWS_AS(parse_system(fixture("bad_target.json")), FormatError);

  LoadedSystem loaded = load_system(fixture("bad_target.json"));
  REQUIRE(loaded.violations.size() == 1);
  CHECK(loaded.violations[0].code == "unknown-rule-target");

  try {
    parse_system("{\n  \"functions\": [\n");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 2);
  }
}

TEST_CASE("chipfire files") {
  ChipFireGraph g = parse_chipfire(fixture("rot4.chipfire"));
  CHECK(g.vertices.size() == 4);
  CHECK(g.edges.size() == 8);

  ReplacementSystem decoded = system_from_chipfire(g);
  CHECK(validate(decoded).empty());
  // b3's targets {b4, b1} are canonically reordered to (b1, b4).
  CHECK(decoded.rule[2] == std::pair<FunctionId, FunctionId>{0, 3});
  CHECK(equivalent_mod_swap(decoded, gt::rot4()));
}

TEST_CASE("chipfire encode/decode round-trip") {
  for (const auto& system : gt::all_fixtures()) {
    ChipFireGraph g = chipfire_from_system(system);
    ReplacementSystem back = system_from_chipfire(parse_chipfire(format_chipfire(g)));
    CHECK(equivalent_mod_swap(back, system));
  }
  // A fixture whose rules are already in canonical order decodes exactly.
  ReplacementSystem remark = gt::remark_family(2);
  CHECK(system_from_chipfire(chipfire_from_system(remark)) == remark);
}

TEST_CASE("chipfire errors") {
  CHECK_THROWS_AS(system_from_chipfire(parse_chipfire(fixture("bad_outdeg.chipfire"))),
                  FormatError);
  try {
    system_from_chipfire(parse_chipfire(fixture("bad_outdeg.chipfire")));
  } catch (const FormatError& e) {
    CHECK(e.code() == "outdegree-not-2");
  }
  CHECK_THROWS_AS(parse_chipfire("vertex a"), ParseError);
  CHECK_THROWS_AS(parse_chipfire("vertex a 1\nvertex a 2"), ParseError);
  CHECK_THROWS_AS(parse_chipfire("vertex a 1\nedge a zz"), ParseError);
  CHECK_THROWS_AS(parse_chipfire("vertex a 1/0"), ParseError);
}

TEST_CASE("grammar files") {
  Grammar g = parse_grammar(fixture("example.grammar"));
  ReplacementSystem system = system_from_grammar(g);
  CHECK(system == gt::grammar2());

  // Encode then decode is the identity on every fixture.
  for (const auto& fixture_system : gt::all_fixtures()) {
    Grammar enc = grammar_from_system(fixture_system);
    ReplacementSystem back = system_from_grammar(parse_grammar(format_grammar(enc)));
    CHECK(back == fixture_system);
  }
}

TEST_CASE("grammar errors") {
  CHECK_THROWS_AS(parse_grammar("A -> B"), ParseError);
  CHECK_THROWS_AS(parse_grammar("A -> A A\nA -> A A\nA => 1"), ParseError);
  CHECK_THROWS_AS(parse_grammar("A => 1\nA => 2"), ParseError);
  CHECK_THROWS_AS(system_from_grammar(parse_grammar("A -> A A")), FormatError);
  CHECK_THROWS_AS(system_from_grammar(parse_grammar("A -> A B\nA => 1\nB => 2")), FormatError);
  try {
    system_from_grammar(parse_grammar("A -> A A"));
  } catch (const FormatError& e) {
    CHECK(e.code() == "missing-weight");
  }
}

TEST_CASE("certificate files") {
  ReplacementSystem system = gt::rot4();

  CertificateFile primal = parse_certificate(fixture("rot4_primal.json"), system);
  auto* p = std::get_if<PrimalCertificate>(&primal.certificate);
  REQUIRE(p != nullptr);
  CHECK(p->theta == Rational(11, 3));
  CHECK(check_primal(system, *p).empty());
  std::string canonical = format_primal(system, *p);
  CertificateFile reparsed = parse_certificate(canonical, system);
  CHECK(format_primal(system, std::get<PrimalCertificate>(reparsed.certificate)) == canonical);

  CertificateFile dual = parse_certificate(fixture("rot4_dual.json"), system);
  auto* d = std::get_if<DualCertificate>(&dual.certificate);
  REQUIRE(d != nullptr);
  CHECK(check_dual(system, *d).empty());
  CHECK(dual_objective(system, *d) == Rational(11, 3));
  REQUIRE(dual.stated_objective.has_value());
  CHECK(*dual.stated_objective == Rational(11, 3));

  CHECK_THROWS_AS(parse_certificate("{}", system), ParseError);
  CHECK_THROWS_AS(parse_certificate(R"({"theta": "1"})", system), ParseError);
  CHECK_THROWS_AS(parse_certificate(R"({"theta": "1", "z": {"zz": "0"}})", system), FormatError);
  CHECK_THROWS_AS(
      parse_certificate(R"({"theta": "1", "z": {"b1": "0", "b2": "0", "b3": "0"}})", system),
      FormatError);
}
