#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "growth/certificates.hpp"
#include "growth/system.hpp"

namespace growth {

// Syntax-level failure (malformed JSON, bad rational, bad line). Maps to
// exit code 2 in the command-line tool.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = -1, int column = -1)
      : std::runtime_error(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Well-formed input that violates a format invariant (e.g. a chip-firing
// vertex without exactly two out-edges). Maps to exit code 1.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// --- system files (JSON) ---------------------------------------------------

struct LoadedSystem {
  ReplacementSystem system;
  std::vector<Violation> violations;  // name-resolution problems, if any
};

// Throws ParseError on syntax problems; semantic problems (unknown rule
// targets) are collected so `validate` failures can be reported together.
LoadedSystem load_system(const std::string& text);

// load_system + validate; throws FormatError on any violation.
ReplacementSystem parse_system(const std::string& text);

// Canonical form; parsing it back yields an identical system byte-stably.
std::string format_system(const ReplacementSystem& system);

// --- chip-firing files -----------------------------------------------------

// Line format: "vertex <name> <value>" and "edge <from> <to>"; '#' starts a
// comment. Parallel edges and loops are allowed.
struct ChipFireGraph {
  struct Vertex {
    std::string name;
    Rational chips;
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

ChipFireGraph parse_chipfire(const std::string& text);
std::string format_chipfire(const ChipFireGraph& graph);

// Vertex -> function, chip value -> c, the two out-edges -> rule in
// canonical order (self-loops first, then sorted by target name). Throws
// FormatError "outdegree-not-2" when a vertex does not have exactly two
// out-edges: with any other arity the best average may fail to converge.
ReplacementSystem system_from_chipfire(const ChipFireGraph& graph);
ChipFireGraph chipfire_from_system(const ReplacementSystem& system);

// --- weighted CNF grammar files ---------------------------------------------

// Line format: "V -> U W" (one binary production per nonterminal) and
// "V => weight" (one terminal weight per nonterminal).
struct Grammar {
  struct Entry {
    std::string name;
    std::optional<std::pair<std::string, std::string>> production;
    std::optional<Rational> weight;
  };
  std::vector<Entry> entries;  // in order of first appearance
};

Grammar parse_grammar(const std::string& text);
std::string format_grammar(const Grammar& grammar);

// Codes: "duplicate-production", "duplicate-weight", "missing-production",
// "missing-weight".
ReplacementSystem system_from_grammar(const Grammar& grammar);
Grammar grammar_from_system(const ReplacementSystem& system);

// --- certificate files (JSON) ------------------------------------------------

// Primal: {"theta": "p/q", "z": {name: "p/q", ...}} with every function
// present. Dual: {"x": {...}, "y": {...}} where omitted names mean zero,
// plus an optional stated "objective" checked against the computed one.
struct CertificateFile {
  std::variant<PrimalCertificate, DualCertificate> certificate;
  std::optional<Rational> stated_objective;
};

CertificateFile parse_certificate(const std::string& text, const ReplacementSystem& system);
std::string format_primal(const ReplacementSystem& system, const PrimalCertificate& cert);
std::string format_dual(const ReplacementSystem& system, const DualCertificate& cert);

}  // namespace growth
