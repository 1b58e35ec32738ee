#pragma once

// Parser and canonical serializer for the network text format.
//
// Grammar (whitespace-insensitive, '#' starts a comment to end of line):
//   file         := (ontologyDecl | importDecl)*
//   ontologyDecl := "ontology" ID "{" ("axiom" axiom)* "}"
//   importDecl   := "import" ID "from" ID "sig" "{" [ID ("," ID)*] "}"
//   axiom        := concept "<=" concept | concept "==" concept
//                 | "role" ID ("o" ID)* "<=" ID
//   concept      := "top" | "bot" | ID
//                 | "(" concept ("and" concept)+ ")"
//                 | "(" concept ("or" concept)+ ")"
//                 | "(" "not" concept ")" | "(" "some" ID concept ")"
//   ID           := [A-Za-z_][A-Za-z0-9_]*
//
// Quoted IDs ("name#fingerprint") extend the charset for machine symbols;
// they are accepted only by the closure-dump reader (allowMachineSymbols).

#include <optional>
#include <string>
#include <vector>

#include "ontonet/core.hpp"

namespace ontonet {

struct ParseDiagnostic {
  enum class Severity { Error, Warning };
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string message;
  Severity severity = Severity::Error;
};

std::string to_string(const ParseDiagnostic& d);

struct ParseResult {
  std::optional<Network> network;  // absent iff an error diagnostic exists
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return network.has_value(); }
};

struct AxiomParseResult {
  std::vector<Axiom> axioms;  // one, or two for "==" sugar; empty on error
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return !axioms.empty(); }
};

ParseResult parse_network(const std::string& text,
                          bool allowMachineSymbols = false);
AxiomParseResult parse_axiom(const std::string& text,
                             bool allowMachineSymbols = false);

// Canonical text: ontologies sorted by id, axioms in canonical order,
// import lines sorted, signature lists alphabetical. Empty network -> "".
std::string serialize_network(const Network& n);
std::string serialize_ontology(const Ontology& o);

}  // namespace ontonet
