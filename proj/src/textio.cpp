#include "ontonet/textio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ontonet {

std::string to_string(const ParseDiagnostic& d) {
  std::ostringstream out;
  out << (d.severity == ParseDiagnostic::Severity::Error ? "error" : "warning")
      << " at " << d.line << ":" << d.column << ": " << d.message;
  return out.str();
}

namespace {

// Words with grammatical meaning; not usable as symbol or ontology names.
// 'o' is reserved because it separates roles inside chains.
const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "ontology", "import", "from", "sig", "axiom", "role",
      "top",      "bot",    "and",  "or",  "not",   "some", "o"};
  return words;
}

struct Token {
  enum class Kind { Id, QuotedId, LBrace, RBrace, LParen, RParen, Comma,
                    Incl, Equiv, End };
  Kind kind;
  std::string text;
  std::size_t line, column;
};

class ParseError {
 public:
  ParseDiagnostic diag;
  ParseError(std::size_t line, std::size_t column, std::string msg)
      : diag{line, column, std::move(msg), ParseDiagnostic::Severity::Error} {}
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_blank();
    std::size_t line = line_, col = col_;
    if (pos_ >= text_.size()) return {Token::Kind::End, "", line, col};
    char c = text_[pos_];
    switch (c) {
      case '{': advance(); return {Token::Kind::LBrace, "{", line, col};
      case '}': advance(); return {Token::Kind::RBrace, "}", line, col};
      case '(': advance(); return {Token::Kind::LParen, "(", line, col};
      case ')': advance(); return {Token::Kind::RParen, ")", line, col};
      case ',': advance(); return {Token::Kind::Comma, ",", line, col};
      case '<':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          return {Token::Kind::Incl, "<=", line, col};
        }
        throw ParseError(line, col, "expected '<='");
      case '=':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          return {Token::Kind::Equiv, "==", line, col};
        }
        throw ParseError(line, col, "expected '=='");
      case '"': {
        advance();
        std::string name;
        while (pos_ < text_.size() && text_[pos_] != '"' &&
               text_[pos_] != '\n') {
          name += text_[pos_];
          advance();
        }
        if (pos_ >= text_.size() || text_[pos_] != '"')
          throw ParseError(line, col, "unterminated quoted symbol");
        advance();
        if (name.empty())
          throw ParseError(line, col, "empty quoted symbol");
        return {Token::Kind::QuotedId, name, line, col};
      }
      default:
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          std::string name;
          while (pos_ < text_.size() &&
                 (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                  text_[pos_] == '_')) {
            name += text_[pos_];
            advance();
          }
          return {Token::Kind::Id, name, line, col};
        }
        throw ParseError(line, col,
                         std::string("unexpected character '") + c + "'");
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

struct Use {
  SymbolKind kind;
  std::size_t line, column;
};

class Parser {
 public:
  Parser(const std::string& text, bool allowMachineSymbols)
      : lexer_(text), allowMachine_(allowMachineSymbols) {
    cur_ = lexer_.next();
  }

  Network parse_file(std::vector<ParseDiagnostic>& warnings) {
    while (cur_.kind != Token::Kind::End) {
      if (cur_.kind == Token::Kind::Id && cur_.text == "ontology") {
        parse_ontology_decl();
      } else if (cur_.kind == Token::Kind::Id && cur_.text == "import") {
        parse_import_decl();
      } else {
        throw ParseError(cur_.line, cur_.column,
                         "expected 'ontology' or 'import'");
      }
    }
    Network net;
    for (auto& [id, o] : ontologies_) net.add_ontology(std::move(o));
    for (auto& imp : imports_) {
      for (const auto& endpoint : {imp.importer, imp.imported})
        if (!net.has_ontology(endpoint))
          throw ParseError(imp.line, imp.column,
                           "undeclared ontology " + endpoint);
      ImportRelation rel;
      rel.importer = imp.importer;
      rel.imported = imp.imported;
      for (const auto& [name, pos] : imp.sigEntries) {
        auto it = uses_.find(name);
        if (it == uses_.end()) {
          warnings.push_back({pos.first, pos.second,
                              "symbol " + name +
                                  " not used in any axiom, assuming "
                                  "concept name",
                              ParseDiagnostic::Severity::Warning});
          rel.sigma.concepts.insert(name);
        } else if (it->second.kind == SymbolKind::Concept) {
          rel.sigma.concepts.insert(name);
        } else {
          rel.sigma.roles.insert(name);
        }
      }
      net.add_relation(std::move(rel));
    }
    return net;
  }

  std::vector<Axiom> parse_single_axiom() {
    auto axs = parse_axiom_body();
    expect_end();
    return axs;
  }

 private:
  struct PendingImport {
    std::string importer, imported;
    std::size_t line, column;
    std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>>
        sigEntries;
  };

  void bump() { cur_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(cur_.line, cur_.column, msg);
  }

  void expect_end() {
    if (cur_.kind != Token::Kind::End) fail("trailing input after axiom");
  }

  bool at_keyword(const char* w) {
    return cur_.kind == Token::Kind::Id && cur_.text == w;
  }

  void expect_keyword(const char* w) {
    if (!at_keyword(w)) fail(std::string("expected '") + w + "'");
    bump();
  }

  void expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    bump();
  }

  // Symbol or ontology name; quoted ids need the dump reader.
  std::string take_name(const char* what) {
    if (cur_.kind == Token::Kind::Id) {
      if (reserved_words().count(cur_.text))
        fail("reserved word '" + cur_.text + "' cannot name a " +
             std::string(what));
      std::string n = cur_.text;
      bump();
      return n;
    }
    if (cur_.kind == Token::Kind::QuotedId) {
      if (!allowMachine_ && is_machine_symbol(cur_.text))
        fail("symbol containing '#' is reserved for generated closures: " +
             cur_.text);
      std::string n = cur_.text;
      bump();
      return n;
    }
    fail(std::string("expected ") + what + " name");
  }

  void record_use(const std::string& name, SymbolKind kind, std::size_t line,
                  std::size_t column) {
    auto [it, inserted] = uses_.emplace(name, Use{kind, line, column});
    if (!inserted && it->second.kind != kind)
      throw ParseError(line, column,
                       "symbol " + name + " already used as a " +
                           (it->second.kind == SymbolKind::Concept
                                ? "concept name"
                                : "role name") +
                           " (first use at line " +
                           std::to_string(it->second.line) + ")");
  }

  void parse_ontology_decl() {
    bump();  // ontology
    std::size_t line = cur_.line, col = cur_.column;
    std::string id = take_name("ontology");
    if (ontologies_.count(id))
      throw ParseError(line, col, "duplicate ontology " + id);
    Ontology o;
    o.id = id;
    expect(Token::Kind::LBrace, "'{'");
    while (at_keyword("axiom")) {
      bump();
      for (auto& a : parse_axiom_body()) o.add(std::move(a));
    }
    expect(Token::Kind::RBrace, "'}'");
    ontologies_.emplace(id, std::move(o));
  }

  void parse_import_decl() {
    PendingImport imp;
    imp.line = cur_.line;
    imp.column = cur_.column;
    bump();  // import
    imp.importer = take_name("ontology");
    expect_keyword("from");
    imp.imported = take_name("ontology");
    expect_keyword("sig");
    expect(Token::Kind::LBrace, "'{'");
    if (cur_.kind != Token::Kind::RBrace) {
      while (true) {
        std::size_t l = cur_.line, c = cur_.column;
        imp.sigEntries.push_back({take_name("symbol"), {l, c}});
        if (cur_.kind != Token::Kind::Comma) break;
        bump();
      }
    }
    expect(Token::Kind::RBrace, "'}'");
    imports_.push_back(std::move(imp));
  }

  std::vector<Axiom> parse_axiom_body() {
    if (at_keyword("role")) {
      bump();
      std::vector<std::string> chain;
      while (true) {
        std::size_t l = cur_.line, c = cur_.column;
        std::string r = take_name("role");
        record_use(r, SymbolKind::Role, l, c);
        chain.push_back(std::move(r));
        if (at_keyword("o")) {
          bump();
          continue;
        }
        break;
      }
      expect(Token::Kind::Incl, "'<='");
      std::size_t l = cur_.line, c = cur_.column;
      std::string super = take_name("role");
      record_use(super, SymbolKind::Role, l, c);
      return {ri(std::move(chain), std::move(super))};
    }
    Concept lhs = parse_concept();
    if (cur_.kind == Token::Kind::Incl) {
      bump();
      return {ci(lhs, parse_concept())};
    }
    if (cur_.kind == Token::Kind::Equiv) {
      bump();
      return equivalence(lhs, parse_concept());
    }
    fail("expected '<=' or '=='");
  }

  Concept parse_concept() {
    if (at_keyword("top")) {
      bump();
      return top();
    }
    if (at_keyword("bot")) {
      bump();
      return bot();
    }
    if (cur_.kind == Token::Kind::Id || cur_.kind == Token::Kind::QuotedId) {
      std::size_t l = cur_.line, c = cur_.column;
      std::string n = take_name("concept");
      record_use(n, SymbolKind::Concept, l, c);
      return atom(std::move(n));
    }
    if (cur_.kind != Token::Kind::LParen) fail("expected a concept");
    bump();
    if (at_keyword("not")) {
      bump();
      Concept inner = parse_concept();
      expect(Token::Kind::RParen, "')'");
      return c_not(std::move(inner));
    }
    if (at_keyword("some")) {
      bump();
      std::size_t l = cur_.line, c = cur_.column;
      std::string r = take_name("role");
      record_use(r, SymbolKind::Role, l, c);
      Concept inner = parse_concept();
      expect(Token::Kind::RParen, "')'");
      return exists(std::move(r), std::move(inner));
    }
    std::vector<Concept> parts{parse_concept()};
    bool isAnd;
    if (at_keyword("and")) {
      isAnd = true;
    } else if (at_keyword("or")) {
      isAnd = false;
    } else {
      fail("expected 'and' or 'or'");
    }
    const char* sep = isAnd ? "and" : "or";
    while (at_keyword(sep)) {
      bump();
      parts.push_back(parse_concept());
    }
    if (at_keyword(isAnd ? "or" : "and"))
      fail("mixed 'and'/'or' need explicit parentheses");
    expect(Token::Kind::RParen, "')'");
    return isAnd ? c_and(std::move(parts)) : c_or(std::move(parts));
  }

  Lexer lexer_;
  Token cur_;
  bool allowMachine_;
  std::map<std::string, Ontology> ontologies_;
  std::vector<PendingImport> imports_;
  std::map<std::string, Use> uses_;
};

}  // namespace

ParseResult parse_network(const std::string& text, bool allowMachineSymbols) {
  ParseResult result;
  try {
    Parser p(text, allowMachineSymbols);
    result.network = p.parse_file(result.diagnostics);
  } catch (const ParseError& e) {
    result.network.reset();
    result.diagnostics.push_back(e.diag);
  }
  return result;
}

AxiomParseResult parse_axiom(const std::string& text,
                             bool allowMachineSymbols) {
  AxiomParseResult result;
  try {
    Parser p(text, allowMachineSymbols);
    result.axioms = p.parse_single_axiom();
  } catch (const ParseError& e) {
    result.axioms.clear();
    result.diagnostics.push_back(e.diag);
  }
  return result;
}

std::string serialize_ontology(const Ontology& o) {
  std::string out = "ontology " + o.id + " {\n";
  for (const auto& a : o.axioms) out += "  axiom " + a.key + "\n";
  return out + "}\n";
}

std::string serialize_network(const Network& n) {
  std::string out;
  for (const auto& [id, o] : n.ontologies) out += serialize_ontology(o);
  for (const auto& r : n.relations) {
    out += "import " + r.importer + " from " + r.imported + " sig { ";
    std::vector<std::string> names(r.sigma.concepts.begin(),
                                   r.sigma.concepts.end());
    names.insert(names.end(), r.sigma.roles.begin(), r.sigma.roles.end());
    std::sort(names.begin(), names.end());
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ", ";
      out += symbol_text(names[i]);
    }
    out += names.empty() ? "}\n" : " }\n";
  }
  return out;
}

}  // namespace ontonet
