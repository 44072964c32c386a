#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cvf/rdf.hpp"

namespace cvf {

struct Variable {
  std::string name;
  bool operator==(const Variable& o) const { return name == o.name; }
};

// A position in a triple pattern: ground term or variable. Blank labels in
// patterns are rewritten to internal variables ("~label") at parse time.
using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject, predicate, object;
};

// Object expressions of construct templates: variable, ground term,
// arithmetic, or a call to concat/str/min/max/abs.
struct Expression {
  enum class Kind { Leaf, Binary, Call };
  Kind kind = Kind::Leaf;
  PatternTerm leaf;               // Kind::Leaf
  char op = 0;                    // Kind::Binary: + - * /
  std::string function;          // Kind::Call
  std::vector<Expression> args;  // Binary: exactly 2

  static Expression term(Term t);
  static Expression variable(std::string name);
};

struct TemplateTriple {
  PatternTerm subject;    // IRI, template blank label, or variable
  PatternTerm predicate;  // IRI or variable
  Expression object;
};

struct Query {
  std::vector<TemplateTriple> templates;
  std::optional<Term> from;  // named graph (or alias); absent = union
  std::vector<TriplePattern> pattern;
  std::vector<std::string> template_blank_labels;  // distinct, in first-use order
};

// Parses the query grammar:
//   construct { tmpl* } (from NAME)? where { pat* }
// Templates additionally accept [ pred expr ; ... ] bracket nodes, which
// desugar to implicit template blank labels, and `;` predicate lists.
Query parse_query(std::string_view text);

using Binding = std::map<std::string, Term>;

// All total bindings for the pattern, joined left to right as written.
// Deterministic for a fixed store build.
std::vector<Binding> match_bgp(const Store& store, const std::vector<TriplePattern>& pattern,
                               const std::optional<Term>& from);

// Evaluates an expression under a binding. Numeric operators require
// numbers; concat requires strings; str formats numbers canonically.
// Throws Error(Input) on type mismatch, division by zero, unbound variable.
Term eval_expression(const Expression& expr, const Binding& binding);

struct ConstructRow {
  Binding binding;
  std::map<std::string, Term> fresh_blanks;  // template blank label -> node
  std::vector<Triple> triples;               // instantiated (pre-dedup)
};

struct ConstructResult {
  Graph graph;
  std::vector<ConstructRow> rows;
  std::vector<std::string> warnings;  // skipped templates (evaluation failures)
};

// Standard construct semantics: one instantiation of every template per
// binding, fresh blank nodes per template blank label per binding, result
// deduplicated as a set. A template whose expression fails to evaluate for
// a binding is skipped with a recorded warning.
ConstructResult eval_construct(const Store& store, const Query& query);

}  // namespace cvf
