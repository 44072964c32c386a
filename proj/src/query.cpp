#include "cvf/query.hpp"

#include <algorithm>
#include <set>

#include "cvf/errors.hpp"
#include "cvf/lexer.hpp"
#include "cvf/numbers.hpp"

namespace cvf {

namespace {

constexpr char kPatternBlankPrefix = '~';

bool is_internal_var(const std::string& name) {
  return !name.empty() && name[0] == kPatternBlankPrefix;
}

struct FunctionSpec {
  const char* name;
  int min_arity;
  int max_arity;  // -1 = unbounded
};

constexpr FunctionSpec kFunctions[] = {
    {"concat", 2, -1}, {"str", 1, 1}, {"min", 2, -1}, {"max", 2, -1}, {"abs", 1, 1},
};

const FunctionSpec* find_function(const std::string& name) {
  for (const auto& f : kFunctions)
    if (name == f.name) return &f;
  return nullptr;
}

class QueryParser {
 public:
  QueryParser(const std::vector<Token>& tokens, size_t start) : tokens_(tokens), i_(start) {}

  Query parse_full() {
    Query q = parse_embedded();
    if (peek().kind != Token::Kind::End) fail("trailing input after query");
    return q;
  }

  Query parse_embedded() {
    expect_name("construct");
    expect(Token::Kind::LBrace);
    parse_templates();
    expect(Token::Kind::RBrace);
    if (peek().kind == Token::Kind::Name && peek().text == "from") {
      ++i_;
      query_.from = parse_graph_name();
    }
    expect_name("where");
    expect(Token::Kind::LBrace);
    parse_patterns();
    expect(Token::Kind::RBrace);
    check_template_variables();
    return std::move(query_);
  }

  size_t position() const { return i_; }

 private:

  const Token& peek(int ahead = 0) const {
    size_t idx = std::min(i_ + ahead, tokens_.size() - 1);
    return tokens_[idx];
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw_input("query parse error at line " + std::to_string(t.line) + ", col " +
                std::to_string(t.col) + ": " + what + " (found " + token_kind_name(t.kind) +
                (t.text.empty() ? "" : " '" + t.text + "'") + ")");
  }

  void expect(Token::Kind kind) {
    if (peek().kind != kind) fail(std::string("expected ") + token_kind_name(kind));
    ++i_;
  }

  void expect_name(const std::string& name) {
    if (peek().kind != Token::Kind::Name || peek().text != name) fail("expected '" + name + "'");
    ++i_;
  }

  Term parse_graph_name() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Iri: ++i_; return Term::iri(t.text);
      case Token::Kind::Pname: ++i_; return Term::pname(t.text);
      case Token::Kind::Name: ++i_; return default_ns_iri(t.text);
      default: fail("expected graph name after 'from'");
    }
  }

  // Ground or variable term in a pattern position.
  PatternTerm parse_pattern_term(bool allow_literal) {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Iri: ++i_; return Term::iri(t.text);
      case Token::Kind::Pname: ++i_; return Term::pname(t.text);
      case Token::Kind::Name:
        if (t.text == "a") { ++i_; return iri::rdf_type(); }
        fail("bare name '" + t.text + "' is not a term");
      case Token::Kind::Var: ++i_; return Variable{t.text};
      case Token::Kind::Blank:
        ++i_;
        // Pattern blanks behave as non-selectable variables.
        return Variable{std::string(1, kPatternBlankPrefix) + t.text};
      case Token::Kind::Number:
        if (!allow_literal) fail("literal not allowed in this position");
        ++i_;
        return Term::number(t.number);
      case Token::Kind::Minus:
        if (allow_literal && peek(1).kind == Token::Kind::Number) {
          double v = peek(1).number;
          i_ += 2;
          return Term::number(-v);
        }
        fail("unexpected '-'");
      case Token::Kind::String:
        if (!allow_literal) fail("literal not allowed in this position");
        ++i_;
        return Term::string(t.text);
      default: fail("expected a term");
    }
  }

  void parse_patterns() {
    while (peek().kind != Token::Kind::RBrace) {
      PatternTerm s = parse_pattern_term(false);
      while (true) {
        PatternTerm p = parse_pattern_term(false);
        PatternTerm o = parse_pattern_term(true);
        query_.pattern.push_back({s, p, o});
        if (peek().kind == Token::Kind::Semicolon) {
          ++i_;
          if (peek().kind == Token::Kind::RBrace || peek().kind == Token::Kind::Dot) break;
          continue;  // same subject, next predicate/object
        }
        break;
      }
      if (peek().kind == Token::Kind::Dot) ++i_;
      else if (peek().kind != Token::Kind::RBrace) fail("expected '.' between patterns");
    }
  }

  PatternTerm parse_template_subject() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Blank) {
      ++i_;
      note_template_blank(t.text);
      return Term::blank(t.text);
    }
    PatternTerm s = parse_pattern_term(false);
    return s;
  }

  void note_template_blank(const std::string& label) {
    auto& labels = query_.template_blank_labels;
    if (std::find(labels.begin(), labels.end(), label) == labels.end())
      labels.push_back(label);
  }

  std::string fresh_bracket_label() {
    return "bracket" + std::to_string(++bracket_counter_);
  }

  void parse_templates() {
    while (peek().kind != Token::Kind::RBrace) {
      PatternTerm s = parse_template_subject();
      parse_template_predicate_list(s);
      if (peek().kind == Token::Kind::Dot) ++i_;
      else if (peek().kind != Token::Kind::RBrace) fail("expected '.' between templates");
    }
  }

  void parse_template_predicate_list(const PatternTerm& subject) {
    while (true) {
      PatternTerm p = parse_pattern_term(false);
      Expression o = parse_expression();
      query_.templates.push_back({subject, p, std::move(o)});
      if (peek().kind == Token::Kind::Semicolon) {
        ++i_;
        if (peek().kind == Token::Kind::Dot || peek().kind == Token::Kind::RBrace ||
            peek().kind == Token::Kind::RBracket)
          return;
        continue;
      }
      return;
    }
  }

  // [ pred expr ; ... ] — anonymous template node.
  Expression parse_bracket_node() {
    expect(Token::Kind::LBracket);
    std::string label = fresh_bracket_label();
    note_template_blank(label);
    PatternTerm node = Term::blank(label);
    if (peek().kind != Token::Kind::RBracket) parse_template_predicate_list(node);
    expect(Token::Kind::RBracket);
    return Expression::term(Term::blank(label));
  }

  Expression parse_expression() { return parse_additive(); }

  Expression parse_additive() {
    Expression left = parse_multiplicative();
    while (peek().kind == Token::Kind::Plus || peek().kind == Token::Kind::Minus) {
      char op = peek().kind == Token::Kind::Plus ? '+' : '-';
      ++i_;
      Expression right = parse_multiplicative();
      Expression node;
      node.kind = Expression::Kind::Binary;
      node.op = op;
      node.args = {std::move(left), std::move(right)};
      left = std::move(node);
    }
    return left;
  }

  Expression parse_multiplicative() {
    Expression left = parse_unary();
    while (peek().kind == Token::Kind::Star || peek().kind == Token::Kind::Slash) {
      char op = peek().kind == Token::Kind::Star ? '*' : '/';
      ++i_;
      Expression right = parse_unary();
      Expression node;
      node.kind = Expression::Kind::Binary;
      node.op = op;
      node.args = {std::move(left), std::move(right)};
      left = std::move(node);
    }
    return left;
  }

  Expression parse_unary() {
    if (peek().kind == Token::Kind::Minus) {
      ++i_;
      Expression inner = parse_unary();
      // Fold constant negation so -13 is a plain literal.
      if (inner.kind == Expression::Kind::Leaf && std::holds_alternative<Term>(inner.leaf)) {
        const Term& t = std::get<Term>(inner.leaf);
        if (t.is_number()) return Expression::term(Term::number(-t.number_value()));
      }
      Expression node;
      node.kind = Expression::Kind::Binary;
      node.op = '-';
      node.args = {Expression::term(Term::number(0)), std::move(inner)};
      return node;
    }
    return parse_primary();
  }

  Expression parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::LParen: {
        ++i_;
        Expression e = parse_expression();
        expect(Token::Kind::RParen);
        return e;
      }
      case Token::Kind::LBracket:
        return parse_bracket_node();
      case Token::Kind::Name: {
        if (t.text == "a") { ++i_; return Expression::term(iri::rdf_type()); }
        if (peek(1).kind == Token::Kind::LParen) {
          const FunctionSpec* spec = find_function(t.text);
          if (!spec) fail("unknown function '" + t.text + "'");
          ++i_;
          expect(Token::Kind::LParen);
          Expression node;
          node.kind = Expression::Kind::Call;
          node.function = t.text;
          if (peek().kind != Token::Kind::RParen) {
            node.args.push_back(parse_expression());
            while (peek().kind == Token::Kind::Comma) {
              ++i_;
              node.args.push_back(parse_expression());
            }
          }
          expect(Token::Kind::RParen);
          int n = static_cast<int>(node.args.size());
          if (n < spec->min_arity || (spec->max_arity >= 0 && n > spec->max_arity))
            fail("function '" + t.text + "' called with " + std::to_string(n) + " arguments");
          return node;
        }
        fail("bare name '" + t.text + "' is not an expression");
      }
      case Token::Kind::Var: ++i_; return Expression::variable(t.text);
      case Token::Kind::Iri: ++i_; return Expression::term(Term::iri(t.text));
      case Token::Kind::Pname: ++i_; return Expression::term(Term::pname(t.text));
      case Token::Kind::Number: ++i_; return Expression::term(Term::number(t.number));
      case Token::Kind::String: ++i_; return Expression::term(Term::string(t.text));
      case Token::Kind::Blank: {
        ++i_;
        note_template_blank(t.text);
        return Expression::term(Term::blank(t.text));
      }
      default: fail("expected an expression");
    }
  }

  void collect_expression_vars(const Expression& e, std::set<std::string>& vars) const {
    if (e.kind == Expression::Kind::Leaf) {
      if (std::holds_alternative<Variable>(e.leaf)) vars.insert(std::get<Variable>(e.leaf).name);
      return;
    }
    for (const auto& a : e.args) collect_expression_vars(a, vars);
  }

  void check_template_variables() const {
    std::set<std::string> pattern_vars;
    for (const auto& p : query_.pattern) {
      for (const PatternTerm* pt : {&p.subject, &p.predicate, &p.object})
        if (std::holds_alternative<Variable>(*pt))
          pattern_vars.insert(std::get<Variable>(*pt).name);
    }
    std::set<std::string> template_vars;
    for (const auto& t : query_.templates) {
      for (const PatternTerm* pt : {&t.subject, &t.predicate})
        if (std::holds_alternative<Variable>(*pt))
          template_vars.insert(std::get<Variable>(*pt).name);
      collect_expression_vars(t.object, template_vars);
    }
    for (const auto& v : template_vars) {
      if (!pattern_vars.count(v))
        throw_input("unbound template variable ?" + v + " (not present in the where pattern)");
    }
    // Template blank labels must not collide with pattern blank labels.
    std::set<std::string> pattern_blanks;
    for (const auto& v : pattern_vars)
      if (is_internal_var(v)) pattern_blanks.insert(v.substr(1));
    for (const auto& label : query_.template_blank_labels)
      if (pattern_blanks.count(label))
        throw_input("blank label _:" + label + " used in both template and pattern");
  }

  const std::vector<Token>& tokens_;
  size_t i_ = 0;
  int bracket_counter_ = 0;
  Query query_;
};

}  // namespace

Expression Expression::term(Term t) {
  Expression e;
  e.kind = Kind::Leaf;
  e.leaf = std::move(t);
  return e;
}

Expression Expression::variable(std::string name) {
  Expression e;
  e.kind = Kind::Leaf;
  e.leaf = Variable{std::move(name)};
  return e;
}

Query parse_query(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  return QueryParser(tokens, 0).parse_full();
}

Query parse_embedded_query(const std::vector<Token>& tokens, size_t& pos) {
  QueryParser parser(tokens, pos);
  Query q = parser.parse_embedded();
  pos = parser.position();
  return q;
}

namespace {

bool unify(const Term& ground, const PatternTerm& pat, Binding& binding) {
  if (std::holds_alternative<Term>(pat)) return std::get<Term>(pat) == ground;
  const Variable& var = std::get<Variable>(pat);
  auto it = binding.find(var.name);
  if (it != binding.end()) return it->second == ground;
  binding.emplace(var.name, ground);
  return true;
}

}  // namespace

std::vector<Binding> match_bgp(const Store& store, const std::vector<TriplePattern>& pattern,
                               const std::optional<Term>& from) {
  std::vector<const Triple*> triples = store.view(from);
  std::vector<Binding> bindings{Binding{}};
  for (const auto& pat : pattern) {
    std::vector<Binding> next;
    for (const auto& b : bindings) {
      for (const Triple* t : triples) {
        Binding extended = b;
        if (unify(t->subject, pat.subject, extended) &&
            unify(t->predicate, pat.predicate, extended) &&
            unify(t->object, pat.object, extended)) {
          next.push_back(std::move(extended));
        }
      }
    }
    bindings = std::move(next);
    if (bindings.empty()) break;
  }
  return bindings;
}

Term eval_expression(const Expression& expr, const Binding& binding) {
  switch (expr.kind) {
    case Expression::Kind::Leaf: {
      if (std::holds_alternative<Term>(expr.leaf)) return std::get<Term>(expr.leaf);
      const Variable& var = std::get<Variable>(expr.leaf);
      auto it = binding.find(var.name);
      if (it == binding.end()) throw_input("unbound variable ?" + var.name);
      return it->second;
    }
    case Expression::Kind::Binary: {
      Term lhs = eval_expression(expr.args[0], binding);
      Term rhs = eval_expression(expr.args[1], binding);
      if (!lhs.is_number() || !rhs.is_number())
        throw_input(std::string("operator '") + expr.op + "' requires numeric operands");
      double a = lhs.number_value(), b = rhs.number_value();
      switch (expr.op) {
        case '+': return Term::number(a + b);
        case '-': return Term::number(a - b);
        case '*': return Term::number(a * b);
        case '/':
          if (b == 0) throw_input("division by zero");
          return Term::number(a / b);
      }
      throw_internal("unknown operator");
    }
    case Expression::Kind::Call: {
      std::vector<Term> args;
      args.reserve(expr.args.size());
      for (const auto& a : expr.args) args.push_back(eval_expression(a, binding));
      const std::string& fn = expr.function;
      if (fn == "str") {
        const Term& v = args[0];
        if (v.is_number()) return Term::string(format_number(v.number_value()));
        if (v.is_string()) return v;
        throw_input("str() requires a literal argument");
      }
      if (fn == "concat") {
        std::string out;
        for (const auto& v : args) {
          if (!v.is_string()) throw_input("concat() requires string arguments (use str())");
          out += v.text();
        }
        return Term::string(out);
      }
      if (fn == "abs") {
        if (!args[0].is_number()) throw_input("abs() requires a numeric argument");
        return Term::number(std::abs(args[0].number_value()));
      }
      if (fn == "min" || fn == "max") {
        double acc = 0;
        for (size_t k = 0; k < args.size(); ++k) {
          if (!args[k].is_number()) throw_input(fn + "() requires numeric arguments");
          double v = args[k].number_value();
          if (k == 0) acc = v;
          else acc = fn == "min" ? std::min(acc, v) : std::max(acc, v);
        }
        return Term::number(acc);
      }
      throw_internal("unknown function " + fn);
    }
  }
  throw_internal("bad expression");
}

namespace {

Term instantiate_node(const PatternTerm& pt, const Binding& binding,
                      const std::map<std::string, Term>& fresh) {
  if (std::holds_alternative<Term>(pt)) {
    const Term& t = std::get<Term>(pt);
    if (t.is_blank()) return fresh.at(t.text());
    return t;
  }
  const Variable& var = std::get<Variable>(pt);
  auto it = binding.find(var.name);
  if (it == binding.end()) throw_input("unbound variable ?" + var.name);
  return it->second;
}

Term instantiate_object(const Expression& expr, const Binding& binding,
                        const std::map<std::string, Term>& fresh) {
  if (expr.kind == Expression::Kind::Leaf && std::holds_alternative<Term>(expr.leaf)) {
    const Term& t = std::get<Term>(expr.leaf);
    if (t.is_blank()) return fresh.at(t.text());
  }
  return eval_expression(expr, binding);
}

}  // namespace

ConstructResult eval_construct(const Store& store, const Query& query) {
  ConstructResult result;
  std::vector<Binding> bindings = match_bgp(store, query.pattern, query.from);
  for (const auto& binding : bindings) {
    ConstructRow row;
    row.binding = binding;
    for (const auto& label : query.template_blank_labels)
      row.fresh_blanks.emplace(label, result.graph.fresh_blank());
    for (const auto& tmpl : query.templates) {
      try {
        Term s = instantiate_node(tmpl.subject, binding, row.fresh_blanks);
        Term p = instantiate_node(tmpl.predicate, binding, row.fresh_blanks);
        Term o = instantiate_object(tmpl.object, binding, row.fresh_blanks);
        if (s.is_literal()) throw_input("template produced a literal subject");
        if (!p.is_iri()) throw_input("template produced a non-IRI predicate");
        Triple t(std::move(s), std::move(p), std::move(o));
        row.triples.push_back(t);
        result.graph.insert(std::move(t));
      } catch (const Error& e) {
        if (e.kind() == Error::Kind::Internal) throw;
        result.warnings.push_back(std::string("template skipped: ") + e.what());
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace cvf
