#include "cvf/rdf.hpp"

#include <algorithm>
#include <cmath>

#include "cvf/errors.hpp"
#include "cvf/lexer.hpp"
#include "cvf/numbers.hpp"

namespace cvf {

namespace {

struct PrefixEntry {
  std::string_view prefix;
  std::string_view iri;
};

constexpr PrefixEntry kPrefixes[] = {
    {"", ns::kDefault},
    {"cgml", ns::kCgml},
    {"gml", ns::kGml},
    {"rdf", ns::kRdf},
};

std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace

Term Term::iri(std::string value) {
  if (value.empty()) throw_internal("IRI must be nonempty");
  Term t;
  t.kind_ = Kind::Iri;
  t.text_ = std::move(value);
  return t;
}

Term Term::blank(std::string label) {
  if (label.empty()) throw_internal("blank node label must be nonempty");
  Term t;
  t.kind_ = Kind::Blank;
  t.text_ = std::move(label);
  return t;
}

Term Term::number(double value) {
  if (!std::isfinite(value)) throw_internal("numeric literal must be finite");
  Term t;
  t.kind_ = Kind::Number;
  t.number_ = value;
  return t;
}

Term Term::string(std::string value) {
  Term t;
  t.kind_ = Kind::String;
  t.text_ = std::move(value);
  return t;
}

Term Term::pname(const std::string& prefixed) {
  if (prefixed == "a") return iri::rdf_type();
  auto colon = prefixed.find(':');
  if (colon == std::string::npos)
    throw_input("'" + prefixed + "' is not a prefixed name");
  std::string prefix = prefixed.substr(0, colon);
  std::string local = prefixed.substr(colon + 1);
  for (const auto& entry : kPrefixes) {
    if (entry.prefix == prefix) return Term::iri(std::string(entry.iri) + local);
  }
  throw_input("unknown prefix '" + prefix + ":'");
}

std::string Term::local_name() const {
  if (kind_ != Kind::Iri) return "";
  for (const auto& entry : kPrefixes) {
    if (text_.size() > entry.iri.size() && text_.compare(0, entry.iri.size(), entry.iri) == 0)
      return text_.substr(entry.iri.size());
  }
  auto hash_pos = text_.find_last_of("#/");
  if (hash_pos != std::string::npos && hash_pos + 1 < text_.size())
    return text_.substr(hash_pos + 1);
  return "";
}

std::string Term::to_text() const {
  switch (kind_) {
    case Kind::Iri: {
      if (text_ == std::string(ns::kRdf) + "type") return "a";
      for (const auto& entry : kPrefixes) {
        if (text_.size() > entry.iri.size() &&
            text_.compare(0, entry.iri.size(), entry.iri) == 0) {
          std::string local = text_.substr(entry.iri.size());
          bool plain = !local.empty();
          for (char c : local)
            plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-');
          if (plain) return std::string(entry.prefix) + ":" + local;
        }
      }
      return "<" + text_ + ">";
    }
    case Kind::Blank:
      return "_:" + text_;
    case Kind::Number:
      return format_number_exact(number_);
    case Kind::String:
      return escape_string(text_);
  }
  return "";
}

bool Term::operator==(const Term& other) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::Number) return number_ == other.number_;
  return text_ == other.text_;
}

bool Term::operator<(const Term& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (kind_ == Kind::Number) return number_ < other.number_;
  return text_ < other.text_;
}

size_t Term::hash() const {
  size_t h = std::hash<int>{}(static_cast<int>(kind_));
  if (kind_ == Kind::Number) {
    h ^= std::hash<double>{}(number_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  } else {
    h ^= std::hash<std::string>{}(text_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace iri {
Term rdf_type() { return Term::iri(std::string(ns::kRdf) + "type"); }
}  // namespace iri

Triple::Triple(Term s, Term p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (subject.is_literal()) throw_internal("triple subject cannot be a literal");
  if (!predicate.is_iri()) throw_internal("triple predicate must be an IRI");
}

bool Triple::operator==(const Triple& other) const {
  return subject == other.subject && predicate == other.predicate && object == other.object;
}

bool Triple::operator<(const Triple& other) const {
  if (!(subject == other.subject)) return subject < other.subject;
  if (!(predicate == other.predicate)) return predicate < other.predicate;
  return object < other.object;
}

size_t TripleHash::operator()(const Triple& t) const {
  size_t h = t.subject.hash();
  h ^= t.predicate.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= t.object.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string Graph::subject_key(const Term& s) {
  return (s.is_blank() ? "_:" : "") + s.text();
}

bool Graph::insert(Triple t) {
  if (set_.count(t)) return false;
  if (t.subject.is_blank()) blank_labels_.insert(t.subject.text());
  if (t.object.is_blank()) blank_labels_.insert(t.object.text());
  by_subject_[subject_key(t.subject)].push_back(triples_.size());
  set_.insert(t);
  triples_.push_back(std::move(t));
  return true;
}

void Graph::insert_all(const Graph& other) {
  for (const auto& t : other.triples()) insert(t);
}

bool Graph::contains(const Triple& t) const { return set_.count(t) > 0; }

std::vector<const Triple*> Graph::with_subject(const Term& s) const {
  std::vector<const Triple*> out;
  auto it = by_subject_.find(subject_key(s));
  if (it == by_subject_.end()) return out;
  out.reserve(it->second.size());
  for (size_t idx : it->second) out.push_back(&triples_[idx]);
  return out;
}

std::vector<Term> Graph::objects_of(const Term& s, const Term& p) const {
  std::vector<Term> out;
  for (const Triple* t : with_subject(s))
    if (t->predicate == p) out.push_back(t->object);
  return out;
}

std::optional<Term> Graph::object_of(const Term& s, const Term& p) const {
  for (const Triple* t : with_subject(s))
    if (t->predicate == p) return t->object;
  return std::nullopt;
}

std::vector<Term> Graph::subjects_of_type(const Term& type) const {
  std::vector<Term> out;
  Term rdf_type = iri::rdf_type();
  for (const auto& t : triples_)
    if (t.predicate == rdf_type && t.object == type) out.push_back(t.subject);
  return out;
}

bool Graph::has_subject(const Term& s) const {
  return by_subject_.count(subject_key(s)) > 0;
}

Term Graph::fresh_blank() {
  while (true) {
    std::string label = "b" + std::to_string(++blank_counter_);
    if (!blank_labels_.count(label)) {
      blank_labels_.insert(label);
      return Term::blank(label);
    }
  }
}

Graph& Store::graph(const Term& name) {
  if (frozen_) throw_internal("store is frozen");
  return graphs_[name];
}

const Graph* Store::find_graph(const Term& name) const {
  auto it = graphs_.find(name);
  return it == graphs_.end() ? nullptr : &it->second;
}

void Store::add_alias(const Term& name, std::vector<Term> members) {
  if (frozen_) throw_internal("store is frozen");
  for (const auto& m : members)
    if (!graphs_.count(m)) throw_input("alias member graph " + m.to_text() + " does not exist");
  aliases_[name] = std::move(members);
}

bool Store::has_graph_or_alias(const Term& name) const {
  return graphs_.count(name) > 0 || aliases_.count(name) > 0;
}

std::vector<const Triple*> Store::view(const std::optional<Term>& name) const {
  std::vector<const Graph*> members;
  if (!name) {
    for (const auto& [gname, g] : graphs_) members.push_back(&g);
  } else if (const Graph* g = find_graph(*name)) {
    members.push_back(g);
  } else {
    auto it = aliases_.find(*name);
    if (it == aliases_.end()) throw_input("unknown graph " + name->to_text());
    for (const auto& m : it->second) members.push_back(&graphs_.at(m));
  }
  std::vector<const Triple*> out;
  if (members.size() == 1) {
    for (const auto& t : members[0]->triples()) out.push_back(&t);
    return out;
  }
  std::unordered_set<Triple, TripleHash> seen;
  for (const Graph* g : members) {
    for (const auto& t : g->triples()) {
      if (seen.insert(t).second) out.push_back(&t);
    }
  }
  return out;
}

std::string serialize_graph(const Graph& graph) {
  std::vector<const Triple*> sorted;
  sorted.reserve(graph.size());
  for (const auto& t : graph.triples()) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const Triple* a, const Triple* b) { return *a < *b; });
  std::string out;
  for (const Triple* t : sorted) {
    out += t->subject.to_text();
    out += ' ';
    out += t->predicate.to_text();
    out += ' ';
    out += t->object.to_text();
    out += " .\n";
  }
  return out;
}

Graph parse_triples(std::string_view text) {
  std::vector<Token> tokens = tokenize(text);
  Graph g;
  size_t i = 0;

  auto term_at = [&](bool allow_literal) -> Term {
    const Token& tok = tokens[i];
    switch (tok.kind) {
      case Token::Kind::Iri: ++i; return Term::iri(tok.text);
      case Token::Kind::Pname: ++i; return Term::pname(tok.text);
      case Token::Kind::Name:
        if (tok.text == "a") { ++i; return iri::rdf_type(); }
        break;
      case Token::Kind::Blank: ++i; return Term::blank(tok.text);
      case Token::Kind::Number:
        if (allow_literal) { ++i; return Term::number(tok.number); }
        break;
      case Token::Kind::Minus:
        if (allow_literal && tokens[i + 1].kind == Token::Kind::Number) {
          double v = tokens[i + 1].number;
          i += 2;
          return Term::number(-v);
        }
        break;
      case Token::Kind::String:
        if (allow_literal) { ++i; return Term::string(tok.text); }
        break;
      default: break;
    }
    throw_input("triple parse error at line " + std::to_string(tok.line) + ": unexpected " +
                token_kind_name(tok.kind));
  };

  while (tokens[i].kind != Token::Kind::End) {
    Term s = term_at(false);
    Term p = term_at(false);
    Term o = term_at(true);
    if (tokens[i].kind != Token::Kind::Dot)
      throw_input("triple parse error at line " + std::to_string(tokens[i].line) +
                  ": expected '.'");
    ++i;
    if (!p.is_iri())
      throw_input("triple predicate must be an IRI near line " + std::to_string(tokens[i].line));
    g.insert(Triple(std::move(s), std::move(p), std::move(o)));
  }
  return g;
}

}  // namespace cvf
