#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cvf {

// Fixed prefix table. Element QNames and prefixed names in queries resolve
// against these namespaces; anything else is written as a full IRI.
namespace ns {
inline constexpr std::string_view kDefault = "http://cvf.local/ns#";
inline constexpr std::string_view kCgml = "http://www.opengis.net/citygml/2.0#";
inline constexpr std::string_view kGml = "http://www.opengis.net/gml#";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
}  // namespace ns

// One node of the RDF data model: IRI, blank node, or literal (number/string).
class Term {
 public:
  enum class Kind : uint8_t { Iri, Blank, Number, String };

  Term() : kind_(Kind::String) {}

  static Term iri(std::string value);
  static Term blank(std::string label);
  static Term number(double value);
  static Term string(std::string value);

  // Resolves "prefix:local" (or ":local", or the keyword "a") to an IRI.
  static Term pname(const std::string& prefixed);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::Iri; }
  bool is_blank() const { return kind_ == Kind::Blank; }
  bool is_number() const { return kind_ == Kind::Number; }
  bool is_string() const { return kind_ == Kind::String; }
  bool is_literal() const { return is_number() || is_string(); }

  const std::string& text() const { return text_; }  // IRI value, blank label, or string
  double number_value() const { return number_; }

  // IRI local name relative to a known namespace ("" when none matches).
  std::string local_name() const;

  // Serialized form: prefixed name or <iri>, _:label, quoted string, number.
  std::string to_text() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;

  size_t hash() const;

 private:
  Kind kind_;
  std::string text_;
  double number_ = 0;
};

inline Term default_ns_iri(const std::string& local) {
  return Term::iri(std::string(ns::kDefault) + local);
}

namespace iri {
Term rdf_type();
}

struct Triple {
  Term subject;    // IRI or blank
  Term predicate;  // IRI
  Term object;

  Triple() = default;
  Triple(Term s, Term p, Term o);

  bool operator==(const Triple& other) const;
  bool operator<(const Triple& other) const;
};

struct TripleHash {
  size_t operator()(const Triple& t) const;
};

// Set of triples with deterministic insertion order, a subject index for
// traversals, and a per-graph blank node allocator.
class Graph {
 public:
  // Returns false when the triple was already present.
  bool insert(Triple t);
  void insert_all(const Graph& other);

  bool contains(const Triple& t) const;
  size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  const std::vector<Triple>& triples() const { return triples_; }

  std::vector<const Triple*> with_subject(const Term& s) const;
  std::vector<Term> objects_of(const Term& s, const Term& p) const;
  std::optional<Term> object_of(const Term& s, const Term& p) const;
  std::vector<Term> subjects_of_type(const Term& type) const;
  bool has_subject(const Term& s) const;

  // Allocates b1, b2, ... labels, skipping any already present.
  Term fresh_blank();

 private:
  std::vector<Triple> triples_;
  std::unordered_set<Triple, TripleHash> set_;
  std::unordered_map<std::string, std::vector<size_t>> by_subject_;
  std::unordered_set<std::string> blank_labels_;
  size_t blank_counter_ = 0;

  static std::string subject_key(const Term& s);
};

// Named-graph store. Graphs are filled during a load phase, then the store
// is frozen; queries over a frozen store are pure.
class Store {
 public:
  Graph& graph(const Term& name);
  const Graph* find_graph(const Term& name) const;

  // Registers `name` as a union view over existing member graphs.
  void add_alias(const Term& name, std::vector<Term> members);
  bool has_graph_or_alias(const Term& name) const;

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  const std::map<Term, Graph>& graphs() const { return graphs_; }

  // Deduplicated triples of one named graph / alias (or of the whole store).
  std::vector<const Triple*> view(const std::optional<Term>& name) const;

 private:
  std::map<Term, Graph> graphs_;
  std::map<Term, std::vector<Term>> aliases_;
  bool frozen_ = false;
};

// Deterministic line-oriented serialization: one "S P O ." line per triple,
// sorted by subject, predicate, object.
std::string serialize_graph(const Graph& graph);

// Parses the serialize_graph format (accepts `a` for rdf:type).
Graph parse_triples(std::string_view text);

}  // namespace cvf

template <>
struct std::hash<cvf::Term> {
  size_t operator()(const cvf::Term& t) const { return t.hash(); }
};
