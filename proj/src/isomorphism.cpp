#include "cvf/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace cvf {

namespace {

// Blank-node signature: multiset of triple shapes with blanks erased,
// refined iteratively with neighbor signatures (1-WL style).
using SigMap = std::unordered_map<std::string, std::string>;

std::vector<std::string> blank_labels(const Graph& g) {
  std::set<std::string> labels;
  for (const auto& t : g.triples()) {
    if (t.subject.is_blank()) labels.insert(t.subject.text());
    if (t.object.is_blank()) labels.insert(t.object.text());
  }
  return {labels.begin(), labels.end()};
}

std::string term_sig(const Term& t, const SigMap& sigs) {
  if (t.is_blank()) {
    auto it = sigs.find(t.text());
    return "B(" + (it == sigs.end() ? std::string() : it->second) + ")";
  }
  return t.to_text();
}

SigMap refine_signatures(const Graph& g, int rounds) {
  SigMap sigs;
  for (const auto& label : blank_labels(g)) sigs[label] = "";
  for (int r = 0; r < rounds; ++r) {
    std::unordered_map<std::string, std::vector<std::string>> parts;
    for (const auto& t : g.triples()) {
      std::string shape = term_sig(t.subject, sigs) + "|" + t.predicate.to_text() + "|" +
                          term_sig(t.object, sigs);
      if (t.subject.is_blank()) parts[t.subject.text()].push_back("S:" + shape);
      if (t.object.is_blank()) parts[t.object.text()].push_back("O:" + shape);
    }
    SigMap next;
    for (auto& [label, vec] : parts) {
      std::sort(vec.begin(), vec.end());
      std::string joined;
      for (const auto& s : vec) {
        joined += s;
        joined += ';';
      }
      next[label] = joined;
    }
    for (const auto& label : blank_labels(g))
      if (!next.count(label)) next[label] = "";
    sigs = std::move(next);
  }
  return sigs;
}

Term map_term(const Term& t, const std::unordered_map<std::string, Term>& mapping) {
  if (!t.is_blank()) return t;
  return mapping.at(t.text());
}

bool extend(const Graph& a, const Graph& b, const std::vector<std::string>& a_blanks,
            size_t index, std::unordered_map<std::string, Term>& mapping,
            std::set<std::string>& used,
            const std::unordered_map<std::string, std::vector<std::string>>& candidates) {
  if (index == a_blanks.size()) {
    for (const auto& t : a.triples()) {
      Triple img(map_term(t.subject, mapping), t.predicate, map_term(t.object, mapping));
      if (!b.contains(img)) return false;
    }
    return true;
  }
  const std::string& label = a_blanks[index];
  for (const auto& cand : candidates.at(label)) {
    if (used.count(cand)) continue;
    mapping.emplace(label, Term::blank(cand));
    used.insert(cand);
    // Prune: triples of `a` fully mapped so far must exist in b.
    bool ok = true;
    for (const auto& t : a.triples()) {
      bool s_ready = !t.subject.is_blank() || mapping.count(t.subject.text());
      bool o_ready = !t.object.is_blank() || mapping.count(t.object.text());
      if (s_ready && o_ready) {
        Triple img(map_term(t.subject, mapping), t.predicate, map_term(t.object, mapping));
        if (!b.contains(img)) {
          ok = false;
          break;
        }
      }
    }
    if (ok && extend(a, b, a_blanks, index + 1, mapping, used, candidates)) return true;
    mapping.erase(label);
    used.erase(cand);
  }
  return false;
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;

  // Ground triples must coincide exactly.
  for (const auto& t : a.triples())
    if (!t.subject.is_blank() && !t.object.is_blank() && !b.contains(t)) return false;
  for (const auto& t : b.triples())
    if (!t.subject.is_blank() && !t.object.is_blank() && !a.contains(t)) return false;

  std::vector<std::string> a_blanks = blank_labels(a);
  std::vector<std::string> b_blanks = blank_labels(b);
  if (a_blanks.size() != b_blanks.size()) return false;
  if (a_blanks.empty()) return true;

  SigMap a_sigs = refine_signatures(a, 3);
  SigMap b_sigs = refine_signatures(b, 3);

  std::unordered_map<std::string, std::vector<std::string>> candidates;
  for (const auto& al : a_blanks) {
    std::vector<std::string> cands;
    for (const auto& bl : b_blanks)
      if (a_sigs[al] == b_sigs[bl]) cands.push_back(bl);
    if (cands.empty()) return false;
    candidates[al] = std::move(cands);
  }

  // Assign most-constrained blanks first.
  std::sort(a_blanks.begin(), a_blanks.end(), [&](const std::string& x, const std::string& y) {
    return candidates[x].size() < candidates[y].size();
  });

  std::unordered_map<std::string, Term> mapping;
  std::set<std::string> used;
  return extend(a, b, a_blanks, 0, mapping, used, candidates);
}

}  // namespace cvf
