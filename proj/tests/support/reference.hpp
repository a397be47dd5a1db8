#pragma once

// Slow reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "eqsimp/collection.hpp"
#include "eqsimp/term.hpp"

namespace eqsimp::testing {

/// Congruence closure by repeated pairwise comparison of all subterms.
class NaiveClosure {
 public:
  explicit NaiveClosure(const std::vector<std::pair<Term, Term>>& equations,
                        const std::vector<Term>& queries = {}) {
    for (const auto& [l, r] : equations) {
      add(l);
      add(r);
    }
    for (const auto& q : queries) add(q);
    for (const auto& [l, r] : equations) merge(index_of(l), index_of(r));
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < nodes_.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes_.size(); ++b) {
          if (find(a) == find(b) || !congruent(a, b)) continue;
          merge(a, b);
          changed = true;
        }
      }
    }
  }

  /// Both terms must have been passed as equation sides or queries.
  bool equal(const Term& s, const Term& t) { return find(index_of(s)) == find(index_of(t)); }

 private:
  struct Node {
    std::string symbol;
    std::vector<std::size_t> children;
  };

  std::size_t add(const Term& t) {
    Node n{t.symbol(), {}};
    for (std::size_t k = 0; k < t.arity(); ++k) n.children.push_back(add(t.child(k)));
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      if (nodes_[k].symbol == n.symbol && nodes_[k].children == n.children) return k;
    }
    nodes_.push_back(n);
    parent_.push_back(parent_.size());
    return nodes_.size() - 1;
  }

  std::size_t index_of(const Term& t) { return add(t); }

  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }

  void merge(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  bool congruent(std::size_t a, std::size_t b) {
    const Node& x = nodes_[a];
    const Node& y = nodes_[b];
    if (x.symbol != y.symbol || x.children.size() != y.children.size()) return false;
    for (std::size_t k = 0; k < x.children.size(); ++k) {
      if (find(x.children[k]) != find(y.children[k])) return false;
    }
    return true;
  }

  std::vector<Node> nodes_;
  std::vector<std::size_t> parent_;
};

/// Minimal term size per live id over terms of depth at most `depth`,
/// computed from the structure list alone. Ids without such a term are absent.
inline std::map<std::uint32_t, std::uint32_t> bounded_sizes(const Collection& store, std::size_t depth) {
  const auto structures = store.structures();
  std::map<std::uint32_t, std::uint32_t> best;
  for (std::size_t d = 0; d < depth; ++d) {
    std::map<std::uint32_t, std::uint32_t> next = best;
    for (const Structure& s : structures) {
      std::uint32_t total = 1;
      bool ok = true;
      for (Id c : {s.key.left, s.key.right}) {
        if (c.is_null()) continue;
        auto it = best.find(c.value);
        if (it == best.end()) {
          ok = false;
          break;
        }
        total += it->second;
      }
      if (!ok) continue;
      auto [it, inserted] = next.emplace(s.id.value, total);
      if (!inserted) it->second = std::min(it->second, total);
    }
    if (next == best) break;
    best = std::move(next);
  }
  return best;
}

/// No two structures share a key.
inline bool is_normalized(const Collection& store) {
  auto all = store.structures();
  std::vector<std::tuple<SymbolId, std::uint32_t, std::uint32_t>> keys;
  keys.reserve(all.size());
  for (const auto& s : all) keys.emplace_back(s.key.symbol, s.key.left.value, s.key.right.value);
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end() && store.pending_merges().empty();
}

/// Every child id is live and defined by at least one structure.
inline bool is_well_formed(const Collection& store) {
  auto all = store.structures();
  std::vector<std::uint32_t> defined;
  for (const auto& s : all) {
    if (!store.is_live(s.id)) return false;
    defined.push_back(s.id.value);
  }
  std::sort(defined.begin(), defined.end());
  for (const auto& s : all) {
    for (Id c : {s.key.left, s.key.right}) {
      if (c.is_null()) continue;
      if (!store.is_live(c) || !std::binary_search(defined.begin(), defined.end(), c.value)) return false;
    }
  }
  return true;
}

}  // namespace eqsimp::testing
