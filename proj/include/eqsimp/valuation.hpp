#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "eqsimp/collection.hpp"
#include "eqsimp/core.hpp"

namespace eqsimp {

/// Which structures may seed valuations.
struct StructureFilter {
  /// Only structures with created_at <= horizon are consulted.
  std::uint64_t horizon = std::numeric_limits<std::uint64_t>::max();
  /// Require size(child) <= size(owner) for every child of a consulted structure.
  bool size_guard = true;

  bool admits(const Collection& store, const Structure& s) const;
};

/// Valuations built from the structures defining `i` and those defining
/// its children: {x->i}; {x->j1, y->j2} per f(j1, j2):i; and per
/// g(k1, k2):j1 the triple <k1, k2, j2>, per g(k1, k2):j2 the triple
/// <j1, k1, k2>. A unary structure supplies its child for both slots.
std::vector<Valuation> gen_type0(const Collection& store, Id i, const StructureFilter& filter);

/// Type 0 plus all pairs and triples over {i, j1, j2} for each admissible
/// structure f(j1, j2):i.
std::vector<Valuation> gen_type1(const Collection& store, Id i, const StructureFilter& filter);

/// Type 1 plus all pairs and triples over {i, j1, j2, k1, k2} for each
/// admissible f(j1, j2):i and admissible g(k1, k2):j with j in {j1, j2}.
std::vector<Valuation> gen_type2(const Collection& store, Id i, const StructureFilter& filter);

/// Every {x->i}, {x->i, y->i'}, {x->i, y->i', z->i''} with
/// time(i) >= time(i') >= time(i''), streamed lazily over a snapshot of the
/// live identifiers taken at construction. Order: i' then i'' by
/// descending time.
class Type3Stream {
 public:
  Type3Stream(const Collection& store, Id i);

  std::optional<Valuation> next();
  /// Total number of valuations this stream yields.
  std::uint64_t total() const;

 private:
  std::vector<Id> older_;  // ids with time <= time(i), youngest first; older_[0] == i
  std::uint8_t phase_ = 1;
  std::size_t a_ = 0;
  std::size_t b_ = 0;
};

/// All distinct valuations obtained by permuting the bound identifiers of `v`
/// over its variables.
std::vector<Valuation> expand_multiple(const Valuation& v);

/// Calls f(const Valuation&) for each element of expand_multiple(v), in the
/// same order, without allocating.
template <class F>
void for_each_permutation(const Valuation& v, F&& f) {
  Valuation p = v;
  std::sort(p.ids.begin(), p.ids.begin() + p.arity);
  do {
    f(static_cast<const Valuation&>(p));
  } while (std::next_permutation(p.ids.begin(), p.ids.begin() + p.arity));
}

}  // namespace eqsimp
