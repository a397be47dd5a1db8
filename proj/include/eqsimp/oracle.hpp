#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eqsimp/axioms.hpp"
#include "eqsimp/collection.hpp"
#include "eqsimp/term.hpp"

namespace eqsimp {

struct SaturationReport {
  std::size_t classes = 0;
  std::size_t structures = 0;
  std::size_t rounds = 0;
  bool reached_fixpoint = false;
};

/// Unrestricted bottom-up completion from the given constants: each round
/// snapshots the live ids and applies every axiom to every valuation over
/// them (all tuples, so every order), creating both sides freely. Stops at a
/// round that changes nothing, or unfinished once `limit` structures would
/// be exceeded.
SaturationReport saturate(const std::vector<std::string>& constants, const AxiomSet& axioms,
                          std::size_t limit = 200'000);

/// Store after adding both sides of every ground equation and unifying them.
/// s = t follows from the equations iff to_set(s) == to_set(t).
Collection solve_ground(const std::vector<std::pair<Term, Term>>& equations);

/// Truth-table equality over the union of the letters (at most 20).
bool equivalent(const Term& a, const Term& b);

/// Agreement on `samples` assignments drawn from splitmix64(seed).
bool sampled_equivalent(const Term& a, const Term& b, std::size_t samples, std::uint64_t seed);

}  // namespace eqsimp
