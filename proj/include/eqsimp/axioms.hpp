#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqsimp/collection.hpp"
#include "eqsimp/core.hpp"
#include "eqsimp/term.hpp"

namespace eqsimp {

/// An equation `lhs = rhs` over the variables x, y, z.
struct Axiom {
  Term lhs;
  Term rhs;
  std::size_t arity = 0;  // number of distinct variables, 1..3
  std::string tag;        // source line, e.g. "x1 = x"
};

class AxiomSet {
 public:
  struct SymbolDecl {
    std::string name;
    std::size_t arity;
  };

  AxiomSet() = default;
  AxiomSet(std::vector<SymbolDecl> symbols, std::vector<Axiom> axioms, bool extended);

  const std::vector<Axiom>& all() const { return axioms_; }
  /// Indices into all() of the axioms with `arity` variables.
  const std::vector<std::size_t>& of_arity(std::size_t arity) const { return by_arity_.at(arity); }
  const std::vector<SymbolDecl>& symbols() const { return symbols_; }
  bool extended() const { return extended_; }
  std::size_t size() const { return axioms_.size(); }

 private:
  std::vector<SymbolDecl> symbols_;
  std::vector<Axiom> axioms_;
  std::array<std::vector<std::size_t>, 4> by_arity_;
  bool extended_ = false;
};

/// Reads a theory: `symbol <token> <arity>` header lines, then one
/// `lhs = rhs` per line. `#` starts a comment. TheoryError on malformed input.
AxiomSet parse_theory(std::string_view text, bool extended = false);
AxiomSet load_theory(const std::string& path, bool extended = false);

/// The 21 boolean axioms.
AxiomSet standard_axioms();
/// The standard axioms plus four shortcuts.
AxiomSet extended_axioms();

enum class ApplicationMode {
  Conditional,  ///< commit only when one side already exists
  BottomUp,     ///< commit both sides unconditionally
};

struct ApplyOutcome {
  bool useful = false;
  bool used01 = false;
  std::uint32_t size_drop = 0;
  /// The creation guard refused the missing side.
  bool blocked = false;
};

/// Per-category counters over a batch of applications.
struct ApplyTally {
  std::uint64_t attempted = 0;
  std::uint64_t useful = 0;
  std::uint64_t ds01 = 0;
  std::uint64_t nd01 = 0;
  std::uint64_t ods = 0;
  std::uint64_t nods = 0;

  void add(const ApplyOutcome& o);
};

/// Applies axioms of one theory to one collection.
///
/// Patterns are compiled once to post-order node lists over the store's
/// symbol ids. An application first resolves both sides by lookups only and
/// commits nothing unless the mode and the size guard allow it, so a
/// rejected application leaves the store untouched.
class AxiomEngine {
 public:
  AxiomEngine(Collection& store, const AxiomSet& axioms);

  const AxiomSet& axioms() const { return *axioms_; }

  /// Applies axiom `index` under `v`. Precondition: v.arity equals the
  /// axiom's arity and every bound id is live. CapacityExceeded is thrown
  /// before any mutation.
  ApplyOutcome apply(const Valuation& v, std::size_t index, ApplicationMode mode);

  /// Applies every one-variable axiom under {x->i} for each id of `pending`
  /// still live, in the given order. Ids for which no application was
  /// refused by the creation guard are appended to `completed`.
  ApplyTally early_apply_single_var(std::span<const Id> pending, ApplicationMode mode,
                                    std::vector<Id>* completed = nullptr);

 private:
  struct Node {
    SymbolId symbol = 0;
    std::int8_t var = -1;       // slot for variables
    std::uint8_t arity = 0;
    std::uint16_t left = 0;     // indices of children in the same list
    std::uint16_t right = 0;
  };
  using Pattern = std::vector<Node>;

  static constexpr std::size_t kMaxPatternNodes = 32;

  struct Resolved {
    std::array<Id, kMaxPatternNodes> ids;  // kNullId where the node does not exist yet
    std::size_t n = 0;
    std::size_t missing = 0;
  };

  static void compile(Collection& store, const Term& t, Pattern& out);
  void resolve(const Pattern& p, const Valuation& v, Resolved& r) const;
  bool guard_ok(const Pattern& p, const Resolved& r, std::uint32_t bound) const;
  Id commit(const Pattern& p, const Valuation& v, Resolved& r, Id root_target);
  Key key_of(const Node& n, const Resolved& r) const;

  Collection* store_;
  const AxiomSet* axioms_;
  std::vector<std::pair<Pattern, Pattern>> compiled_;
  Resolved lhs_scratch_;
  Resolved rhs_scratch_;
};

/// One-off application without a long-lived engine.
ApplyOutcome apply(Collection& store, const Valuation& v, const Axiom& axiom, ApplicationMode mode);

}  // namespace eqsimp
