#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eqsimp/core.hpp"
#include "eqsimp/term.hpp"

namespace eqsimp {

enum class GcMode {
  AllMinimal,  ///< every structure taking part in some minimal term of the roots
  OneMinimal,  ///< one minimal witness per root, newest structures on ties
  Reachable,   ///< everything reachable from the roots through child edges
};

std::string_view to_string(GcMode mode);

/// Normalized collection of structures.
///
/// Each structure `f(i1, i2):i` says that `f(t1, t2)` belongs to the term set
/// of `i` whenever t1, t2 belong to those of i1, i2. After every public
/// operation no two structures share a key, so the sets are the classes of a
/// congruence. Identifiers are allocated from a clock; on unification the
/// younger identifier is always renamed into the older one, so chronological
/// order and numeric order of live identifiers coincide.
///
/// Three intrusive lists per identifier (structures defining it, using it as
/// left child, using it as right child) give constant-time link and unlink.
/// The minimal term size of every identifier is maintained incrementally.
class Collection {
 public:
  static constexpr std::size_t kDefaultCapacity = 500'000;
  static constexpr std::uint32_t kInfiniteSize = std::numeric_limits<std::uint32_t>::max();

  explicit Collection(std::size_t capacity = kDefaultCapacity);

  // --- symbols -------------------------------------------------------------

  /// Interns `name` with the given arity; TheoryError on an arity clash.
  SymbolId symbol(std::string_view name, std::size_t arity);
  std::optional<SymbolId> find_symbol(std::string_view name) const;
  const std::string& symbol_name(SymbolId s) const { return symbols_[s].name; }
  std::size_t symbol_arity(SymbolId s) const { return symbols_[s].arity; }

  // --- the four operations ------------------------------------------------

  /// Adds a term and returns its identifier. Variables are resolved through
  /// `val` (UnboundVariable if missing). CapacityExceeded if a needed
  /// structure cannot be created; structures created before that remain.
  Id to_set(const Term& t, const Valuation* val = nullptr);

  /// Rewrites every structure mentioning `drop` with `drop` replaced by
  /// `keep`. Key collisions produced by the rewrite are queued for
  /// normalize(); until then the collection is not normalized.
  void substitute(Id keep, Id drop);

  /// Resolves queued collisions until no two structures share a key.
  void normalize();

  /// Merges the classes of `a` and `b` (survivor: the older one) and
  /// propagates congruence consequences.
  void unify(Id a, Id b);

  // --- lower-level access used by the axiom engine ------------------------

  std::optional<Id> lookup(const Term& t, const Valuation* val = nullptr) const;
  std::optional<Id> find(const Key& key) const;
  /// Creates `key` under a fresh identifier. Precondition: key absent.
  Id create(const Key& key);
  /// Creates `key` under an existing identifier. Precondition: key absent.
  void insert(const Key& key, Id id);
  /// Whether `extra` more structures fit.
  bool has_room(std::size_t extra) const { return count_ + extra <= capacity_; }

  // --- identifiers ---------------------------------------------------------

  bool is_live(Id id) const { return id.value < ids_.size() && ids_[id.value].live; }
  /// Follows renamings; nullopt if the identifier was garbage collected.
  std::optional<Id> canonical(Id id) const;
  std::uint32_t size(Id id) const;
  std::uint64_t time(Id id) const;
  std::uint64_t clock() const { return clock_; }

  Id main_id() const { return main_id_; }
  void set_main_id(Id id);

  /// Pinned identifiers are garbage-collection roots in every mode.
  void pin(Id id);
  /// Operations involving a watched identifier bump watch_hits().
  void watch(Id id);
  bool is_watched(Id id) const { return id.value < ids_.size() && ids_[id.value].watched; }
  std::uint64_t watch_hits() const { return watch_hits_; }

  /// Live identifiers in chronological order.
  std::vector<Id> ids() const;
  /// Oldest live identifier strictly younger than `after` (kNullId: from start).
  std::optional<Id> next_id(Id after) const;

  std::size_t structure_count() const { return count_; }
  std::size_t id_count() const { return live_ids_; }
  std::size_t capacity() const { return capacity_; }
  void set_capacity(std::size_t capacity) { capacity_ = capacity; }

  // --- traversal -----------------------------------------------------------

  enum class Role : std::uint8_t { Defines = 0, Left = 1, Right = 2 };

  /// Calls f(const Structure&) for every structure in the given list of `id`.
  /// The collection must not be modified during the walk.
  template <class F>
  void for_each(Id id, Role role, F&& f) const {
    if (!is_live(id)) return;
    const auto list = static_cast<std::size_t>(role);
    for (std::uint32_t r = ids_[id.value].head[list]; r != kNone; r = recs_[r].next[list]) {
      f(recs_[r].s);
    }
  }

  /// Structures sorted by creation tick.
  std::vector<Structure> structures() const;
  /// One `symbol(children):id @tick` line per structure, sorted by tick.
  std::string dump() const;
  std::string format(const Structure& s) const;

  /// Collisions found by substitute() and not yet resolved.
  std::vector<std::pair<Id, Id>> pending_merges() const { return {pending_.begin(), pending_.end()}; }

  /// While set, every renaming appends (keep, drop) to `log`.
  void set_merge_log(std::vector<std::pair<Id, Id>>* log) { merge_log_ = log; }

  // --- sizes, extraction, garbage collection ------------------------------

  /// 1 + sum of child sizes (kInfiniteSize if some child has none yet).
  std::uint32_t contribution(const Structure& s) const;

  /// A term of size size(id): at each identifier the minimal structure with
  /// the oldest tick, then smallest symbol name, then smallest children.
  Term extract_min(Id id) const;

  /// Drops structures not needed by `mode` for `roots` and pinned ids.
  /// size() of every root is unchanged.
  void gc(GcMode mode, std::span<const Id> roots);

  /// Recomputes every size from scratch (used after removals).
  void recompute_sizes();

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct SymbolInfo {
    std::string name;
    std::size_t arity;
  };

  struct Record {
    Structure s;
    std::array<std::uint32_t, 3> prev{kNone, kNone, kNone};
    std::array<std::uint32_t, 3> next{kNone, kNone, kNone};
    bool live = false;
  };

  struct IdInfo {
    std::array<std::uint32_t, 3> head{kNone, kNone, kNone};
    std::array<std::uint32_t, 3> tail{kNone, kNone, kNone};
    std::uint64_t time = 0;
    std::uint32_t size = kInfiniteSize;
    Id forward;
    std::uint32_t defining = 0;
    bool live = false;
    bool pinned = false;
    bool watched = false;
  };

  Id list_owner(const Structure& s, std::size_t list) const;
  void link(std::uint32_t r);
  void unlink(std::uint32_t r);
  std::uint32_t add_record(const Key& key, Id id, std::uint64_t created_at);
  void remove_record(std::uint32_t r);
  void retire_id(Id id);
  void touch(const Key& key, Id id) const;
  void relax(const Structure& s);
  void propagate_sizes();
  void compact_id_list();
  std::uint32_t pick_minimal(Id id, bool newest) const;
  void check_live(Id id) const;

  std::vector<SymbolInfo> symbols_;
  std::unordered_map<std::string, SymbolId> symbol_index_;

  std::vector<Record> recs_;
  std::vector<std::uint32_t> free_;
  std::vector<IdInfo> ids_;
  std::unordered_map<Key, std::uint32_t, KeyHash> index_;
  std::vector<Id> id_list_;
  std::size_t dead_in_list_ = 0;
  std::deque<std::pair<Id, Id>> pending_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> size_heap_;  // (size, id), min-heap

  std::size_t capacity_;
  std::size_t count_ = 0;
  std::size_t live_ids_ = 0;
  std::uint64_t clock_ = 0;
  Id main_id_;
  mutable std::uint64_t watch_hits_ = 0;
  std::vector<std::pair<Id, Id>>* merge_log_ = nullptr;
};

}  // namespace eqsimp
