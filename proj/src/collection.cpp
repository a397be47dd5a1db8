#include "eqsimp/collection.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "eqsimp/error.hpp"

namespace eqsimp {

std::string_view to_string(GcMode mode) {
  switch (mode) {
    case GcMode::AllMinimal:
      return "all-minimal";
    case GcMode::OneMinimal:
      return "one-minimal";
    case GcMode::Reachable:
      return "reachable";
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  static constexpr const char* kNames[] = {"x", "y", "z"};
  os << '{';
  for (std::size_t i = 0; i < v.arity; ++i) {
    if (i > 0) os << ", ";
    os << kNames[i] << "->" << v.ids[i].value;
  }
  return os << '}';
}

Collection::Collection(std::size_t capacity) : capacity_(capacity) { ids_.resize(1); }

SymbolId Collection::symbol(std::string_view name, std::size_t arity) {
  auto it = symbol_index_.find(std::string(name));
  if (it != symbol_index_.end()) {
    if (symbols_[it->second].arity != arity) {
      throw TheoryError("symbol '" + std::string(name) + "' used with arity " + std::to_string(arity) +
                        " and " + std::to_string(symbols_[it->second].arity));
    }
    return it->second;
  }
  const auto s = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back({std::string(name), arity});
  symbol_index_.emplace(std::string(name), s);
  return s;
}

std::optional<SymbolId> Collection::find_symbol(std::string_view name) const {
  auto it = symbol_index_.find(std::string(name));
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

// --- records and lists ------------------------------------------------------

Id Collection::list_owner(const Structure& s, std::size_t list) const {
  switch (list) {
    case 0:
      return s.id;
    case 1:
      return s.key.left;
    default:
      return s.key.right;
  }
}

void Collection::link(std::uint32_t r) {
  Record& rec = recs_[r];
  for (std::size_t list = 0; list < 3; ++list) {
    const Id owner = list_owner(rec.s, list);
    if (owner.is_null()) continue;
    IdInfo& info = ids_[owner.value];
    rec.prev[list] = info.tail[list];
    rec.next[list] = kNone;
    if (info.tail[list] == kNone) {
      info.head[list] = r;
    } else {
      recs_[info.tail[list]].next[list] = r;
    }
    info.tail[list] = r;
  }
}

void Collection::unlink(std::uint32_t r) {
  Record& rec = recs_[r];
  for (std::size_t list = 0; list < 3; ++list) {
    const Id owner = list_owner(rec.s, list);
    if (owner.is_null()) continue;
    IdInfo& info = ids_[owner.value];
    if (rec.prev[list] == kNone) {
      info.head[list] = rec.next[list];
    } else {
      recs_[rec.prev[list]].next[list] = rec.next[list];
    }
    if (rec.next[list] == kNone) {
      info.tail[list] = rec.prev[list];
    } else {
      recs_[rec.next[list]].prev[list] = rec.prev[list];
    }
    rec.prev[list] = rec.next[list] = kNone;
  }
}

std::uint32_t Collection::add_record(const Key& key, Id id, std::uint64_t created_at) {
  std::uint32_t r;
  if (!free_.empty()) {
    r = free_.back();
    free_.pop_back();
  } else {
    r = static_cast<std::uint32_t>(recs_.size());
    recs_.emplace_back();
  }
  Record& rec = recs_[r];
  rec.s = Structure{key, id, created_at};
  rec.live = true;
  link(r);
  index_.emplace(key, r);
  ++count_;
  ++ids_[id.value].defining;
  touch(key, id);
  relax(rec.s);
  return r;
}

void Collection::remove_record(std::uint32_t r) {
  Record& rec = recs_[r];
  index_.erase(rec.s.key);
  unlink(r);
  rec.live = false;
  --ids_[rec.s.id.value].defining;
  --count_;
  free_.push_back(r);
}

void Collection::retire_id(Id id) {
  IdInfo& info = ids_[id.value];
  info.live = false;
  --live_ids_;
  ++dead_in_list_;
}

void Collection::touch(const Key& key, Id id) const {
  if (is_watched(key.left) || is_watched(key.right) || is_watched(id)) ++watch_hits_;
}

void Collection::check_live(Id id) const {
  if (!is_live(id)) throw UnknownId(id.value);
}

// --- sizes ------------------------------------------------------------------

std::uint32_t Collection::contribution(const Structure& s) const {
  std::uint64_t total = 1;
  for (Id child : {s.key.left, s.key.right}) {
    if (child.is_null()) continue;
    const std::uint32_t cs = ids_[child.value].size;
    if (cs == kInfiniteSize) return kInfiniteSize;
    total += cs;
  }
  return total >= kInfiniteSize ? kInfiniteSize - 1 : static_cast<std::uint32_t>(total);
}

void Collection::relax(const Structure& s) {
  const std::uint32_t c = contribution(s);
  IdInfo& info = ids_[s.id.value];
  if (c < info.size) {
    info.size = c;
    size_heap_.emplace_back(c, s.id.value);
    std::push_heap(size_heap_.begin(), size_heap_.end(), std::greater<>());
  }
}

void Collection::propagate_sizes() {
  // Smallest first: each identifier settles once, as in Dijkstra/Knuth.
  while (!size_heap_.empty()) {
    std::pop_heap(size_heap_.begin(), size_heap_.end(), std::greater<>());
    const auto [sz, raw] = size_heap_.back();
    size_heap_.pop_back();
    const IdInfo& info = ids_[raw];
    if (!info.live || info.size != sz) continue;
    for (std::size_t list = 1; list < 3; ++list) {
      for (std::uint32_t r = info.head[list]; r != kNone; r = recs_[r].next[list]) {
        relax(recs_[r].s);
      }
    }
  }
}

void Collection::recompute_sizes() {
  for (auto& info : ids_) info.size = kInfiniteSize;
  size_heap_.clear();
  for (const Record& rec : recs_) {
    if (rec.live) relax(rec.s);
  }
  propagate_sizes();
}

std::uint32_t Collection::size(Id id) const {
  check_live(id);
  return ids_[id.value].size;
}

std::uint64_t Collection::time(Id id) const {
  check_live(id);
  return ids_[id.value].time;
}

// --- the four operations -----------------------------------------------------

std::optional<Id> Collection::find(const Key& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) {
    touch(key, kNullId);
    return std::nullopt;
  }
  const Id id = recs_[it->second].s.id;
  touch(key, id);
  return id;
}

Id Collection::create(const Key& key) {
  if (count_ >= capacity_) throw CapacityExceeded();
  const Id id{static_cast<std::uint32_t>(ids_.size())};
  ids_.emplace_back();
  IdInfo& info = ids_.back();
  info.live = true;
  info.time = ++clock_;
  ++live_ids_;
  id_list_.push_back(id);
  add_record(key, id, clock_);
  propagate_sizes();
  return id;
}

void Collection::insert(const Key& key, Id id) {
  check_live(id);
  if (count_ >= capacity_) throw CapacityExceeded();
  add_record(key, id, ++clock_);
  propagate_sizes();
}

Id Collection::to_set(const Term& t, const Valuation* val) {
  if (t.is_variable()) {
    const std::size_t slot = Valuation::slot_of(t.symbol());
    if (val == nullptr || slot >= val->arity) throw UnboundVariable(t.symbol());
    const Id bound = val->ids[slot];
    check_live(bound);
    return bound;
  }
  Key key;
  if (t.arity() >= 1) key.left = to_set(t.child(0), val);
  if (t.arity() >= 2) key.right = to_set(t.child(1), val);
  key.symbol = symbol(t.symbol(), t.arity());
  if (auto found = find(key)) return *found;
  return create(key);
}

std::optional<Id> Collection::lookup(const Term& t, const Valuation* val) const {
  if (t.is_variable()) {
    const std::size_t slot = Valuation::slot_of(t.symbol());
    if (val == nullptr || slot >= val->arity) throw UnboundVariable(t.symbol());
    return val->ids[slot];
  }
  Key key;
  if (t.arity() >= 1) {
    auto c = lookup(t.child(0), val);
    if (!c) return std::nullopt;
    key.left = *c;
  }
  if (t.arity() >= 2) {
    auto c = lookup(t.child(1), val);
    if (!c) return std::nullopt;
    key.right = *c;
  }
  auto s = find_symbol(t.symbol());
  if (!s) return std::nullopt;
  key.symbol = *s;
  return find(key);
}

void Collection::substitute(Id keep, Id drop) {
  check_live(keep);
  check_live(drop);
  if (keep == drop) return;
  if (is_watched(keep) || is_watched(drop)) ++watch_hits_;

  std::vector<Structure> moved;
  std::vector<std::uint32_t> victims;
  const IdInfo& dinfo = ids_[drop.value];
  for (std::uint32_t r = dinfo.head[0]; r != kNone; r = recs_[r].next[0]) victims.push_back(r);
  for (std::uint32_t r = dinfo.head[1]; r != kNone; r = recs_[r].next[1]) {
    if (recs_[r].s.id != drop) victims.push_back(r);
  }
  for (std::uint32_t r = dinfo.head[2]; r != kNone; r = recs_[r].next[2]) {
    if (recs_[r].s.id != drop && recs_[r].s.key.left != drop) victims.push_back(r);
  }
  moved.reserve(victims.size());
  for (std::uint32_t r : victims) {
    moved.push_back(recs_[r].s);
    remove_record(r);
  }

  auto rename = [&](Id x) { return x == drop ? keep : x; };
  for (const Structure& s : moved) {
    touch(s.key, s.id);
    const Key key{s.key.symbol, rename(s.key.left), rename(s.key.right)};
    const Id id = rename(s.id);
    auto it = index_.find(key);
    if (it != index_.end()) {
      const Id other = recs_[it->second].s.id;
      if (other != id) pending_.emplace_back(other, id);
      continue;
    }
    add_record(key, id, s.created_at);
  }

  IdInfo& kinfo = ids_[keep.value];
  IdInfo& old = ids_[drop.value];
  old.forward = keep;
  kinfo.pinned = kinfo.pinned || old.pinned;
  kinfo.watched = kinfo.watched || old.watched;
  if (old.size < kinfo.size) {
    kinfo.size = old.size;
    size_heap_.emplace_back(kinfo.size, keep.value);
    std::push_heap(size_heap_.begin(), size_heap_.end(), std::greater<>());
  }
  retire_id(drop);
  if (main_id_ == drop) main_id_ = keep;
  if (merge_log_ != nullptr) merge_log_->emplace_back(keep, drop);
}

void Collection::normalize() {
  while (!pending_.empty()) {
    auto [a, b] = pending_.front();
    pending_.pop_front();
    const auto ca = canonical(a);
    const auto cb = canonical(b);
    if (!ca || !cb || *ca == *cb) continue;
    if (ids_[ca->value].time <= ids_[cb->value].time) {
      substitute(*ca, *cb);
    } else {
      substitute(*cb, *ca);
    }
  }
  propagate_sizes();
  if (dead_in_list_ > 64 && dead_in_list_ * 2 > id_list_.size()) compact_id_list();
}

void Collection::unify(Id a, Id b) {
  check_live(a);
  check_live(b);
  if (a == b) return;
  if (ids_[a.value].time <= ids_[b.value].time) {
    substitute(a, b);
  } else {
    substitute(b, a);
  }
  normalize();
}

// --- identifiers ---------------------------------------------------------------

std::optional<Id> Collection::canonical(Id id) const {
  while (id.value != 0 && id.value < ids_.size()) {
    const IdInfo& info = ids_[id.value];
    if (info.live) return id;
    if (info.forward.is_null()) return std::nullopt;
    id = info.forward;
  }
  return std::nullopt;
}

void Collection::set_main_id(Id id) {
  check_live(id);
  main_id_ = id;
}

void Collection::pin(Id id) {
  check_live(id);
  ids_[id.value].pinned = true;
}

void Collection::watch(Id id) {
  check_live(id);
  ids_[id.value].watched = true;
}

std::vector<Id> Collection::ids() const {
  std::vector<Id> out;
  out.reserve(live_ids_);
  for (Id id : id_list_) {
    if (is_live(id)) out.push_back(id);
  }
  return out;
}

std::optional<Id> Collection::next_id(Id after) const {
  auto it = std::upper_bound(id_list_.begin(), id_list_.end(), after);
  for (; it != id_list_.end(); ++it) {
    if (is_live(*it)) return *it;
  }
  return std::nullopt;
}

void Collection::compact_id_list() {
  std::erase_if(id_list_, [this](Id id) { return !is_live(id); });
  dead_in_list_ = 0;
}

// --- inspection ---------------------------------------------------------------

std::vector<Structure> Collection::structures() const {
  std::vector<Structure> out;
  out.reserve(count_);
  for (const Record& rec : recs_) {
    if (rec.live) out.push_back(rec.s);
  }
  std::sort(out.begin(), out.end(),
            [](const Structure& a, const Structure& b) { return a.created_at < b.created_at; });
  return out;
}

std::string Collection::format(const Structure& s) const {
  std::ostringstream os;
  os << symbol_name(s.key.symbol);
  if (!s.key.left.is_null()) {
    os << '(' << s.key.left.value;
    if (!s.key.right.is_null()) os << ", " << s.key.right.value;
    os << ')';
  }
  os << ':' << s.id.value << " @" << s.created_at;
  return os.str();
}

std::string Collection::dump() const {
  std::string out;
  for (const Structure& s : structures()) {
    out += format(s);
    out += '\n';
  }
  return out;
}

// --- extraction and garbage collection ----------------------------------------

std::uint32_t Collection::pick_minimal(Id id, bool newest) const {
  const IdInfo& info = ids_[id.value];
  std::uint32_t best = kNone;
  auto less = [this](const Structure& a, const Structure& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    const std::string& na = symbol_name(a.key.symbol);
    const std::string& nb = symbol_name(b.key.symbol);
    if (na != nb) return na < nb;
    return std::tie(a.key.left, a.key.right) < std::tie(b.key.left, b.key.right);
  };
  for (std::uint32_t r = info.head[0]; r != kNone; r = recs_[r].next[0]) {
    const Structure& s = recs_[r].s;
    if (contribution(s) != info.size) continue;
    if (best == kNone || (newest ? less(recs_[best].s, s) : less(s, recs_[best].s))) best = r;
  }
  if (best == kNone) throw Error("identifier " + std::to_string(id.value) + " has no finite term");
  return best;
}

Term Collection::extract_min(Id id) const {
  check_live(id);
  std::unordered_map<std::uint32_t, Term> memo;
  std::function<Term(Id)> build = [&](Id i) -> Term {
    if (auto it = memo.find(i.value); it != memo.end()) return it->second;
    const Structure& s = recs_[pick_minimal(i, false)].s;
    const std::string& name = symbol_name(s.key.symbol);
    Term t = s.key.left.is_null()    ? Term::constant(name)
             : s.key.right.is_null() ? Term::unary(name, build(s.key.left))
                                     : Term::binary(name, build(s.key.left), build(s.key.right));
    memo.emplace(i.value, t);
    return t;
  };
  return build(id);
}

void Collection::gc(GcMode mode, std::span<const Id> roots) {
  normalize();
  std::vector<char> keep(recs_.size(), 0);
  std::vector<char> seen(ids_.size(), 0);
  std::vector<Id> stack;
  for (Id root : roots) {
    if (auto c = canonical(root)) stack.push_back(*c);
  }
  for (Id id : id_list_) {
    if (is_live(id) && ids_[id.value].pinned) stack.push_back(id);
  }
  auto keep_record = [&](std::uint32_t r) {
    keep[r] = 1;
    const Key& k = recs_[r].s.key;
    if (!k.left.is_null()) stack.push_back(k.left);
    if (!k.right.is_null()) stack.push_back(k.right);
  };
  while (!stack.empty()) {
    const Id id = stack.back();
    stack.pop_back();
    if (seen[id.value]) continue;
    seen[id.value] = 1;
    const IdInfo& info = ids_[id.value];
    switch (mode) {
      case GcMode::Reachable:
        for (std::uint32_t r = info.head[0]; r != kNone; r = recs_[r].next[0]) keep_record(r);
        break;
      case GcMode::AllMinimal:
        for (std::uint32_t r = info.head[0]; r != kNone; r = recs_[r].next[0]) {
          if (contribution(recs_[r].s) == info.size) keep_record(r);
        }
        break;
      case GcMode::OneMinimal:
        keep_record(pick_minimal(id, true));
        break;
    }
  }
  for (std::uint32_t r = 0; r < recs_.size(); ++r) {
    if (recs_[r].live && !keep[r]) remove_record(r);
  }
  for (Id id : id_list_) {
    if (is_live(id) && ids_[id.value].defining == 0) {
      ids_[id.value].forward = kNullId;
      retire_id(id);
    }
  }
  compact_id_list();
  recompute_sizes();
}

}  // namespace eqsimp
