#include "eqsimp/valuation.hpp"

#include <algorithm>
#include <unordered_set>

namespace eqsimp {

bool StructureFilter::admits(const Collection& store, const Structure& s) const {
  if (s.created_at > horizon) return false;
  if (!size_guard) return true;
  const std::uint32_t own = store.size(s.id);
  for (Id child : {s.key.left, s.key.right}) {
    if (!child.is_null() && store.size(child) > own) return false;
  }
  return true;
}

namespace {

class Emitter {
 public:
  void push(const Valuation& v) {
    if (seen_.insert(v).second) out_.push_back(v);
  }
  std::vector<Valuation> take() { return std::move(out_); }

 private:
  std::unordered_set<Valuation, ValuationHash> seen_;
  std::vector<Valuation> out_;
};

struct Children {
  Id first;
  Id second;
};

// A unary structure fills both child slots with its only child.
Children children_of(const Structure& s) {
  return {s.key.left, s.key.right.is_null() ? s.key.left : s.key.right};
}

bool compound(const Structure& s) { return !s.key.left.is_null(); }

template <class F>
void for_each_admissible(const Collection& store, Id id, const StructureFilter& filter, F&& f) {
  store.for_each(id, Collection::Role::Defines, [&](const Structure& s) {
    if (compound(s) && filter.admits(store, s)) f(s);
  });
}

void emit_type0(const Collection& store, Id i, const StructureFilter& filter, Emitter& out) {
  out.push(Valuation::of(i));
  for_each_admissible(store, i, filter, [&](const Structure& s) {
    const auto [j1, j2] = children_of(s);
    out.push(Valuation::of(j1, j2));
    for_each_admissible(store, j1, filter, [&](const Structure& t) {
      const auto [k1, k2] = children_of(t);
      out.push(Valuation::of(k1, k2, j2));
    });
    for_each_admissible(store, j2, filter, [&](const Structure& t) {
      const auto [k1, k2] = children_of(t);
      out.push(Valuation::of(j1, k1, k2));
    });
  });
}

void emit_neighborhood(std::vector<Id> hood, Emitter& out) {
  std::sort(hood.begin(), hood.end());
  hood.erase(std::unique(hood.begin(), hood.end()), hood.end());
  for (Id a : hood) {
    for (Id b : hood) out.push(Valuation::of(a, b));
  }
  for (Id a : hood) {
    for (Id b : hood) {
      for (Id c : hood) out.push(Valuation::of(a, b, c));
    }
  }
}

void emit_type1_extra(const Collection& store, Id i, const StructureFilter& filter, Emitter& out) {
  for_each_admissible(store, i, filter, [&](const Structure& s) {
    const auto [j1, j2] = children_of(s);
    emit_neighborhood({i, j1, j2}, out);
  });
}

void emit_type2_extra(const Collection& store, Id i, const StructureFilter& filter, Emitter& out) {
  for_each_admissible(store, i, filter, [&](const Structure& s) {
    const auto [j1, j2] = children_of(s);
    for (Id j : {j1, j2}) {
      for_each_admissible(store, j, filter, [&](const Structure& t) {
        const auto [k1, k2] = children_of(t);
        emit_neighborhood({i, j1, j2, k1, k2}, out);
      });
    }
  });
}

}  // namespace

std::vector<Valuation> gen_type0(const Collection& store, Id i, const StructureFilter& filter) {
  Emitter out;
  emit_type0(store, i, filter, out);
  return out.take();
}

std::vector<Valuation> gen_type1(const Collection& store, Id i, const StructureFilter& filter) {
  Emitter out;
  emit_type0(store, i, filter, out);
  emit_type1_extra(store, i, filter, out);
  return out.take();
}

std::vector<Valuation> gen_type2(const Collection& store, Id i, const StructureFilter& filter) {
  Emitter out;
  emit_type0(store, i, filter, out);
  emit_type1_extra(store, i, filter, out);
  emit_type2_extra(store, i, filter, out);
  return out.take();
}

Type3Stream::Type3Stream(const Collection& store, Id i) {
  const std::uint64_t limit = store.time(i);
  for (Id id : store.ids()) {
    if (store.time(id) <= limit) older_.push_back(id);
  }
  std::reverse(older_.begin(), older_.end());
}

std::optional<Valuation> Type3Stream::next() {
  const std::size_t r = older_.size();
  if (r == 0) return std::nullopt;
  const Id i = older_[0];
  switch (phase_) {
    case 1:
      phase_ = 2;
      return Valuation::of(i);
    case 2:
      if (a_ < r) return Valuation::of(i, older_[a_++]);
      phase_ = 3;
      a_ = 0;
      b_ = 0;
      [[fallthrough]];
    case 3:
      if (a_ < r) {
        const Valuation v = Valuation::of(i, older_[a_], older_[b_]);
        if (++b_ == r) {
          ++a_;
          b_ = a_;
        }
        return v;
      }
      phase_ = 4;
      [[fallthrough]];
    default:
      return std::nullopt;
  }
}

std::uint64_t Type3Stream::total() const {
  const std::uint64_t r = older_.size();
  return r == 0 ? 0 : 1 + r + r * (r + 1) / 2;
}

std::vector<Valuation> expand_multiple(const Valuation& v) {
  std::vector<Valuation> out;
  for_each_permutation(v, [&out](const Valuation& p) { out.push_back(p); });
  return out;
}

}  // namespace eqsimp
