#include "eqsimp/oracle.hpp"

#include <map>

#include "eqsimp/error.hpp"

namespace eqsimp {

SaturationReport saturate(const std::vector<std::string>& constants, const AxiomSet& axioms,
                          std::size_t limit) {
  SaturationReport report;
  Collection store(limit);
  AxiomEngine engine(store, axioms);
  for (const std::string& c : constants) store.to_set(Term::constant(c));

  auto canonical = [&](Valuation& v) {
    for (std::size_t s = 0; s < v.arity; ++s) {
      const auto c = store.canonical(v[s]);
      if (!c) return false;
      v.ids[s] = *c;
    }
    return true;
  };

  try {
    for (;;) {
      ++report.rounds;
      bool changed = false;
      const std::vector<Id> ids = store.ids();
      auto run = [&](Valuation v) {
        for (std::size_t index : axioms.of_arity(v.arity)) {
          if (!canonical(v)) return;
          if (engine.apply(v, index, ApplicationMode::BottomUp).useful) changed = true;
        }
      };
      for (Id x : ids) run(Valuation::of(x));
      for (Id x : ids) {
        for (Id y : ids) run(Valuation::of(x, y));
      }
      for (Id x : ids) {
        for (Id y : ids) {
          for (Id z : ids) run(Valuation::of(x, y, z));
        }
      }
      if (!changed) {
        report.reached_fixpoint = true;
        break;
      }
    }
  } catch (const CapacityExceeded&) {
    report.reached_fixpoint = false;
  }
  report.classes = store.id_count();
  report.structures = store.structure_count();
  return report;
}

Collection solve_ground(const std::vector<std::pair<Term, Term>>& equations) {
  Collection store;
  for (const auto& [s, t] : equations) {
    const Id a = store.to_set(s);
    const Id b = store.to_set(t);
    store.unify(a, b);
  }
  return store;
}

namespace {

using Table = std::vector<std::uint64_t>;

class TruthTables {
 public:
  explicit TruthTables(const std::set<std::string>& letters) {
    if (letters.size() > 20) throw InvalidParameter("truth tables support at most 20 letters");
    n_ = letters.size();
    words_ = n_ <= 6 ? 1 : std::size_t{1} << (n_ - 6);
    const std::size_t bits = std::size_t{1} << n_;
    mask_ = bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    std::size_t k = 0;
    for (const std::string& letter : letters) columns_.emplace(letter, column(k++));
  }

  Table eval(const Term& t) const {
    const std::string& sym = t.symbol();
    if (t.arity() == 0) {
      if (sym == kFalse) return Table(words_, 0);
      if (sym == kTrue) return constant_true();
      return columns_.at(sym);
    }
    Table a = eval(t.child(0));
    if (t.arity() == 1) {
      if (sym != kNot) throw InvalidParameter("not a boolean operator: " + sym);
      for (auto& w : a) w = ~w;
      a.back() &= mask_;
      return a;
    }
    const Table b = eval(t.child(1));
    if (sym == kAnd) {
      for (std::size_t k = 0; k < words_; ++k) a[k] &= b[k];
    } else if (sym == kOr) {
      for (std::size_t k = 0; k < words_; ++k) a[k] |= b[k];
    } else {
      throw InvalidParameter("not a boolean operator: " + sym);
    }
    return a;
  }

 private:
  Table constant_true() const {
    Table t(words_, ~std::uint64_t{0});
    t.back() &= mask_;
    return t;
  }

  // Bit r of the table is row r; letter k is bit k of the row index.
  Table column(std::size_t k) const {
    Table t(words_, 0);
    for (std::size_t w = 0; w < words_; ++w) {
      if (k < 6) {
        std::uint64_t word = 0;
        for (std::size_t b = 0; b < 64; ++b) {
          if ((b >> k) & 1) word |= std::uint64_t{1} << b;
        }
        t[w] = word;
      } else {
        t[w] = ((w >> (k - 6)) & 1) ? ~std::uint64_t{0} : 0;
      }
    }
    t.back() &= mask_;
    return t;
  }

  std::size_t n_ = 0;
  std::size_t words_ = 1;
  std::uint64_t mask_ = 0;
  std::map<std::string, Table> columns_;
};

}  // namespace

bool equivalent(const Term& a, const Term& b) {
  std::set<std::string> all = letters(a);
  for (const auto& l : letters(b)) all.insert(l);
  const TruthTables tables(all);
  return tables.eval(a) == tables.eval(b);
}

bool sampled_equivalent(const Term& a, const Term& b, std::size_t samples, std::uint64_t seed) {
  std::set<std::string> all = letters(a);
  for (const auto& l : letters(b)) all.insert(l);
  SplitMix64 rng(seed);
  TruthAssignment v;
  for (std::size_t k = 0; k < samples; ++k) {
    for (const auto& l : all) v[l] = (rng.next() & 1) != 0;
    if (evaluate(a, v) != evaluate(b, v)) return false;
  }
  return true;
}

}  // namespace eqsimp
