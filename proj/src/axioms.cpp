#include "eqsimp/axioms.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "eqsimp/error.hpp"
#include "eqsimp_theories.hpp"

namespace eqsimp {

AxiomSet::AxiomSet(std::vector<SymbolDecl> symbols, std::vector<Axiom> axioms, bool extended)
    : symbols_(std::move(symbols)), axioms_(std::move(axioms)), extended_(extended) {
  for (std::size_t k = 0; k < axioms_.size(); ++k) by_arity_.at(axioms_[k].arity).push_back(k);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

void check_symbols(const Term& t, const std::vector<AxiomSet::SymbolDecl>& decls, std::size_t line) {
  if (!t.is_variable()) {
    auto it = std::find_if(decls.begin(), decls.end(),
                           [&](const AxiomSet::SymbolDecl& d) { return d.name == t.symbol(); });
    if (it == decls.end() || it->arity != t.arity()) {
      throw TheoryError("line " + std::to_string(line) + ": symbol '" + t.symbol() + "' with arity " +
                        std::to_string(t.arity()) + " is not declared");
    }
  }
  for (std::size_t k = 0; k < t.arity(); ++k) check_symbols(t.child(k), decls, line);
}

}  // namespace

AxiomSet parse_theory(std::string_view text, bool extended) {
  std::vector<AxiomSet::SymbolDecl> decls;
  std::vector<Axiom> axioms;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    if (line.rfind("symbol", 0) == 0 && line.find('=') == std::string::npos) {
      if (!axioms.empty()) throw TheoryError(where + "symbol declaration after the first axiom");
      std::istringstream fields(line.substr(6));
      std::string name;
      long long arity = -1;
      std::string extra;
      if (!(fields >> name >> arity) || (fields >> extra) || arity < 0 || arity > 2) {
        throw TheoryError(where + "expected 'symbol <token> <arity>' with arity 0..2");
      }
      for (const auto& d : decls) {
        if (d.name == name) throw TheoryError(where + "symbol '" + name + "' declared twice");
      }
      decls.push_back({name, static_cast<std::size_t>(arity)});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos || line.find('=', eq + 1) != std::string::npos) {
      throw TheoryError(where + "expected 'lhs = rhs'");
    }
    Axiom a;
    try {
      a.lhs = parse_pattern(line.substr(0, eq));
      a.rhs = parse_pattern(line.substr(eq + 1));
    } catch (const SyntaxError& e) {
      throw TheoryError(where + e.what());
    }
    check_symbols(a.lhs, decls, line_no);
    check_symbols(a.rhs, decls, line_no);
    std::set<std::string> vars = variables(a.lhs);
    for (const auto& v : variables(a.rhs)) vars.insert(v);
    static const char* kOrder[] = {"x", "y", "z"};
    for (std::size_t k = 0; k < vars.size(); ++k) {
      if (k >= 3 || !vars.contains(kOrder[k])) {
        throw TheoryError(where + "variables must be x, then y, then z");
      }
    }
    if (vars.empty()) throw TheoryError(where + "ground equations are not axioms");
    a.arity = vars.size();
    a.tag = line;
    axioms.push_back(std::move(a));
  }
  return AxiomSet(std::move(decls), std::move(axioms), extended);
}

AxiomSet load_theory(const std::string& path, bool extended) {
  std::ifstream in(path);
  if (!in) throw TheoryError("cannot read theory file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_theory(buf.str(), extended);
}

AxiomSet standard_axioms() { return parse_theory(kStandardTheory, false); }
AxiomSet extended_axioms() { return parse_theory(kExtendedTheory, true); }

void ApplyTally::add(const ApplyOutcome& o) {
  ++attempted;
  if (!o.useful) return;
  ++useful;
  if (o.used01) {
    ds01 += o.size_drop;
    ++nd01;
  } else {
    ods += o.size_drop;
    ++nods;
  }
}

// --- engine ---------------------------------------------------------------------

AxiomEngine::AxiomEngine(Collection& store, const AxiomSet& axioms) : store_(&store), axioms_(&axioms) {
  for (const auto& d : axioms.symbols()) store.symbol(d.name, d.arity);
  compiled_.reserve(axioms.size());
  for (const Axiom& a : axioms.all()) {
    Pattern l;
    Pattern r;
    compile(store, a.lhs, l);
    compile(store, a.rhs, r);
    if (l.size() > kMaxPatternNodes || r.size() > kMaxPatternNodes) {
      throw TheoryError("axiom '" + a.tag + "' is too large");
    }
    compiled_.emplace_back(std::move(l), std::move(r));
  }
}

void AxiomEngine::compile(Collection& store, const Term& t, Pattern& out) {
  Node n;
  if (t.is_variable()) {
    n.var = static_cast<std::int8_t>(Valuation::slot_of(t.symbol()));
  } else {
    n.arity = static_cast<std::uint8_t>(t.arity());
    if (n.arity >= 1) {
      compile(store, t.child(0), out);
      n.left = static_cast<std::uint16_t>(out.size() - 1);
    }
    if (n.arity >= 2) {
      compile(store, t.child(1), out);
      n.right = static_cast<std::uint16_t>(out.size() - 1);
    }
    n.symbol = store.symbol(t.symbol(), t.arity());
  }
  out.push_back(n);
}

Key AxiomEngine::key_of(const Node& n, const Resolved& r) const {
  Key k;
  k.symbol = n.symbol;
  if (n.arity >= 1) k.left = r.ids[n.left];
  if (n.arity >= 2) k.right = r.ids[n.right];
  return k;
}

void AxiomEngine::resolve(const Pattern& p, const Valuation& v, Resolved& r) const {
  r.n = p.size();
  r.missing = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Node& n = p[k];
    if (n.var >= 0) {
      r.ids[k] = v[static_cast<std::size_t>(n.var)];
      continue;
    }
    r.ids[k] = kNullId;
    const bool known = (n.arity < 1 || !r.ids[n.left].is_null()) && (n.arity < 2 || !r.ids[n.right].is_null());
    if (known) {
      if (auto found = store_->find(key_of(n, r))) {
        r.ids[k] = *found;
        continue;
      }
    }
    ++r.missing;
  }
}

// Every structure to be created must have children no larger than `bound`;
// a missing child's size is the size of the term it will hold.
bool AxiomEngine::guard_ok(const Pattern& p, const Resolved& r, std::uint32_t bound) const {
  std::array<std::uint64_t, kMaxPatternNodes> sizes{};
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Node& n = p[k];
    if (!r.ids[k].is_null()) {
      sizes[k] = store_->size(r.ids[k]);
      continue;
    }
    sizes[k] = 1;
    if (n.arity >= 1) {
      if (sizes[n.left] > bound) return false;
      sizes[k] += sizes[n.left];
    }
    if (n.arity >= 2) {
      if (sizes[n.right] > bound) return false;
      sizes[k] += sizes[n.right];
    }
  }
  return true;
}

// Creates the missing nodes of `p`. With a non-null `root_target` the top
// structure goes straight under that id, which is what unifying a fresh id
// with it would produce.
Id AxiomEngine::commit(const Pattern& p, const Valuation& v, Resolved& r, Id root_target) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Node& n = p[k];
    if (n.var >= 0) {
      r.ids[k] = v[static_cast<std::size_t>(n.var)];
      continue;
    }
    const Key key = key_of(n, r);
    if (auto found = store_->find(key)) {
      r.ids[k] = *found;
    } else if (k + 1 == p.size() && !root_target.is_null()) {
      store_->insert(key, root_target);
      r.ids[k] = root_target;
    } else {
      r.ids[k] = store_->create(key);
    }
  }
  return r.ids[p.size() - 1];
}

ApplyOutcome AxiomEngine::apply(const Valuation& v, std::size_t index, ApplicationMode mode) {
  Collection& E = *store_;
  const auto& [lp, rp] = compiled_.at(index);
  ApplyOutcome out;

  const std::uint64_t hits_before = E.watch_hits();
  for (std::size_t s = 0; s < v.arity; ++s) {
    if (E.is_watched(v[s])) out.used01 = true;
  }
  const Id main = E.main_id();
  const std::uint32_t size_before = main.is_null() ? 0 : E.size(main);

  Resolved& L = lhs_scratch_;
  Resolved& R = rhs_scratch_;
  resolve(lp, v, L);
  resolve(rp, v, R);
  const Id lid = L.ids[lp.size() - 1];
  const Id rid = R.ids[rp.size() - 1];

  if (!lid.is_null() && !rid.is_null()) {
    if (lid != rid) {
      E.unify(lid, rid);
      out.useful = true;
    }
  } else if (!lid.is_null() || !rid.is_null()) {
    const bool left_exists = !lid.is_null();
    const Pattern& fresh = left_exists ? rp : lp;
    Resolved& fr = left_exists ? R : L;
    const Id target = left_exists ? lid : rid;
    if (mode == ApplicationMode::Conditional && !guard_ok(fresh, fr, E.size(target))) {
      out.blocked = true;
      out.used01 = out.used01 || E.watch_hits() != hits_before;
      return out;
    }
    if (!E.has_room(fr.missing)) throw CapacityExceeded();
    commit(fresh, v, fr, target);
    out.useful = true;
  } else if (mode == ApplicationMode::BottomUp) {
    if (!E.has_room(L.missing + R.missing)) throw CapacityExceeded();
    const Id a = commit(lp, v, L, kNullId);
    const Id b = commit(rp, v, R, kNullId);
    if (a != b) E.unify(a, b);
    out.useful = true;
  }

  out.used01 = out.used01 || E.watch_hits() != hits_before;
  if (out.useful && !main.is_null()) {
    const auto now = E.canonical(main);
    const std::uint32_t size_after = now ? E.size(*now) : size_before;
    out.size_drop = size_before > size_after ? size_before - size_after : 0;
  }
  return out;
}

ApplyTally AxiomEngine::early_apply_single_var(std::span<const Id> pending, ApplicationMode mode,
                                               std::vector<Id>* completed) {
  ApplyTally tally;
  const auto& unary = axioms_->of_arity(1);
  for (Id raw : pending) {
    bool blocked = false;
    for (std::size_t index : unary) {
      const auto id = store_->canonical(raw);
      if (!id) break;
      const ApplyOutcome o = apply(Valuation::of(*id), index, mode);
      blocked = blocked || o.blocked;
      tally.add(o);
    }
    const auto id = store_->canonical(raw);
    if (completed != nullptr && id && !blocked) completed->push_back(*id);
  }
  return tally;
}

ApplyOutcome apply(Collection& store, const Valuation& v, const Axiom& axiom, ApplicationMode mode) {
  std::vector<AxiomSet::SymbolDecl> decls;
  AxiomSet single(std::move(decls), {axiom}, false);
  AxiomEngine engine(store, single);
  return engine.apply(v, 0, mode);
}

}  // namespace eqsimp
