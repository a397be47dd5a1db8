#include "eqsimp/simplifier.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_set>

#include "eqsimp/error.hpp"
#include "eqsimp/valuation.hpp"

namespace eqsimp {

void Config::validate() const {
  if (valuation_type < 0 || valuation_type > 3) throw InvalidParameter("valuation type must be 0..3");
  if (max_sub_count < 1 || max_re_count < 1 || max_count < 1) {
    throw InvalidParameter("iteration counts must be at least 1");
  }
  if (capacity < 1) throw InvalidParameter("capacity must be at least 1");
}

Config preset(std::string_view name) {
  std::string key(name);
  if (key.rfind("var/", 0) == 0) key = "var" + key.substr(4);

  Config c;
  auto single_sub = [&c] {
    c.max_sub_count = 1;
    c.max_re_count = 3;
  };
  if (key == "default") return c;
  if (key == "var1") {
    c.application = Application::Strict;
  } else if (key == "var2") {
    single_sub();
  } else if (key == "var3") {
    c.bottom_up = true;
  } else if (key == "var4") {
    c.axiom_set = AxiomChoice::Extended;
  } else if (key == "var5") {
    c.one_var_first = true;
  } else if (key == "var6") {
    c.application = Application::Strict;
    single_sub();
  } else if (key == "var7") {
    c.valuation_type = 1;
  } else if (key == "var8") {
    c.valuation_type = 1;
    single_sub();
    c.axiom_set = AxiomChoice::Extended;
  } else if (key == "var9") {
    c.valuation_type = 2;
  } else if (key == "var10") {
    c.valuation_type = 2;
    c.application = Application::Strict;
    single_sub();
  } else if (key == "var11") {
    c.valuation_type = 3;
  } else if (key == "var12") {
    c.valuation_type = 3;
    single_sub();
    c.one_var_first = true;
  } else {
    throw UnknownPreset(std::string(name));
  }
  return c;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out{"default"};
  for (int k = 1; k <= 12; ++k) out.push_back("var" + std::to_string(k));
  return out;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ExpectedSize:
      return "expected-size";
    case Termination::CountExhausted:
      return "count-exhausted";
    case Termination::TimeBudget:
      return "time-budget";
  }
  return "?";
}

GcMode select_gc(GcMode current, std::size_t plateau_len, bool bottom_up) {
  if (bottom_up) return GcMode::Reachable;
  if (plateau_len != 1) return current;
  return current == GcMode::AllMinimal ? GcMode::OneMinimal : GcMode::AllMinimal;
}

void write_stats_csv(std::ostream& os, const std::vector<IterationStats>& rows) {
  os << "iter,time_ms,size,nval,napl,ds01,nd01,ods,nods,nid,nid1,Mi,Ni,Mf,Nf\n";
  for (const auto& r : rows) {
    os << r.iter << ',' << static_cast<std::uint64_t>(std::llround(r.time_ms)) << ',' << r.size << ','
       << r.nval << ',' << r.napl << ',' << r.ds01 << ',' << r.nd01 << ',' << r.ods << ',' << r.nods << ','
       << r.nid << ',' << r.nid1 << ',' << r.mi << ',' << r.ni << ',' << r.mf << ',' << r.nf << '\n';
  }
}

namespace {

using SteadyClock = std::chrono::steady_clock;

class Driver {
 public:
  Driver(const Term& expr, const Config& cfg, const AxiomSet& axioms)
      : cfg_(cfg), axioms_(axioms), store_(cfg.capacity), engine_(store_, axioms_) {
    cfg_.validate();
    mode_ = cfg_.bottom_up ? ApplicationMode::BottomUp : ApplicationMode::Conditional;
    const Id zero = store_.to_set(Term::constant(std::string(kFalse)));
    const Id one = store_.to_set(Term::constant(std::string(kTrue)));
    for (Id id : {zero, one}) {
      store_.pin(id);
      store_.watch(id);
    }
    store_.set_main_id(store_.to_set(expr));
    if (cfg_.record_trace) store_.set_merge_log(&merges_);
  }

  SimplifyResult run();

 private:
  enum class Stop { None, Full, TimedOut, Done };

  std::uint32_t main_size() const { return store_.size(store_.main_id()); }
  bool done() const { return main_size() <= cfg_.expected_size; }

  void process(Id i);
  void run_one_var_first();
  void apply_valuation(const Valuation& raw);
  ApplyOutcome apply_axiom(const Valuation& v, std::size_t index);
  bool try_apply(const Valuation& v, std::size_t index, ApplyOutcome& out);
  void check_clock();
  StructureFilter filter() const { return {sub_.time_limit, true}; }

  Config cfg_;
  AxiomSet axioms_;
  Collection store_;
  AxiomEngine engine_;
  ApplicationMode mode_;
  GcMode gc_mode_ = GcMode::AllMinimal;

  SubIterationClock sub_;
  Stop stop_ = Stop::None;
  bool boundary_seen_ = false;
  bool early_gc_used_ = false;
  std::vector<char> one_var_done_;
  SteadyClock::time_point iteration_start_;
  std::uint64_t since_clock_check_ = 0;

  IterationStats stats_;
  std::vector<std::pair<Id, Id>> merges_;
  std::vector<ApplicationEvent> trace_;
  std::unordered_set<Valuation, ValuationHash> seen_;
};

void Driver::check_clock() {
  if (cfg_.iteration_timeout.count() <= 0 || ++since_clock_check_ < 256) return;
  since_clock_check_ = 0;
  if (SteadyClock::now() - iteration_start_ >= cfg_.iteration_timeout) stop_ = Stop::TimedOut;
}

// One application, with the early collection the first time the store fills
// up in a sub-iteration that precedes the first boundary of the iteration.
bool Driver::try_apply(const Valuation& v, std::size_t index, ApplyOutcome& out) {
  try {
    out = engine_.apply(v, index, mode_);
    return true;
  } catch (const CapacityExceeded&) {
  }
  if (boundary_seen_ || early_gc_used_) {
    stop_ = Stop::Full;
    return false;
  }
  early_gc_used_ = true;
  const Id roots[] = {store_.main_id()};
  store_.gc(gc_mode_, roots);
  Valuation w = v;
  for (std::size_t s = 0; s < v.arity; ++s) {
    const auto c = store_.canonical(v[s]);
    if (!c) return false;
    w.ids[s] = *c;
  }
  try {
    out = engine_.apply(w, index, mode_);
    return true;
  } catch (const CapacityExceeded&) {
    stop_ = Stop::Full;
    return false;
  }
}

ApplyOutcome Driver::apply_axiom(const Valuation& v, std::size_t index) {
  merges_.clear();
  ApplyOutcome out;
  if (!try_apply(v, index, out)) return out;
  if (out.useful) {
    ++stats_.napl;
    if (out.used01) {
      stats_.ds01 += out.size_drop;
      ++stats_.nd01;
    } else {
      stats_.ods += out.size_drop;
      ++stats_.nods;
    }
    if (cfg_.record_trace) {
      trace_.push_back({stats_.iter, axioms_.all()[index].tag, v, out.used01, out.size_drop, merges_});
    }
    if (done()) stop_ = Stop::Done;
  }
  return out;
}

void Driver::apply_valuation(const Valuation& raw) {
  Valuation v = raw;
  for (std::size_t s = 0; s < v.arity; ++s) {
    const auto c = store_.canonical(v[s]);
    if (!c) return;
    v.ids[s] = *c;
  }
  ++stats_.nval;
  if (v.arity == 1 && cfg_.one_var_first) return;
  for (std::size_t index : axioms_.of_arity(v.arity)) {
    for (std::size_t s = 0; s < v.arity; ++s) {
      if (store_.is_live(v[s])) continue;
      const auto c = store_.canonical(v[s]);
      if (!c) return;
      v.ids[s] = *c;
    }
    apply_axiom(v, index);
    if (stop_ != Stop::None) return;
    check_clock();
    if (stop_ != Stop::None) return;
  }
}

void Driver::process(Id i) {
  ++stats_.nid;
  const bool multiple = cfg_.application == Application::Multiple;

  if (cfg_.valuation_type == 3) {
    Type3Stream stream(store_, i);
    while (auto base = stream.next()) {
      if (multiple) {
        for_each_permutation(*base, [&](const Valuation& v) {
          if (stop_ == Stop::None) apply_valuation(v);
        });
      } else {
        apply_valuation(*base);
      }
      check_clock();
      if (stop_ != Stop::None) return;
    }
    return;
  }

  std::vector<Valuation> base;
  switch (cfg_.valuation_type) {
    case 0:
      base = gen_type0(store_, i, filter());
      break;
    case 1:
      base = gen_type1(store_, i, filter());
      break;
    default:
      base = gen_type2(store_, i, filter());
      break;
  }
  if (!multiple) {
    for (const Valuation& v : base) {
      apply_valuation(v);
      if (stop_ != Stop::None) return;
    }
    return;
  }
  seen_.clear();
  for (const Valuation& b : base) {
    for_each_permutation(b, [&](const Valuation& v) {
      if (stop_ == Stop::None && seen_.insert(v).second) apply_valuation(v);
    });
    if (stop_ != Stop::None) return;
  }
}

// An id counts as done once every one-variable axiom went through without
// being refused by the creation guard; refused ones are retried next time.
void Driver::run_one_var_first() {
  std::vector<Id> pending;
  for (Id id : store_.ids()) {
    if (id.value >= one_var_done_.size() || !one_var_done_[id.value]) pending.push_back(id);
  }
  for (Id raw : pending) {
    const auto id = store_.canonical(raw);
    if (!id) continue;
    if (one_var_done_.size() <= id->value) one_var_done_.resize(id->value + 1, 0);
    if (one_var_done_[id->value]) continue;
    ++stats_.nid1;
    bool blocked = false;
    for (std::size_t index : axioms_.of_arity(1)) {
      const auto cur = store_.canonical(*id);
      if (!cur) break;
      blocked = apply_axiom(Valuation::of(*cur), index).blocked || blocked;
      if (stop_ != Stop::None) return;
    }
    if (const auto cur = store_.canonical(*id); cur && !blocked) {
      if (one_var_done_.size() <= cur->value) one_var_done_.resize(cur->value + 1, 0);
      one_var_done_[cur->value] = 1;
    }
    check_clock();
    if (stop_ != Stop::None) return;
  }
}

SimplifyResult Driver::run() {
  SimplifyResult result;
  std::uint32_t previous = main_size();
  std::size_t count = 0;
  std::size_t plateau = 0;
  bool any_timeout = false;
  gc_mode_ = cfg_.bottom_up ? GcMode::Reachable : GcMode::AllMinimal;

  while (count != cfg_.max_count && !done()) {
    stats_ = IterationStats{};
    stats_.iter = result.iterations.size() + 1;
    stats_.mi = store_.id_count();
    stats_.ni = store_.structure_count();
    iteration_start_ = SteadyClock::now();
    since_clock_check_ = 0;
    stop_ = Stop::None;
    boundary_seen_ = false;

    for (std::size_t re = 0; re != cfg_.max_re_count && stop_ == Stop::None; ++re) {
      Id cursor = kNullId;
      sub_.reset(store_);
      early_gc_used_ = false;
      if (cfg_.one_var_first) {
        run_one_var_first();
        sub_.time_limit = store_.clock();
      }
      while (stop_ == Stop::None && sub_.count != cfg_.max_sub_count) {
        const auto next = store_.next_id(cursor);
        if (!next) break;
        cursor = *next;
        const std::uint64_t t = store_.time(cursor);
        process(cursor);
        if (sub_.advance(store_, t)) {
          boundary_seen_ = true;
          early_gc_used_ = false;
          if (cfg_.one_var_first && sub_.count != cfg_.max_sub_count && stop_ == Stop::None) {
            run_one_var_first();
            sub_.time_limit = store_.clock();
          }
        }
      }
    }

    stats_.mf = store_.id_count();
    stats_.nf = store_.structure_count();
    stats_.timed_out = stop_ == Stop::TimedOut;
    any_timeout = any_timeout || stats_.timed_out;

    stats_.gc = gc_mode_;
    const Id roots[] = {store_.main_id()};
    store_.gc(gc_mode_, roots);

    stats_.size = main_size();
    // The collector change takes effect at the next collection.
    plateau = stats_.size < previous ? 0 : plateau + 1;
    gc_mode_ = select_gc(gc_mode_, plateau, cfg_.bottom_up);
    stats_.time_ms = std::chrono::duration<double, std::milli>(SteadyClock::now() - iteration_start_).count();
    result.iterations.push_back(stats_);

    if (stats_.size == previous) ++count;
    if (stats_.size < previous) {
      count = 0;
      previous = stats_.size;
    }
  }

  result.simplified = store_.extract_min(store_.main_id());
  result.final_size = main_size();
  result.termination = done()        ? Termination::ExpectedSize
                       : any_timeout ? Termination::TimeBudget
                                     : Termination::CountExhausted;
  result.trace = std::move(trace_);
  return result;
}

}  // namespace

SimplifyResult simplify(const Term& expr, const Config& cfg, const AxiomSet& axioms) {
  Driver driver(expr, cfg, axioms);
  return driver.run();
}

SimplifyResult simplify(const Term& expr, const Config& cfg) {
  const AxiomSet axioms = cfg.axiom_set == AxiomChoice::Extended ? extended_axioms() : standard_axioms();
  return simplify(expr, cfg, axioms);
}

}  // namespace eqsimp
