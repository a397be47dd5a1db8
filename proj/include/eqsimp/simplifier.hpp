#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqsimp/axioms.hpp"
#include "eqsimp/collection.hpp"
#include "eqsimp/term.hpp"

namespace eqsimp {

enum class Application { Strict, Multiple };
enum class AxiomChoice { Standard, Extended };

struct Config {
  int valuation_type = 0;  // 0..3
  Application application = Application::Multiple;
  std::size_t max_sub_count = 6;
  std::size_t max_re_count = 3;
  std::size_t max_count = 20;
  std::size_t expected_size = 1;
  bool bottom_up = false;
  AxiomChoice axiom_set = AxiomChoice::Standard;
  bool one_var_first = false;
  std::size_t capacity = Collection::kDefaultCapacity;
  /// Wall-clock budget per iteration; zero disables it.
  std::chrono::milliseconds iteration_timeout{60'000};
  std::uint64_t seed = 0;
  /// Keep a record of every useful application (for inspection and tests).
  bool record_trace = false;

  /// InvalidParameter unless every count is >= 1 and the type is 0..3.
  void validate() const;
};

/// Named variants: "default", "var1".."var12" (also written "var/1" ...).
Config preset(std::string_view name);
std::vector<std::string> preset_names();

struct IterationStats {
  std::size_t iter = 0;
  double time_ms = 0;
  std::uint32_t size = 0;  // size(main) after garbage collection
  std::uint64_t nval = 0;
  std::uint64_t napl = 0;
  std::uint64_t ds01 = 0;
  std::uint64_t nd01 = 0;
  std::uint64_t ods = 0;
  std::uint64_t nods = 0;
  std::uint64_t nid = 0;
  std::uint64_t nid1 = 0;
  std::size_t mi = 0;  // ids at start
  std::size_t ni = 0;  // structures at start
  std::size_t mf = 0;  // ids before garbage collection
  std::size_t nf = 0;  // structures before garbage collection
  GcMode gc = GcMode::AllMinimal;
  bool timed_out = false;
};

enum class Termination { ExpectedSize, CountExhausted, TimeBudget };
std::string_view to_string(Termination t);

struct ApplicationEvent {
  std::size_t iteration = 0;
  std::string axiom;
  Valuation valuation;
  bool used01 = false;
  std::uint32_t size_drop = 0;
  std::vector<std::pair<Id, Id>> merges;  // (survivor, renamed)
};

struct SimplifyResult {
  Term simplified;
  std::size_t final_size = 0;
  std::vector<IterationStats> iterations;
  Termination termination = Termination::CountExhausted;
  std::vector<ApplicationEvent> trace;
};

/// Minimizes the Polish size of `expr` within its class modulo the axioms
/// chosen by `cfg`.
SimplifyResult simplify(const Term& expr, const Config& cfg);
/// Same, with an explicit theory instead of cfg.axiom_set.
SimplifyResult simplify(const Term& expr, const Config& cfg, const AxiomSet& axioms);

/// Sub-iteration bookkeeping: the horizon for valuation generation and the
/// number of boundaries crossed so far.
struct SubIterationClock {
  std::uint64_t time_limit = 0;
  std::size_t count = 0;

  void reset(const Collection& store) {
    time_limit = store.clock();
    count = 0;
  }
  /// Called after processing `i` (with its time taken before processing).
  /// True when the boundary fires.
  bool advance(const Collection& store, std::uint64_t time_of_i) {
    if (time_of_i <= time_limit) return false;
    ++count;
    time_limit = store.clock();
    return true;
  }
};

/// Collector for the next garbage collection. `plateau_len` counts the
/// iterations in a row without a decrease, this one included; entering a
/// plateau (length 1) toggles between AllMinimal and OneMinimal.
GcMode select_gc(GcMode current, std::size_t plateau_len, bool bottom_up);

/// `iter,time_ms,size,nval,napl,ds01,nd01,ods,nods,nid,nid1,Mi,Ni,Mf,Nf`
void write_stats_csv(std::ostream& os, const std::vector<IterationStats>& rows);

}  // namespace eqsimp
