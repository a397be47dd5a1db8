#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "eqsimp/axioms.hpp"
#include "eqsimp/error.hpp"
#include "eqsimp/oracle.hpp"
#include "eqsimp/simplifier.hpp"
#include "eqsimp/term.hpp"

namespace eqsimp::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kUsage = 2;

AxiomSet theory_for(const Config& cfg, const std::string& override_path) {
  const bool extended = cfg.axiom_set == AxiomChoice::Extended;
  if (!override_path.empty()) return load_theory(override_path, extended);
  if (const char* dir = std::getenv("EQSIMP_AXIOM_DIR"); dir != nullptr && *dir != '\0') {
    const char* file = extended ? "boolean_extended.axioms" : "boolean_standard.axioms";
    return load_theory((fs::path(dir) / file).string(), extended);
  }
  return extended ? extended_axioms() : standard_axioms();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::chrono::milliseconds seconds_to_ms(double secs) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(secs * 1000.0));
}

std::uint64_t time_to_final(const SimplifyResult& r) {
  double total = 0;
  for (const auto& it : r.iterations) {
    total += it.time_ms;
    if (it.size == r.final_size) break;
  }
  return static_cast<std::uint64_t>(std::llround(total));
}

std::uint64_t total_time(const SimplifyResult& r) {
  double total = 0;
  for (const auto& it : r.iterations) total += it.time_ms;
  return static_cast<std::uint64_t>(std::llround(total));
}

// --- simplify ------------------------------------------------------------------

struct SimplifyArgs {
  std::string expr;
  std::string file;
  std::string preset = "default";
  std::string axioms;
  std::optional<std::size_t> expected_size;
  std::optional<std::size_t> max_count;
  std::optional<std::size_t> capacity;
  std::optional<double> timeout;
  std::optional<std::uint64_t> seed;
  std::string stats;
};

int cmd_simplify(const SimplifyArgs& a, std::ostream& out, std::ostream& err) {
  Config cfg;
  try {
    cfg = preset(a.preset);
    if (a.expected_size) cfg.expected_size = *a.expected_size;
    if (a.max_count) cfg.max_count = *a.max_count;
    if (a.capacity) cfg.capacity = *a.capacity;
    if (a.timeout) cfg.iteration_timeout = seconds_to_ms(*a.timeout);
    if (a.seed) cfg.seed = *a.seed;
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (a.expr.empty() == a.file.empty()) {
    err << "error: exactly one of --expr and --file is required\n";
    return kUsage;
  }

  std::string text = a.expr;
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) {
      err << "error: cannot read '" << a.file << "'\n";
      return kUsage;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  Term input;
  try {
    input = parse(text);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  AxiomSet theory;
  try {
    theory = theory_for(cfg, a.axioms);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  const SimplifyResult r = simplify(input, cfg, theory);
  out << print(r.simplified) << '\n' << "size=" << r.final_size << '\n';
  if (!a.stats.empty()) {
    std::ofstream csv(a.stats);
    if (!csv) {
      err << "error: cannot write '" << a.stats << "'\n";
      return kUsage;
    }
    write_stats_csv(csv, r.iterations);
  }
  return kOk;
}

// --- bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string letters = "3";
  std::size_t count = 20;
  std::size_t size = 800;
  std::string presets = "default";
  std::uint64_t seed = 1;
  std::string out = "bench_out";
  double timeout = 60;
  std::size_t capacity = Collection::kDefaultCapacity;
  std::size_t jobs = 1;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<std::size_t> letter_counts;
  std::vector<std::string> presets = split_list(a.presets);
  try {
    for (const auto& l : split_list(a.letters)) {
      const long long n = std::stoll(l);
      if (n < 1 || n > 16) throw InvalidParameter("letters must be 1..16");
      letter_counts.push_back(static_cast<std::size_t>(n));
    }
    for (const auto& p : presets) preset(p);
    if (a.size < 1) throw InvalidParameter("size must be at least 1");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  struct Job {
    std::size_t expr_id;
    std::size_t letters;
    std::string preset;
    Term expr;
  };
  std::vector<Job> jobs;
  std::size_t expr_id = 0;
  for (std::size_t letters : letter_counts) {
    for (std::size_t k = 0; k < a.count; ++k, ++expr_id) {
      const Term e = random_expr(corpus_seed(a.seed, letters, k), letters, a.size);
      for (const auto& p : presets) jobs.push_back({expr_id, letters, p, e});
    }
  }

  const fs::path dir(a.out);
  std::error_code ec;
  fs::create_directories(dir / "iterations", ec);
  if (ec) {
    err << "error: cannot create '" << dir.string() << "'\n";
    return kUsage;
  }

  std::map<std::string, AxiomSet> theories;
  for (const auto& p : presets) {
    Config c = preset(p);
    theories.emplace(p, theory_for(c, ""));
  }

  std::vector<BenchRow> rows(jobs.size());
  std::vector<std::vector<IterationStats>> stats(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      Config cfg = preset(job.preset);
      cfg.iteration_timeout = seconds_to_ms(a.timeout);
      cfg.capacity = a.capacity;
      const SimplifyResult r = simplify(job.expr, cfg, theories.at(job.preset));
      rows[j] = BenchRow{job.expr_id,        job.preset,    job.letters,         polish_size(job.expr),
                         r.final_size,       total_time(r), time_to_final(r),    r.iterations.size()};
      stats[j] = r.iterations;
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(a.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ofstream bench(dir / "bench.csv");
  write_bench_csv(bench, rows);
  std::ofstream t1(dir / "table1.csv");
  write_table1_csv(t1, rows);
  std::ofstream t3(dir / "table3.csv");
  write_table3_csv(t3, rows, presets);
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::ofstream csv(dir / "iterations" /
                      (jobs[j].preset + "_L" + std::to_string(jobs[j].letters) + "_" +
                       std::to_string(jobs[j].expr_id) + ".csv"));
    write_stats_csv(csv, stats[j]);
  }
  out << "runs=" << rows.size() << " out=" << dir.string() << '\n';
  return kOk;
}

// --- saturate / gen ------------------------------------------------------------

int cmd_saturate(long long letters, std::size_t limit, std::ostream& out, std::ostream& err) {
  if (letters < 0 || letters > 2) {
    err << "error: saturate supports 0..2 letters\n";
    return kUsage;
  }
  std::vector<std::string> constants{std::string(kFalse), std::string(kTrue)};
  for (long long k = 0; k < letters; ++k) constants.push_back(std::string(1, static_cast<char>('a' + k)));
  const SaturationReport r = saturate(constants, standard_axioms(), limit);
  out << "classes=" << r.classes << " fixpoint=" << (r.reached_fixpoint ? "true" : "false") << '\n'
      << "structures=" << r.structures << " rounds=" << r.rounds << '\n';
  return kOk;
}

int cmd_gen(long long letters, std::size_t size, std::size_t count, std::uint64_t seed, const std::string& path,
            std::ostream& out, std::ostream& err) {
  if (letters < 1 || letters > 16) {
    err << "error: letters must be 1..16\n";
    return kUsage;
  }
  if (size < 1) {
    err << "error: size must be at least 1\n";
    return kUsage;
  }
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) {
      err << "error: cannot write '" << path << "'\n";
      return kUsage;
    }
  }
  std::ostream& sink = path.empty() ? out : file;
  const auto n = static_cast<std::size_t>(letters);
  for (std::size_t k = 0; k < count; ++k) sink << print(random_expr(corpus_seed(seed, n, k), n, size)) << '\n';
  return kOk;
}

}  // namespace

std::uint64_t corpus_seed(std::uint64_t base, std::size_t letters, std::size_t index) {
  SplitMix64 mix(base ^ (std::uint64_t{letters} << 48) ^ (std::uint64_t{index} << 16));
  return mix.next();
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "expr_id,preset,letters,input_size,final_size,time_ms,iterations\n";
  for (const auto& r : rows) {
    os << r.expr_id << ',' << r.preset << ',' << r.letters << ',' << r.input_size << ',' << r.final_size << ','
       << r.time_ms << ',' << r.iterations << '\n';
  }
}

void write_table1_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "preset,letters,row,size,count,avg_time_ms\n";
  std::map<std::pair<std::string, std::size_t>, std::vector<const BenchRow*>> cohorts;
  for (const auto& r : rows) cohorts[{r.preset, r.letters}].push_back(&r);
  os << std::fixed << std::setprecision(2);
  for (auto& [key, runs] : cohorts) {
    std::sort(runs.begin(), runs.end(),
              [](const BenchRow* a, const BenchRow* b) { return a->final_size < b->final_size; });
    double time_sum = 0;
    double size_sum = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      time_sum += static_cast<double>(runs[k]->time_to_final_ms);
      size_sum += static_cast<double>(runs[k]->final_size);
      if (k + 1 < runs.size() && runs[k + 1]->final_size == runs[k]->final_size) continue;
      os << key.first << ',' << key.second << ",cumulative," << runs[k]->final_size << ',' << k + 1 << ','
         << time_sum / static_cast<double>(k + 1) << '\n';
    }
    const auto n = static_cast<double>(runs.size());
    os << key.first << ',' << key.second << ",average," << size_sum / n << ',' << runs.size() << ','
       << time_sum / n << '\n';
  }
}

void write_table3_csv(std::ostream& os, const std::vector<BenchRow>& rows,
                      const std::vector<std::string>& presets) {
  os << "expr_id,letters";
  for (const auto& p : presets) os << ',' << p << "_size," << p << "_time_ms";
  os << '\n';
  std::map<std::size_t, std::map<std::string, const BenchRow*>> by_expr;
  for (const auto& r : rows) by_expr[r.expr_id][r.preset] = &r;
  for (const auto& [id, cells] : by_expr) {
    os << id << ',' << cells.begin()->second->letters;
    for (const auto& p : presets) {
      auto it = cells.find(p);
      if (it == cells.end()) {
        os << ",,";
      } else {
        os << ',' << it->second->final_size << ',' << it->second->time_to_final_ms;
      }
    }
    os << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simplification of expressions by saturation over a collection of structures", "eqsimp"};
  app.require_subcommand(1);

  SimplifyArgs sa;
  auto* simplify_cmd = app.add_subcommand("simplify", "Simplify one boolean expression");
  simplify_cmd->add_option("--expr", sa.expr, "Expression text");
  simplify_cmd->add_option("--file", sa.file, "File holding the expression");
  simplify_cmd->add_option("--preset", sa.preset, "default, var1 .. var12");
  simplify_cmd->add_option("--axioms", sa.axioms, "Theory file replacing the shipped axioms");
  simplify_cmd->add_option("--expected-size", sa.expected_size, "Stop once this size is reached");
  simplify_cmd->add_option("--max-count", sa.max_count, "Iterations without progress before stopping");
  simplify_cmd->add_option("--capacity", sa.capacity, "Maximum number of structures");
  simplify_cmd->add_option("--timeout", sa.timeout, "Seconds per iteration, 0 disables");
  simplify_cmd->add_option("--seed", sa.seed, "Run seed");
  simplify_cmd->add_option("--stats", sa.stats, "Write per-iteration statistics CSV");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Run presets over a seeded random corpus");
  bench_cmd->add_option("--letters", ba.letters, "Comma-separated letter counts");
  bench_cmd->add_option("--count", ba.count, "Expressions per letter count");
  bench_cmd->add_option("--size", ba.size, "Polish size of each expression");
  bench_cmd->add_option("--presets", ba.presets, "Comma-separated presets");
  bench_cmd->add_option("--seed", ba.seed, "Corpus seed");
  bench_cmd->add_option("--out", ba.out, "Output directory");
  bench_cmd->add_option("--timeout", ba.timeout, "Seconds per iteration, 0 disables");
  bench_cmd->add_option("--capacity", ba.capacity, "Maximum number of structures");
  bench_cmd->add_option("--jobs", ba.jobs, "Worker threads");

  long long sat_letters = 1;
  std::size_t sat_limit = 200'000;
  auto* sat_cmd = app.add_subcommand("saturate", "Bottom-up completion over 0..2 letters");
  sat_cmd->add_option("--letters", sat_letters, "Number of letters");
  sat_cmd->add_option("--limit", sat_limit, "Maximum number of structures");

  long long gen_letters = 3;
  std::size_t gen_size = 800;
  std::size_t gen_count = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Print seeded random expressions, one per line");
  gen_cmd->add_option("--letters", gen_letters, "Number of letters");
  gen_cmd->add_option("--size", gen_size, "Polish size");
  gen_cmd->add_option("--count", gen_count, "Number of expressions");
  gen_cmd->add_option("--seed", gen_seed, "Corpus seed");
  gen_cmd->add_option("--out", gen_out, "Output file instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (simplify_cmd->parsed()) return cmd_simplify(sa, out, err);
  if (bench_cmd->parsed()) return cmd_bench(ba, out, err);
  if (sat_cmd->parsed()) return cmd_saturate(sat_letters, sat_limit, out, err);
  return cmd_gen(gen_letters, gen_size, gen_count, gen_seed, gen_out, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace eqsimp::cli
