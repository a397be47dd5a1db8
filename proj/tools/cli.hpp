#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eqsimp::cli {

/// Runs one command line (`argv[0]` is the program name). Exit status:
/// 0 success, 1 malformed expression, 2 bad flags or parameters.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Seed of expression `index` in the corpus of `letters` letters.
std::uint64_t corpus_seed(std::uint64_t base, std::size_t letters, std::size_t index);

struct BenchRow {
  std::size_t expr_id = 0;
  std::string preset;
  std::size_t letters = 0;
  std::size_t input_size = 0;
  std::size_t final_size = 0;
  std::uint64_t time_ms = 0;
  /// Time until the final size was first reached.
  std::uint64_t time_to_final_ms = 0;
  std::size_t iterations = 0;
};

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
/// Per (preset, letters): one `cumulative` row per distinct final size with
/// the number of runs at or below it and their mean time to final size,
/// then an `average` row.
void write_table1_csv(std::ostream& os, const std::vector<BenchRow>& rows);
/// One row per expression, a size and a time column per preset.
void write_table3_csv(std::ostream& os, const std::vector<BenchRow>& rows,
                      const std::vector<std::string>& presets);

}  // namespace eqsimp::cli
