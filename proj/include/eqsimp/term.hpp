#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace eqsimp {

/// Immutable expression tree with native arities 0, 1 and 2.
///
/// Symbols are open tokens; the boolean instance uses "0", "1", the letters,
/// "!" (unary), "." and "+" (binary). Variables (x, y, z in theory files)
/// are a separate kind so the same tree type carries axioms.
class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Unary, Binary };

  /// The constant 0.
  Term();

  static Term constant(std::string symbol);
  static Term variable(std::string symbol);
  static Term unary(std::string op, Term child);
  static Term binary(std::string op, Term left, Term right);

  Kind kind() const { return node_->kind; }
  const std::string& symbol() const { return node_->symbol; }
  std::size_t arity() const { return node_->children.size(); }
  const Term& child(std::size_t i) const { return node_->children[i]; }
  const Term& left() const { return node_->children[0]; }
  const Term& right() const { return node_->children[1]; }

  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_ground() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string symbol;
    std::vector<Term> children;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Boolean token vocabulary.
inline constexpr std::string_view kAnd = ".";
inline constexpr std::string_view kOr = "+";
inline constexpr std::string_view kNot = "!";
inline constexpr std::string_view kFalse = "0";
inline constexpr std::string_view kTrue = "1";

/// Parses a ground boolean expression.
///
/// Precedence is `!` > product (`.` or juxtaposition) > `+`; both binary
/// operators associate to the left. Letters a..w are constants; x, y and z
/// are rejected because they name variables.
Term parse(std::string_view text);

/// Same grammar as parse(), but x, y and z become variables.
Term parse_pattern(std::string_view text);

/// Concrete syntax with juxtaposed products and minimal parentheses.
/// Non-boolean symbols print in call syntax, e.g. `f(a, b)`.
std::string print(const Term& t);

/// Number of symbols of `t` in Polish notation (its node count).
std::size_t polish_size(const Term& t);

std::size_t depth(const Term& t);

/// Letters (non-0/1 constants) occurring in `t`, sorted.
std::set<std::string> letters(const Term& t);
std::set<std::string> variables(const Term& t);

using TruthAssignment = std::map<std::string, bool>;

/// Boolean semantics; throws UnboundLetter for a letter missing from `v`.
bool evaluate(const Term& t, const TruthAssignment& v);

/// splitmix64: state += 0x9E3779B97F4A7C15, then the output is
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31).
/// Bounded draws use `next() % n`, so sequences are reproducible anywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform-ish integer in [lo, hi] as lo + next() % (hi - lo + 1).
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

 private:
  std::uint64_t state_;
};

struct GeneratorOptions {
  /// A leaf is 0 or 1 (equally likely) with probability 1 / constant_one_in.
  /// Zero disables constants entirely.
  std::uint64_t constant_one_in = 8;
};

/// Random boolean expression over the first `n_letters` of a..p whose
/// Polish size is exactly `target_size`.
Term random_expr(std::uint64_t seed, std::size_t n_letters, std::size_t target_size,
                 GeneratorOptions options = {});

}  // namespace eqsimp
