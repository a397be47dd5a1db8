#include "eqsimp/term.hpp"

#include <cctype>
#include <functional>

#include "eqsimp/error.hpp"

namespace eqsimp {

Term::Term() : Term(constant(std::string(kFalse))) {}

Term Term::constant(std::string symbol) {
  return Term(std::make_shared<const Node>(Node{Kind::Constant, std::move(symbol), {}}));
}

Term Term::variable(std::string symbol) {
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(symbol), {}}));
}

Term Term::unary(std::string op, Term child) {
  return Term(std::make_shared<const Node>(Node{Kind::Unary, std::move(op), {std::move(child)}}));
}

Term Term::binary(std::string op, Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Binary, std::move(op), {std::move(left), std::move(right)}}));
}

bool Term::is_ground() const {
  if (is_variable()) return false;
  for (const auto& c : node_->children) {
    if (!c.is_ground()) return false;
  }
  return true;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.symbol() != b.symbol() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a.child(i) != b.child(i)) return false;
  }
  return true;
}

namespace {

bool is_pattern_variable(char c) { return c == 'x' || c == 'y' || c == 'z'; }

class Parser {
 public:
  Parser(std::string_view text, bool patterns) : text_(text), patterns_(patterns) {}

  Term run() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "empty expression");
    Term t = parse_sum();
    skip_space();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw SyntaxError(pos_, "unbalanced ')'");
      throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    }
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool starts_operand() {
    skip_space();
    if (pos_ == text_.size()) return false;
    char c = text_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '!';
  }

  Term parse_sum() {
    Term t = parse_product();
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        ++pos_;
        t = Term::binary(std::string(kOr), std::move(t), parse_product());
      } else {
        return t;
      }
    }
  }

  Term parse_product() {
    Term t = parse_unary();
    for (;;) {
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        t = Term::binary(std::string(kAnd), std::move(t), parse_unary());
      } else if (starts_operand()) {
        t = Term::binary(std::string(kAnd), std::move(t), parse_unary());
      } else {
        return t;
      }
    }
  }

  Term parse_unary() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '!') {
      ++pos_;
      return Term::unary(std::string(kNot), parse_unary());
    }
    return parse_primary();
  }

  Term parse_primary() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError(pos_, "operand expected at end of input");
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_sum();
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != ')') {
        throw SyntaxError(start, "unbalanced '('");
      }
      ++pos_;
      return t;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return Term::constant(std::string(1, c));
    }
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      if (is_pattern_variable(c)) {
        if (!patterns_) throw SyntaxError(start, std::string("variable '") + c + "' in ground expression");
        return Term::variable(std::string(1, c));
      }
      return Term::constant(std::string(1, c));
    }
    if (c == ')') throw SyntaxError(start, "unbalanced ')'");
    if (c == '+' || c == '.') throw SyntaxError(start, std::string("dangling operator '") + c + "'");
    throw SyntaxError(start, std::string("unknown token '") + c + "'");
  }

  std::string_view text_;
  bool patterns_;
  std::size_t pos_ = 0;
};

bool is_boolean_op(const std::string& s, std::size_t arity) {
  return (arity == 2 && (s == kAnd || s == kOr)) || (arity == 1 && s == kNot);
}

// Binding strength: sums 1, products 2, negations 3, atoms and calls 4.
int level(const Term& t) {
  if (t.kind() == Term::Kind::Binary && t.symbol() == kOr) return 1;
  if (t.kind() == Term::Kind::Binary && t.symbol() == kAnd) return 2;
  if (t.kind() == Term::Kind::Unary && t.symbol() == kNot) return 3;
  return 4;
}

void print_into(const Term& t, std::string& out) {
  auto wrapped = [&out](const Term& sub, int min_level) {
    if (level(sub) < min_level) {
      out += '(';
      print_into(sub, out);
      out += ')';
    } else {
      print_into(sub, out);
    }
  };
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      out += t.symbol();
      return;
    case Term::Kind::Unary:
    case Term::Kind::Binary:
      break;
  }
  if (!is_boolean_op(t.symbol(), t.arity())) {
    out += t.symbol();
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i > 0) out += ", ";
      print_into(t.child(i), out);
    }
    out += ')';
    return;
  }
  if (t.symbol() == kNot) {
    out += '!';
    wrapped(t.child(0), 3);
  } else if (t.symbol() == kAnd) {
    wrapped(t.left(), 2);
    wrapped(t.right(), 3);
  } else {
    wrapped(t.left(), 1);
    out += " + ";
    wrapped(t.right(), 2);
  }
}

void collect(const Term& t, Term::Kind kind, std::set<std::string>& out) {
  if (t.kind() == kind) {
    if (kind != Term::Kind::Constant || (t.symbol() != kFalse && t.symbol() != kTrue)) {
      out.insert(t.symbol());
    }
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect(t.child(i), kind, out);
}

}  // namespace

Term parse(std::string_view text) { return Parser(text, false).run(); }

Term parse_pattern(std::string_view text) { return Parser(text, true).run(); }

std::string print(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::size_t polish_size(const Term& t) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < t.arity(); ++i) n += polish_size(t.child(i));
  return n;
}

std::size_t depth(const Term& t) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < t.arity(); ++i) d = std::max(d, depth(t.child(i)));
  return d + 1;
}

std::set<std::string> letters(const Term& t) {
  std::set<std::string> out;
  collect(t, Term::Kind::Constant, out);
  return out;
}

std::set<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect(t, Term::Kind::Variable, out);
  return out;
}

bool evaluate(const Term& t, const TruthAssignment& v) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable: {
      if (t.symbol() == kFalse) return false;
      if (t.symbol() == kTrue) return true;
      auto it = v.find(t.symbol());
      if (it == v.end()) throw UnboundLetter(t.symbol());
      return it->second;
    }
    case Term::Kind::Unary:
      if (t.symbol() != kNot) throw Error("no boolean meaning for '" + t.symbol() + "'");
      return !evaluate(t.child(0), v);
    case Term::Kind::Binary:
      if (t.symbol() == kAnd) return evaluate(t.left(), v) && evaluate(t.right(), v);
      if (t.symbol() == kOr) return evaluate(t.left(), v) || evaluate(t.right(), v);
      throw Error("no boolean meaning for '" + t.symbol() + "'");
  }
  return false;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t lo, std::uint64_t hi) {
  return lo + next() % (hi - lo + 1);
}

Term random_expr(std::uint64_t seed, std::size_t n_letters, std::size_t target_size,
                 GeneratorOptions options) {
  if (n_letters < 1 || n_letters > 16) {
    throw InvalidParameter("letter count must be in 1..16, got " + std::to_string(n_letters));
  }
  if (target_size < 1) throw InvalidParameter("target size must be at least 1");

  SplitMix64 rng(seed);
  // Draw order per node is fixed: leaf (constant coin, then value), size 2
  // (no draw), otherwise (unary coin, then operator, then left budget).
  std::function<Term(std::size_t)> gen = [&](std::size_t budget) -> Term {
    if (budget == 1) {
      if (options.constant_one_in != 0 && rng.next() % options.constant_one_in == 0) {
        return Term::constant(rng.next() % 2 == 0 ? "0" : "1");
      }
      return Term::constant(std::string(1, static_cast<char>('a' + rng.uniform(0, n_letters - 1))));
    }
    if (budget == 2) return Term::unary(std::string(kNot), gen(1));
    if (rng.next() % 4 == 0) return Term::unary(std::string(kNot), gen(budget - 1));
    std::string op(rng.next() % 2 == 0 ? kAnd : kOr);
    const std::size_t left = rng.uniform(1, budget - 2);
    Term l = gen(left);
    Term r = gen(budget - 1 - left);
    return Term::binary(std::move(op), std::move(l), std::move(r));
  };
  return gen(target_size);
}

}  // namespace eqsimp
