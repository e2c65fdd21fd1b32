#pragma once

// Abstract syntax of multi-adjoint normal programs and the `.mnlp` text format.
//
//   rule  := atom "<-" tag body ";" weight
//   tag   := "G" | "P" | "L" | "ei(" n "," n "," n "," n ")"
//   body  := term { op term }            op := "&G" | "&P" | "&L" | "*"
//   term  := atom | "not" atom | const | "(" body ")" | "@" name "(" body {"," body} ")"
//   const := decimal | "[" decimal "," decimal "]"
//
// One rule per line; `#` starts a comment. Connectives share one precedence
// level and associate to the left.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "manlp/lattice.hpp"

namespace manlp {

struct BodyExpr;

namespace body {

struct Prop {
  std::string atom;
  friend bool operator==(const Prop&, const Prop&) = default;
};

/// Default negation; only ever wraps an atom.
struct NegProp {
  std::string atom;
  friend bool operator==(const NegProp&, const NegProp&) = default;
};

struct Const {
  TruthValue value;
  friend bool operator==(const Const&, const Const&) = default;
};

/// Binary connective; `operands` always holds exactly two children.
struct Conn {
  AdjointLabel op;
  std::vector<BodyExpr> operands;
  friend bool operator==(const Conn&, const Conn&);
};

struct Agg {
  std::string name;
  std::vector<BodyExpr> args;
  friend bool operator==(const Agg&, const Agg&);
};

}  // namespace body

struct BodyExpr {
  using Node = std::variant<body::Prop, body::NegProp, body::Const, body::Conn, body::Agg>;
  Node node;

  static BodyExpr prop(std::string atom);
  static BodyExpr neg(std::string atom);
  static BodyExpr constant(TruthValue value);
  static BodyExpr conn(AdjointLabel op, BodyExpr left, BodyExpr right);
  static BodyExpr agg(std::string name, std::vector<BodyExpr> args);

  friend bool operator==(const BodyExpr&, const BodyExpr&) = default;
};

/// Atoms of a body in left-to-right order of occurrence, negated ones included.
std::vector<std::string> body_atoms(const BodyExpr& body);
bool has_negation(const BodyExpr& body);

/// <head <-label body ; weight>
struct Rule {
  std::string head;
  AdjointLabel label;
  BodyExpr body;
  TruthValue weight;

  friend bool operator==(const Rule&, const Rule&) = default;
};

bool is_identifier(std::string_view name) noexcept;

/// A finite, validated set of weighted rules over one lattice. The symbol
/// set is every atom that occurs in a rule, plus any symbols carried over
/// explicitly (a reduct keeps the symbols its negations referred to).
class Program {
public:
  explicit Program(LatticeKind kind = LatticeKind::unit_interval) : kind_(kind) {}

  /// Validates every rule against the lattice; throws ValidationError.
  static Program make(LatticeKind kind, std::vector<Rule> rules,
                      std::vector<std::string> extra_symbols = {});

  LatticeKind kind() const noexcept { return kind_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  /// Sorted, duplicate-free.
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  bool empty() const noexcept { return rules_.empty(); }
  /// No default negation anywhere.
  bool is_positive() const;

  friend bool operator==(const Program&, const Program&) = default;

private:
  LatticeKind kind_;
  std::vector<Rule> rules_;
  std::vector<std::string> symbols_;
};

/// Throws ValidationError when `rule` cannot belong to a program over `kind`.
void validate_rule(LatticeKind kind, const Rule& rule);

Program parse_program(std::string_view text, LatticeKind kind);

/// Guess the lattice of a program text: intervals if it mentions `[`, `*`
/// or an ei tag outside comments, the unit interval otherwise.
LatticeKind infer_lattice_kind(std::string_view text);

std::string render_body(const BodyExpr& body);
std::string render_rule(const Rule& rule);
/// One line per rule, each terminated by '\n'; "" for the empty program.
std::string render_program(const Program& program);

}  // namespace manlp
