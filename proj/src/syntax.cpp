#include "manlp/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <utility>

namespace manlp {

namespace body {

bool operator==(const Conn& a, const Conn& b) { return a.op == b.op && a.operands == b.operands; }
bool operator==(const Agg& a, const Agg& b) { return a.name == b.name && a.args == b.args; }

}  // namespace body

BodyExpr BodyExpr::prop(std::string atom) { return {body::Prop{std::move(atom)}}; }
BodyExpr BodyExpr::neg(std::string atom) { return {body::NegProp{std::move(atom)}}; }
BodyExpr BodyExpr::constant(TruthValue value) { return {body::Const{value}}; }

BodyExpr BodyExpr::conn(AdjointLabel op, BodyExpr left, BodyExpr right) {
  std::vector<BodyExpr> operands;
  operands.reserve(2);
  operands.push_back(std::move(left));
  operands.push_back(std::move(right));
  return {body::Conn{op, std::move(operands)}};
}

BodyExpr BodyExpr::agg(std::string name, std::vector<BodyExpr> args) {
  return {body::Agg{std::move(name), std::move(args)}};
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void collect_atoms(const BodyExpr& b, std::vector<std::string>& out) {
  std::visit(overloaded{
                 [&](const body::Prop& p) { out.push_back(p.atom); },
                 [&](const body::NegProp& p) { out.push_back(p.atom); },
                 [](const body::Const&) {},
                 [&](const body::Conn& c) {
                   for (const auto& o : c.operands) collect_atoms(o, out);
                 },
                 [&](const body::Agg& a) {
                   for (const auto& o : a.args) collect_atoms(o, out);
                 },
             },
             b.node);
}

bool is_ident_start(char c) noexcept {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_ident_char(char c) noexcept {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

std::vector<std::string> body_atoms(const BodyExpr& body) {
  std::vector<std::string> out;
  collect_atoms(body, out);
  return out;
}

bool has_negation(const BodyExpr& b) {
  return std::visit(overloaded{
                        [](const body::Prop&) { return false; },
                        [](const body::NegProp&) { return true; },
                        [](const body::Const&) { return false; },
                        [](const body::Conn& c) {
                          return std::ranges::any_of(c.operands, has_negation);
                        },
                        [](const body::Agg& a) { return std::ranges::any_of(a.args, has_negation); },
                    },
                    b.node);
}

bool is_identifier(std::string_view name) noexcept {
  if (name.empty() || !is_ident_start(name.front())) return false;
  return std::ranges::all_of(name, is_ident_char) && name != "not";
}

// ---- validation ------------------------------------------------------------

namespace {

void validate_body(LatticeKind kind, const BodyExpr& b, std::string_view where) {
  const auto& sig = LatticeSignature::of(kind);
  std::visit(overloaded{
                 [&](const body::Prop& p) {
                   if (!is_identifier(p.atom))
                     throw ValidationError(std::string(where) + ": bad atom name '" + p.atom + "'");
                 },
                 [&](const body::NegProp& p) {
                   if (!is_identifier(p.atom))
                     throw ValidationError(std::string(where) + ": bad atom name '" + p.atom + "'");
                 },
                 [&](const body::Const& c) {
                   if (c.value.kind() != kind)
                     throw ValidationError(std::string(where) + ": constant " + to_string(c.value) +
                                           " is not a " + std::string(to_string(kind)) + " value");
                 },
                 [&](const body::Conn& c) {
                   const bool ok = sig.has_pair(c.op) &&
                                   (c.op.family != PairFamily::ei || c.op.ei.is_componentwise_product());
                   if (!ok)
                     throw ValidationError(std::string(where) + ": connective " +
                                           connective_token(c.op) + " is not available in a " +
                                           std::string(to_string(kind)) + " program");
                   if (c.operands.size() != 2)
                     throw ValidationError(std::string(where) + ": connective needs two operands");
                   for (const auto& o : c.operands) validate_body(kind, o, where);
                 },
                 [&](const body::Agg& a) {
                   if (sig.aggregator(a.name) == nullptr)
                     throw ValidationError(std::string(where) + ": unknown aggregator @" + a.name);
                   if (a.args.empty())
                     throw ValidationError(std::string(where) + ": @" + a.name + " needs arguments");
                   for (const auto& o : a.args) validate_body(kind, o, where);
                 },
             },
             b.node);
}

}  // namespace

void validate_rule(LatticeKind kind, const Rule& rule) {
  const std::string where = "rule for '" + rule.head + "'";
  if (!is_identifier(rule.head)) throw ValidationError("bad head atom '" + rule.head + "'");
  if (!LatticeSignature::of(kind).has_pair(rule.label)) {
    throw ValidationError(where + ": implication <-" + implication_tag(rule.label) +
                          " is not available in a " + std::string(to_string(kind)) + " program");
  }
  if (rule.weight.kind() != kind) {
    throw ValidationError(where + ": weight " + to_string(rule.weight) + " is not a " +
                          std::string(to_string(kind)) + " value");
  }
  validate_body(kind, rule.body, where);
  std::set<std::string> seen;
  for (auto& a : body_atoms(rule.body)) {
    if (!seen.insert(a).second) throw ValidationError(where + ": atom '" + a + "' occurs twice in the body");
  }
}

Program Program::make(LatticeKind kind, std::vector<Rule> rules,
                      std::vector<std::string> extra_symbols) {
  Program p(kind);
  std::set<std::string> symbols;
  for (const auto& r : rules) {
    validate_rule(kind, r);
    symbols.insert(r.head);
    for (auto& a : body_atoms(r.body)) symbols.insert(std::move(a));
  }
  for (auto& s : extra_symbols) {
    if (!is_identifier(s)) throw ValidationError("bad symbol name '" + s + "'");
    symbols.insert(std::move(s));
  }
  p.rules_ = std::move(rules);
  p.symbols_.assign(symbols.begin(), symbols.end());
  return p;
}

bool Program::is_positive() const {
  return std::ranges::none_of(rules_, [](const Rule& r) { return has_negation(r.body); });
}

// ---- parser ----------------------------------------------------------------

namespace {

class LineParser {
public:
  LineParser(std::string_view text, std::size_t line, LatticeKind kind)
      : text_(text), line_(line), kind_(kind) {}

  Rule parse_rule() {
    Rule rule{.head = {}, .label = {}, .body = {}, .weight = TruthValue::bottom(kind_)};
    skip_ws();
    const std::size_t head_col = pos_;
    rule.head = identifier("expected the head atom");
    if (rule.head == "not") fail(head_col, "'not' cannot be a rule head");
    skip_ws();
    if (!consume("<-")) fail(pos_, "expected '<-' after the head atom");
    rule.label = tag();
    rule.body = body_expr();
    skip_ws();
    if (!consume(";")) fail(pos_, "expected ';' before the rule weight");
    rule.weight = constant("weight");
    skip_ws();
    if (!at_end()) fail(pos_, "unexpected text after the weight");
    check_duplicates();
    return rule;
  }

private:
  [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
    throw ParseError(line_, col + 1, msg);
  }

  bool at_end() const noexcept { return pos_ >= text_.size(); }
  char peek() const noexcept { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() noexcept {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }

  bool consume(std::string_view s) noexcept {
    if (text_.substr(pos_).starts_with(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void expect(char c, std::string_view context) {
    skip_ws();
    if (peek() != c) {
      fail(pos_, "expected '" + std::string(1, c) + "' " + std::string(context) + describe_here());
    }
    ++pos_;
  }

  std::string describe_here() const {
    if (at_end()) return ", found end of line";
    return ", found '" + std::string(1, peek()) + "'";
  }

  std::string identifier(std::string_view what) {
    if (!is_ident_start(peek())) fail(pos_, std::string(what) + describe_here());
    const std::size_t start = pos_;
    while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned natural() {
    skip_ws();
    const std::size_t start = pos_;
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == text_.data() + pos_) fail(start, "expected a natural number" + describe_here());
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  AdjointLabel tag() {
    skip_ws();
    const std::size_t col = pos_;
    const std::string name = identifier("expected an implication tag (G, P, L or ei(...))");
    AdjointLabel label;
    if (name == "G") {
      label = AdjointLabel::godel();
    } else if (name == "P") {
      label = AdjointLabel::product();
    } else if (name == "L") {
      label = AdjointLabel::lukasiewicz();
    } else if (name == "ei") {
      expect('(', "after 'ei'");
      EiParams p;
      p.alpha = natural();
      expect(',', "in ei tag");
      p.beta = natural();
      expect(',', "in ei tag");
      p.gamma = natural();
      expect(',', "in ei tag");
      p.delta = natural();
      expect(')', "closing the ei tag");
      if (!p.valid()) {
        fail(col, "invalid ei tag " + implication_tag(AdjointLabel::ei_pair(p)) +
                      ": exponents must be >= 1 with beta <= alpha and delta <= gamma");
      }
      label = AdjointLabel::ei_pair(p);
    } else {
      fail(col, "unknown implication tag '" + name + "'");
    }
    if (label.domain() != kind_) {
      fail(col, "implication <-" + implication_tag(label) + " is not available in a " +
                    std::string(to_string(kind_)) + " program");
    }
    return label;
  }

  bool at_connective() const noexcept { return peek() == '&' || peek() == '*'; }

  bool at_term_start() const noexcept {
    const char c = peek();
    return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '[' ||
           c == '(' || c == '@';
  }

  AdjointLabel connective() {
    const std::size_t col = pos_;
    AdjointLabel op;
    if (consume("*")) {
      op = AdjointLabel::interval_product();
    } else {
      ++pos_;  // '&'
      const char f = peek();
      if (f == 'G') {
        op = AdjointLabel::godel();
      } else if (f == 'P') {
        op = AdjointLabel::product();
      } else if (f == 'L') {
        op = AdjointLabel::lukasiewicz();
      } else {
        fail(col, "unknown connective, expected &G, &P, &L or *");
      }
      ++pos_;
      if (is_ident_char(peek())) fail(col, "unknown connective, expected &G, &P, &L or *");
    }
    if (op.domain() != kind_) {
      fail(col, "connective " + connective_token(op) + " is not available in a " +
                    std::string(to_string(kind_)) + " program");
    }
    return op;
  }

  BodyExpr body_expr() {
    skip_ws();
    BodyExpr left = term();
    for (;;) {
      skip_ws();
      if (!at_connective()) return left;
      const std::size_t col = pos_;
      const AdjointLabel op = connective();
      skip_ws();
      if (!at_term_start()) {
        fail(col, "dangling connective " + connective_token(op) + ": expected a term" + describe_here());
      }
      BodyExpr right = term();
      left = BodyExpr::conn(op, std::move(left), std::move(right));
    }
  }

  BodyExpr term() {
    skip_ws();
    const std::size_t col = pos_;
    const char c = peek();
    if (is_ident_start(c)) {
      std::string name = identifier("expected an atom");
      if (name != "not") {
        atoms_.emplace_back(name, col);
        return BodyExpr::prop(std::move(name));
      }
      skip_ws();
      const std::size_t atom_col = pos_;
      if (!is_ident_start(peek())) fail(atom_col, "'not' applies only to an atom" + describe_here());
      std::string atom = identifier("expected an atom");
      if (atom == "not") fail(atom_col, "'not' applies only to an atom");
      atoms_.emplace_back(atom, atom_col);
      return BodyExpr::neg(std::move(atom));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '[') {
      return BodyExpr::constant(constant("constant"));
    }
    if (c == '(') {
      ++pos_;
      BodyExpr inner = body_expr();
      expect(')', "closing the parenthesis");
      return inner;
    }
    if (c == '@') {
      ++pos_;
      const std::size_t name_col = pos_;
      std::string name = identifier("expected an aggregator name after '@'");
      if (LatticeSignature::of(kind_).aggregator(name) == nullptr) {
        fail(name_col, "unknown aggregator @" + name);
      }
      expect('(', "after the aggregator name");
      std::vector<BodyExpr> args;
      args.push_back(body_expr());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        args.push_back(body_expr());
        skip_ws();
      }
      expect(')', "closing the aggregator arguments");
      return BodyExpr::agg(std::move(name), std::move(args));
    }
    fail(col, "expected a term" + describe_here());
  }

  double decimal() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
      return pos_ > s;
    };
    if (!digits()) fail(start, "expected a decimal number" + describe_here());
    if (peek() == '.') {
      ++pos_;
      if (!digits()) fail(pos_, "expected digits after the decimal point");
    }
    if (peek() == 'e' || peek() == 'E') {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!digits()) fail(pos_, "expected an exponent");
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{} || ptr != text_.data() + pos_) fail(start, "malformed number");
    return v;
  }

  TruthValue constant(std::string_view what) {
    skip_ws();
    const std::size_t col = pos_;
    if (peek() == '[') {
      ++pos_;
      skip_ws();
      const double lo = decimal();
      expect(',', "between interval endpoints");
      skip_ws();
      const double hi = decimal();
      expect(']', "closing the interval");
      if (kind_ != LatticeKind::subinterval) {
        fail(col, std::string(what) + " is an interval but the program is over the unit lattice");
      }
      if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
        fail(col, std::string(what) + " [" + format_number(lo) + "," + format_number(hi) +
                      "] is not a subinterval of [0,1]");
      }
      return TruthValue::interval(lo, hi);
    }
    const double v = decimal();
    if (kind_ != LatticeKind::unit_interval) {
      fail(col, std::string(what) + " must be an interval [lo,hi] in an interval program");
    }
    if (v > 1.0) fail(col, std::string(what) + " " + format_number(v) + " is outside [0,1]");
    return TruthValue::unit(v);
  }

  void check_duplicates() const {
    std::set<std::string_view> seen;
    for (const auto& [name, col] : atoms_) {
      if (!seen.insert(name).second) fail(col, "atom '" + name + "' occurs twice in the body");
    }
  }

  std::string_view text_;
  std::size_t line_;
  LatticeKind kind_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, std::size_t>> atoms_;
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool blank(std::string_view s) {
  return std::ranges::all_of(s, [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

Program parse_program(std::string_view text, LatticeKind kind) {
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const std::string_view line = strip_comment(raw);
    if (blank(line)) continue;
    rules.push_back(LineParser(line, line_no, kind).parse_rule());
  }
  return Program::make(kind, std::move(rules));
}

LatticeKind infer_lattice_kind(std::string_view text) {
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = strip_comment(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.find('[') != std::string_view::npos || line.find('*') != std::string_view::npos ||
        line.find("<-ei") != std::string_view::npos) {
      return LatticeKind::subinterval;
    }
  }
  return LatticeKind::unit_interval;
}

// ---- rendering -------------------------------------------------------------

std::string render_body(const BodyExpr& b) {
  return std::visit(overloaded{
                        [](const body::Prop& p) { return p.atom; },
                        [](const body::NegProp& p) { return "not " + p.atom; },
                        [](const body::Const& c) { return to_string(c.value); },
                        [](const body::Conn& c) {
                          // Left-associative: only a right operand that is itself a
                          // connective needs grouping.
                          const auto& right = c.operands[1];
                          std::string r = render_body(right);
                          if (std::holds_alternative<body::Conn>(right.node)) r = "(" + r + ")";
                          return render_body(c.operands[0]) + " " + connective_token(c.op) + " " + r;
                        },
                        [](const body::Agg& a) {
                          std::string out = "@" + a.name + "(";
                          for (std::size_t i = 0; i < a.args.size(); ++i) {
                            if (i != 0) out += ", ";
                            out += render_body(a.args[i]);
                          }
                          return out + ")";
                        },
                    },
                    b.node);
}

std::string render_rule(const Rule& rule) {
  return rule.head + " <-" + implication_tag(rule.label) + " " + render_body(rule.body) + " ; " +
         to_string(rule.weight);
}

std::string render_program(const Program& program) {
  std::string out;
  for (const auto& r : program.rules()) {
    out += render_rule(r);
    out += '\n';
  }
  return out;
}

}  // namespace manlp
