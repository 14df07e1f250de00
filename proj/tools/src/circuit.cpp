#include "mzi/circuit.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "spinorlab/config.hpp"
#include "spinorlab/error.hpp"

namespace mzi {

using spinorlab::ParseError;
using spinorlab::fock::Arm;
using spinorlab::fock::SourceKind;

// ---------------------------------------------------------------- expressions

struct Expr::Node {
  Kind kind;
  double value = 0.0;
  std::string name;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
    case Expr::Kind::subtract:
      return 1;
    case Expr::Kind::multiply:
    case Expr::Kind::divide:
      return 2;
    case Expr::Kind::negate:
      return 3;
    default:
      return 4;
  }
}

char op_char(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::add:
      return '+';
    case Expr::Kind::subtract:
      return '-';
    case Expr::Kind::multiply:
      return '*';
    default:
      return '/';
  }
}

}  // namespace

Expr::Expr() : Expr(number(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::number(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("Expr::number: value must be finite");
  if (std::signbit(value)) return negate(number(-value));
  return Expr(std::make_shared<const Node>(Node{Kind::number, value, {}, nullptr, nullptr}));
}

Expr Expr::pi() { return Expr(std::make_shared<const Node>(Node{Kind::pi, 0.0, {}, nullptr, nullptr})); }

Expr Expr::variable(std::string name) {
  return Expr(std::make_shared<const Node>(Node{Kind::variable, 0.0, std::move(name), nullptr, nullptr}));
}

Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const Node>(Node{Kind::negate, 0.0, {}, operand.node_, nullptr}));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
  if (precedence(op) > 2) throw std::invalid_argument("Expr::binary: not a binary operator");
  return Expr(std::make_shared<const Node>(Node{op, 0.0, {}, lhs.node_, rhs.node_}));
}

Expr::Kind Expr::kind() const { return node_->kind; }

namespace {

double eval(const Expr::Node& n, std::string_view name, double value) {
  switch (n.kind) {
    case Expr::Kind::number:
      return n.value;
    case Expr::Kind::pi:
      return std::numbers::pi;
    case Expr::Kind::variable:
      if (name.empty() || n.name != name) {
        throw std::invalid_argument("undefined variable '" + n.name + "'");
      }
      return value;
    case Expr::Kind::negate:
      return -eval(*n.lhs, name, value);
    case Expr::Kind::add:
      return eval(*n.lhs, name, value) + eval(*n.rhs, name, value);
    case Expr::Kind::subtract:
      return eval(*n.lhs, name, value) - eval(*n.rhs, name, value);
    case Expr::Kind::multiply:
      return eval(*n.lhs, name, value) * eval(*n.rhs, name, value);
    case Expr::Kind::divide:
      return eval(*n.lhs, name, value) / eval(*n.rhs, name, value);
  }
  return 0.0;
}

void collect(const Expr::Node& n, std::vector<std::string>& out) {
  if (n.kind == Expr::Kind::variable) out.push_back(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

std::string render(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Kind::number:
      return format_shortest(n.value);
    case Expr::Kind::pi:
      return "pi";
    case Expr::Kind::variable:
      return n.name;
    case Expr::Kind::negate: {
      const std::string inner = render(*n.lhs);
      return precedence(n.lhs->kind) < 3 ? "-(" + inner + ")" : "-" + inner;
    }
    default: {
      const int p = precedence(n.kind);
      std::string lhs = render(*n.lhs);
      std::string rhs = render(*n.rhs);
      if (precedence(n.lhs->kind) < p) lhs = "(" + lhs + ")";
      if (precedence(n.rhs->kind) <= p) rhs = "(" + rhs + ")";
      return lhs + op_char(n.kind) + rhs;
    }
  }
}

bool equal(const Expr::Node* x, const Expr::Node* y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind || x->value != y->value || x->name != y->name) return false;
  return equal(x->lhs.get(), y->lhs.get()) && equal(x->rhs.get(), y->rhs.get());
}

}  // namespace

double Expr::evaluate(std::string_view name, double value) const {
  return eval(*node_, name, value);
}

std::vector<std::string> Expr::variables() const {
  std::vector<std::string> out;
  collect(*node_, out);
  return out;
}

std::string Expr::to_string() const { return render(*node_); }

bool operator==(const Expr& x, const Expr& y) { return equal(x.node_.get(), y.node_.get()); }

std::string format_shortest(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

// ------------------------------------------------------------------- spec glue

spinorlab::fock::BeamSplitter SplitterSpec::build() const {
  return spinorlab::fock::BeamSplitter(t, r, t_p.value_or(std::conj(t)), r_p.value_or(r), false);
}

std::vector<double> SweepSpec::points() const {
  if (steps < 1) throw std::invalid_argument("sweep needs at least one step");
  const double lo = from.evaluate();
  const double hi = to.evaluate();
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    out[k] = steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1);
  }
  if (steps > 1) out.back() = hi;
  return out;
}

spinorlab::fock::DephaserSettings CircuitSpec::dephasers_at(double value) const {
  spinorlab::fock::DephaserSettings d;
  const std::string_view name = sweep ? std::string_view(sweep->variable) : std::string_view();
  for (const DephaseSpec& ds : dephasers) {
    const double phi = ds.phi.evaluate(name, value);
    const bool up = ds.spin != SpinSelector::down;
    const bool down = ds.spin != SpinSelector::up;
    if (ds.arm == Arm::a) {
      if (up) d.phi_a_up = phi;
      if (down) d.phi_a_down = phi;
    } else {
      if (up) d.phi_b_up = phi;
      if (down) d.phi_b_down = phi;
    }
  }
  return d;
}

std::string_view keyword(SourceKind kind) {
  switch (kind) {
    case SourceKind::unpolarized_mixture:
      return "unpolarized";
    case SourceKind::singlet:
      return "singlet";
    case SourceKind::vacuum:
      return "vacuum";
  }
  return "";
}

std::string_view keyword(DetectKind kind) {
  switch (kind) {
    case DetectKind::rate_da:
      return "rate Da";
    case DetectKind::rate_db:
      return "rate Db";
    case DetectKind::coincidence:
      return "coincidence";
    case DetectKind::phase:
      return "phase";
  }
  return "";
}

// ---------------------------------------------------------------------- lexer

namespace {

enum class Tok { ident, number, equals, plus, minus, star, slash, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

std::string describe(const Token& t) {
  return t.kind == Tok::end ? std::string("end of line") : "'" + t.text + "'";
}

std::vector<Token> lex_line(std::string_view s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t pos) { return static_cast<int>(pos) + 1; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::ident, std::string(s.substr(start, i - start)), line, col(start)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto digits = [&] {
        const std::size_t from = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return i > from;
      };
      bool any = digits();
      if (i < s.size() && s[i] == '.') {
        ++i;
        any = digits() || any;
      }
      if (!any) throw ParseError(line, col(start), "malformed number");
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          digits();
        }
      }
      out.push_back({Tok::number, std::string(s.substr(start, i - start)), line, col(start)});
      continue;
    }
    Tok kind;
    switch (c) {
      case '=':
        kind = Tok::equals;
        break;
      case '+':
        kind = Tok::plus;
        break;
      case '-':
        kind = Tok::minus;
        break;
      case '*':
        kind = Tok::star;
        break;
      case '/':
        kind = Tok::slash;
        break;
      case '(':
        kind = Tok::lparen;
        break;
      case ')':
        kind = Tok::rparen;
        break;
      default:
        throw ParseError(line, col(start),
                         "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back({kind, std::string(1, c), line, col(start)});
    ++i;
  }
  out.push_back({Tok::end, {}, line, static_cast<int>(s.size()) + 1});
  return out;
}

double to_double(const Token& t) {
  double v = 0.0;
  const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size() || !std::isfinite(v)) {
    throw ParseError(t.line, t.column, "number out of range: " + t.text);
  }
  return v;
}

// --------------------------------------------------------------------- parser

struct VariableUse {
  std::string name;
  int line;
  int column;
};

class LineParser {
 public:
  explicit LineParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(std::string_view word) const { return at(Tok::ident) && peek().text == word; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg);
  }

  const Token& expect(Tok k, std::string_view what) {
    if (!at(k)) fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    return next();
  }

  const Token& expect_ident(std::string_view word) {
    if (!at_ident(word)) {
      fail(peek(), "expected '" + std::string(word) + "', found " + describe(peek()));
    }
    return next();
  }

  void expect_end() {
    if (!at(Tok::end)) fail(peek(), "unexpected " + describe(peek()));
  }

  // expr := term (('+' | '-') term)*
  Expr expression() {
    Expr lhs = term();
    while (at(Tok::plus) || at(Tok::minus)) {
      const auto op = next().kind == Tok::plus ? Expr::Kind::add : Expr::Kind::subtract;
      lhs = Expr::binary(op, lhs, term());
    }
    return lhs;
  }

  // complex := [sign] real [('+' | '-') real 'i'] | [sign] real 'i'
  cplx complex_literal() {
    const double s1 = sign();
    const double x = to_double(expect(Tok::number, "a number"));
    if (at_ident("i")) {
      next();
      return {0.0, s1 * x};
    }
    if (at(Tok::plus) || at(Tok::minus)) {
      const double s2 = next().kind == Tok::plus ? 1.0 : -1.0;
      const double y = to_double(expect(Tok::number, "a number"));
      expect_ident("i");
      return {s1 * x, s2 * y};
    }
    return {s1 * x, 0.0};
  }

  const std::vector<VariableUse>& uses() const { return uses_; }

 private:
  double sign() {
    if (at(Tok::minus)) {
      next();
      return -1.0;
    }
    if (at(Tok::plus)) next();
    return 1.0;
  }

  // term := unary (('*' | '/') unary)*
  Expr term() {
    Expr lhs = unary();
    while (at(Tok::star) || at(Tok::slash)) {
      const auto op = next().kind == Tok::star ? Expr::Kind::multiply : Expr::Kind::divide;
      lhs = Expr::binary(op, lhs, unary());
    }
    return lhs;
  }

  // unary := '-' unary | primary
  Expr unary() {
    if (at(Tok::minus)) {
      next();
      return Expr::negate(unary());
    }
    return primary();
  }

  // primary := number | 'pi' | ident | '(' expr ')'
  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number:
        next();
        return Expr::number(to_double(t));
      case Tok::ident:
        next();
        if (t.text == "pi") return Expr::pi();
        uses_.push_back({t.text, t.line, t.column});
        return Expr::variable(t.text);
      case Tok::lparen: {
        next();
        Expr inner = expression();
        expect(Tok::rparen, "')'");
        return inner;
      }
      default:
        fail(t, "expected an expression, found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<VariableUse> uses_;
};

class Parser {
 public:
  CircuitSpec run(std::string_view text) {
    int line = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      const std::size_t stop = nl == std::string_view::npos ? text.size() : nl;
      ++line;
      statement(lex_line(text.substr(start, stop - start), line));
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    finish(std::max(line, 1));
    return spec_;
  }

 private:
  void statement(std::vector<Token> tokens) {
    LineParser p(std::move(tokens));
    if (p.at(Tok::end)) return;
    const Token head = p.next();
    if (head.kind != Tok::ident) p.fail(head, "expected a statement keyword, found " + describe(head));
    if (head.text == "source") {
      source(p, head);
    } else if (head.text == "beamsplitter") {
      beamsplitter(p, head);
    } else if (head.text == "dephase") {
      dephase(p);
    } else if (head.text == "sweep") {
      sweep(p, head);
    } else if (head.text == "detect") {
      detect(p);
    } else {
      p.fail(head, "unknown keyword '" + head.text + "'");
    }
    p.expect_end();
  }

  void source(LineParser& p, const Token& head) {
    if (have_source_) p.fail(head, "duplicate source");
    const Token& kind = p.expect(Tok::ident, "a source kind");
    if (kind.text == "unpolarized") {
      spec_.source = SourceKind::unpolarized_mixture;
    } else if (kind.text == "singlet") {
      spec_.source = SourceKind::singlet;
    } else if (kind.text == "vacuum") {
      spec_.source = SourceKind::vacuum;
    } else {
      p.fail(kind, "unknown source kind '" + kind.text + "'");
    }
    have_source_ = true;
  }

  void beamsplitter(LineParser& p, const Token& head) {
    if (have_splitter_) p.fail(head, "duplicate beamsplitter");
    SplitterSpec s;
    std::set<std::string> seen;
    std::optional<Token> lossless_flag;
    std::optional<Token> symmetric_flag;
    bool have_t = false;
    bool have_r = false;
    while (!p.at(Tok::end)) {
      const Token key = p.expect(Tok::ident, "a beamsplitter parameter");
      if (!seen.insert(key.text).second) p.fail(key, "duplicate parameter '" + key.text + "'");
      if (key.text == "lossless") {
        lossless_flag = key;
        s.lossless = true;
        continue;
      }
      if (key.text == "symmetric") {
        symmetric_flag = key;
        s.symmetric = true;
        continue;
      }
      if (key.text != "t" && key.text != "r" && key.text != "tp" && key.text != "rp") {
        p.fail(key, "unknown beamsplitter parameter '" + key.text + "'");
      }
      p.expect(Tok::equals, "'='");
      const cplx v = p.complex_literal();
      if (key.text == "t") {
        s.t = v;
        have_t = true;
      } else if (key.text == "r") {
        s.r = v;
        have_r = true;
      } else if (key.text == "tp") {
        s.t_p = v;
      } else {
        s.r_p = v;
      }
    }
    if (!have_t || !have_r) p.fail(p.peek(), "beamsplitter needs both t and r");
    if (s.t_p.has_value() != s.r_p.has_value()) {
      p.fail(p.peek(), "tp and rp must be given together");
    }
    const auto bs = s.build();
    if (symmetric_flag && !bs.is_symmetric(spinorlab::tol::kAlgebraic)) {
      p.fail(*symmetric_flag, "splitter declared symmetric but rp != r or tp != conj(t)");
    }
    if (lossless_flag && !bs.satisfies_lossless(spinorlab::tol::kAlgebraic)) {
      p.fail(*lossless_flag,
             "splitter declared lossless is not unitary (|t|^2+|r|^2 = " +
                 format_shortest(std::norm(bs.t) + std::norm(bs.r)) + ")");
    }
    spec_.splitter = s;
    have_splitter_ = true;
  }

  void dephase(LineParser& p) {
    std::optional<Arm> arm;
    std::optional<SpinSelector> spin;
    std::optional<Expr> phi;
    std::optional<Token> phi_token;
    while (!p.at(Tok::end)) {
      const Token key = p.expect(Tok::ident, "a dephase parameter");
      if (key.text != "arm" && key.text != "spin" && key.text != "phi") {
        p.fail(key, "unknown dephase parameter '" + key.text + "'");
      }
      p.expect(Tok::equals, "'='");
      if (key.text == "arm") {
        if (arm) p.fail(key, "duplicate parameter 'arm'");
        const Token& v = p.expect(Tok::ident, "an arm");
        if (v.text == "a") {
          arm = Arm::a;
        } else if (v.text == "b") {
          arm = Arm::b;
        } else {
          p.fail(v, "unknown arm '" + v.text + "'");
        }
      } else if (key.text == "spin") {
        if (spin) p.fail(key, "duplicate parameter 'spin'");
        const Token& v = p.expect(Tok::ident, "a spin");
        if (v.text == "up") {
          spin = SpinSelector::up;
        } else if (v.text == "down") {
          spin = SpinSelector::down;
        } else if (v.text == "both") {
          spin = SpinSelector::both;
        } else {
          p.fail(v, "unknown spin '" + v.text + "'");
        }
      } else {
        if (phi) p.fail(key, "duplicate parameter 'phi'");
        phi_token = key;
        phi = p.expression();
      }
    }
    if (!arm || !spin || !phi) p.fail(p.peek(), "dephase needs arm, spin and phi");
    for (bool up : {true, false}) {
      if ((up && *spin == SpinSelector::down) || (!up && *spin == SpinSelector::up)) continue;
      const int slot = 2 * static_cast<int>(*arm) + (up ? 0 : 1);
      if (!dephased_.insert(slot).second) {
        p.fail(*phi_token, std::string("phase for arm ") + (*arm == Arm::a ? "a" : "b") +
                               " spin " + (up ? "up" : "down") + " set twice");
      }
    }
    for (const VariableUse& u : p.uses()) uses_.push_back(u);
    spec_.dephasers.push_back({*arm, *spin, *phi});
  }

  void sweep(LineParser& p, const Token& head) {
    if (spec_.sweep) p.fail(head, "duplicate sweep");
    SweepSpec s;
    const Token& var = p.expect(Tok::ident, "a sweep variable");
    if (var.text == "pi") p.fail(var, "'pi' is reserved");
    s.variable = var.text;
    p.expect_ident("from");
    s.from = p.expression();
    p.expect_ident("to");
    s.to = p.expression();
    if (!p.uses().empty()) {
      const VariableUse& u = p.uses().front();
      throw ParseError(u.line, u.column, "undefined variable '" + u.name + "'");
    }
    p.expect_ident("steps");
    const Token& n = p.expect(Tok::number, "an integer step count");
    int steps = 0;
    const auto res = std::from_chars(n.text.data(), n.text.data() + n.text.size(), steps);
    if (res.ec != std::errc() || res.ptr != n.text.data() + n.text.size()) {
      p.fail(n, "step count must be an integer");
    }
    if (steps < 1) p.fail(n, "step count must be at least 1");
    s.steps = steps;
    spec_.sweep = s;
  }

  void detect(LineParser& p) {
    const Token& what = p.expect(Tok::ident, "a detect kind");
    DetectKind kind{};
    if (what.text == "rate") {
      const Token& d = p.expect(Tok::ident, "Da or Db");
      if (d.text == "Da") {
        kind = DetectKind::rate_da;
      } else if (d.text == "Db") {
        kind = DetectKind::rate_db;
      } else {
        p.fail(d, "unknown detector '" + d.text + "'");
      }
    } else if (what.text == "coincidence") {
      kind = DetectKind::coincidence;
    } else if (what.text == "phase") {
      kind = DetectKind::phase;
    } else {
      p.fail(what, "unknown detect kind '" + what.text + "'");
    }
    for (DetectKind k : spec_.detects) {
      if (k == kind) p.fail(what, "duplicate detect '" + std::string(keyword(kind)) + "'");
    }
    spec_.detects.push_back(kind);
  }

  void finish(int last_line) {
    if (!have_source_) throw ParseError(last_line, 1, "missing source");
    if (!have_splitter_) throw ParseError(last_line, 1, "missing beamsplitter");
    for (const VariableUse& u : uses_) {
      if (!spec_.sweep || u.name != spec_.sweep->variable) {
        throw ParseError(u.line, u.column, "undefined variable '" + u.name + "'");
      }
    }
  }

  CircuitSpec spec_;
  bool have_source_ = false;
  bool have_splitter_ = false;
  std::set<int> dephased_;
  std::vector<VariableUse> uses_;
};

std::string complex_text(cplx z) {
  const double im = z.imag();
  return format_shortest(z.real()) + (std::signbit(im) ? "-" : "+") +
         format_shortest(std::abs(im)) + "i";
}

}  // namespace

CircuitSpec parse(std::string_view text) { return Parser().run(text); }

std::string print(const CircuitSpec& spec) {
  std::string out = "source " + std::string(keyword(spec.source)) + "\n";
  const SplitterSpec& s = spec.splitter;
  out += "beamsplitter t=" + complex_text(s.t) + " r=" + complex_text(s.r);
  if (s.t_p) out += " tp=" + complex_text(*s.t_p);
  if (s.r_p) out += " rp=" + complex_text(*s.r_p);
  if (s.lossless) out += " lossless";
  if (s.symmetric) out += " symmetric";
  out += "\n";
  for (const DephaseSpec& d : spec.dephasers) {
    static constexpr std::array<const char*, 3> spins{"up", "down", "both"};
    out += std::string("dephase arm=") + (d.arm == Arm::a ? "a" : "b") +
           " spin=" + spins[static_cast<int>(d.spin)] + " phi=" + d.phi.to_string() + "\n";
  }
  if (spec.sweep) {
    out += "sweep " + spec.sweep->variable + " from " + spec.sweep->from.to_string() + " to " +
           spec.sweep->to.to_string() + " steps " + std::to_string(spec.sweep->steps) + "\n";
  }
  for (DetectKind k : spec.detects) out += "detect " + std::string(keyword(k)) + "\n";
  return out;
}

}  // namespace mzi
