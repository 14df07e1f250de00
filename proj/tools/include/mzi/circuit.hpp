#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinorlab/fock.hpp"

namespace mzi {

using cplx = std::complex<double>;

/// Real-valued expression over numeric literals, `pi` and at most one variable.
class Expr {
 public:
  enum class Kind { number, pi, variable, negate, add, subtract, multiply, divide };

  Expr();  // the literal 0
  static Expr number(double value);
  static Expr pi();
  static Expr variable(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(Kind op, Expr lhs, Expr rhs);

  Kind kind() const;

  /// Throws std::invalid_argument when a variable other than `name` occurs.
  double evaluate(std::string_view name = {}, double value = 0.0) const;
  std::vector<std::string> variables() const;
  std::string to_string() const;

  friend bool operator==(const Expr& x, const Expr& y);

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

enum class SpinSelector { up, down, both };
enum class DetectKind { rate_da, rate_db, coincidence, phase };

struct SplitterSpec {
  cplx t{1.0, 0.0};
  cplx r{0.0, 0.0};
  std::optional<cplx> t_p;  // defaults to conj(t)
  std::optional<cplx> r_p;  // defaults to r
  bool lossless = false;
  bool symmetric = false;

  spinorlab::fock::BeamSplitter build() const;
  friend bool operator==(const SplitterSpec&, const SplitterSpec&) = default;
};

struct DephaseSpec {
  spinorlab::fock::Arm arm;
  SpinSelector spin;
  Expr phi;
  friend bool operator==(const DephaseSpec&, const DephaseSpec&) = default;
};

struct SweepSpec {
  std::string variable;
  Expr from;
  Expr to;
  int steps = 1;

  /// Inclusive linspace of `steps` points in ascending index order.
  std::vector<double> points() const;
  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct CircuitSpec {
  spinorlab::fock::SourceKind source = spinorlab::fock::SourceKind::vacuum;
  SplitterSpec splitter;
  std::vector<DephaseSpec> dephasers;
  std::optional<SweepSpec> sweep;
  std::vector<DetectKind> detects;

  /// Dephaser phases with the sweep variable bound to `value`.
  spinorlab::fock::DephaserSettings dephasers_at(double value) const;
  friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;
};

/// Throws spinorlab::ParseError with the 1-based line and column of the fault.
CircuitSpec parse(std::string_view text);

/// Canonical text form; parse(print(s)) == s.
std::string print(const CircuitSpec& spec);

std::string_view keyword(spinorlab::fock::SourceKind kind);
std::string_view keyword(DetectKind kind);

/// Shortest decimal text that reads back to the same double.
std::string format_shortest(double value);

}  // namespace mzi
