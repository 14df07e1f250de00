#include "mzi/sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "spinorlab/error.hpp"
#include "spinorlab/phase.hpp"

namespace mzi {

namespace fock = spinorlab::fock;

namespace {

// A detect request expands to one or more named scalar outputs.
struct Quantity {
  std::string name;
  bool is_phase;
};

std::vector<Quantity> quantities(DetectKind k) {
  switch (k) {
    case DetectKind::rate_da:
      return {{"rate_Da", false}};
    case DetectKind::rate_db:
      return {{"rate_Db", false}};
    case DetectKind::coincidence:
      return {{"coincidence", false}};
    case DetectKind::phase:
      return {{"visibility", false}, {"phase", true}};
  }
  return {};
}

std::vector<double> readout_values(const spinorlab::PhaseReadout& p) {
  return {p.visibility, p.phase.value_or(0.0) + 0.0};
}

class Evaluator {
 public:
  explicit Evaluator(const CircuitSpec& spec)
      : spec_(spec), splitter_(spec.splitter.build()), rho_(fock::build_source(spec.source)) {}

  std::vector<double> oracle(DetectKind k, const fock::DephaserSettings& d) const {
    switch (k) {
      case DetectKind::rate_da:
        return {fock::detector_rate(rho_, splitter_, d, fock::Detector::Da)};
      case DetectKind::rate_db:
        return {fock::detector_rate(rho_, splitter_, d, fock::Detector::Db)};
      case DetectKind::coincidence:
        return {fock::coincidence_rate_normal_ordered(rho_, splitter_, d)};
      case DetectKind::phase:
        return readout_values(fock::interference_readout(rho_, d));
    }
    return {};
  }

  std::vector<double> closed(DetectKind k, const fock::DephaserSettings& d) const {
    switch (k) {
      case DetectKind::rate_da:
        return {fock::detector_rate_closed_form(splitter_, d, spec_.source).da};
      case DetectKind::rate_db:
        return {fock::detector_rate_closed_form(splitter_, d, spec_.source).db};
      case DetectKind::coincidence:
        if (spec_.source == fock::SourceKind::singlet) {
          return {fock::coincidence_singlet_closed_form(splitter_, d)};
        }
        // At most one particle: no joint detection.
        return {0.0};
      case DetectKind::phase:
        if (spec_.source != fock::SourceKind::unpolarized_mixture) {
          throw spinorlab::EngineError("closed-form phase readout needs the unpolarized source");
        }
        return readout_values(fock::unpolarized_readout_closed_form(d));
    }
    return {};
  }

 private:
  const CircuitSpec& spec_;
  fock::BeamSplitter splitter_;
  fock::Density rho_;
};

}  // namespace

SweepResult run_sweep(const CircuitSpec& spec, Engine engine) {
  std::vector<double> points{0.0};
  std::string variable = "point";
  if (spec.sweep) {
    points = spec.sweep->points();
    variable = spec.sweep->variable;
  }

  SweepResult result;
  result.columns.push_back(variable);
  std::vector<Quantity> all;
  for (DetectKind k : spec.detects) {
    for (const Quantity& q : quantities(k)) {
      all.push_back(q);
      result.columns.push_back(q.name);
      if (engine == Engine::both) {
        result.columns.push_back(q.name + "_oracle");
        result.columns.push_back(q.name + "_absdiff");
      }
    }
  }
  if (engine == Engine::both && !all.empty()) result.columns.push_back("max_absdiff");

  const Evaluator eval(spec);
  result.rows.reserve(points.size());
  for (double x : points) {
    const fock::DephaserSettings d = spec.dephasers_at(x);
    std::vector<double> row{x};
    double worst = 0.0;
    for (DetectKind k : spec.detects) {
      if (engine == Engine::oracle) {
        for (double v : eval.oracle(k, d)) row.push_back(v);
        continue;
      }
      const std::vector<double> c = eval.closed(k, d);
      if (engine == Engine::closed_form) {
        row.insert(row.end(), c.begin(), c.end());
        continue;
      }
      const std::vector<double> o = eval.oracle(k, d);
      const std::vector<Quantity> qs = quantities(k);
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double diff = qs[i].is_phase ? std::abs(spinorlab::wrap_phase(c[i] - o[i]))
                                           : std::abs(c[i] - o[i]);
        worst = std::max(worst, diff);
        row.insert(row.end(), {c[i], o[i], diff});
      }
    }
    if (engine == Engine::both && !all.empty()) row.push_back(worst);
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::string format_csv_number(double value) {
  std::array<char, 48> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) out << ',';
    out << result.columns[i];
  }
  out << '\n';
  if (result.columns.size() <= 1) return;
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_csv_number(row[i]);
    }
    out << '\n';
  }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + destination.string() + " for writing");
  emit_csv(result, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + destination.string());
}

}  // namespace mzi
