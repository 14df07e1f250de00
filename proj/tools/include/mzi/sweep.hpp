#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "mzi/circuit.hpp"

namespace mzi {

enum class Engine { closed_form, oracle, both };

struct SweepResult {
  std::vector<std::string> columns;  // sweep variable first
  std::vector<std::vector<double>> rows;
};

/// Evaluates every detect request at each sweep point. `both` emits the
/// closed-form value, the `_oracle` value and their `_absdiff` per column and
/// a trailing `max_absdiff`. Throws spinorlab::EngineError when the closed
/// form does not apply and std::invalid_argument for a zero-step sweep.
SweepResult run_sweep(const CircuitSpec& spec, Engine engine);

/// 17 significant digits, LF line endings. A result with no detect columns
/// is written as its header alone.
void emit_csv(const SweepResult& result, std::ostream& out);
void emit_csv(const SweepResult& result, const std::filesystem::path& destination);

std::string format_csv_number(double value);

}  // namespace mzi
