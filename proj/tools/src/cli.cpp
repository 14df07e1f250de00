#include "mzi/cli.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "mzi/circuit.hpp"
#include "mzi/sweep.hpp"
#include "spinorlab/error.hpp"

namespace mzi::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-1/2 Mach-Zehnder circuit runner", "mzi"};
  app.require_subcommand(1);

  std::string file;
  std::string output;
  Engine engine = Engine::oracle;
  const std::map<std::string, Engine> engines{
      {"closed", Engine::closed_form}, {"oracle", Engine::oracle}, {"both", Engine::both}};

  CLI::App* run_cmd = app.add_subcommand("run", "Evaluate a circuit sweep and write CSV");
  run_cmd->add_option("file", file, "Circuit description")->required();
  run_cmd->add_option("--engine", engine, "closed, oracle or both")
      ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case));
  run_cmd->add_option("--output", output, "CSV destination (default: stdout)");

  CLI::App* check_cmd = app.add_subcommand("check", "Parse and validate a circuit");
  check_cmd->add_option("file", file, "Circuit description")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mzi: " << e.what() << '\n';
    return kExitInput;
  }

  CircuitSpec spec;
  try {
    spec = parse(read_file(file));
  } catch (const spinorlab::ParseError& e) {
    err << file << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "mzi: " << e.what() << '\n';
    return kExitInput;
  }

  if (*check_cmd) {
    out << print(spec);
    return kExitOk;
  }

  try {
    const SweepResult result = run_sweep(spec, engine);
    if (output.empty()) {
      emit_csv(result, out);
    } else {
      emit_csv(result, std::filesystem::path(output));
    }
  } catch (const std::invalid_argument& e) {
    err << "mzi: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "mzi: " << e.what() << '\n';
    return kExitEngine;
  }
  return kExitOk;
}

}  // namespace mzi::cli
