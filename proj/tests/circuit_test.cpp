#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mzi/circuit.hpp"
#include "mzi/cli.hpp"
#include "mzi/sweep.hpp"
#include "spinorlab/error.hpp"

namespace {

using mzi::CircuitSpec;
using mzi::Engine;
using mzi::Expr;
using spinorlab::ParseError;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

const fs::path kCircuits{MZI_CIRCUIT_DIR};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ParseFailure {
  int line = 0;
  int column = 0;
  std::string message;
};

ParseFailure parse_failure(std::string_view text) {
  try {
    mzi::parse(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column(), e.what()};
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return {};
}

constexpr std::string_view kMinimal =
    "source unpolarized\n"
    "beamsplitter t=0.6 r=0.8i lossless symmetric\n";

TEST(Expr, EvaluatesWithPrecedence) {
  const CircuitSpec spec = mzi::parse(std::string(kMinimal) +
                                      "dephase arm=b spin=up phi=1+2*x/4-(pi-3)\n"
                                      "sweep x from 0 to 1 steps 2\n");
  const Expr& e = spec.dephasers.at(0).phi;
  EXPECT_DOUBLE_EQ(e.evaluate("x", 2.0), 1.0 + 1.0 - (kPi - 3.0));
  EXPECT_EQ(e.variables(), std::vector<std::string>{"x"});
  EXPECT_THROW(e.evaluate("y", 0.0), std::invalid_argument);
}

TEST(Expr, PrintsMinimalParentheses) {
  const Expr x = Expr::variable("x");
  const Expr sum = Expr::binary(Expr::Kind::add, x, Expr::number(1.0));
  EXPECT_EQ(Expr::binary(Expr::Kind::multiply, sum, Expr::pi()).to_string(), "(x+1)*pi");
  EXPECT_EQ(Expr::binary(Expr::Kind::subtract, x, sum).to_string(), "x-(x+1)");
  EXPECT_EQ(Expr::binary(Expr::Kind::add, sum, x).to_string(), "x+1+x");
  EXPECT_EQ(Expr::negate(x).to_string(), "-x");
  EXPECT_EQ(Expr::number(-0.5).to_string(), "-0.5");
}

TEST(Parse, WernerFixture) {
  const CircuitSpec spec = mzi::parse(slurp(kCircuits / "werner.mzi"));
  EXPECT_EQ(spec.source, spinorlab::fock::SourceKind::unpolarized_mixture);
  EXPECT_NEAR(std::abs(spec.splitter.t), 1.3660254037844386, 1e-16);
  ASSERT_TRUE(spec.splitter.t_p && spec.splitter.r_p);
  EXPECT_FALSE(spec.splitter.lossless);
  ASSERT_EQ(spec.dephasers.size(), 2u);
  ASSERT_TRUE(spec.sweep);
  EXPECT_EQ(spec.sweep->variable, "dphi");
  EXPECT_EQ(spec.sweep->steps, 1000);
  const auto pts = spec.sweep->points();
  EXPECT_EQ(pts.front(), 0.0);
  EXPECT_EQ(pts.back(), 4.0 * kPi);
  EXPECT_EQ(spec.detects.size(), 4u);
  const auto d = spec.dephasers_at(0.25);
  EXPECT_EQ(d.phi_b_up, 0.25);
  EXPECT_EQ(d.phi_b_down, -0.25);
  EXPECT_EQ(d.phi_a_up, 0.0);
}

TEST(Parse, DefaultsAndBothSpins) {
  const CircuitSpec spec = mzi::parse(std::string(kMinimal) + "dephase arm=a spin=both phi=0.5\n");
  const auto bs = spec.splitter.build();
  EXPECT_EQ(bs.t_p, std::conj(bs.t));
  EXPECT_EQ(bs.r_p, bs.r);
  const auto d = spec.dephasers_at(0.0);
  EXPECT_EQ(d.phi_a_up, 0.5);
  EXPECT_EQ(d.phi_a_down, 0.5);
  EXPECT_FALSE(spec.sweep);
}

TEST(ParseErrors, EmptyInputMissesSource) {
  const auto f = parse_failure("");
  EXPECT_NE(f.message.find("missing source"), std::string::npos);
  EXPECT_EQ(f.column, 1);
  EXPECT_NE(parse_failure("# only a comment\n\n").message.find("missing source"),
            std::string::npos);
}

TEST(ParseErrors, MissingBeamsplitter) {
  EXPECT_NE(parse_failure("source singlet\n").message.find("missing beamsplitter"),
            std::string::npos);
}

TEST(ParseErrors, LosslessViolation) {
  const auto f = parse_failure("source unpolarized\nbeamsplitter t=0.9 r=0.9 lossless\n");
  EXPECT_EQ(f.line, 2);
  EXPECT_NE(f.message.find("lossless"), std::string::npos);
  EXPECT_NE(f.message.find("1.62"), std::string::npos);
}

TEST(ParseErrors, PositionsPointAtTheFault) {
  struct Case {
    std::string text;
    int line;
    int column;
    std::string_view needle;
  };
  const std::string base(kMinimal);
  const std::vector<Case> cases{
      {"source unpolarized\nsource singlet\n", 2, 1, "duplicate source"},
      {"sourc unpolarized\n", 1, 1, "unknown keyword"},
      {"source triplet\n", 1, 8, "unknown source kind"},
      {base + "dephase arm=c spin=up phi=0\n", 3, 13, "unknown arm"},
      {base + "dephase arm=a spin=up phi=y\n", 3, 27, "undefined variable 'y'"},
      {base + "dephase arm=a spin=up phi=1 $\n", 3, 29, "unexpected character"},
      {base + "sweep pi from 0 to 1 steps 3\n", 3, 7, "reserved"},
      {base + "sweep x from 0 to 1 steps 0\n", 3, 27, "at least 1"},
      {base + "sweep x from 0 to 1 steps 2.5\n", 3, 27, "integer"},
      {base + "detect rate Dc\n", 3, 13, "unknown detector"},
      {base + "detect phase\ndetect phase\n", 4, 8, "duplicate detect"},
      {base + "dephase arm=a spin=up phi=1\ndephase arm=a spin=both phi=2\n", 4, 25, "arm a"},
      {"source unpolarized\nbeamsplitter t=1 r=0 tp=1\n", 2, 26, "together"},
      {"source unpolarized\nbeamsplitter t=1 t=0 r=0\n", 2, 18, "duplicate parameter"},
      {"source unpolarized\nbeamsplitter t=0.6 r=0.8 rp=0.8 tp=0.5 symmetric\n", 2, 40,
       "symmetric"},
  };
  for (const auto& c : cases) {
    const auto f = parse_failure(c.text);
    EXPECT_EQ(f.line, c.line) << c.text;
    EXPECT_EQ(f.column, c.column) << c.text;
    EXPECT_NE(f.message.find(c.needle), std::string::npos) << f.message;
  }
}

TEST(Print, ParsePrintParseIsFixpoint) {
  for (const auto& entry : fs::directory_iterator(kCircuits)) {
    const CircuitSpec first = mzi::parse(slurp(entry.path()));
    const std::string text = mzi::print(first);
    const CircuitSpec second = mzi::parse(text);
    EXPECT_EQ(first, second) << entry.path();
    EXPECT_EQ(mzi::print(second), text);
  }
}

TEST(Print, ShortestNumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678, 0.7071067811865476}) {
    const std::string s = mzi::format_shortest(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

TEST(Sweep, ZeroStepsRejected) {
  CircuitSpec spec = mzi::parse(std::string(kMinimal) + "sweep x from 0 to 1 steps 3\ndetect rate Da\n");
  spec.sweep->steps = 0;
  EXPECT_THROW(spec.sweep->points(), std::invalid_argument);
  EXPECT_THROW(mzi::run_sweep(spec, Engine::oracle), std::invalid_argument);
}

TEST(Sweep, SingleStepIsStart) {
  const CircuitSpec spec =
      mzi::parse(std::string(kMinimal) + "sweep x from 2 to 5 steps 1\ndetect rate Da\n");
  EXPECT_EQ(spec.sweep->points(), std::vector<double>{2.0});
}

TEST(Sweep, EnginesAgreeOnAllFixtures) {
  for (const auto& entry : fs::directory_iterator(kCircuits)) {
    const auto result = mzi::run_sweep(mzi::parse(slurp(entry.path())), Engine::both);
    ASSERT_EQ(result.columns.back(), "max_absdiff");
    for (const auto& row : result.rows) EXPECT_LT(row.back(), 1e-12) << entry.path();
  }
}

TEST(Sweep, SingletOddProfile) {
  const auto result =
      mzi::run_sweep(mzi::parse(slurp(kCircuits / "singlet_odd.mzi")), Engine::oracle);
  ASSERT_EQ(result.columns, (std::vector<std::string>{"dphib", "coincidence"}));
  ASSERT_EQ(result.rows.size(), 181u);
  for (const auto& row : result.rows) {
    const double s = std::sin(row[0] / 2.0);
    EXPECT_NEAR(row[1], s * s, 1e-12);
  }
}

TEST(Sweep, ClosedEngineRejectsUnsupportedSource) {
  const CircuitSpec spec = mzi::parse(
      "source singlet\nbeamsplitter t=0.6 r=0.8i lossless symmetric\ndetect rate Da\n");
  EXPECT_THROW(mzi::run_sweep(spec, Engine::closed_form), spinorlab::EngineError);
  EXPECT_NO_THROW(mzi::run_sweep(spec, Engine::oracle));
}

TEST(Sweep, NoSweepAndNoDetects) {
  const auto point = mzi::run_sweep(mzi::parse(std::string(kMinimal) + "detect rate Db\n"),
                                    Engine::oracle);
  EXPECT_EQ(point.columns, (std::vector<std::string>{"point", "rate_Db"}));
  ASSERT_EQ(point.rows.size(), 1u);
  std::ostringstream out;
  mzi::emit_csv(mzi::run_sweep(mzi::parse(kMinimal), Engine::oracle), out);
  EXPECT_EQ(out.str(), "point\n");
}

TEST(Csv, LayoutAndPrecision) {
  const auto result = mzi::run_sweep(mzi::parse(slurp(kCircuits / "werner.mzi")), Engine::both);
  std::ostringstream out;
  mzi::emit_csv(result, out);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1001);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "dphi,rate_Da,rate_Da_oracle,rate_Da_absdiff,rate_Db,rate_Db_oracle,rate_Db_absdiff,"
            "coincidence,coincidence_oracle,coincidence_absdiff,visibility,visibility_oracle,"
            "visibility_absdiff,phase,phase_oracle,phase_absdiff,max_absdiff");
  for (double v : {0.1, -2.5e-17, 4.0 * kPi, 1.0 / 3.0}) {
    const std::string s = mzi::format_csv_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

TEST(Csv, RepeatedRunsAreIdentical) {
  const CircuitSpec spec = mzi::parse(slurp(kCircuits / "mixture_phase.mzi"));
  std::ostringstream a;
  std::ostringstream b;
  mzi::emit_csv(mzi::run_sweep(spec, Engine::both), a);
  mzi::emit_csv(mzi::run_sweep(spec, Engine::both), b);
  EXPECT_EQ(a.str(), b.str());
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = mzi::cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

TEST(Cli, ExitCodes) {
  const std::string werner = (kCircuits / "werner.mzi").string();
  std::string text;
  EXPECT_EQ(run_cli({"run", werner, "--engine", "both"}, &text), mzi::cli::kExitOk);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1001);
  EXPECT_EQ(run_cli({"check", werner}, &text), mzi::cli::kExitOk);
  EXPECT_EQ(mzi::parse(text), mzi::parse(slurp(werner)));
  EXPECT_EQ(run_cli({"--help"}), mzi::cli::kExitOk);
  EXPECT_EQ(run_cli({"run", werner, "--engine", "fast"}), mzi::cli::kExitInput);
  EXPECT_EQ(run_cli({"run", "/nonexistent/circuit.mzi"}), mzi::cli::kExitInput);
  EXPECT_EQ(run_cli({"frobnicate"}), mzi::cli::kExitInput);

  const fs::path dir = fs::temp_directory_path() / "mzi_cli_test";
  fs::create_directories(dir);
  const fs::path bad = dir / "bad.mzi";
  std::ofstream(bad) << "source unpolarized\nbeamsplitter t=0.9 r=0.9 lossless\n";
  EXPECT_EQ(run_cli({"run", bad.string()}), mzi::cli::kExitInput);
  const fs::path singlet = dir / "singlet_rates.mzi";
  std::ofstream(singlet) << "source singlet\nbeamsplitter t=0.6 r=0.8i lossless\ndetect rate Da\n";
  EXPECT_EQ(run_cli({"run", singlet.string(), "--engine", "closed"}), mzi::cli::kExitEngine);
  EXPECT_EQ(run_cli({"run", werner, "--output", (dir / "no/such/dir/out.csv").string()}),
            mzi::cli::kExitEngine);

  const fs::path csv = dir / "werner.csv";
  EXPECT_EQ(run_cli({"run", werner, "--engine", "both", "--output", csv.string()}),
            mzi::cli::kExitOk);
  std::string stdout_text;
  run_cli({"run", werner, "--engine", "both"}, &stdout_text);
  EXPECT_EQ(slurp(csv), stdout_text);
  fs::remove_all(dir);
}

}  // namespace
