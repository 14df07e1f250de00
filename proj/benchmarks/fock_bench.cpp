#include <benchmark/benchmark.h>

#include "spinorlab/fock.hpp"

namespace {

namespace fock = spinorlab::fock;

void BM_DenseDetectorRate(benchmark::State& state) {
  const auto rho = fock::build_source(fock::SourceKind::unpolarized_mixture);
  const auto bs = fock::werner_splitter(1.0, 0.5);
  double dphi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fock::detector_rate(rho, bs, fock::werner_dephasers(0.3, dphi), fock::Detector::Da));
    dphi += 1e-3;
  }
}
BENCHMARK(BM_DenseDetectorRate);

void BM_ClosedFormDetectorRate(benchmark::State& state) {
  const auto bs = fock::werner_splitter(1.0, 0.5);
  double dphi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fock::detector_rate_closed_form(
        bs, fock::werner_dephasers(0.3, dphi), fock::SourceKind::unpolarized_mixture));
    dphi += 1e-3;
  }
}
BENCHMARK(BM_ClosedFormDetectorRate);

void BM_SingletCoincidence(benchmark::State& state) {
  const auto rho = fock::build_source(fock::SourceKind::singlet);
  const auto bs = fock::BeamSplitter::symmetric(0.6, std::complex<double>(0.0, 0.8), true);
  const fock::DephaserSettings deph{0.4, 0.0, 1.1, -0.2};
  for (auto _ : state) benchmark::DoNotOptimize(fock::coincidence_rate(rho, bs, deph));
}
BENCHMARK(BM_SingletCoincidence);

}  // namespace
