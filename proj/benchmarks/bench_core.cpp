#include <benchmark/benchmark.h>

#include "eprlattice/band_structure.hpp"
#include "eprlattice/distributions.hpp"
#include "eprlattice/lanczos.hpp"
#include "eprlattice/two_atom.hpp"

using namespace eprl;

static void BM_BlochSpectrum(benchmark::State& st) {
  BandOptions opts;
  opts.n_k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(bloch_spectrum(3.93, opts));
}
BENCHMARK(BM_BlochSpectrum)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_TwoAtomDense(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const TwoAtomHamiltonian h(n, -0.0355, -1.0, Boundary::periodic, ExternalPotential::none());
  for (auto _ : st) benchmark::DoNotOptimize(diagonalize(h));
}
BENCHMARK(BM_TwoAtomDense)->Arg(10)->Arg(25)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_TwoAtomLanczos(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  TwoAtomOptions opts;
  opts.sparse = true;
  opts.dense_limit = 0;
  const TwoAtomHamiltonian h(n, -0.0355, -1.0, Boundary::periodic, ExternalPotential::none(), opts);
  for (auto _ : st) benchmark::DoNotOptimize(diagonalize(h));
}
BENCHMARK(BM_TwoAtomLanczos)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

namespace {

struct JointFixture {
  MixedState state;
  WannierBasis wannier;
  JointOptions options;

  explicit JointFixture(int ppc) {
    const TwoAtomHamiltonian h(25, -0.0355, -1.0, Boundary::periodic, ExternalPotential::none());
    state = MixedState::pure(diatom_ground_state(diagonalize(h)), Boundary::periodic);
    wannier = eprl::wannier(bloch_spectrum(13.4));
    options.points_per_cell = ppc;
    options.momentum_points_per_zone = 100;
  }
};

}  // namespace

static void BM_PositionJoint(benchmark::State& st) {
  const JointFixture f(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(position_joint(f.state, f.wannier, f.options));
}
BENCHMARK(BM_PositionJoint)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_MomentumJoint(benchmark::State& st) {
  const JointFixture f(16);
  for (auto _ : st) benchmark::DoNotOptimize(momentum_joint(f.state, f.wannier, f.options));
}
BENCHMARK(BM_MomentumJoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
