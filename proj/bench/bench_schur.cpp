// Schur-complement assembly: OpenMP kernel vs serial vs the dense reference,
// plus end-to-end witness solves with the parallel switch on and off.
#include <random>

#include <benchmark/benchmark.h>

#include "cvgme/reference_data.hpp"
#include "cvgme/schur.hpp"
#include "cvgme/witness.hpp"

using namespace cvgme;
using namespace cvgme::sdp::detail;

namespace {

struct Fixture {
  std::vector<BlockRows> blocks;
  std::vector<Matrix> r, w;
  int m = 0;
};

// Sparse rows, a few dense ones, like the witness lowering.
Fixture make(int dim, int m) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  Fixture f;
  f.m = m;
  for (int b = 0; b < 3; ++b) {
    BlockRows br;
    br.dim = dim;
    for (int i = 0; i < m; ++i) {
      ConstraintBlock cb;
      cb.constraint = i;
      const int nnz = i % 7 == 0 ? dim * dim / 2 : 2;
      for (int k = 0; k < nnz; ++k) {
        const int a = rng() % dim, c = rng() % dim;
        cb.entries.push_back({std::min(a, c), std::max(a, c), u(rng)});
      }
      br.rows.push_back(cb);
    }
    const Matrix g = Matrix::NullaryExpr(dim, dim, [&](Eigen::Index, Eigen::Index) { return u(rng); });
    f.blocks.push_back(br);
    f.r.push_back(g);
    f.w.push_back(g * g.transpose());
  }
  return f;
}

void BM_SchurParallel(benchmark::State& st) {
  const Fixture f = make(st.range(0), st.range(1));
  for (auto _ : st)
    benchmark::DoNotOptimize(assemble_schur(f.blocks, scale_constraints(f.blocks, f.r, true), f.m, true));
  st.counters["threads"] = kernel_threads();
}

void BM_SchurSerial(benchmark::State& st) {
  const Fixture f = make(st.range(0), st.range(1));
  for (auto _ : st)
    benchmark::DoNotOptimize(assemble_schur(f.blocks, scale_constraints(f.blocks, f.r, false), f.m, false));
}

void BM_SchurReference(benchmark::State& st) {
  const Fixture f = make(st.range(0), st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(assemble_schur_reference(f.blocks, f.w, f.m));
}

void BM_GmeWitness(benchmark::State& st) {
  const CovarianceMatrix g(reference::gamma4_linear());
  const TreeSpec tree = tree_preset("chain4");
  WitnessOptions o;
  o.sdp.parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(gme_witness(g, tree, o).value);
}

}  // namespace

BENCHMARK(BM_SchurParallel)->Args({16, 200})->Args({32, 600})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SchurSerial)->Args({16, 200})->Args({32, 600})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SchurReference)->Args({16, 200})->Args({32, 600})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GmeWitness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
