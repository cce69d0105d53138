#include "medlab/experiments.hpp"

#include <algorithm>
#include <thread>

namespace medlab {

std::size_t BalanceRun::snapped() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [](const auto& r) { return r.snapped.has_value(); }));
}

std::size_t BalanceRun::counterexamples() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return r.counterexample.has_value(); }));
}

BalanceRun run_balance(const MedianAlgebra& m, const BalanceOptions& options) {
  const FloatPhi step(m);
  const unsigned bits = options.max_denominator_log2.value_or(default_max_denominator_log2(m));
  BalanceRun run;
  run.records.resize(options.starts);

  // Iteration and snapping are independent per start; each worker writes
  // only its own slots.
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < options.starts; i += stride) {
      BalanceRecord& rec = run.records[i];
      rec.start_seed = options.seed + i;
      IterationResult it = iterate_phi(step, random_start(m.size(), rec.start_seed), options.iteration);
      rec.converged = it.converged;
      rec.iterations = it.iterations;
      rec.residual = it.residual;
      rec.snapped = snap_and_verify(m, it.measure, bits);
    }
  };
  const unsigned jobs = std::max(1U, options.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j, jobs);
    for (auto& th : threads) th.join();
  }

  for (BalanceRecord& rec : run.records) {
    if (!rec.snapped) continue;
    auto it = std::find_if(run.distinct.begin(), run.distinct.end(),
                           [&](const DistinctBalanced& d) { return d.measure == *rec.snapped; });
    if (it == run.distinct.end()) {
      run.distinct.push_back({*rec.snapped, classify_balanced(m, *rec.snapped), 0});
      it = std::prev(run.distinct.end());
    }
    ++it->hits;
    if (const auto* cert = std::get_if<CubicalCertificate>(&it->classification)) {
      rec.cubical = true;
      rec.cube_dim = cert->cube.dimension();
    } else {
      rec.cubical = false;
      rec.counterexample = std::get<NotCubical>(it->classification).reason;
    }
  }
  return run;
}

}  // namespace medlab
