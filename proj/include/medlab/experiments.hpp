#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medlab/measures.hpp"

namespace medlab {

struct BalanceOptions {
  std::size_t starts = 10;
  std::uint64_t seed = 0;  // start i draws from Prng(seed + i)
  IterationOptions iteration;
  unsigned jobs = 1;
  std::optional<unsigned> max_denominator_log2;  // default: ambient_dim + 2
};

struct BalanceRecord {
  std::uint64_t start_seed = 0;
  bool converged = false;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::optional<Measure> snapped;
  std::optional<bool> cubical;        // set when snapped
  std::optional<std::size_t> cube_dim;
  std::optional<std::string> counterexample;
};

struct DistinctBalanced {
  Measure measure;
  Classification classification;
  std::size_t hits = 0;
};

struct BalanceRun {
  std::vector<BalanceRecord> records;   // in start order, independent of jobs
  std::vector<DistinctBalanced> distinct;  // first-seen order

  std::size_t snapped() const;
  std::size_t counterexamples() const;
};

/// Random starts -> Phi iteration -> dyadic snap -> exact classification.
BalanceRun run_balance(const MedianAlgebra& m, const BalanceOptions& options);

}  // namespace medlab
