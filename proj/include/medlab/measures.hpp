#pragma once

// Probability measures on finite median algebras and the self-median
// operator Phi(mu) = m_*(mu x mu x mu).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "medlab/algebra.hpp"
#include "medlab/rational.hpp"
#include "medlab/walls.hpp"

namespace medlab {

/// Exact probability weights indexed by PointId.
class Measure {
 public:
  /// Throws kMalformedInput on a negative weight or a total other than 1.
  explicit Measure(std::vector<Rational> weights);

  static Measure dirac(std::size_t n, PointId x);
  static Measure uniform(std::size_t n);
  static Measure uniform_on(std::size_t n, std::span<const PointId> points);

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](PointId x) const { return weights_[x]; }
  std::span<const Rational> weights() const { return weights_; }

  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  std::vector<Rational> weights_;
};

/// Floating-point iteration workspace. Entries are clamped at -1e-15 and the
/// total is renormalized to 1 after every step.
struct FloatMeasure {
  std::vector<double> weights;

  static FloatMeasure from(const Measure& mu);
};

Measure phi(const MedianAlgebra& m, const Measure& mu);
FloatMeasure phi(const MedianAlgebra& m, const FloatMeasure& mu);

/// Phi on floats with the medians of all sorted triples cached up front.
/// The cache is built for algebras of at most 512 points; larger algebras
/// recompute medians on every application.
class FloatPhi {
 public:
  explicit FloatPhi(const MedianAlgebra& m);
  FloatMeasure operator()(const FloatMeasure& mu) const;
  const MedianAlgebra& algebra() const { return *algebra_; }

 private:
  const MedianAlgebra* algebra_;
  std::vector<std::uint16_t> table_;
};

bool is_balanced(const MedianAlgebra& m, const Measure& mu);

/// {x : mu(x) > 0}
Subset support(const Measure& mu);

Measure pushforward(const Morphism& f, const Measure& mu);

Rational halfspace_mass(const Measure& mu, const Subset& h);

/// Mass 1/2^k on each point of the certified k-cube, zero elsewhere.
Measure uniform_on_cube(const MedianAlgebra& m, const CubeCertificate& cert);

struct IterationOptions {
  double tol = 1e-12;
  std::size_t max_iter = 10'000;
};

struct IterationResult {
  FloatMeasure measure;
  std::size_t iterations = 0;
  double residual = 0.0;  // max-norm of Phi(measure) - measure
  bool converged = false;
};

/// mu <- Phi(mu) until a step moves less than tol in max-norm or max_iter
/// steps have run. Non-convergence is reported, not thrown.
IterationResult iterate_phi(const MedianAlgebra& m, FloatMeasure start,
                            const IterationOptions& options = {});
IterationResult iterate_phi(const FloatPhi& step, FloatMeasure start,
                            const IterationOptions& options = {});

inline unsigned default_max_denominator_log2(const MedianAlgebra& m) {
  return m.ambient_dim() + 2;
}

/// Rounds every weight to the nearest multiple of 2^-max_denominator_log2,
/// renormalizes exactly, and returns the result only if it is exactly balanced.
std::optional<Measure> snap_and_verify(const MedianAlgebra& m, const FloatMeasure& mu,
                                       unsigned max_denominator_log2);

struct CubicalCertificate {
  CubeCertificate cube;  // certificate for the support
  bool uniform = false;
  Measure measure;
};

struct NotCubical {
  std::string reason;
  Subset support;
  std::optional<NotCube> cube_failure;
};

using Classification = std::variant<CubicalCertificate, NotCubical>;

/// Every balanced measure is uniform on a cube. A NotCubical result is a
/// counterexample to that and callers must surface it. Throws
/// kNotBalancedInput unless mu is exactly balanced.
Classification classify_balanced(const MedianAlgebra& m, const Measure& mu);

/// Flat Dirichlet(1,...,1) sample from Prng(seed): normalized -log(u) draws.
FloatMeasure random_start(std::size_t n, std::uint64_t seed);

}  // namespace medlab
