#include "medlab/measures.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "medlab/rng.hpp"

namespace medlab {

namespace {

constexpr std::size_t kTableCap = 512;

// Number of ordered triples sharing the sorted triple a <= b <= c.
inline unsigned multiplicity(std::size_t a, std::size_t b, std::size_t c) {
  if (a == b && b == c) return 1;
  if (a == b || b == c) return 3;
  return 6;
}

}  // namespace

// ---------------------------------------------------------------------------
// Measure

Measure::Measure(std::vector<Rational> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorKind::kMalformedInput, "measure on no points");
  Rational total = 0;
  for (const auto& w : weights_) {
    if (w < 0) throw Error(ErrorKind::kMalformedInput, "negative weight " + to_string(w));
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::kMalformedInput, "weights sum to " + to_string(total));
}

Measure Measure::dirac(std::size_t n, PointId x) {
  if (x >= n) throw Error(ErrorKind::kOutOfRange, "dirac point out of range");
  std::vector<Rational> w(n, Rational(0));
  w[x] = 1;
  return Measure(std::move(w));
}

Measure Measure::uniform(std::size_t n) {
  return Measure(std::vector<Rational>(n, Rational(1, static_cast<long long>(n))));
}

Measure Measure::uniform_on(std::size_t n, std::span<const PointId> points) {
  if (points.empty()) throw Error(ErrorKind::kEmptySet, "uniform measure on no points");
  std::vector<Rational> w(n, Rational(0));
  const Rational each(1, static_cast<long long>(points.size()));
  for (PointId x : points) {
    if (x >= n) throw Error(ErrorKind::kOutOfRange, "point out of range");
    w[x] = each;
  }
  return Measure(std::move(w));
}

FloatMeasure FloatMeasure::from(const Measure& mu) {
  FloatMeasure out;
  out.weights.reserve(mu.size());
  for (const auto& w : mu.weights()) out.weights.push_back(static_cast<double>(w));
  return out;
}

// ---------------------------------------------------------------------------
// Phi

Measure phi(const MedianAlgebra& m, const Measure& mu) {
  if (mu.size() != m.size()) throw Error(ErrorKind::kOutOfRange, "measure/algebra size mismatch");
  // Work over a common denominator so the triple sum is integer arithmetic;
  // only triples inside the support contribute.
  const std::vector<PointId> supp = members(support(mu));
  BigInt denom = 1;
  for (PointId x : supp) {
    denom = boost::multiprecision::lcm(denom, boost::multiprecision::denominator(mu[x]));
  }
  std::vector<BigInt> num;
  num.reserve(supp.size());
  for (PointId x : supp) {
    num.push_back(boost::multiprecision::numerator(mu[x]) *
                  (denom / boost::multiprecision::denominator(mu[x])));
  }
  std::vector<BigInt> acc(m.size(), BigInt(0));
  const std::size_t s = supp.size();
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a; b < s; ++b) {
      const BigInt ab = num[a] * num[b];
      for (std::size_t c = b; c < s; ++c) {
        const PointId y = m.median(supp[a], supp[b], supp[c]);
        acc[y] += ab * num[c] * multiplicity(a, b, c);
      }
    }
  }
  const BigInt cube = denom * denom * denom;
  std::vector<Rational> out;
  out.reserve(m.size());
  for (auto& v : acc) out.emplace_back(v, cube);
  return Measure(std::move(out));
}

FloatPhi::FloatPhi(const MedianAlgebra& m) : algebra_(&m) {
  const std::size_t n = m.size();
  if (n > kTableCap) return;
  table_.reserve(n * (n + 1) * (n + 2) / 6);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        table_.push_back(static_cast<std::uint16_t>(
            m.median(static_cast<PointId>(a), static_cast<PointId>(b), static_cast<PointId>(c))));
}

FloatMeasure FloatPhi::operator()(const FloatMeasure& mu) const {
  const MedianAlgebra& m = *algebra_;
  const std::size_t n = m.size();
  const auto& w = mu.weights;
  std::vector<double> out(n, 0.0);
  std::size_t k = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const double ab = w[a] * w[b];
      for (std::size_t c = b; c < n; ++c, ++k) {
        const std::size_t y =
            table_.empty() ? m.median(static_cast<PointId>(a), static_cast<PointId>(b),
                                      static_cast<PointId>(c))
                           : table_[k];
        out[y] += ab * w[c] * multiplicity(a, b, c);
      }
    }
  }
  return {std::move(out)};
}

FloatMeasure phi(const MedianAlgebra& m, const FloatMeasure& mu) {
  if (mu.weights.size() != m.size()) {
    throw Error(ErrorKind::kOutOfRange, "measure/algebra size mismatch");
  }
  return FloatPhi(m)(mu);
}

bool is_balanced(const MedianAlgebra& m, const Measure& mu) { return phi(m, mu) == mu; }

Subset support(const Measure& mu) {
  Subset s(mu.size());
  for (PointId x = 0; x < mu.size(); ++x) s[x] = mu[x] > 0;
  return s;
}

Measure pushforward(const Morphism& f, const Measure& mu) {
  if (mu.size() != f.source().size()) {
    throw Error(ErrorKind::kOutOfRange, "measure does not live on the morphism's source");
  }
  std::vector<Rational> out(f.target().size(), Rational(0));
  for (PointId x = 0; x < mu.size(); ++x) out[f(x)] += mu[x];
  return Measure(std::move(out));
}

Rational halfspace_mass(const Measure& mu, const Subset& h) {
  if (h.size() != mu.size()) throw Error(ErrorKind::kOutOfRange, "subset/measure size mismatch");
  Rational total = 0;
  for (PointId x : members(h)) total += mu[x];
  return total;
}

Measure uniform_on_cube(const MedianAlgebra& m, const CubeCertificate& cert) {
  return Measure::uniform_on(m.size(), cert.points);
}

// ---------------------------------------------------------------------------
// Iteration and snapping

namespace {

void clamp_and_normalize(std::vector<double>& w) {
  double total = 0.0;
  for (double& x : w) {
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (total > 0.0) {
    for (double& x : w) x /= total;
  }
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

IterationResult iterate_phi(const MedianAlgebra& m, FloatMeasure start,
                            const IterationOptions& options) {
  return iterate_phi(FloatPhi(m), std::move(start), options);
}

IterationResult iterate_phi(const FloatPhi& step, FloatMeasure start,
                            const IterationOptions& options) {
  const MedianAlgebra& m = step.algebra();
  if (!(options.tol > 0.0) || options.max_iter == 0) {
    throw Error(ErrorKind::kOutOfRange, "iterate_phi needs tol > 0 and max_iter >= 1");
  }
  if (start.weights.size() != m.size()) {
    throw Error(ErrorKind::kOutOfRange, "measure/algebra size mismatch");
  }
  IterationResult result;
  result.measure = std::move(start);
  clamp_and_normalize(result.measure.weights);
  while (result.iterations < options.max_iter) {
    FloatMeasure next = step(result.measure);
    clamp_and_normalize(next.weights);
    const double moved = max_abs_diff(next.weights, result.measure.weights);
    result.measure = std::move(next);
    ++result.iterations;
    if (moved < options.tol) {
      result.converged = true;
      break;
    }
  }
  FloatMeasure image = step(result.measure);
  clamp_and_normalize(image.weights);
  result.residual = max_abs_diff(image.weights, result.measure.weights);
  return result;
}

std::optional<Measure> snap_and_verify(const MedianAlgebra& m, const FloatMeasure& mu,
                                       unsigned max_denominator_log2) {
  if (mu.weights.size() != m.size()) {
    throw Error(ErrorKind::kOutOfRange, "measure/algebra size mismatch");
  }
  if (max_denominator_log2 > 62) {
    throw Error(ErrorKind::kOutOfRange, "max_denominator_log2 must be <= 62");
  }
  const double scale = std::ldexp(1.0, static_cast<int>(max_denominator_log2));
  const BigInt denom = BigInt(1) << max_denominator_log2;
  std::vector<Rational> snapped;
  snapped.reserve(mu.weights.size());
  Rational total = 0;
  for (double w : mu.weights) {
    if (!std::isfinite(w)) return std::nullopt;
    const double k = std::max(0.0, std::nearbyint(w * scale));
    snapped.emplace_back(BigInt(static_cast<long long>(k)), denom);
    total += snapped.back();
  }
  if (total == 0) return std::nullopt;
  for (auto& w : snapped) w /= total;
  Measure candidate(std::move(snapped));
  if (!is_balanced(m, candidate)) return std::nullopt;
  return candidate;
}

Classification classify_balanced(const MedianAlgebra& m, const Measure& mu) {
  if (!is_balanced(m, mu)) {
    throw Error(ErrorKind::kNotBalancedInput, "classify_balanced needs a balanced measure");
  }
  Subset supp = support(mu);
  if (!is_median_closed(m, supp)) {
    return NotCubical{"support is not median-closed", std::move(supp), std::nullopt};
  }
  CubeDetection detection = detect_cube(m, supp);
  if (auto* failure = std::get_if<NotCube>(&detection)) {
    return NotCubical{"support is not a cube: " + failure->describe(), std::move(supp),
                      *failure};
  }
  auto& cert = std::get<CubeCertificate>(detection);
  const Rational each = pow2(-static_cast<int>(cert.dimension()));
  for (PointId x : cert.points) {
    if (mu[x] != each) {
      return NotCubical{"measure is not uniform on its support cube", std::move(supp),
                        std::nullopt};
    }
  }
  return CubicalCertificate{std::move(cert), true, mu};
}

FloatMeasure random_start(std::size_t n, std::uint64_t seed) {
  Prng rng(seed);
  FloatMeasure out;
  out.weights.resize(n);
  double total = 0.0;
  for (double& w : out.weights) {
    w = -std::log1p(-rng.uniform01());
    total += w;
  }
  if (total == 0.0) {
    out.weights.assign(n, 1.0 / static_cast<double>(n));
  } else {
    for (double& w : out.weights) w /= total;
  }
  return out;
}

}  // namespace medlab
