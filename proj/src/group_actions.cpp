#include "medlab/group_actions.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace medlab {

Automorphism Automorphism::identity(std::size_t n) {
  std::vector<PointId> perm(n);
  for (PointId i = 0; i < n; ++i) perm[i] = i;
  return Automorphism(std::move(perm));
}

Automorphism operator*(const Automorphism& a, const Automorphism& b) {
  std::vector<PointId> perm(b.size());
  for (PointId x = 0; x < perm.size(); ++x) perm[x] = a(b(x));
  return Automorphism(std::move(perm));
}

Automorphism Automorphism::inverse() const {
  std::vector<PointId> perm(size());
  for (PointId x = 0; x < perm.size(); ++x) perm[perm_[x]] = x;
  return Automorphism(std::move(perm));
}

std::variant<Automorphism, InvalidAutomorphism> validate_automorphism(const MedianAlgebra& m,
                                                                      std::vector<PointId> perm) {
  const std::size_t n = m.size();
  if (perm.size() != n) {
    return InvalidAutomorphism{"permutation has " + std::to_string(perm.size()) +
                                   " entries for " + std::to_string(n) + " points",
                               std::nullopt, std::nullopt};
  }
  std::vector<std::optional<PointId>> preimage(n);
  for (PointId x = 0; x < n; ++x) {
    if (perm[x] >= n) {
      return InvalidAutomorphism{"image out of range", std::nullopt, std::nullopt};
    }
    if (preimage[perm[x]]) {
      return InvalidAutomorphism{"not injective", std::make_pair(*preimage[perm[x]], x),
                                 std::nullopt};
    }
    preimage[perm[x]] = x;
  }
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a; b < n; ++b)
      for (PointId c = b; c < n; ++c)
        if (perm[m.median(a, b, c)] != m.median(perm[a], perm[b], perm[c])) {
          return InvalidAutomorphism{"does not commute with the median", std::nullopt,
                                     std::array<PointId, 3>{a, b, c}};
        }
  Automorphism candidate(std::move(perm));
  const Automorphism inv = candidate.inverse();
  if (!is_morphism(inv.perm(), m, m)) {
    return InvalidAutomorphism{"inverse does not commute with the median", std::nullopt,
                               std::nullopt};
  }
  return candidate;
}

Automorphism require_automorphism(const MedianAlgebra& m, std::vector<PointId> perm) {
  auto result = validate_automorphism(m, std::move(perm));
  if (auto* bad = std::get_if<InvalidAutomorphism>(&result)) {
    throw Error(ErrorKind::kNotAMorphism, "invalid automorphism: " + bad->reason);
  }
  return std::get<Automorphism>(std::move(result));
}

FiniteGroup group_closure(const MedianAlgebra& m, std::span<const Automorphism> generators,
                          std::size_t cap) {
  FiniteGroup g;
  g.degree_ = m.size();
  g.generators_.assign(generators.begin(), generators.end());
  for (const auto& gen : generators) {
    if (gen.size() != m.size()) {
      throw Error(ErrorKind::kOutOfRange, "generator acts on a different algebra");
    }
  }
  std::set<Automorphism> seen;
  std::deque<std::size_t> queue;
  auto admit = [&](Automorphism a) {
    if (seen.contains(a)) return;
    if (g.elements_.size() >= cap) {
      throw Error(ErrorKind::kCapExceeded,
                  "group closure exceeds " + std::to_string(cap) + " elements");
    }
    seen.insert(a);
    g.elements_.push_back(std::move(a));
    queue.push_back(g.elements_.size() - 1);
  };
  admit(Automorphism::identity(m.size()));
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& gen : generators) admit(gen * g.elements_[i]);
  }
  // A finite set closed under products of permutations is closed under
  // inverses as well.
  return g;
}

Measure pushforward(const Automorphism& g, const Measure& mu) {
  if (g.size() != mu.size()) throw Error(ErrorKind::kOutOfRange, "measure/group size mismatch");
  std::vector<Rational> w(mu.size(), Rational(0));
  for (PointId x = 0; x < mu.size(); ++x) w[g(x)] += mu[x];
  return Measure(std::move(w));
}

bool is_invariant(const FiniteGroup& g, const Measure& mu) {
  return std::all_of(g.elements().begin(), g.elements().end(),
                     [&](const Automorphism& a) { return pushforward(a, mu) == mu; });
}

bool is_invariant(const FiniteGroup& g, std::span<const PointId> points) {
  std::set<PointId> set(points.begin(), points.end());
  for (const auto& a : g.elements()) {
    for (PointId x : points) {
      if (!set.contains(a(x))) return false;
    }
  }
  return true;
}

Measure average_measure(const FiniteGroup& g, const Measure& mu) {
  if (g.degree() != mu.size()) throw Error(ErrorKind::kOutOfRange, "measure/group size mismatch");
  std::vector<Rational> w(mu.size(), Rational(0));
  const Rational scale(1, static_cast<long long>(g.order()));
  for (const auto& a : g.elements())
    for (PointId x = 0; x < mu.size(); ++x) w[a(x)] += mu[x] * scale;
  Measure avg(std::move(w));
  if (!is_invariant(g, avg)) throw Error(ErrorKind::kInternal, "group average is not invariant");
  return avg;
}

namespace {

FloatMeasure average_float(const FiniteGroup& g, const FloatMeasure& mu) {
  FloatMeasure out;
  out.weights.assign(mu.weights.size(), 0.0);
  const double scale = 1.0 / static_cast<double>(g.order());
  for (const auto& a : g.elements())
    for (PointId x = 0; x < mu.weights.size(); ++x) out.weights[a(x)] += mu.weights[x] * scale;
  return out;
}

}  // namespace

InvariantSearch invariant_balanced_search(const MedianAlgebra& m, const FiniteGroup& g,
                                          const SearchOptions& options) {
  if (g.degree() != m.size()) throw Error(ErrorKind::kOutOfRange, "group acts on another algebra");
  std::vector<FloatMeasure> starts;
  if (options.uniform_start) {
    starts.push_back(FloatMeasure::from(average_measure(g, Measure::uniform(m.size()))));
  }
  for (std::size_t i = 0; i < options.starts; ++i) {
    starts.push_back(average_float(g, random_start(m.size(), options.seed + i)));
  }

  InvariantSearch out;
  const unsigned snap_bits = default_max_denominator_log2(m);
  for (auto& start : starts) {
    ++out.attempted;
    // Phi commutes with automorphisms, so the iterates stay G-invariant up
    // to rounding; snapping and the exact checks below remove the rounding.
    const IterationResult run = iterate_phi(m, std::move(start), options.iteration);
    std::optional<Measure> snapped = snap_and_verify(m, run.measure, snap_bits);
    if (!snapped || !is_invariant(g, *snapped)) {
      ++out.unresolved;
      continue;
    }
    const bool known = std::any_of(out.findings.begin(), out.findings.end(),
                                   [&](const InvariantFinding& f) { return f.measure == *snapped; });
    if (known) continue;
    Classification c = classify_balanced(m, *snapped);
    if (auto* bad = std::get_if<NotCubical>(&c)) {
      out.counterexamples.push_back(std::move(*bad));
      continue;
    }
    out.findings.push_back({*snapped, std::get<CubicalCertificate>(std::move(c))});
  }
  return out;
}

CubeCertificate invariant_cube(const MedianAlgebra& m, const FiniteGroup& g,
                               const SearchOptions& options) {
  InvariantSearch search = invariant_balanced_search(m, g, options);
  if (!search.counterexamples.empty()) {
    throw Error(ErrorKind::kInternal,
                "balanced measure with non-cubical support: " + search.counterexamples[0].reason);
  }
  const InvariantFinding* best = nullptr;
  for (const auto& f : search.findings) {
    if (!best || f.certificate.cube.dimension() > best->certificate.cube.dimension()) best = &f;
  }
  if (!best) {
    throw Error(ErrorKind::kUnresolved, "no start produced a verified invariant balanced measure");
  }
  if (!is_invariant(g, best->certificate.cube.points)) {
    throw Error(ErrorKind::kInternal, "support of an invariant measure is not invariant");
  }
  return best->certificate.cube;
}

std::vector<Automorphism> find_automorphisms(const MedianAlgebra& m) {
  const std::size_t n = m.size();
  if (n > 12) throw Error(ErrorKind::kTooLarge, "automorphism search is capped at 12 points");
  // Triples become checkable once every point involved has an image.
  std::vector<std::vector<std::array<PointId, 4>>> checks(n);
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a; b < n; ++b)
      for (PointId c = b; c < n; ++c) {
        const PointId med = m.median(a, b, c);
        checks[std::max({a, b, c, med})].push_back({a, b, c, med});
      }

  std::vector<Automorphism> out;
  std::vector<PointId> perm(n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, PointId k) -> void {
    if (k == n) {
      out.push_back(require_automorphism(m, perm));
      return;
    }
    for (PointId image = 0; image < n; ++image) {
      if (used[image]) continue;
      perm[k] = image;
      const bool ok = std::all_of(checks[k].begin(), checks[k].end(), [&](const auto& t) {
        return perm[t[3]] == m.median(perm[t[0]], perm[t[1]], perm[t[2]]);
      });
      if (!ok) continue;
      used[image] = true;
      self(self, k + 1);
      used[image] = false;
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace medlab
