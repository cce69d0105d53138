#include <gtest/gtest.h>

#include "medlab/error.hpp"
#include "medlab/measures.hpp"
#include "test_support.hpp"

using namespace medlab;
using namespace medlab::testing;

namespace {

Measure on(const MedianAlgebra& m, std::initializer_list<std::pair<const char*, Rational>> weights) {
  std::vector<Rational> w(m.size(), Rational(0));
  for (const auto& [p, v] : weights) w[P(m, p)] = v;
  return Measure(std::move(w));
}

Measure diagonal_pair(const MedianAlgebra& sq) {
  return on(sq, {{"01", Rational(1, 2)}, {"10", Rational(1, 2)}});
}

/// Exact random measure with small denominators, supported on a random subset.
Measure random_measure(const MedianAlgebra& m, Prng& rng) {
  std::vector<Rational> w(m.size(), Rational(0));
  long long total = 0;
  std::vector<long long> raw(m.size(), 0);
  for (auto& r : raw) {
    r = rng.below(3) == 0 ? 0 : static_cast<long long>(rng.below(5));
    total += r;
  }
  if (total == 0) {
    raw[0] = 1;
    total = 1;
  }
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = Rational(raw[i], total);
  return Measure(std::move(w));
}

}  // namespace

TEST(MeasureType, Validation) {
  EXPECT_THROW(Measure({Rational(1, 2), Rational(1, 3)}), Error);
  EXPECT_THROW(Measure({Rational(3, 2), Rational(-1, 2)}), Error);
  EXPECT_THROW(Measure(std::vector<Rational>{}), Error);
  EXPECT_NO_THROW(Measure({Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(Measure::uniform(4)[3], Rational(1, 4));
  EXPECT_EQ(Measure::dirac(3, 1)[1], Rational(1));
}

TEST(Phi, TwoPointExample) {
  const auto m = hypercube(1);
  const Measure mu({Rational(1, 4), Rational(3, 4)});
  EXPECT_EQ(phi(m, mu), Measure({Rational(5, 32), Rational(27, 32)}));
}

TEST(Phi, DiracAndUniformAreFixed) {
  for (unsigned n = 0; n <= 4; ++n) {
    const auto m = hypercube(n);
    for (PointId x = 0; x < m.size(); ++x) EXPECT_EQ(phi(m, Measure::dirac(m.size(), x)), Measure::dirac(m.size(), x));
    EXPECT_EQ(phi(m, Measure::uniform(m.size())), Measure::uniform(m.size()));
  }
}

TEST(Phi, FloatMatchesExact) {
  Prng rng(2);
  for (const auto& m : small_corpus()) {
    const Measure mu = random_measure(m, rng);
    const FloatMeasure exact = FloatMeasure::from(phi(m, mu));
    const FloatMeasure approx = phi(m, FloatMeasure::from(mu));
    for (std::size_t i = 0; i < m.size(); ++i) ASSERT_NEAR(exact.weights[i], approx.weights[i], 1e-12);
  }
}

TEST(Balanced, Examples) {
  const auto two = hypercube(1);
  EXPECT_TRUE(is_balanced(two, Measure({Rational(1, 2), Rational(1, 2)})));
  EXPECT_FALSE(is_balanced(two, Measure({Rational(1, 4), Rational(3, 4)})));
  const auto sq = hypercube(2);
  EXPECT_TRUE(is_balanced(sq, diagonal_pair(sq)));
}

TEST(Support, Examples) {
  const auto c3 = hypercube(3);
  EXPECT_EQ(support(Measure::dirac(8, 5)), c3.singleton(5));
  EXPECT_EQ(support(Measure::uniform(8)), c3.full_subset());
  const auto sq = hypercube(2);
  const Subset s = support(diagonal_pair(sq));
  EXPECT_EQ(s, S(sq, {"01", "10"}));
  EXPECT_TRUE(is_median_closed(sq, s));
}

TEST(Pushforward, Examples) {
  const auto sq = hypercube(2);
  const auto two = hypercube(1);
  const Morphism proj(sq, two, {0, 1, 0, 1});
  EXPECT_EQ(pushforward(proj, Measure::uniform(4)), Measure::uniform(2));
  const Measure mu = diagonal_pair(sq);
  EXPECT_EQ(pushforward(Morphism::identity(sq), mu), mu);
}

// Pushing forward along a median morphism commutes with Phi.
TEST(Pushforward, CommutesWithPhi) {
  Prng rng(17);
  const auto corpus = small_corpus();
  for (int trial = 0; trial < 300; ++trial) {
    const auto& m = corpus[rng.below(corpus.size())];
    const Measure mu = random_measure(m, rng);
    std::vector<Morphism> maps;
    // Gate projection onto a random convex set.
    const Subset c = convex_hull(m, random_subset(m, rng, 3));
    std::vector<PointId> proj(m.size());
    for (PointId x = 0; x < m.size(); ++x) proj[x] = gate(m, c, x);
    maps.emplace_back(m, m, proj);
    // Reduction and a wall embedding on a random set of walls.
    const Reduction red = reduce(m);
    maps.emplace_back(m, red.algebra, red.point_map);
    const auto walls = enumerate_walls(red.algebra);
    std::vector<Wall> some;
    for (const auto& w : walls)
      if (rng.below(2) == 0) some.push_back(w);
    const Morphism emb = wall_embedding(red.algebra, some);
    std::vector<PointId> composed(m.size());
    for (PointId x = 0; x < m.size(); ++x) composed[x] = emb(red.point_map[x]);
    maps.emplace_back(m, emb.target(), composed);
    for (const auto& f : maps) ASSERT_EQ(pushforward(f, phi(m, mu)), phi(f.target(), pushforward(f, mu)));
  }
}

TEST(HalfspaceMass, Examples) {
  const auto c3 = hypercube(3);
  for (const auto& w : enumerate_walls(c3)) EXPECT_EQ(halfspace_mass(Measure::uniform(8), w.positive), Rational(1, 2));
  EXPECT_EQ(halfspace_mass(Measure::dirac(8, P(c3, "000")), S(c3, {"000", "001", "010", "011"})), Rational(1));
  const auto sq = hypercube(2);
  EXPECT_EQ(halfspace_mass(diagonal_pair(sq), S(sq, {"00", "01"})), Rational(1, 2));
}

TEST(UniformOnCube, Examples) {
  const auto sq = hypercube(2);
  const auto full = std::get<CubeCertificate>(detect_cube(sq));
  EXPECT_EQ(uniform_on_cube(sq, full), Measure::uniform(4));
  const auto diag = std::get<CubeCertificate>(detect_cube(sq, S(sq, {"01", "10"})));
  EXPECT_EQ(uniform_on_cube(sq, diag), diagonal_pair(sq));
  const auto point = std::get<CubeCertificate>(detect_cube(sq, sq.singleton(2)));
  EXPECT_EQ(uniform_on_cube(sq, point), Measure::dirac(4, 2));
}

// Cubical measures are balanced; on every half-space they have mass 0, 1/2
// or 1; fully supported ones split every wall evenly and force all walls to
// cross.
TEST(UniformOnCube, BalancedWithHalfMasses) {
  Prng rng(23);
  const auto corpus = small_corpus();
  int full_support = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto& m0 = corpus[rng.below(corpus.size())];
    const MedianAlgebra m = reduce(m0).algebra;
    const SubalgebraView view = subalgebra_closure(m, random_subset(m, rng, 3));
    const auto detection = detect_cube(m, view.members);
    if (!std::holds_alternative<CubeCertificate>(detection)) continue;
    const Measure mu = uniform_on_cube(m, std::get<CubeCertificate>(detection));
    ASSERT_TRUE(is_balanced(m, mu));
    const auto walls = enumerate_walls(m);
    for (const auto& w : walls) {
      const Rational mass = halfspace_mass(mu, w.positive);
      ASSERT_TRUE(mass == 0 || mass == Rational(1, 2) || mass == 1);
    }
    if (support(mu) == m.full_subset()) {
      ++full_support;
      for (const auto& w : walls) ASSERT_EQ(halfspace_mass(mu, w.positive), Rational(1, 2));
      for (std::size_t i = 0; i < walls.size(); ++i)
        for (std::size_t j = i + 1; j < walls.size(); ++j) ASSERT_TRUE(is_transverse(walls[i], walls[j]));
    }
  }
  EXPECT_GT(full_support, 0);
}

TEST(Iterate, TwoPointExamples) {
  const auto two = hypercube(1);
  const IterationResult r = iterate_phi(two, FloatMeasure{{0.3, 0.7}});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.measure.weights[0], 0.0, 1e-12);
  EXPECT_NEAR(r.measure.weights[1], 1.0, 1e-12);
  EXPECT_LT(r.residual, 1e-12);

  const IterationResult half = iterate_phi(two, FloatMeasure{{0.5, 0.5}});
  EXPECT_TRUE(half.converged);
  EXPECT_EQ(half.iterations, 1U);
  EXPECT_EQ(half.measure.weights[0], 0.5);
}

TEST(Iterate, UniformOnCubeIsFixed) {
  const auto c3 = hypercube(3);
  const IterationResult r = iterate_phi(c3, FloatMeasure::from(Measure::uniform(8)));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 1U);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(Iterate, BadOptions) {
  const auto two = hypercube(1);
  EXPECT_THROW(iterate_phi(two, FloatMeasure{{0.5, 0.5}}, {0.0, 10}), Error);
  EXPECT_THROW(iterate_phi(two, FloatMeasure{{0.5, 0.5}}, {1e-12, 0}), Error);
  EXPECT_THROW(iterate_phi(two, FloatMeasure{{1.0}}), Error);
}

TEST(Iterate, NonConvergenceIsReported) {
  const auto two = hypercube(1);
  const IterationResult r = iterate_phi(two, FloatMeasure{{0.49, 0.51}}, {1e-12, 2});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2U);
  EXPECT_GT(r.residual, 0.0);
}

TEST(Snap, Examples) {
  const auto two = hypercube(1);
  const auto snapped = snap_and_verify(two, FloatMeasure{{0.4999999999, 0.5000000001}}, 1);
  ASSERT_TRUE(snapped.has_value());
  EXPECT_EQ(*snapped, Measure::uniform(2));
  EXPECT_FALSE(snap_and_verify(two, FloatMeasure{{0.25, 0.75}}, 3).has_value());

  const auto c3 = hypercube(3);
  FloatMeasure near;
  for (int i = 0; i < 8; ++i) near.weights.push_back(0.125 + (i % 2 == 0 ? 1e-9 : -1e-9));
  const auto cube = snap_and_verify(c3, near, default_max_denominator_log2(c3));
  ASSERT_TRUE(cube.has_value());
  EXPECT_EQ(*cube, Measure::uniform(8));
  EXPECT_THROW(snap_and_verify(c3, near, 63), Error);
}

TEST(Classify, Examples) {
  const auto c3 = hypercube(3);
  const auto cube = classify_balanced(c3, Measure::uniform(8));
  ASSERT_TRUE(std::holds_alternative<CubicalCertificate>(cube));
  EXPECT_EQ(std::get<CubicalCertificate>(cube).cube.dimension(), 3U);
  EXPECT_TRUE(std::get<CubicalCertificate>(cube).uniform);

  const auto dirac = classify_balanced(c3, Measure::dirac(8, 6));
  ASSERT_TRUE(std::holds_alternative<CubicalCertificate>(dirac));
  EXPECT_EQ(std::get<CubicalCertificate>(dirac).cube.dimension(), 0U);

  const auto sq = hypercube(2);
  const auto diag = classify_balanced(sq, diagonal_pair(sq));
  ASSERT_TRUE(std::holds_alternative<CubicalCertificate>(diag));
  const auto& cert = std::get<CubicalCertificate>(diag);
  EXPECT_EQ(cert.cube.dimension(), 1U);
  EXPECT_EQ(cert.cube.points, (std::vector<PointId>{P(sq, "01"), P(sq, "10")}));
}

TEST(Classify, RejectsUnbalanced) {
  const auto two = hypercube(1);
  try {
    classify_balanced(two, Measure({Rational(1, 4), Rational(3, 4)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotBalancedInput);
  }
}

TEST(RandomStart, DeterministicProbabilityVector) {
  const FloatMeasure a = random_start(10, 7);
  const FloatMeasure b = random_start(10, 7);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_NE(a.weights, random_start(10, 8).weights);
  double total = 0.0;
  for (double w : a.weights) {
    EXPECT_GT(w, 0.0);
    total += w;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}
