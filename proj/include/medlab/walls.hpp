#pragma once

// Half-spaces, walls, separation and cube detection.
//
// In a finite median algebra every half-space is clopen and admissible, so
// walls are plain bipartitions into two non-empty convex sets. In a reduced
// embedding they are exactly the coordinate partitions.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "medlab/algebra.hpp"

namespace medlab {

/// An unordered pair of complementary half-spaces, stored by its canonical
/// side: the side that does NOT contain PointId 0.
struct Wall {
  std::size_t id = 0;
  Subset positive;

  Subset negative() const { return ~positive; }
  friend bool operator==(const Wall&, const Wall&) = default;
};

/// A half-space tagged with the wall it belongs to.
struct HalfSpace {
  std::size_t wall_id = 0;
  bool canonical = false;  // members == walls[wall_id].positive
  Subset members;
};

/// One wall per coordinate. Throws kNotReduced unless m.is_reduced().
std::vector<Wall> enumerate_walls(const MedianAlgebra& m);

/// Every half-space of m by exhaustive bipartition scan, in increasing order
/// of the bitset value. Throws kTooLarge above 16 points.
std::vector<Subset> brute_force_halfspaces(const MedianAlgebra& m);

/// The canonical sides of a half-space list, one per wall, sorted.
std::vector<Subset> canonical_sides(std::span<const Subset> halfspaces);

/// All half-spaces h with a inside h and b inside its complement, ordered by
/// wall id. Requires a reduced algebra.
std::vector<HalfSpace> delta(const MedianAlgebra& m, const Subset& a, const Subset& b);

/// The separator of two disjoint non-empty convex sets with the smallest
/// wall id. Throws kNoSeparator when none exists (an internal inconsistency
/// for convex inputs).
HalfSpace separate(const MedianAlgebra& m, const Subset& c1, const Subset& c2);

/// gate(a, b0) for the smallest b0 in b; verifies delta(a,b) = delta({gate}, b).
PointId gate_representative(const MedianAlgebra& m, const Subset& a, const Subset& b);

/// All four side intersections are non-empty. Throws kSameWall if the two
/// walls induce the same partition.
bool is_transverse(const Wall& w1, const Wall& w2);

/// x -> (x in canonical side of w)_w, into the cube {0,1}^|walls|.
Morphism wall_embedding(const MedianAlgebra& m, std::span<const Wall> walls);

struct CubeCertificate {
  std::vector<PointId> points;  // the cube inside the ambient algebra, ascending
  MedianAlgebra cube;           // those points as an algebra
  std::vector<Wall> walls;      // walls of `cube`, over its own PointIds
  Morphism iso;                 // cube -> {0,1}^walls
  Morphism inverse;

  std::size_t dimension() const { return walls.size(); }
};

struct NotCube {
  std::optional<std::pair<std::size_t, std::size_t>> non_transverse;  // wall ids
  std::optional<std::pair<PointId, PointId>> unseparated;              // ambient ids
  std::optional<std::pair<std::size_t, std::size_t>> cardinality;      // (points, walls)

  std::string describe() const;
};

using CubeDetection = std::variant<CubeCertificate, NotCube>;

/// Certificate iff the walls of the subalgebra are separating and pairwise
/// transverse; every failing check is recorded otherwise.
CubeDetection detect_cube(const MedianAlgebra& m, const Subset& closed_subset);
CubeDetection detect_cube(const MedianAlgebra& m);

}  // namespace medlab
