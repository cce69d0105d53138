#pragma once

// Finite median algebras represented as median-closed sets of vertices of a
// hypercube {0,1}^d, with the interval / convexity / gate toolkit on top.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "medlab/error.hpp"

namespace medlab {

/// Lexicographic rank of a point inside its algebra.
using PointId = std::uint32_t;

/// Bitset over the PointIds of one algebra.
using Subset = boost::dynamic_bitset<>;

inline constexpr unsigned kMaxAmbientDim = 64;
inline constexpr std::size_t kDefaultMaxPoints = 4096;

/// Point cap for constructed algebras: MEDLAB_MAX_POINTS if set, else 4096.
std::size_t max_points();

inline std::uint64_t majority(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return (a & b) | (a & c) | (b & c);
}

/// A vertex of {0,1}^dim. Coordinate 0 is the leftmost character of the
/// bit-string and the most significant of the `dim` low bits of `word`, so
/// numeric order on words is lexicographic order on bit-strings.
class BitVector {
 public:
  BitVector() = default;
  BitVector(std::uint64_t word, unsigned dim);

  /// Parses a string over {'0','1'} of length <= 64.
  static BitVector parse(std::string_view text);

  std::uint64_t word() const { return word_; }
  unsigned dim() const { return dim_; }
  bool operator[](unsigned coordinate) const {
    return ((word_ >> (dim_ - 1 - coordinate)) & 1U) != 0;
  }
  std::string to_string() const;

  friend auto operator<=>(const BitVector&, const BitVector&) = default;

 private:
  std::uint64_t word_ = 0;
  unsigned dim_ = 0;
};

class MedianAlgebra {
 public:
  /// Sorts, rejects duplicates, empty input and words wider than the ambient
  /// dimension, and verifies median-closure. Throws Error(kMalformedInput).
  static MedianAlgebra from_points(unsigned ambient_dim, std::vector<std::uint64_t> points,
                                   std::string name = {});

  /// For generators that are closed by construction: `points` must be sorted,
  /// duplicate-free and median-closed. Only the cheap invariants are checked.
  static MedianAlgebra from_closed_points(unsigned ambient_dim,
                                          std::vector<std::uint64_t> points,
                                          std::string name = {});

  unsigned ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return points_.size(); }
  const std::string& name() const { return name_; }
  std::span<const std::uint64_t> words() const { return points_; }
  std::uint64_t word(PointId x) const { return points_[x]; }
  BitVector point(PointId x) const { return {points_[x], ambient_dim_}; }
  bool coordinate(PointId x, unsigned c) const {
    return ((points_[x] >> (ambient_dim_ - 1 - c)) & 1U) != 0;
  }

  std::optional<PointId> find(std::uint64_t word) const;
  PointId index_of(std::uint64_t word) const;

  PointId median(PointId x, PointId y, PointId z) const {
    return index_of(majority(points_[x], points_[y], points_[z]));
  }

  /// No coordinate is constant and no two coordinates induce the same
  /// partition of the points.
  bool is_reduced() const { return reduced_; }

  Subset empty_subset() const { return Subset(size()); }
  Subset full_subset() const { return ~Subset(size()); }
  Subset singleton(PointId x) const;
  Subset subset_of(std::span<const PointId> members) const;

  MedianAlgebra with_name(std::string name) const;

  /// Same ambient dimension and point set; names are ignored.
  friend bool operator==(const MedianAlgebra& a, const MedianAlgebra& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.points_ == b.points_;
  }

 private:
  MedianAlgebra(unsigned ambient_dim, std::vector<std::uint64_t> points, std::string name);

  unsigned ambient_dim_ = 0;
  std::vector<std::uint64_t> points_;
  std::string name_;
  bool reduced_ = false;
};

std::vector<PointId> members(const Subset& s);

// ---------------------------------------------------------------------------
// Abstract ternary operations

/// A ternary operation on {0, ..., n-1}, stored densely.
class TernaryTable {
 public:
  explicit TernaryTable(std::size_t n);
  TernaryTable(std::size_t n, std::vector<std::uint32_t> entries);

  static TernaryTable of(const MedianAlgebra& m);

  std::size_t size() const { return n_; }
  std::uint32_t operator()(std::size_t x, std::size_t y, std::size_t z) const {
    return entries_[(x * n_ + y) * n_ + z];
  }
  void set(std::size_t x, std::size_t y, std::size_t z, std::uint32_t value) {
    entries_[(x * n_ + y) * n_ + z] = value;
  }
  std::span<const std::uint32_t> entries() const { return entries_; }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> entries_;
};

enum class Axiom { kMed1, kMed2, kMed3 };
std::string_view to_string(Axiom axiom);

struct AxiomViolation {
  Axiom axiom;
  std::vector<std::uint32_t> witness;  // (x,y,z) or (x,y,z,u,v)
  std::string describe() const;
};

struct ValidationOptions {
  std::size_t exhaustive_limit = 40;  // Med 3 is O(n^5); sampled above this size
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

/// Checks Med 1, Med 2, Med 3 in that order; nullopt means all hold.
std::optional<AxiomViolation> validate_axioms(const TernaryTable& table,
                                              const ValidationOptions& options = {});

struct TableEmbedding {
  MedianAlgebra algebra;            // reduced, one coordinate per wall
  std::vector<PointId> point_of;    // table element -> PointId
};

/// Embeds an abstract median algebra into the hypercube of its walls.
/// Throws Error(kMalformedInput) carrying the violation if the axioms fail.
TableEmbedding from_table(const TernaryTable& table, const ValidationOptions& options = {});

// ---------------------------------------------------------------------------
// Morphisms

class Morphism {
 public:
  /// Verifies the intertwining identity; throws Error(kNotAMorphism).
  Morphism(MedianAlgebra source, MedianAlgebra target, std::vector<PointId> map);

  static Morphism identity(const MedianAlgebra& m);

  PointId operator()(PointId x) const { return map_[x]; }
  const MedianAlgebra& source() const { return source_; }
  const MedianAlgebra& target() const { return target_; }
  std::span<const PointId> map() const { return map_; }

  bool is_injective() const;
  bool is_surjective() const;

 private:
  MedianAlgebra source_;
  MedianAlgebra target_;
  std::vector<PointId> map_;
};

/// f(m(x,y,z)) = m(f x, f y, f z) for every triple.
bool is_morphism(std::span<const PointId> map, const MedianAlgebra& source,
                 const MedianAlgebra& target);

// ---------------------------------------------------------------------------
// Reduction

struct Reduction {
  MedianAlgebra algebra;
  std::vector<PointId> point_map;       // old PointId -> PointId in `algebra`
  std::vector<unsigned> kept_coordinates;
};

/// Drops constant coordinates and every coordinate whose partition repeats an
/// earlier one (equal or complementary column). The first representative of
/// each partition class is kept.
Reduction reduce(const MedianAlgebra& m);

// ---------------------------------------------------------------------------
// Convexity

Subset interval(const MedianAlgebra& m, PointId x, PointId y);
bool is_convex(const MedianAlgebra& m, const Subset& c);
Subset convex_hull(const MedianAlgebra& m, const Subset& s);

/// Gate of x in the non-empty convex set c. Throws kEmptySet / kNotConvex.
PointId gate(const MedianAlgebra& m, const Subset& c, PointId x);

MedianAlgebra product(const MedianAlgebra& a, const MedianAlgebra& b,
                      std::size_t cap = max_points());

bool is_median_closed(const MedianAlgebra& m, const Subset& s);

/// The points of a median-closed subset as an algebra in the same ambient
/// cube. Throws kMalformedInput if `s` is not median-closed, kEmptySet if empty.
MedianAlgebra subalgebra(const MedianAlgebra& m, const Subset& s);

struct SubalgebraView {
  Subset members;
  MedianAlgebra algebra;
  Morphism inclusion;
};

/// Smallest median-closed superset of a non-empty s.
SubalgebraView subalgebra_closure(const MedianAlgebra& m, const Subset& s);

}  // namespace medlab
