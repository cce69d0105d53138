#pragma once

// Example corpus: hypercubes, trees, grids, products and random subalgebras.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "medlab/algebra.hpp"

namespace medlab {

/// {0,1}^n for 0 <= n <= 12. Throws kOutOfRange.
MedianAlgebra hypercube(unsigned n);

/// {0,1}^n subject only to the point cap; used for embedding targets.
MedianAlgebra full_cube(unsigned n);

using Edge = std::pair<unsigned, unsigned>;

struct TreeEmbedding {
  MedianAlgebra algebra;
  std::vector<PointId> vertex_point;  // vertex label -> PointId
};

/// Vertices are 0..|edges|. Coordinate e is the indicator of the side of
/// edge e away from vertex 0. Throws kNotATree.
TreeEmbedding embed_tree(const std::vector<Edge>& edges);
MedianAlgebra tree(const std::vector<Edge>& edges);

/// Path on `vertices` vertices (vertices - 1 edges).
MedianAlgebra path(unsigned vertices);

/// Star with `leaves` leaves around vertex 0.
MedianAlgebra star(unsigned leaves);

/// Product of an a-vertex path and a b-vertex path.
MedianAlgebra grid(unsigned a, unsigned b);

/// Median closure of k distinct uniformly drawn vertices of {0,1}^d
/// (d <= 10), drawn with Prng(seed). Not reduced.
MedianAlgebra random_subalgebra(unsigned d, unsigned k, std::uint64_t seed);

/// Parses "0-1,1-2,...". Throws kMalformedInput.
std::vector<Edge> parse_edges(const std::string& text);

}  // namespace medlab
