#include "medlab/generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "medlab/rng.hpp"

namespace medlab {

MedianAlgebra full_cube(unsigned n) {
  if (n >= 63 || (std::uint64_t{1} << n) > max_points()) {
    throw Error(ErrorKind::kTooLarge, "cube of dimension " + std::to_string(n) +
                                          " exceeds the point cap");
  }
  std::vector<std::uint64_t> words(std::size_t{1} << n);
  std::iota(words.begin(), words.end(), std::uint64_t{0});
  return MedianAlgebra::from_closed_points(n, std::move(words), "cube" + std::to_string(n));
}

MedianAlgebra hypercube(unsigned n) {
  if (n > 12) throw Error(ErrorKind::kOutOfRange, "hypercube dimension must be <= 12");
  return full_cube(n);
}

TreeEmbedding embed_tree(const std::vector<Edge>& edges) {
  const std::size_t v = edges.size() + 1;
  if (edges.size() > kMaxAmbientDim) throw Error(ErrorKind::kTooLarge, "tree with > 64 edges");
  std::vector<std::vector<std::pair<unsigned, unsigned>>> adj(v);  // (neighbour, edge)
  for (unsigned e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    if (a >= v || b >= v || a == b) {
      throw Error(ErrorKind::kNotATree, "edge " + std::to_string(a) + "-" + std::to_string(b) +
                                            " does not fit vertices 0.." + std::to_string(v - 1));
    }
    adj[a].push_back({b, e});
    adj[b].push_back({a, e});
  }
  // Depth-first from vertex 0: a vertex's word is its parent's word plus the
  // connecting edge's bit.
  const auto dim = static_cast<unsigned>(edges.size());
  std::vector<std::uint64_t> word(v, 0);
  std::vector<bool> seen(v, false);
  std::vector<unsigned> stack{0};
  seen[0] = true;
  std::size_t visited = 1;
  while (!stack.empty()) {
    const unsigned u = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[u]) {
      if (seen[w]) continue;
      seen[w] = true;
      ++visited;
      word[w] = word[u] | (std::uint64_t{1} << (dim - 1 - e));
      stack.push_back(w);
    }
  }
  if (visited != v) throw Error(ErrorKind::kNotATree, "edges do not form a connected tree");

  std::vector<std::uint64_t> sorted = word;
  std::sort(sorted.begin(), sorted.end());
  // Tree medians are the coordinatewise majority of the edge indicators.
  MedianAlgebra algebra = MedianAlgebra::from_points(dim, sorted, "tree");
  std::vector<PointId> vertex_point(v);
  for (std::size_t i = 0; i < v; ++i) vertex_point[i] = algebra.index_of(word[i]);
  return {std::move(algebra), std::move(vertex_point)};
}

MedianAlgebra tree(const std::vector<Edge>& edges) { return embed_tree(edges).algebra; }

MedianAlgebra path(unsigned vertices) {
  if (vertices == 0) throw Error(ErrorKind::kOutOfRange, "path needs a vertex");
  std::vector<Edge> edges;
  for (unsigned i = 0; i + 1 < vertices; ++i) edges.emplace_back(i, i + 1);
  return tree(edges).with_name("path" + std::to_string(vertices));
}

MedianAlgebra star(unsigned leaves) {
  std::vector<Edge> edges;
  for (unsigned i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return tree(edges).with_name("star" + std::to_string(leaves));
}

MedianAlgebra grid(unsigned a, unsigned b) {
  if (a == 0 || b == 0) throw Error(ErrorKind::kOutOfRange, "grid sides must be >= 1");
  if (static_cast<std::size_t>(a) * b > max_points()) {
    throw Error(ErrorKind::kTooLarge, "grid exceeds the point cap");
  }
  return product(path(a), path(b))
      .with_name("grid" + std::to_string(a) + "x" + std::to_string(b));
}

MedianAlgebra random_subalgebra(unsigned d, unsigned k, std::uint64_t seed) {
  if (d > 10) throw Error(ErrorKind::kOutOfRange, "random_subalgebra needs d <= 10");
  if (k == 0 || k > (1U << d)) throw Error(ErrorKind::kOutOfRange, "need 1 <= k <= 2^d");
  MedianAlgebra cube = full_cube(d);
  Prng rng(seed);
  Subset chosen(cube.size());
  while (chosen.count() < k) chosen.set(rng.below(cube.size()));
  auto view = subalgebra_closure(cube, chosen);
  return view.algebra.with_name("random_d" + std::to_string(d) + "_k" + std::to_string(k) +
                                "_s" + std::to_string(seed));
}

std::vector<Edge> parse_edges(const std::string& text) {
  std::vector<Edge> edges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == item.size() ||
        item.find_first_not_of("0123456789-") != std::string::npos ||
        item.find('-', dash + 1) != std::string::npos) {
      throw Error(ErrorKind::kMalformedInput, "bad edge \"" + item + "\", expected a-b");
    }
    edges.emplace_back(static_cast<unsigned>(std::stoul(item.substr(0, dash))),
                       static_cast<unsigned>(std::stoul(item.substr(dash + 1))));
  }
  return edges;
}

}  // namespace medlab
