#include "medlab/walls.hpp"

#include <algorithm>
#include <sstream>

#include "medlab/generators.hpp"

namespace medlab {

namespace {

void require_owner(const MedianAlgebra& m, const Subset& s) {
  if (s.size() != m.size()) {
    throw Error(ErrorKind::kOutOfRange, "subset belongs to a different algebra");
  }
}

std::uint64_t embedding_word(std::span<const Wall> walls, PointId x) {
  const auto dim = walls.size();
  std::uint64_t w = 0;
  for (std::size_t j = 0; j < dim; ++j) {
    if (walls[j].positive[x]) w |= std::uint64_t{1} << (dim - 1 - j);
  }
  return w;
}

}  // namespace

std::vector<Wall> enumerate_walls(const MedianAlgebra& m) {
  if (!m.is_reduced()) {
    throw Error(ErrorKind::kNotReduced, "enumerate_walls needs a reduced algebra");
  }
  std::vector<Wall> walls;
  walls.reserve(m.ambient_dim());
  for (unsigned c = 0; c < m.ambient_dim(); ++c) {
    Subset side(m.size());
    for (PointId x = 0; x < m.size(); ++x) side[x] = m.coordinate(x, c);
    if (side[0]) side.flip();
    walls.push_back({c, std::move(side)});
  }
  return walls;
}

std::vector<Subset> brute_force_halfspaces(const MedianAlgebra& m) {
  const std::size_t n = m.size();
  if (n > 16) throw Error(ErrorKind::kTooLarge, "bipartition scan is capped at 16 points");
  std::vector<Subset> out;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask + 1 < total; ++mask) {
    Subset h(n, static_cast<unsigned long>(mask));
    if (is_convex(m, h) && is_convex(m, ~h)) out.push_back(std::move(h));
  }
  return out;
}

std::vector<Subset> canonical_sides(std::span<const Subset> halfspaces) {
  std::vector<Subset> sides;
  for (const Subset& h : halfspaces) {
    Subset side = h[0] ? ~h : h;
    if (std::find(sides.begin(), sides.end(), side) == sides.end()) sides.push_back(side);
  }
  std::sort(sides.begin(), sides.end());
  return sides;
}

std::vector<HalfSpace> delta(const MedianAlgebra& m, const Subset& a, const Subset& b) {
  require_owner(m, a);
  require_owner(m, b);
  if (a.none() || b.none()) throw Error(ErrorKind::kEmptySet, "delta of an empty set");
  if (a.intersects(b)) throw Error(ErrorKind::kNotDisjoint, "delta of overlapping sets");
  std::vector<HalfSpace> out;
  for (const Wall& w : enumerate_walls(m)) {
    const Subset neg = w.negative();
    if (a.is_subset_of(w.positive) && b.is_subset_of(neg)) {
      out.push_back({w.id, true, w.positive});
    } else if (a.is_subset_of(neg) && b.is_subset_of(w.positive)) {
      out.push_back({w.id, false, neg});
    }
  }
  return out;
}

HalfSpace separate(const MedianAlgebra& m, const Subset& c1, const Subset& c2) {
  auto candidates = delta(m, c1, c2);
  if (candidates.empty()) {
    throw Error(ErrorKind::kNoSeparator, "no half-space separates the two sets");
  }
  return std::move(candidates.front());
}

PointId gate_representative(const MedianAlgebra& m, const Subset& a, const Subset& b) {
  require_owner(m, b);
  if (b.none()) throw Error(ErrorKind::kEmptySet, "empty target set");
  const auto b0 = static_cast<PointId>(b.find_first());
  const PointId rep = gate(m, a, b0);
  const auto lhs = delta(m, a, b);
  const auto rhs = delta(m, m.singleton(rep), b);
  const auto same = lhs.size() == rhs.size() &&
                    std::equal(lhs.begin(), lhs.end(), rhs.begin(), [](const auto& x, const auto& y) {
                      return x.wall_id == y.wall_id && x.canonical == y.canonical;
                    });
  if (!same) throw Error(ErrorKind::kInternal, "gate representative changes the separators");
  return rep;
}

bool is_transverse(const Wall& w1, const Wall& w2) {
  if (w1.positive.size() != w2.positive.size()) {
    throw Error(ErrorKind::kOutOfRange, "walls of different algebras");
  }
  if (w1.positive == w2.positive || w1.positive == w2.negative()) {
    throw Error(ErrorKind::kSameWall, "transversality of a wall with itself");
  }
  const Subset n1 = w1.negative();
  const Subset n2 = w2.negative();
  return w1.positive.intersects(w2.positive) && w1.positive.intersects(n2) &&
         n1.intersects(w2.positive) && n1.intersects(n2);
}

Morphism wall_embedding(const MedianAlgebra& m, std::span<const Wall> walls) {
  for (const Wall& w : walls) require_owner(m, w.positive);
  MedianAlgebra target = full_cube(static_cast<unsigned>(walls.size()));
  std::vector<PointId> map(m.size());
  for (PointId x = 0; x < m.size(); ++x) map[x] = target.index_of(embedding_word(walls, x));
  return Morphism(m, std::move(target), std::move(map));
}

std::string NotCube::describe() const {
  std::ostringstream os;
  const char* sep = "";
  if (unseparated) {
    os << "points " << unseparated->first << " and " << unseparated->second
       << " are not separated by any wall";
    sep = "; ";
  }
  if (non_transverse) {
    os << sep << "walls " << non_transverse->first << " and " << non_transverse->second
       << " are not transverse";
    sep = "; ";
  }
  if (cardinality) {
    os << sep << cardinality->first << " points but " << cardinality->second << " walls";
  }
  return os.str();
}

CubeDetection detect_cube(const MedianAlgebra& m, const Subset& closed_subset) {
  MedianAlgebra sub = subalgebra(m, closed_subset);
  const std::vector<PointId> ambient_ids = members(closed_subset);
  const Reduction red = reduce(sub);

  // Lift the coordinate walls of the reduced copy back onto `sub` and
  // re-canonicalize against sub's own smallest point.
  std::vector<Wall> walls;
  for (const Wall& rw : enumerate_walls(red.algebra)) {
    Subset side(sub.size());
    for (PointId x = 0; x < sub.size(); ++x) side[x] = rw.positive[red.point_map[x]];
    if (side[0]) side.flip();
    walls.push_back({rw.id, std::move(side)});
  }

  NotCube failure;
  std::vector<std::pair<std::uint64_t, PointId>> images;
  for (PointId x = 0; x < sub.size(); ++x) images.emplace_back(embedding_word(walls, x), x);
  std::sort(images.begin(), images.end());
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (images[i - 1].first == images[i].first) {
      failure.unseparated = {ambient_ids[images[i - 1].second], ambient_ids[images[i].second]};
      break;
    }
  }
  for (std::size_t i = 0; i < walls.size() && !failure.non_transverse; ++i) {
    for (std::size_t j = i + 1; j < walls.size(); ++j) {
      if (!is_transverse(walls[i], walls[j])) {
        failure.non_transverse = {i, j};
        break;
      }
    }
  }
  const std::size_t k = walls.size();
  if (k >= 63 || sub.size() != (std::size_t{1} << k)) failure.cardinality = {sub.size(), k};

  if (failure.unseparated || failure.non_transverse || failure.cardinality) return failure;

  Morphism iso = wall_embedding(sub, walls);
  if (!iso.is_injective() || !iso.is_surjective()) {
    throw Error(ErrorKind::kInternal, "cube embedding is not bijective");
  }
  std::vector<PointId> inv(sub.size());
  for (PointId x = 0; x < sub.size(); ++x) inv[iso(x)] = x;
  Morphism inverse(iso.target(), sub, std::move(inv));
  return CubeCertificate{ambient_ids, std::move(sub), std::move(walls), std::move(iso),
                         std::move(inverse)};
}

CubeDetection detect_cube(const MedianAlgebra& m) { return detect_cube(m, m.full_subset()); }

}  // namespace medlab
