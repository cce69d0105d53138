#include "medlab/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

#include "medlab/rng.hpp"

namespace medlab {

std::size_t max_points() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("MEDLAB_MAX_POINTS")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return kDefaultMaxPoints;
  }();
  return cap;
}

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::uint64_t word, unsigned dim) : word_(word), dim_(dim) {
  if (dim > kMaxAmbientDim) {
    throw Error(ErrorKind::kTooLarge, "bit-vector dimension exceeds 64");
  }
  if (dim < 64 && (word >> dim) != 0) {
    throw Error(ErrorKind::kMalformedInput, "bit-vector word wider than its dimension");
  }
}

BitVector BitVector::parse(std::string_view text) {
  if (text.size() > kMaxAmbientDim) {
    throw Error(ErrorKind::kTooLarge, "bit-string longer than 64");
  }
  std::uint64_t word = 0;
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw Error(ErrorKind::kMalformedInput, "bad bit-string \"" + std::string(text) + "\"");
    }
    word = (word << 1) | static_cast<std::uint64_t>(ch - '0');
  }
  return {word, static_cast<unsigned>(text.size())};
}

std::string BitVector::to_string() const {
  std::string s(dim_, '0');
  for (unsigned c = 0; c < dim_; ++c) {
    if ((*this)[c]) s[c] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------
// MedianAlgebra

namespace {

bool compute_reduced(unsigned dim, std::span<const std::uint64_t> points) {
  std::vector<Subset> seen;
  for (unsigned c = 0; c < dim; ++c) {
    const unsigned shift = dim - 1 - c;
    Subset column(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) column[i] = ((points[i] >> shift) & 1U) != 0;
    if (column[0]) column.flip();
    if (column.none()) return false;
    if (std::find(seen.begin(), seen.end(), column) != seen.end()) return false;
    seen.push_back(std::move(column));
  }
  return true;
}

}  // namespace

MedianAlgebra::MedianAlgebra(unsigned ambient_dim, std::vector<std::uint64_t> points,
                             std::string name)
    : ambient_dim_(ambient_dim), points_(std::move(points)), name_(std::move(name)) {
  if (ambient_dim_ > kMaxAmbientDim) {
    throw Error(ErrorKind::kTooLarge, "ambient dimension exceeds 64");
  }
  if (points_.empty()) {
    throw Error(ErrorKind::kMalformedInput, "a median algebra needs at least one point");
  }
  if (points_.size() > max_points()) {
    throw Error(ErrorKind::kTooLarge, "algebra has " + std::to_string(points_.size()) +
                                          " points, cap is " + std::to_string(max_points()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (ambient_dim_ < 64 && (points_[i] >> ambient_dim_) != 0) {
      throw Error(ErrorKind::kMalformedInput, "point wider than the ambient dimension");
    }
    if (i > 0 && points_[i - 1] >= points_[i]) {
      throw Error(ErrorKind::kMalformedInput, "points must be sorted and duplicate-free");
    }
  }
  reduced_ = compute_reduced(ambient_dim_, points_);
}

MedianAlgebra MedianAlgebra::from_points(unsigned ambient_dim, std::vector<std::uint64_t> points,
                                         std::string name) {
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw Error(ErrorKind::kMalformedInput, "duplicate point");
  }
  MedianAlgebra m(ambient_dim, std::move(points), std::move(name));
  const std::size_t n = m.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::uint64_t w = majority(m.points_[a], m.points_[b], m.points_[c]);
        if (!m.find(w)) {
          throw Error(ErrorKind::kMalformedInput,
                      "not median-closed: m(" + m.point(a).to_string() + "," +
                          m.point(b).to_string() + "," + m.point(c).to_string() + ") = " +
                          BitVector(w, ambient_dim).to_string() + " is missing");
        }
      }
    }
  }
  return m;
}

MedianAlgebra MedianAlgebra::from_closed_points(unsigned ambient_dim,
                                                std::vector<std::uint64_t> points,
                                                std::string name) {
  return MedianAlgebra(ambient_dim, std::move(points), std::move(name));
}

std::optional<PointId> MedianAlgebra::find(std::uint64_t word) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), word);
  if (it == points_.end() || *it != word) return std::nullopt;
  return static_cast<PointId>(it - points_.begin());
}

PointId MedianAlgebra::index_of(std::uint64_t word) const {
  if (auto id = find(word)) return *id;
  throw Error(ErrorKind::kInternal,
              "point " + BitVector(word, ambient_dim_).to_string() + " not in algebra");
}

Subset MedianAlgebra::singleton(PointId x) const {
  Subset s(size());
  s.set(x);
  return s;
}

Subset MedianAlgebra::subset_of(std::span<const PointId> ids) const {
  Subset s(size());
  for (PointId x : ids) {
    if (x >= size()) throw Error(ErrorKind::kOutOfRange, "PointId out of range");
    s.set(x);
  }
  return s;
}

MedianAlgebra MedianAlgebra::with_name(std::string name) const {
  MedianAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

std::vector<PointId> members(const Subset& s) {
  std::vector<PointId> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != Subset::npos; i = s.find_next(i)) {
    out.push_back(static_cast<PointId>(i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// TernaryTable and axioms

TernaryTable::TernaryTable(std::size_t n) : n_(n), entries_(n * n * n, 0) {}

TernaryTable::TernaryTable(std::size_t n, std::vector<std::uint32_t> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_ * n_) {
    throw Error(ErrorKind::kMalformedInput, "table must have n^3 entries");
  }
  for (auto e : entries_) {
    if (e >= n_) throw Error(ErrorKind::kMalformedInput, "table entry out of range");
  }
}

TernaryTable TernaryTable::of(const MedianAlgebra& m) {
  const std::size_t n = m.size();
  TernaryTable t(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        t.set(x, y, z, m.median(static_cast<PointId>(x), static_cast<PointId>(y),
                                static_cast<PointId>(z)));
  return t;
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::kMed1: return "Med1";
    case Axiom::kMed2: return "Med2";
    case Axiom::kMed3: return "Med3";
  }
  return "?";
}

std::string AxiomViolation::describe() const {
  std::ostringstream os;
  os << to_string(axiom) << " fails at (";
  for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
  os << ")";
  return os.str();
}

namespace {

bool med3_holds(const TernaryTable& t, std::uint32_t x, std::uint32_t y, std::uint32_t z,
                std::uint32_t u, std::uint32_t v) {
  return t(t(x, y, z), u, v) == t(x, t(y, u, v), t(z, u, v));
}

}  // namespace

std::optional<AxiomViolation> validate_axioms(const TernaryTable& t,
                                              const ValidationOptions& options) {
  const auto n = static_cast<std::uint32_t>(t.size());
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      for (std::uint32_t z = 0; z < n; ++z) {
        const auto v = t(x, y, z);
        if (v != t(x, z, y) || v != t(y, x, z)) return AxiomViolation{Axiom::kMed1, {x, y, z}};
      }
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      if (t(x, x, y) != x) return AxiomViolation{Axiom::kMed2, {x, x, y}};

  if (t.size() <= options.exhaustive_limit) {
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        for (std::uint32_t z = 0; z < n; ++z)
          for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = 0; v < n; ++v)
              if (!med3_holds(t, x, y, z, u, v)) {
                return AxiomViolation{Axiom::kMed3, {x, y, z, u, v}};
              }
  } else {
    Prng rng(options.seed);
    for (std::size_t i = 0; i < options.samples; ++i) {
      std::uint32_t w[5];
      for (auto& e : w) e = static_cast<std::uint32_t>(rng.below(n));
      if (!med3_holds(t, w[0], w[1], w[2], w[3], w[4])) {
        return AxiomViolation{Axiom::kMed3, {w[0], w[1], w[2], w[3], w[4]}};
      }
    }
  }
  return std::nullopt;
}

TableEmbedding from_table(const TernaryTable& t, const ValidationOptions& options) {
  if (t.size() == 0) throw Error(ErrorKind::kEmptySet, "empty table");
  if (auto violation = validate_axioms(t, options)) {
    throw Error(ErrorKind::kMalformedInput, "not a median algebra: " + violation->describe());
  }
  const std::size_t n = t.size();

  // Every wall separates the two ends of some edge (an interval of size 2),
  // and the edge x-y determines it: {z : m(x,y,z) = x} | {z : m(x,y,z) = y}.
  std::vector<Subset> walls;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      std::size_t interval_size = 0;
      for (std::size_t u = 0; u < n && interval_size <= 2; ++u) {
        if (t(x, y, u) == u) ++interval_size;
      }
      if (interval_size != 2) continue;
      Subset side(n);
      for (std::size_t z = 0; z < n; ++z) side[z] = t(x, y, z) == x;
      if (side[0]) side.flip();
      if (std::find(walls.begin(), walls.end(), side) == walls.end()) walls.push_back(side);
    }
  }
  if (walls.size() > kMaxAmbientDim) {
    throw Error(ErrorKind::kTooLarge, "more than 64 walls");
  }
  // Coordinate order: by the smallest element on the canonical side, largest
  // first. A lex-sorted cube table then comes back with its own coordinates.
  std::sort(walls.begin(), walls.end(), [](const Subset& a, const Subset& b) {
    const auto fa = a.find_first();
    const auto fb = b.find_first();
    if (fa != fb) return fa > fb;
    return members(a) < members(b);
  });
  const auto dim = static_cast<unsigned>(walls.size());
  std::vector<std::uint64_t> words(n, 0);
  for (std::size_t z = 0; z < n; ++z) {
    for (unsigned c = 0; c < dim; ++c) {
      if (walls[c][z]) words[z] |= std::uint64_t{1} << (dim - 1 - c);
    }
  }
  MedianAlgebra algebra = MedianAlgebra::from_points(dim, words);
  if (algebra.size() != n) {
    throw Error(ErrorKind::kInternal, "wall embedding of the table is not injective");
  }
  std::vector<PointId> point_of(n);
  for (std::size_t z = 0; z < n; ++z) point_of[z] = algebra.index_of(words[z]);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (point_of[t(x, y, z)] != algebra.median(point_of[x], point_of[y], point_of[z])) {
          throw Error(ErrorKind::kInternal, "wall embedding does not intertwine the medians");
        }
  return {std::move(algebra), std::move(point_of)};
}

// ---------------------------------------------------------------------------
// Morphisms

bool is_morphism(std::span<const PointId> map, const MedianAlgebra& source,
                 const MedianAlgebra& target) {
  const std::size_t n = source.size();
  if (map.size() != n) return false;
  for (PointId x : map) {
    if (x >= target.size()) return false;
  }
  // Both medians are symmetric, so sorted triples suffice.
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a; b < n; ++b)
      for (PointId c = b; c < n; ++c)
        if (map[source.median(a, b, c)] != target.median(map[a], map[b], map[c])) return false;
  return true;
}

Morphism::Morphism(MedianAlgebra source, MedianAlgebra target, std::vector<PointId> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!is_morphism(map_, source_, target_)) {
    throw Error(ErrorKind::kNotAMorphism, "map does not commute with the median");
  }
}

Morphism Morphism::identity(const MedianAlgebra& m) {
  std::vector<PointId> map(m.size());
  for (PointId i = 0; i < map.size(); ++i) map[i] = i;
  return Morphism(m, m, std::move(map));
}

bool Morphism::is_injective() const {
  std::vector<PointId> sorted(map_.begin(), map_.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool Morphism::is_surjective() const {
  Subset hit(target_.size());
  for (PointId y : map_) hit.set(y);
  return hit.all();
}

// ---------------------------------------------------------------------------
// Reduction

Reduction reduce(const MedianAlgebra& m) {
  const unsigned dim = m.ambient_dim();
  const std::size_t n = m.size();
  std::vector<Subset> seen;
  std::vector<unsigned> kept;
  for (unsigned c = 0; c < dim; ++c) {
    Subset column(n);
    for (PointId i = 0; i < n; ++i) column[i] = m.coordinate(i, c);
    if (column[0]) column.flip();
    if (column.none()) continue;
    if (std::find(seen.begin(), seen.end(), column) != seen.end()) continue;
    seen.push_back(std::move(column));
    kept.push_back(c);
  }
  const auto new_dim = static_cast<unsigned>(kept.size());
  std::vector<std::uint64_t> words(n, 0);
  for (PointId i = 0; i < n; ++i) {
    for (unsigned j = 0; j < new_dim; ++j) {
      if (m.coordinate(i, kept[j])) words[i] |= std::uint64_t{1} << (new_dim - 1 - j);
    }
  }
  std::vector<std::uint64_t> sorted = words;
  std::sort(sorted.begin(), sorted.end());
  // Projection to a separating coordinate set is injective and preserves
  // coordinatewise majority, so the image is closed.
  MedianAlgebra reduced = MedianAlgebra::from_closed_points(new_dim, std::move(sorted), m.name());
  std::vector<PointId> point_map(n);
  for (PointId i = 0; i < n; ++i) point_map[i] = reduced.index_of(words[i]);
  return {std::move(reduced), std::move(point_map), std::move(kept)};
}

// ---------------------------------------------------------------------------
// Convexity

namespace {

void require_owner(const MedianAlgebra& m, const Subset& s) {
  if (s.size() != m.size()) {
    throw Error(ErrorKind::kOutOfRange, "subset belongs to a different algebra");
  }
}

}  // namespace

Subset interval(const MedianAlgebra& m, PointId x, PointId y) {
  Subset out(m.size());
  const std::uint64_t wx = m.word(x);
  const std::uint64_t wy = m.word(y);
  for (PointId u = 0; u < m.size(); ++u) {
    out[u] = majority(wx, wy, m.word(u)) == m.word(u);
  }
  return out;
}

bool is_convex(const MedianAlgebra& m, const Subset& c) {
  require_owner(m, c);
  const auto pts = members(c);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!interval(m, pts[i], pts[j]).is_subset_of(c)) return false;
  return true;
}

Subset convex_hull(const MedianAlgebra& m, const Subset& s) {
  require_owner(m, s);
  Subset hull = s;
  bool changed = true;
  while (changed) {
    changed = false;
    const auto pts = members(hull);
    Subset next = hull;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) next |= interval(m, pts[i], pts[j]);
    if (next != hull) {
      hull = std::move(next);
      changed = true;
    }
  }
  return hull;
}

PointId gate(const MedianAlgebra& m, const Subset& c, PointId x) {
  require_owner(m, c);
  if (c.none()) throw Error(ErrorKind::kEmptySet, "gate onto the empty set");
  if (!is_convex(m, c)) throw Error(ErrorKind::kNotConvex, "gate onto a non-convex set");
  const auto pts = members(c);
  // Folding z -> m(x, y, z) over C settles each coordinate on x's value when
  // some member of C agrees with x there, and on C's constant value otherwise.
  PointId y = pts.front();
  for (PointId z : pts) y = m.median(x, y, z);
  for (PointId z : pts) {
    if (m.median(x, z, y) != y) {
      throw Error(ErrorKind::kInternal, "gate condition fails for a convex set");
    }
  }
  return y;
}

MedianAlgebra product(const MedianAlgebra& a, const MedianAlgebra& b, std::size_t cap) {
  const unsigned dim = a.ambient_dim() + b.ambient_dim();
  if (dim > kMaxAmbientDim) throw Error(ErrorKind::kTooLarge, "product exceeds 64 coordinates");
  if (a.size() > cap / b.size()) {
    throw Error(ErrorKind::kTooLarge, "product exceeds the point cap");
  }
  std::vector<std::uint64_t> words;
  words.reserve(a.size() * b.size());
  for (auto wa : a.words())
    for (auto wb : b.words()) words.push_back((b.ambient_dim() == 64 ? 0 : wa << b.ambient_dim()) | wb);
  std::string name;
  if (!a.name().empty() || !b.name().empty()) name = a.name() + "x" + b.name();
  return MedianAlgebra::from_closed_points(dim, std::move(words), std::move(name));
}

bool is_median_closed(const MedianAlgebra& m, const Subset& s) {
  require_owner(m, s);
  const auto pts = members(s);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k)
        if (!s[m.median(pts[i], pts[j], pts[k])]) return false;
  return true;
}

MedianAlgebra subalgebra(const MedianAlgebra& m, const Subset& s) {
  require_owner(m, s);
  if (s.none()) throw Error(ErrorKind::kEmptySet, "empty subalgebra");
  if (!is_median_closed(m, s)) {
    throw Error(ErrorKind::kMalformedInput, "subset is not median-closed");
  }
  std::vector<std::uint64_t> words;
  for (PointId x : members(s)) words.push_back(m.word(x));
  return MedianAlgebra::from_closed_points(m.ambient_dim(), std::move(words));
}

SubalgebraView subalgebra_closure(const MedianAlgebra& m, const Subset& s) {
  require_owner(m, s);
  if (s.none()) throw Error(ErrorKind::kEmptySet, "closure of the empty set");
  Subset closed = s;
  std::vector<PointId> pts = members(s);
  std::deque<PointId> fresh(pts.begin(), pts.end());
  while (!fresh.empty()) {
    const PointId p = fresh.front();
    fresh.pop_front();
    const std::size_t count = pts.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i; j < count; ++j) {
        const PointId q = m.median(p, pts[i], pts[j]);
        if (!closed[q]) {
          closed.set(q);
          pts.push_back(q);
          fresh.push_back(q);
        }
      }
    }
  }
  MedianAlgebra sub = subalgebra(m, closed);
  std::vector<PointId> inclusion_map = members(closed);
  Morphism inclusion(sub, m, std::move(inclusion_map));
  return {std::move(closed), std::move(sub), std::move(inclusion)};
}

}  // namespace medlab
