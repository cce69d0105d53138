#pragma once

// Finite groups acting on a median algebra by automorphisms, invariant
// measures, and invariant cubes.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "medlab/algebra.hpp"
#include "medlab/measures.hpp"

namespace medlab {

struct InvalidAutomorphism;

/// A bijective median morphism of an algebra onto itself.
class Automorphism {
 public:
  static Automorphism identity(std::size_t n);

  PointId operator()(PointId x) const { return perm_[x]; }
  std::span<const PointId> perm() const { return perm_; }
  std::size_t size() const { return perm_.size(); }

  /// (a * b)(x) = a(b(x))
  friend Automorphism operator*(const Automorphism& a, const Automorphism& b);
  Automorphism inverse() const;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  friend auto operator<=>(const Automorphism&, const Automorphism&) = default;

 private:
  friend std::variant<Automorphism, InvalidAutomorphism> validate_automorphism(
      const MedianAlgebra&, std::vector<PointId>);
  explicit Automorphism(std::vector<PointId> perm) : perm_(std::move(perm)) {}

  std::vector<PointId> perm_;
};

struct InvalidAutomorphism {
  std::string reason;
  std::optional<std::pair<PointId, PointId>> collision;  // two points with one image
  std::optional<std::array<PointId, 3>> triple;          // breaks the median identity
};

std::variant<Automorphism, InvalidAutomorphism> validate_automorphism(const MedianAlgebra& m,
                                                                      std::vector<PointId> perm);

/// Throws kNotAMorphism carrying the reason.
Automorphism require_automorphism(const MedianAlgebra& m, std::vector<PointId> perm);

class FiniteGroup {
 public:
  const std::vector<Automorphism>& elements() const { return elements_; }
  const std::vector<Automorphism>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }

 private:
  friend FiniteGroup group_closure(const MedianAlgebra&, std::span<const Automorphism>,
                                   std::size_t);
  std::size_t degree_ = 0;
  std::vector<Automorphism> elements_;
  std::vector<Automorphism> generators_;
};

inline constexpr std::size_t kDefaultGroupCap = 100'000;

/// Breadth-first closure from the identity, multiplying by generators in
/// input order; elements are listed in discovery order. Throws kCapExceeded.
FiniteGroup group_closure(const MedianAlgebra& m, std::span<const Automorphism> generators,
                          std::size_t cap = kDefaultGroupCap);

Measure pushforward(const Automorphism& g, const Measure& mu);

/// (1/|G|) sum_g g_* mu, checked to be G-invariant.
Measure average_measure(const FiniteGroup& g, const Measure& mu);

bool is_invariant(const FiniteGroup& g, const Measure& mu);
bool is_invariant(const FiniteGroup& g, std::span<const PointId> points);

struct SearchOptions {
  std::size_t starts = 10;
  std::uint64_t seed = 0;
  IterationOptions iteration;
  /// Prepend the G-average of the uniform measure as a deterministic start.
  bool uniform_start = true;
};

struct InvariantFinding {
  Measure measure;
  CubicalCertificate certificate;
};

struct InvariantSearch {
  std::vector<InvariantFinding> findings;  // distinct measures, discovery order
  std::size_t attempted = 0;
  std::size_t unresolved = 0;  // starts that did not snap to an invariant balanced measure
  std::vector<NotCubical> counterexamples;
};

/// Average each start over G, iterate Phi, snap, and keep exactly balanced,
/// exactly G-invariant results together with their cube certificates.
InvariantSearch invariant_balanced_search(const MedianAlgebra& m, const FiniteGroup& g,
                                          const SearchOptions& options = {});

/// The largest cube among the search findings (first found on ties), checked
/// to be mapped onto itself by every element of G. Throws kUnresolved if no
/// start produced a verified measure.
CubeCertificate invariant_cube(const MedianAlgebra& m, const FiniteGroup& g,
                               const SearchOptions& options = {});

/// Every automorphism by backtracking; testing aid for at most 12 points.
std::vector<Automorphism> find_automorphisms(const MedianAlgebra& m);

}  // namespace medlab
