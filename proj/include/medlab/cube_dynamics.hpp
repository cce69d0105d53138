#pragma once

// Dynamics of Phi on the one-parameter family of measures on {0,1}^n that are
// constant on the even-weight class K0 and on the odd-weight class K1.
//
//   mu_t = t / 2^(n-1) on K0,  (1 - t) / 2^(n-1) on K1,   Phi(mu_t) = mu_phi(t)
//
// Everything here is exact.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "medlab/measures.hpp"
#include "medlab/rational.hpp"

namespace medlab {

struct CubeDynParams {
  unsigned n;
  Rational t;

  /// Throws kOutOfRange unless n >= 1 and 0 <= t <= 1.
  void validate() const;
};

/// a[i] = number of triples (x,y,z) in ({0,1}^n)^3 with majority 0 and
/// exactly i entries of odd weight.
struct XiCounts {
  unsigned n = 0;
  std::array<BigInt, 4> a;

  BigInt total() const { return a[0] + a[1] + a[2] + a[3]; }
  friend bool operator==(const XiCounts&, const XiCounts&) = default;
};

/// The 4x4 lifting matrix: entry (i, j) counts the lifts of one triple in
/// X_j(n-1) into X_i(n).
inline constexpr std::array<std::array<int, 4>, 4> kLiftMatrix{{
    {1, 1, 0, 0},
    {3, 1, 2, 0},
    {0, 2, 1, 3},
    {0, 0, 1, 1},
}};

inline bool is_even_weight(std::uint64_t word) { return __builtin_popcountll(word) % 2 == 0; }

Measure mu_t(unsigned n, const Rational& t);

/// phi(t) = t + (-1)^n 2^(2-n) (t - 1/2)(t^2 - t + c_n),
/// c_n = 1/4 + (-1)^n 3/4 - (-1)^n 2^(n-2).
Rational phi_poly(unsigned n, const Rational& t);

/// The constant term c_n of the quadratic factor.
Rational quadratic_constant(unsigned n);

/// Phi(mu_t) == mu_phi(t), computed through the exact measure Phi on the
/// n-cube. n <= 6.
bool phi_conjugation_check(unsigned n, const Rational& t);

/// Exhaustive enumeration of ({0,1}^n)^3, n <= 8, split over `jobs` threads.
XiCounts count_xi_bruteforce(unsigned n, unsigned jobs = 1);

/// kLiftMatrix applied n-1 times to (1,3,0,0).
XiCounts ai_recurrence(unsigned n);

/// a_i(n) = 2^n (alpha_i + beta_i (-1)^n + gamma_i 2^n), evaluated exactly.
XiCounts ai_closed_form(unsigned n);

struct Mu3MassIdentity {
  Rational direct;       // mu_t^3 of the median preimage of 0, by enumeration
  Rational from_counts;  // sum_i a_i t^(3-i) (1-t)^i / 8^(n-1)
  Rational from_phi;     // phi(t) / 2^(n-1)

  bool holds() const { return direct == from_counts && from_counts == from_phi; }
};

/// n <= 6.
Mu3MassIdentity mu3_mass_identity(unsigned n, const Rational& t);
bool mu3_mass_identity_check(unsigned n, const Rational& t);

/// a + b * sqrt(d), d >= 0.
struct QuadraticNumber {
  Rational a;
  Rational b;
  Rational d;

  std::optional<Rational> as_rational() const;
  double approx() const;
  std::string to_string() const;
  friend bool operator==(const QuadraticNumber&, const QuadraticNumber&) = default;
};

struct FixedPoint {
  QuadraticNumber value;
  unsigned multiplicity = 1;
};

/// Roots of phi(t) = t in [0, 1], ascending, with multiplicity.
std::vector<FixedPoint> phi_fixed_points(unsigned n);

}  // namespace medlab
