#include "medlab/cube_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "medlab/generators.hpp"

namespace medlab {

namespace {

constexpr unsigned kBruteForceCap = 8;
constexpr unsigned kExactPhiCap = 6;

void require_n(unsigned n) {
  if (n == 0) throw Error(ErrorKind::kOutOfRange, "cube dimension must be >= 1");
}

Rational power(const Rational& base, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

BigInt to_integer(const Rational& r) {
  if (boost::multiprecision::denominator(r) != 1) {
    throw Error(ErrorKind::kInternal, "closed form is not integral: " + to_string(r));
  }
  return boost::multiprecision::numerator(r);
}

std::optional<BigInt> exact_sqrt(const BigInt& v) {
  if (v < 0) return std::nullopt;
  BigInt s = boost::multiprecision::sqrt(v);
  if (s * s != v) return std::nullopt;
  return s;
}

}  // namespace

void CubeDynParams::validate() const {
  require_n(n);
  if (t < 0 || t > 1) throw Error(ErrorKind::kOutOfRange, "t must lie in [0,1]");
}

Measure mu_t(unsigned n, const Rational& t) {
  CubeDynParams{n, t}.validate();
  if (n > 12) throw Error(ErrorKind::kOutOfRange, "mu_t needs n <= 12");
  const Rational scale = pow2(-static_cast<int>(n - 1));
  const Rational even = t * scale;
  const Rational odd = (1 - t) * scale;
  const std::size_t size = std::size_t{1} << n;
  std::vector<Rational> w;
  w.reserve(size);
  for (std::uint64_t x = 0; x < size; ++x) w.push_back(is_even_weight(x) ? even : odd);
  return Measure(std::move(w));
}

Rational quadratic_constant(unsigned n) {
  require_n(n);
  const int s = sign_pow(n);
  return Rational(1, 4) + s * Rational(3, 4) - s * pow2(static_cast<int>(n) - 2);
}

Rational phi_poly(unsigned n, const Rational& t) {
  require_n(n);
  const int s = sign_pow(n);
  const Rational half(1, 2);
  return t + s * pow2(2 - static_cast<int>(n)) * (t - half) * (t * t - t + quadratic_constant(n));
}

bool phi_conjugation_check(unsigned n, const Rational& t) {
  CubeDynParams{n, t}.validate();
  if (n > kExactPhiCap) throw Error(ErrorKind::kTooLarge, "exact Phi on the cube needs n <= 6");
  const MedianAlgebra cube = hypercube(n);
  return phi(cube, mu_t(n, t)) == mu_t(n, phi_poly(n, t));
}

XiCounts count_xi_bruteforce(unsigned n, unsigned jobs) {
  require_n(n);
  if (n > kBruteForceCap) throw Error(ErrorKind::kTooLarge, "brute-force count needs n <= 8");
  const std::uint64_t size = std::uint64_t{1} << n;
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(size)));

  std::vector<std::array<std::uint64_t, 4>> partial(jobs, {0, 0, 0, 0});
  auto work = [&](unsigned job) {
    auto& local = partial[job];
    for (std::uint64_t x = job; x < size; x += jobs) {
      const unsigned ox = is_even_weight(x) ? 0 : 1;
      for (std::uint64_t y = 0; y < size; ++y) {
        const unsigned oxy = ox + (is_even_weight(y) ? 0 : 1);
        for (std::uint64_t z = 0; z < size; ++z) {
          if (majority(x, y, z) == 0) ++local[oxy + (is_even_weight(z) ? 0 : 1)];
        }
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work, j);
    for (auto& th : threads) th.join();
  }
  XiCounts out{n, {0, 0, 0, 0}};
  for (const auto& p : partial)
    for (std::size_t i = 0; i < 4; ++i) out.a[i] += p[i];
  return out;
}

XiCounts ai_recurrence(unsigned n) {
  require_n(n);
  std::array<BigInt, 4> a{1, 3, 0, 0};
  for (unsigned step = 1; step < n; ++step) {
    std::array<BigInt, 4> next{0, 0, 0, 0};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) next[i] += kLiftMatrix[i][j] * a[j];
    a = std::move(next);
  }
  return {n, std::move(a)};
}

XiCounts ai_closed_form(unsigned n) {
  require_n(n);
  static const std::array<Rational, 4> alpha{Rational(3, 8), Rational(3, 8), Rational(-3, 8),
                                             Rational(-3, 8)};
  static const std::array<Rational, 4> beta{Rational(1, 8), Rational(-3, 8), Rational(3, 8),
                                            Rational(-1, 8)};
  static const std::array<Rational, 4> gamma{Rational(1, 8), Rational(3, 8), Rational(3, 8),
                                             Rational(1, 8)};
  const Rational two_n = pow2(static_cast<int>(n));
  const int s = sign_pow(n);
  XiCounts out{n, {}};
  for (std::size_t i = 0; i < 4; ++i) {
    out.a[i] = to_integer(two_n * (alpha[i] + s * beta[i] + two_n * gamma[i]));
  }
  return out;
}

Mu3MassIdentity mu3_mass_identity(unsigned n, const Rational& t) {
  CubeDynParams{n, t}.validate();
  if (n > kExactPhiCap) throw Error(ErrorKind::kTooLarge, "mass identity needs n <= 6");
  Mu3MassIdentity out;
  // The all-zeros vertex is PointId 0 of the cube; Phi(mu)(0) is the mu^3
  // mass of the median preimage of 0.
  out.direct = phi(hypercube(n), mu_t(n, t))[0];

  const XiCounts counts = ai_closed_form(n);
  const Rational denom = power(Rational(8), n - 1);
  for (unsigned i = 0; i < 4; ++i) {
    out.from_counts += Rational(counts.a[i]) * power(t, 3 - i) * power(1 - t, i) / denom;
  }
  out.from_phi = phi_poly(n, t) * pow2(1 - static_cast<int>(n));
  return out;
}

bool mu3_mass_identity_check(unsigned n, const Rational& t) {
  return mu3_mass_identity(n, t).holds();
}

std::optional<Rational> QuadraticNumber::as_rational() const {
  if (b == 0 || d == 0) return a;
  const BigInt p = boost::multiprecision::numerator(d);
  const BigInt q = boost::multiprecision::denominator(d);
  const auto sp = exact_sqrt(p);
  const auto sq = exact_sqrt(q);
  if (!sp || !sq) return std::nullopt;
  return a + b * Rational(*sp, *sq);
}

double QuadraticNumber::approx() const {
  return static_cast<double>(a) + static_cast<double>(b) * std::sqrt(static_cast<double>(d));
}

std::string QuadraticNumber::to_string() const {
  if (auto r = as_rational()) return medlab::to_string(*r);
  std::ostringstream os;
  os << medlab::to_string(a) << (b < 0 ? " - " : " + ") << medlab::to_string(b < 0 ? Rational(-b) : b)
     << "*sqrt(" << medlab::to_string(d) << ")";
  return os.str();
}

std::vector<FixedPoint> phi_fixed_points(unsigned n) {
  require_n(n);
  const Rational half(1, 2);
  std::vector<FixedPoint> roots{{{half, 0, 0}, 1}};

  // t^2 - t + c = 0  <=>  t = 1/2 +- sqrt(1 - 4c) / 2
  const Rational disc = 1 - 4 * quadratic_constant(n);
  auto add = [&](const QuadraticNumber& r, unsigned mult) {
    for (auto& fp : roots) {
      if (fp.value == r) {
        fp.multiplicity += mult;
        return;
      }
    }
    roots.push_back({r, mult});
  };
  if (disc == 0) {
    add({half, 0, 0}, 2);
  } else if (disc > 0) {
    const QuadraticNumber plus{half, half, disc};
    if (auto s = plus.as_rational()) {
      const Rational root_delta = *s - half;
      for (const Rational& r : {Rational(half - root_delta), Rational(half + root_delta)}) {
        if (r >= 0 && r <= 1) add({r, 0, 0}, 1);
      }
    } else if (disc < 1) {
      // Irrational roots lie in [0,1] exactly when sqrt(disc) <= 1.
      add({half, Rational(-1, 2), disc}, 1);
      add(plus, 1);
    }
  }
  std::sort(roots.begin(), roots.end(),
            [](const FixedPoint& x, const FixedPoint& y) { return x.value.approx() < y.value.approx(); });
  return roots;
}

}  // namespace medlab
