#pragma once

// Pseudo-hyperbolic geometry of the unit disk and of the polydisks D^1..D^3.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "caraset/error.hpp"

namespace caraset {

using Complex = std::complex<double>;

/// Moduli in [1 - kNearBoundaryBand, 1) are accepted but reported as near-boundary.
inline constexpr double kNearBoundaryBand = 1e-12;
/// Coordinate distances within this band of the maximum count as balanced.
inline constexpr double kBalanceTieTolerance = 1e-9;
/// Maximum modulus error accepted when constructing a unimodular constant.
inline constexpr double kUnimodularTolerance = 1e-14;

/// A point of the open unit disk.
class DiskPoint {
 public:
  DiskPoint() = default;
  DiskPoint(Complex z);  // NOLINT(google-explicit-constructor): throws OutsideDisk when |z| >= 1
  DiskPoint(double re, double im = 0.0) : DiskPoint(Complex(re, im)) {}

  Complex value() const noexcept { return z_; }
  double modulus() const noexcept { return std::abs(z_); }
  bool near_boundary() const noexcept { return modulus() >= 1.0 - kNearBoundaryBand; }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  Complex z_{0.0, 0.0};
};

/// A complex number of modulus one. Inputs are renormalized at construction.
class Unimodular {
 public:
  Unimodular() = default;
  explicit Unimodular(Complex u);
  static Unimodular from_angle(double theta);

  Complex value() const noexcept { return u_; }
  Unimodular conj() const noexcept;
  double angle() const noexcept { return std::arg(u_); }

 private:
  Complex u_{1.0, 0.0};
};

/// A point of D^d, d in {1, 2, 3}.
class PolydiskPoint {
 public:
  PolydiskPoint() = default;
  explicit PolydiskPoint(std::vector<Complex> coords);
  PolydiskPoint(std::initializer_list<Complex> coords)
      : PolydiskPoint(std::vector<Complex>(coords)) {}

  static PolydiskPoint origin(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  Complex operator[](std::size_t j) const { return coords_[j]; }
  std::span<const Complex> coords() const noexcept { return coords_; }
  bool near_boundary() const noexcept;

  friend bool operator==(const PolydiskPoint&, const PolydiskPoint&) = default;

 private:
  std::vector<Complex> coords_;
};

/// m_a(zeta) = (a - zeta) / (1 - conj(a) zeta). An involution of the disk
/// exchanging a and 0; it maps the unit circle to itself.
class MobiusMap {
 public:
  MobiusMap() = default;
  explicit MobiusMap(DiskPoint a) : a_(a) {}

  DiskPoint pole() const noexcept { return a_; }

  /// Evaluates the formula for any zeta with 1 - conj(a) zeta != 0, including
  /// points on the unit circle.
  Complex operator()(Complex zeta) const noexcept;
  DiskPoint apply(DiskPoint zeta) const;

 private:
  DiskPoint a_;
};

/// p -> q with q_j = rotation_j * m_{a_j}(p_{permutation_j}).
///
/// Permutation entries are 0-based source indices.
class PolydiskAutomorphism {
 public:
  struct Factor {
    MobiusMap mobius;
    Unimodular rotation;
  };

  PolydiskAutomorphism() = default;
  PolydiskAutomorphism(std::vector<std::size_t> permutation, std::vector<Factor> factors);

  static PolydiskAutomorphism identity(std::size_t dim);
  /// Coordinatewise z -> -m_{p_j}(z) = (z - p_j)/(1 - conj(p_j) z); sends p to
  /// the origin and reduces to the identity at p = 0.
  static PolydiskAutomorphism centering(const PolydiskPoint& p);

  std::size_t dim() const noexcept { return factors_.size(); }
  const std::vector<std::size_t>& permutation() const noexcept { return permutation_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }

  PolydiskPoint apply(const PolydiskPoint& p) const;
  /// Same formula on raw coordinates; used for closed-polydisk points.
  std::vector<Complex> apply_raw(std::span<const Complex> p) const;
  PolydiskAutomorphism inverse() const;

 private:
  std::vector<std::size_t> permutation_;
  std::vector<Factor> factors_;
};

struct BalanceType {
  int n = 0;
  /// Coordinate indices (0-based) sorted by distance, balanced block first.
  std::vector<std::size_t> ordering;
  std::vector<double> distances;
};

double rho(DiskPoint z, DiskPoint w) noexcept;
/// Unchecked variant for points known to lie in the closed disk.
double rho_raw(Complex z, Complex w) noexcept;

DiskPoint mobius_apply(const MobiusMap& m, DiskPoint zeta);
PolydiskPoint automorphism_apply(const PolydiskAutomorphism& phi, const PolydiskPoint& p);

/// Carathéodory distance of D^d: the largest coordinate pseudo-hyperbolic distance.
double carath_polydisk(const PolydiskPoint& lambda, const PolydiskPoint& mu);

BalanceType balance_type(const PolydiskPoint& lambda, const PolydiskPoint& mu);

}  // namespace caraset
