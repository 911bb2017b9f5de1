#pragma once

// Extremal functions for balanced pairs, flat disks, the arc T, the loci W
// and S, and Blaschke-degree scans of the disk slices zeta -> (zeta, omega zeta).

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "caraset/hyperbolic.hpp"
#include "caraset/polynomial.hpp"
#include "caraset/variety.hpp"

namespace caraset {

/// Coordinates whose distance ties the maximum within this band are averaged.
inline constexpr double kExtremalTieTolerance = 1e-12;
inline constexpr double kFlatDiskTolerance = 1e-12;
inline constexpr double kSliceRadius = 0.9;
inline constexpr double kInnerTolerance = 1e-6;
inline constexpr double kBoundaryPoleTolerance = 1e-9;
inline constexpr double kLocusZeroTolerance = 1e-12;

/// phi(z) = sum_j weights_j * q_j(z) with q = base_automorphism(z), so phi(lambda) = 0.
struct ExtremalFunction {
  enum class Kind { Coordinate, Averaged };

  PolydiskAutomorphism base_automorphism;
  std::array<Complex, 3> weights{};
  Kind kind = Kind::Coordinate;
  /// Index of the coordinate for Kind::Coordinate; balanced indices otherwise.
  std::vector<std::size_t> coordinates;
  /// Unimodular alignment constants of the balanced coordinates (same order).
  std::vector<Complex> omegas;

  Complex operator()(std::span<const Complex> z) const;
  Complex operator()(const PolydiskPoint& z) const { return (*this)(z.coords()); }
  int balance() const noexcept { return static_cast<int>(coordinates.size()); }
};

ExtremalFunction balanced_extremal(const PolydiskPoint& lambda, const PolydiskPoint& mu);

/// zeta -> (d1 zeta, d2 zeta, d3 zeta).
struct FlatDisk {
  std::array<Complex, 3> direction{};

  /// Validates |d_j| <= 1 with at least one entry unimodular (tolerance 1e-12).
  static FlatDisk make(std::array<Complex, 3> direction);
  std::array<Complex, 3> at(Complex zeta) const noexcept {
    return {direction[0] * zeta, direction[1] * zeta, direction[2] * zeta};
  }
};

bool flat_disk_check(const Polynomial3& p, const FlatDisk& d, int samples);

/// Open arcs of the unit circle as [start, end) angle pairs inside [0, 2 pi].
struct ArcT {
  std::vector<std::pair<double, double>> intervals;

  double length() const noexcept;
  bool contains(double theta) const noexcept;
  /// n angles at the midpoints of n equal pieces of the total length.
  std::vector<double> grid(int n) const;
};

ArcT t_arc(const RationalGraph& g);

struct InfinitesimalDisks {
  /// Angles in (-pi, pi] where |a1 + omega a2| = 1.
  std::vector<double> angles;
  std::vector<FlatDisk> disks;
  /// |a1 + omega a2| = 1 for every omega; `disks` then holds a sample of the family.
  bool degenerate = false;
};

InfinitesimalDisks infinitesimal_disks(const RationalGraph& g);

/// The disk zeta -> (zeta, omega zeta, (a1 + omega a2) zeta) in (x, y, z) order.
FlatDisk infinitesimal_disk(const RationalGraph& g, double omega_angle);

bool retract_criterion(const RationalGraph& g);

/// Numerator of P_w(u, v, N/D) with D^{deg_w P_w} cleared, w the graph's axis.
/// Its variables are the graph's free coordinates in increasing order.
Polynomial2 w_locus(const Polynomial3& p, const RationalGraph& g);

/// Grid angles of T whose slice disk (zeta, omega zeta) lies inside the W locus.
std::vector<double> s_exceptions(const Polynomial3& p, const RationalGraph& g, const ArcT& arc,
                                 int grid);

struct BoundaryProfile {
  double min_modulus = 0.0;
  double max_modulus = 0.0;
};

struct BlaschkeResult {
  enum class Status { Ok, NotInner, PoleOnBoundary };

  Status status = Status::Ok;
  /// Winding number of b(zeta) = kappa(zeta, omega zeta) around 0 on |zeta| = 1.
  int degree = 0;
  double max_deviation = 0.0;
  BoundaryProfile profile;
  int samples_used = 0;
};

std::string_view to_string(BlaschkeResult::Status s) noexcept;

BlaschkeResult blaschke_degree(const RationalGraph& g, Unimodular omega, int boundary_samples);

struct ScanResult {
  ArcT arc;
  std::vector<double> exceptions;
  std::vector<double> angles;
  std::vector<int> degrees;
  std::vector<double> deviations;
  std::vector<BlaschkeResult::Status> statuses;
};

/// T, S and the Blaschke degree at `grid` angles across T.
ScanResult scan_slices(const Polynomial3& p, const RationalGraph& g, int grid,
                       int boundary_samples = 1024);

}  // namespace caraset
