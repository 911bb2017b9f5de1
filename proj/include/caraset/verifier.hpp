#pragma once

// Lower bounds for the intrinsic Carathéodory distance of a variety in D^3
// that is a graph over two coordinates, and gap reports against the polydisk
// distance.
//
// Candidates are polynomials of bounded degree in coordinates normalized at
// the first point of a pair. By the maximum principle on the one-dimensional
// slices of the variety, the sup of such a polynomial over the variety is
// attained on the boundary pieces where two coordinates are unimodular. The
// constraint and validation grids therefore live on those pieces.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caraset/extremals.hpp"
#include "caraset/hyperbolic.hpp"
#include "caraset/polynomial.hpp"
#include "caraset/variety.hpp"

namespace caraset {

inline constexpr int kMaxCandidateDegree = 8;
inline constexpr double kSampleRadius = 0.95;
inline constexpr double kDefaultGapThreshold = 0.02;

using Point3 = std::array<Complex, 3>;

/// Low-discrepancy (Halton) samples (x, y, kappa(x, y)) with |x|, |y|, |kappa| < 0.95.
/// Coordinates are placed by the graph's axis.
std::vector<PolydiskPoint> sample_on_variety(const RationalGraph& g, int n, std::uint64_t seed);

/// Points of the slice disks zeta -> (zeta, omega zeta, kappa(zeta, omega zeta)) with
/// omega uniform on the arc and the hyperbolic radius of zeta uniform up to atanh(radius).
std::vector<PolydiskPoint> sample_slices(const RationalGraph& g, const ArcT& arc, int n,
                                         std::uint64_t seed, double radius = 0.999);

struct CandidateSpace {
  RationalGraph graph;
  int degree = 4;
  /// Constraint points per boundary piece; rounded to a square side.
  int grid = 4096;
  int directions = 32;
  int exchange_rounds = 4;

  int side() const;
  /// Boundary points of the variety in coordinates centered at lambda: each of
  /// the three pieces uses a side x side angle grid shifted by `offset` cells.
  std::vector<Point3> boundary_grid(const PolydiskPoint& lambda, int side, double offset) const;
  std::vector<Point3> constraint_grid(const PolydiskPoint& lambda) const;
  /// Nine times as many points as the constraint grid, disjoint from it.
  std::vector<Point3> validation_grid(const PolydiskPoint& lambda) const;
};

/// A polynomial in coordinates centered at lambda.
struct Witness {
  enum class Source { PolydiskExtremal, Polynomial };

  Source source = Source::PolydiskExtremal;
  int degree = 0;
  PolydiskAutomorphism normalizer;
  std::vector<Exponent<3>> exponents;
  std::vector<Complex> coefficients;
  /// Sup of the unscaled candidate over the checked boundary points.
  double validation_sup = 1.0;

  Complex operator()(std::span<const Complex> z) const;
  Complex operator()(const PolydiskPoint& z) const { return (*this)(z.coords()); }
  std::string id() const;
};

struct LowerBound {
  double value = 0.0;
  Witness witness;
  int iterations = 0;
};

LowerBound cara_lower_bound(const CandidateSpace& space, const PolydiskPoint& lambda,
                            const PolydiskPoint& mu);

enum class PairKind { Generic, TwoBalanced, ThreeBalanced };
std::string_view to_string(PairKind k) noexcept;
std::optional<PairKind> pair_kind_from_string(std::string_view s) noexcept;

struct SampledPair {
  PolydiskPoint lambda;
  PolydiskPoint mu;
  PairKind kind = PairKind::Generic;
};

/// One third near 3-balanced, one third 2-balanced, one third generic, in that
/// repeating order. Deterministic given the seed.
std::vector<SampledPair> sample_pairs(const RationalGraph& g, int n, std::uint64_t seed);

struct GapOptions {
  int degree = 4;
  int grid = 4096;
  double threshold = kDefaultGapThreshold;
  std::uint64_t seed = 0;
  /// 0 means available hardware parallelism.
  int threads = 1;
};

struct PairReport {
  PolydiskPoint lambda;
  PolydiskPoint mu;
  PairKind kind = PairKind::Generic;
  int balance = 1;
  double c_polydisk = 0.0;
  double c_lower = 0.0;
  std::string witness_id;
  double gap = 0.0;
};

struct GapSummary {
  double max_gap = 0.0;
  double mean_gap = 0.0;
  int above_threshold = 0;
  double threshold = kDefaultGapThreshold;
  std::string verdict = "consistent";
};

struct GapReport {
  /// The options the report was produced with; threads does not affect results.
  GapOptions options;
  std::vector<PairReport> pairs;
  GapSummary summary;
};

/// Fills the summary from the pair list.
GapSummary summarize(const std::vector<PairReport>& pairs, double threshold);

GapReport gap_report(const RationalGraph& g, const Polynomial3& p, int n_pairs,
                     const GapOptions& options);

/// Covering radius of phi(samples) over the 64 x 64 polar grid of 0.95 D.
double extremal_range_coverage(const ExtremalFunction& phi,
                               const std::vector<PolydiskPoint>& samples);

}  // namespace caraset
