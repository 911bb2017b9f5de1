#pragma once

// Codimension-one algebraic subsets of D^3 given by one polynomial, their
// graph form near a point, and the retract / K / neither classification.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "caraset/hyperbolic.hpp"
#include "caraset/polynomial.hpp"

namespace caraset {

inline constexpr double kMembershipTolerance = 1e-9;
inline constexpr double kOriginTolerance = 1e-12;
inline constexpr double kSingularGradientTolerance = 1e-9;
inline constexpr double kKalphaConstraintTolerance = 1e-9;
inline constexpr double kSquarefreeGradientTolerance = 1e-6;

/// The coordinate solved for by a graph.
enum class Axis { X = 1, Y = 2, Z = 3 };

/// Indices (0-based) of the two free coordinates of a graph over `axis`, in increasing order.
std::array<std::size_t, 2> free_coordinates(Axis axis) noexcept;
inline std::size_t axis_index(Axis axis) noexcept { return static_cast<std::size_t>(axis) - 1; }

/// kappa(u, v) = (a1 u + a2 v + a3 u v) / (1 + b1 u + b2 v + b3 u v), where
/// (u, v) are the free coordinates in increasing order.
struct RationalGraph {
  std::array<Complex, 3> a{};
  std::array<Complex, 3> b{};
  Axis axis = Axis::Z;

  Complex numerator(Complex u, Complex v) const noexcept {
    return a[0] * u + a[1] * v + a[2] * u * v;
  }
  Complex denominator(Complex u, Complex v) const noexcept {
    return 1.0 + b[0] * u + b[1] * v + b[2] * u * v;
  }
  Complex operator()(Complex u, Complex v) const noexcept {
    return numerator(u, v) / denominator(u, v);
  }

  /// Places (u, v, kappa) into (x, y, z) order.
  std::array<Complex, 3> embed(Complex u, Complex v, Complex w) const noexcept;

  /// Solves kappa(u, v) = w for v (or for u) given the other two values.
  /// Returns nullopt when the linear coefficient vanishes.
  std::optional<Complex> solve_v(Complex u, Complex w) const noexcept;
  std::optional<Complex> solve_u(Complex v, Complex w) const noexcept;

  /// D * w - N as a polynomial in (x, y, z).
  Polynomial3 rebuild() const;
};

struct TangentPlane {
  Complex a, b, c;
};

/// Parameters of K_alpha = { alpha1 x + alpha2 y + alpha3 z
///                           = conj(alpha1) yz + conj(alpha2) xz + conj(alpha3) xy }.
struct KalphaParams {
  std::array<Complex, 3> alpha{};
  bool is_triangle = false;

  /// Positive rescaling to max modulus one and sign fixing; both leave the set unchanged.
  static KalphaParams normalized(std::array<Complex, 3> alpha);
};

enum class Verdict { Retract, ExceptionalK, NeitherStructure };
std::string_view to_string(Verdict v) noexcept;

struct StageRecord {
  std::string stage;
  std::string outcome;
};

struct ClassificationResult {
  Verdict verdict = Verdict::NeitherStructure;
  std::optional<KalphaParams> kalpha;
  std::string reason;
  PolydiskAutomorphism normalizer;
  std::vector<StageRecord> diagnostics;
};

struct NormalizedVariety {
  Polynomial3 polynomial;
  PolydiskAutomorphism automorphism;
};

bool is_member(const Polynomial3& p, std::span<const Complex> point, double tol);
inline bool is_member(const Polynomial3& p, const PolydiskPoint& point, double tol) {
  return is_member(p, point.coords(), tol);
}

std::array<Complex, 3> grad_poly(const Polynomial3& p, std::span<const Complex> point);

/// Gradient-sampling squarefree heuristic: a repeated factor makes the
/// gradient vanish along a whole component of the zero set.
bool is_squarefree(const Polynomial3& p, int samples, double tol, unsigned long long seed = 0x5eed);

TangentPlane tangent_plane_at_origin(const Polynomial3& p);

/// P' = P o Phi^{-1} with denominators cleared, Phi the coordinatewise
/// disk automorphism (z - a)/(1 - conj(a) z) sending p0 to the origin.
NormalizedVariety normalize_to_origin(const Polynomial3& p, const PolydiskPoint& p0);

RationalGraph graph_extract(const Polynomial3& p, Axis axis);

/// Strict triangle inequality for every permutation.
bool triangle_test(const std::array<double, 3>& t);

Polynomial3 kalpha_poly(const KalphaParams& params);
KalphaParams canonical_kalpha(const RationalGraph& g);

struct ClassifyOptions {
  int squarefree_samples = 200;
  double membership_tol = kMembershipTolerance;
};

ClassificationResult classify(const Polynomial3& p, const PolydiskPoint& p0,
                              const ClassifyOptions& options = {});

}  // namespace caraset
