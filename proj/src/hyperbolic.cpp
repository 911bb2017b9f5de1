#include "caraset/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace caraset {

namespace {

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// 1 - |z|^2 without forming |z| first.
double one_minus_norm(Complex z) noexcept {
  const double x = z.real();
  const double y = z.imag();
  return std::fma(-x, x, std::fma(-y, y, 1.0));
}

void require_same_dim(const PolydiskPoint& a, const PolydiskPoint& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

DiskPoint::DiskPoint(Complex z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) >= 1.0) {
    throw Error(ErrorCode::OutsideDisk, "|z| >= 1 for z = " + describe(z));
  }
}

Unimodular::Unimodular(Complex u) {
  const double r = std::abs(u);
  if (!(std::abs(r - 1.0) <= kUnimodularTolerance)) {
    throw Error(ErrorCode::NotUnimodular, "|u| = " + std::to_string(r));
  }
  u_ = u / r;
}

Unimodular Unimodular::from_angle(double theta) {
  return Unimodular(std::polar(1.0, theta));
}

Unimodular Unimodular::conj() const noexcept {
  Unimodular out;
  out.u_ = std::conj(u_);
  return out;
}

PolydiskPoint::PolydiskPoint(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty() || coords_.size() > 3) {
    throw Error(ErrorCode::DimensionMismatch,
                "polydisk dimension must be 1..3, got " + std::to_string(coords_.size()));
  }
  for (const Complex& c : coords_) {
    (void)DiskPoint(c);
  }
}

PolydiskPoint PolydiskPoint::origin(std::size_t dim) {
  return PolydiskPoint(std::vector<Complex>(dim, Complex{}));
}

bool PolydiskPoint::near_boundary() const noexcept {
  return std::any_of(coords_.begin(), coords_.end(), [](Complex c) {
    return std::abs(c) >= 1.0 - kNearBoundaryBand;
  });
}

Complex MobiusMap::operator()(Complex zeta) const noexcept {
  const Complex a = a_.value();
  return (a - zeta) / (1.0 - std::conj(a) * zeta);
}

DiskPoint MobiusMap::apply(DiskPoint zeta) const {
  Complex w = (*this)(zeta.value());
  // Rounding can push an image of a point within an ulp of the circle onto it.
  const double r = std::abs(w);
  if (r >= 1.0) {
    w *= std::nextafter(1.0, 0.0) / r;
  }
  return DiskPoint(w);
}

PolydiskAutomorphism::PolydiskAutomorphism(std::vector<std::size_t> permutation,
                                           std::vector<Factor> factors)
    : permutation_(std::move(permutation)), factors_(std::move(factors)) {
  const std::size_t d = factors_.size();
  if (permutation_.size() != d || d == 0 || d > 3) {
    throw Error(ErrorCode::DimensionMismatch, "automorphism permutation/factor size mismatch");
  }
  std::vector<std::size_t> sorted = permutation_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 0; j < d; ++j) {
    if (sorted[j] != j) {
      throw Error(ErrorCode::InvalidArgument, "not a permutation of 0..d-1");
    }
  }
}

PolydiskAutomorphism PolydiskAutomorphism::identity(std::size_t dim) {
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  // m_0(z) = -z, so the rotation -1 undoes it.
  std::vector<Factor> factors(dim, Factor{MobiusMap{}, Unimodular(Complex{-1.0, 0.0})});
  return {std::move(perm), std::move(factors)};
}

PolydiskAutomorphism PolydiskAutomorphism::centering(const PolydiskPoint& p) {
  std::vector<std::size_t> perm(p.dim());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<Factor> factors;
  factors.reserve(p.dim());
  for (Complex c : p.coords()) {
    factors.push_back(Factor{MobiusMap(DiskPoint(c)), Unimodular(Complex{-1.0, 0.0})});
  }
  return {std::move(perm), std::move(factors)};
}

std::vector<Complex> PolydiskAutomorphism::apply_raw(std::span<const Complex> p) const {
  if (p.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "automorphism of D^" + std::to_string(dim()) + " applied to point of dimension " +
                    std::to_string(p.size()));
  }
  std::vector<Complex> out(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    out[j] = factors_[j].rotation.value() * factors_[j].mobius(p[permutation_[j]]);
  }
  return out;
}

PolydiskPoint PolydiskAutomorphism::apply(const PolydiskPoint& p) const {
  std::vector<Complex> out = apply_raw(p.coords());
  for (Complex& c : out) {
    const double r = std::abs(c);
    if (r >= 1.0) c *= std::nextafter(1.0, 0.0) / r;
  }
  return PolydiskPoint(std::move(out));
}

PolydiskAutomorphism PolydiskAutomorphism::inverse() const {
  // Uses m_a(conj(u) q) = conj(u) m_{u a}(q).
  const std::size_t d = dim();
  std::vector<std::size_t> inv_perm(d);
  std::vector<Factor> inv_factors(d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t k = permutation_[j];
    const Factor& f = factors_[j];
    inv_perm[k] = j;
    inv_factors[k] = Factor{MobiusMap(DiskPoint(f.rotation.value() * f.mobius.pole().value())),
                            f.rotation.conj()};
  }
  return {std::move(inv_perm), std::move(inv_factors)};
}

double rho_raw(Complex z, Complex w) noexcept {
  // |1 - conj(w) z|^2 = (1 - |z|^2)(1 - |w|^2) + |z - w|^2 keeps the
  // denominator accurate near the boundary and the formula symmetric.
  const double d = std::abs(z - w);
  if (d == 0.0) return 0.0;
  const double a = one_minus_norm(z) * one_minus_norm(w);
  const double denom = std::sqrt(std::max(a, 0.0) + d * d);
  return std::min(d / denom, std::nextafter(1.0, 0.0));
}

double rho(DiskPoint z, DiskPoint w) noexcept {
  return rho_raw(z.value(), w.value());
}

DiskPoint mobius_apply(const MobiusMap& m, DiskPoint zeta) {
  return m.apply(zeta);
}

PolydiskPoint automorphism_apply(const PolydiskAutomorphism& phi, const PolydiskPoint& p) {
  return phi.apply(p);
}

double carath_polydisk(const PolydiskPoint& lambda, const PolydiskPoint& mu) {
  require_same_dim(lambda, mu);
  double best = 0.0;
  for (std::size_t j = 0; j < lambda.dim(); ++j) {
    best = std::max(best, rho_raw(lambda[j], mu[j]));
  }
  return best;
}

BalanceType balance_type(const PolydiskPoint& lambda, const PolydiskPoint& mu) {
  require_same_dim(lambda, mu);
  const std::size_t d = lambda.dim();
  BalanceType out;
  out.distances.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    out.distances[j] = rho_raw(lambda[j], mu[j]);
  }
  const double top = *std::max_element(out.distances.begin(), out.distances.end());
  if (top == 0.0) {
    throw Error(ErrorCode::IdenticalPair, "balance type of a pair of identical points");
  }
  std::vector<std::size_t> balanced;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < d; ++j) {
    (top - out.distances[j] <= kBalanceTieTolerance ? balanced : rest).push_back(j);
  }
  std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
    return out.distances[a] > out.distances[b];
  });
  out.n = static_cast<int>(balanced.size());
  out.ordering = std::move(balanced);
  out.ordering.insert(out.ordering.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace caraset
