#include "caraset/extremals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "roots.hpp"

namespace caraset {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

double wrap_pi(double theta) {
  double t = wrap_two_pi(theta);
  if (t > std::numbers::pi) t -= kTwoPi;
  return t;
}

// Winding number of b around 0 along n uniform samples of the unit circle.
template <class F>
int winding(const F& b, int n) {
  double total = 0.0;
  Complex prev = b(Complex(1.0, 0.0));
  for (int k = 1; k <= n; ++k) {
    const Complex cur = b(std::polar(1.0, kTwoPi * k / n));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

}  // namespace

Complex ExtremalFunction::operator()(std::span<const Complex> z) const {
  const std::vector<Complex> q = base_automorphism.apply_raw(z);
  Complex out{};
  for (std::size_t j = 0; j < q.size(); ++j) out += weights[j] * q[j];
  return out;
}

ExtremalFunction balanced_extremal(const PolydiskPoint& lambda, const PolydiskPoint& mu) {
  if (lambda.dim() != 3 || mu.dim() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "extremal functions are built on D^3");
  }
  ExtremalFunction f;
  f.base_automorphism = PolydiskAutomorphism::centering(lambda);
  const std::vector<Complex> q = f.base_automorphism.apply_raw(mu.coords());
  std::array<double, 3> dist{};
  for (std::size_t j = 0; j < 3; ++j) dist[j] = rho_raw(lambda[j], mu[j]);
  const double top = *std::max_element(dist.begin(), dist.end());
  if (top == 0.0) throw Error(ErrorCode::IdenticalPair, "extremal of a pair of identical points");

  for (std::size_t j = 0; j < 3; ++j) {
    if (top - dist[j] <= kExtremalTieTolerance && std::abs(q[j]) > 0.0) f.coordinates.push_back(j);
  }
  const double n = static_cast<double>(f.coordinates.size());
  const Complex lead = q[f.coordinates.front()] / std::abs(q[f.coordinates.front()]);
  for (std::size_t j : f.coordinates) {
    const Complex u = q[j] / std::abs(q[j]);
    f.omegas.push_back(u / lead);
    f.weights[j] = std::conj(u) / n;
  }
  f.kind = f.coordinates.size() == 1 ? ExtremalFunction::Kind::Coordinate
                                     : ExtremalFunction::Kind::Averaged;
  return f;
}

FlatDisk FlatDisk::make(std::array<Complex, 3> direction) {
  double top = 0.0;
  for (Complex d : direction) top = std::max(top, std::abs(d));
  if (top > 1.0 + 1e-12 || top < 1.0 - 1e-12) {
    throw Error(ErrorCode::InvalidArgument,
                "flat disk direction needs max modulus 1, got " + std::to_string(top));
  }
  return FlatDisk{direction};
}

bool flat_disk_check(const Polynomial3& p, const FlatDisk& d, int samples) {
  if (samples < p.total_degree() + 1) {
    throw Error(ErrorCode::InvalidArgument, "flat disk check needs more samples than the degree");
  }
  const double tol = kFlatDiskTolerance * (1.0 + p.coefficient_norm1());
  for (int k = 0; k < samples; ++k) {
    const Complex zeta = std::polar(kSliceRadius, kTwoPi * k / samples);
    if (!(std::abs(p(d.at(zeta))) < tol)) return false;
  }
  return true;
}

double ArcT::length() const noexcept {
  double total = 0.0;
  for (const auto& [s, e] : intervals) total += e - s;
  return total;
}

bool ArcT::contains(double theta) const noexcept {
  const double t = wrap_two_pi(theta);
  return std::any_of(intervals.begin(), intervals.end(),
                     [t](const auto& iv) { return iv.first < t && t < iv.second; });
}

std::vector<double> ArcT::grid(int n) const {
  std::vector<double> out;
  const double total = length();
  if (n <= 0 || total <= 0.0) return out;
  out.reserve(static_cast<std::size_t>(n));
  std::size_t iv = 0;
  double consumed = 0.0;
  for (int k = 0; k < n; ++k) {
    const double target = total * (k + 0.5) / n;
    while (iv + 1 < intervals.size() &&
           consumed + (intervals[iv].second - intervals[iv].first) < target) {
      consumed += intervals[iv].second - intervals[iv].first;
      ++iv;
    }
    out.push_back(intervals[iv].first + (target - consumed));
  }
  return out;
}

ArcT t_arc(const RationalGraph& g) {
  // |p + omega q|^2 = |p|^2 + |q|^2 + 2 |p||q| cos(theta + phi0) < 1.
  const Complex p = g.a[0];
  const Complex q = g.a[1];
  const double mp = std::abs(p);
  const double mq = std::abs(q);
  ArcT arc;
  if (mp == 0.0 || mq == 0.0) {
    if (std::max(mp, mq) < 1.0) arc.intervals.push_back({0.0, kTwoPi});
    return arc;
  }
  const double c = (1.0 - mp * mp - mq * mq) / (2.0 * mp * mq);
  if (c <= -1.0) return arc;
  const double phi0 = std::arg(q) - std::arg(p);
  if (c > 1.0) {
    arc.intervals.push_back({0.0, kTwoPi});
    return arc;
  }
  const double half = std::acos(c);
  const double start = wrap_two_pi(half - phi0);
  const double len = kTwoPi - 2.0 * half;
  const double end = start + len;
  if (end <= kTwoPi) {
    arc.intervals.push_back({start, end});
  } else {
    arc.intervals.push_back({0.0, end - kTwoPi});
    arc.intervals.push_back({start, kTwoPi});
  }
  return arc;
}

FlatDisk infinitesimal_disk(const RationalGraph& g, double omega_angle) {
  const Complex omega = std::polar(1.0, omega_angle);
  return FlatDisk::make(g.embed(1.0, omega, g.a[0] + omega * g.a[1]));
}

InfinitesimalDisks infinitesimal_disks(const RationalGraph& g) {
  const Complex p = g.a[0];
  const Complex q = g.a[1];
  const double mp = std::abs(p);
  const double mq = std::abs(q);
  InfinitesimalDisks out;
  if (mp == 0.0 || mq == 0.0) {
    if (std::abs(std::max(mp, mq) - 1.0) <= 1e-12) {
      out.degenerate = true;
      for (int k = 0; k < 8; ++k) {
        const double theta = wrap_pi(kTwoPi * k / 8);
        out.angles.push_back(theta);
        out.disks.push_back(infinitesimal_disk(g, theta));
      }
    }
    return out;
  }
  const double c = (1.0 - mp * mp - mq * mq) / (2.0 * mp * mq);
  if (c < -1.0 || c > 1.0) return out;
  const double phi0 = std::arg(q) - std::arg(p);
  const double half = std::acos(c);
  out.angles.push_back(wrap_pi(half - phi0));
  if (half > 0.0 && half < std::numbers::pi) out.angles.push_back(wrap_pi(-half - phi0));
  std::sort(out.angles.begin(), out.angles.end());
  for (double theta : out.angles) out.disks.push_back(infinitesimal_disk(g, theta));
  return out;
}

bool retract_criterion(const RationalGraph& g) {
  return std::abs(g.a[0]) + std::abs(g.a[1]) <= 1.0 + 1e-15;
}

Polynomial2 w_locus(const Polynomial3& p, const RationalGraph& g) {
  const std::size_t k = axis_index(g.axis);
  const auto [iu, iv] = free_coordinates(g.axis);
  const Polynomial3 pw = p.derivative(k);
  if (pw.is_zero()) return {};

  const Polynomial2 u = Polynomial2::variable(0);
  const Polynomial2 v = Polynomial2::variable(1);
  const Polynomial2 num = g.a[0] * u + g.a[1] * v + g.a[2] * (u * v);
  const Polynomial2 den = Polynomial2::constant(1.0) + g.b[0] * u + g.b[1] * v + g.b[2] * (u * v);
  const int m = pw.degree_in(k);
  std::vector<Polynomial2> num_pow{Polynomial2::constant(1.0)};
  std::vector<Polynomial2> den_pow{Polynomial2::constant(1.0)};
  for (int j = 1; j <= m; ++j) {
    num_pow.push_back(num_pow.back() * num);
    den_pow.push_back(den_pow.back() * den);
  }
  Polynomial2 out;
  for (const auto& [e, c] : pw.terms()) {
    const Polynomial2 mono = Polynomial2::from_terms(
        std::vector<std::pair<Exponent<2>, Complex>>{{{e[iu], e[iv]}, c}});
    out += mono * num_pow[e[k]] * den_pow[m - e[k]];
  }
  return out;
}

std::vector<double> s_exceptions(const Polynomial3& p, const RationalGraph& g, const ArcT& arc,
                                 int grid) {
  if (grid < 64) throw Error(ErrorCode::InvalidArgument, "s_exceptions needs grid >= 64");
  const Polynomial2 locus = w_locus(p, g);
  std::vector<double> out;
  const double tol = kLocusZeroTolerance * std::max(1.0, locus.coefficient_max());
  for (double theta : arc.grid(grid)) {
    const Complex omega = std::polar(1.0, theta);
    std::vector<Complex> coeffs(static_cast<std::size_t>(locus.total_degree()) + 1);
    for (const auto& [e, c] : locus.terms()) {
      coeffs[static_cast<std::size_t>(e[0] + e[1])] += c * std::pow(omega, e[1]);
    }
    const bool vanishes = std::all_of(coeffs.begin(), coeffs.end(),
                                      [tol](Complex c) { return std::abs(c) < tol; });
    if (vanishes) out.push_back(theta);
  }
  return out;
}

std::string_view to_string(BlaschkeResult::Status s) noexcept {
  switch (s) {
    case BlaschkeResult::Status::Ok: return "Ok";
    case BlaschkeResult::Status::NotInner: return "NotInner";
    case BlaschkeResult::Status::PoleOnBoundary: return "PoleOnBoundary";
  }
  return "Unknown";
}

BlaschkeResult blaschke_degree(const RationalGraph& g, Unimodular omega, int boundary_samples) {
  if (boundary_samples < 1024) {
    throw Error(ErrorCode::InvalidArgument, "blaschke_degree needs at least 1024 boundary samples");
  }
  const Complex w = omega.value();
  // b(zeta) = (n1 zeta + n2 zeta^2) / (1 + d1 zeta + d2 zeta^2).
  const Complex n1 = g.a[0] + g.a[1] * w;
  const Complex n2 = g.a[2] * w;
  const Complex d1 = g.b[0] + g.b[1] * w;
  const Complex d2 = g.b[2] * w;
  auto b = [&](Complex zeta) { return zeta * (n1 + n2 * zeta) / (1.0 + zeta * (d1 + d2 * zeta)); };

  BlaschkeResult out;
  const std::array<Complex, 3> den{1.0, d1, d2};
  for (Complex r : detail::polynomial_roots(den)) {
    if (std::abs(std::abs(r) - 1.0) <= kBoundaryPoleTolerance) {
      out.status = BlaschkeResult::Status::PoleOnBoundary;
      return out;
    }
  }

  out.profile.min_modulus = std::numeric_limits<double>::infinity();
  for (int k = 0; k < boundary_samples; ++k) {
    const double m = std::abs(b(std::polar(1.0, kTwoPi * k / boundary_samples)));
    out.profile.min_modulus = std::min(out.profile.min_modulus, m);
    out.profile.max_modulus = std::max(out.profile.max_modulus, m);
    out.max_deviation = std::max(out.max_deviation, std::abs(m - 1.0));
  }
  if (out.max_deviation >= kInnerTolerance) out.status = BlaschkeResult::Status::NotInner;
  if (out.profile.min_modulus <= 1e-12) return out;

  // Double the sample count until the winding number agrees across two refinements.
  int n = boundary_samples;
  int w0 = winding(b, n);
  int w1 = winding(b, 2 * n);
  int w2 = winding(b, 4 * n);
  constexpr int kMaxSamples = 1 << 24;
  while ((w0 != w1 || w1 != w2) && 8 * n <= kMaxSamples) {
    n *= 2;
    w0 = w1;
    w1 = w2;
    w2 = winding(b, 4 * n);
  }
  out.degree = w2;
  out.samples_used = 4 * n;
  return out;
}

ScanResult scan_slices(const Polynomial3& p, const RationalGraph& g, int grid,
                       int boundary_samples) {
  ScanResult out;
  out.arc = t_arc(g);
  out.exceptions = s_exceptions(p, g, out.arc, grid);
  out.angles = out.arc.grid(grid);
  for (double theta : out.angles) {
    const BlaschkeResult r = blaschke_degree(g, Unimodular::from_angle(theta), boundary_samples);
    out.degrees.push_back(r.degree);
    out.deviations.push_back(r.max_deviation);
    out.statuses.push_back(r.status);
  }
  return out;
}

}  // namespace caraset
