#include "caraset/verifier.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "parallel.hpp"
#include "polygon_lp.hpp"

namespace caraset {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDenominatorFloor = 1e-6;
constexpr double kRankTolerance = 1e-9;
constexpr std::size_t kExchangeBatch = 512;
constexpr double kSeedSlack = 0.05;

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Halton sequence over the first `dims` primes, starting at an index derived from the seed.
class Halton {
 public:
  Halton(int dims, std::uint64_t seed) : dims_(dims), index_(1 + seed * 1000003ULL) {}
  std::array<double, 4> next() {
    static constexpr std::array<std::uint64_t, 4> kPrimes{2, 3, 5, 7};
    std::array<double, 4> u{};
    for (int d = 0; d < dims_; ++d) u[static_cast<std::size_t>(d)] = radical_inverse(index_, kPrimes[static_cast<std::size_t>(d)]);
    ++index_;
    return u;
  }

 private:
  int dims_;
  std::uint64_t index_;
};

Complex center(Complex z, Complex a) { return (z - a) / (1.0 - std::conj(a) * z); }
Complex uncenter(Complex w, Complex a) { return (w + a) / (1.0 + std::conj(a) * w); }

bool inside(const Point3& p, double radius) {
  return std::abs(p[0]) < radius && std::abs(p[1]) < radius && std::abs(p[2]) < radius;
}

// kappa(u, v) when the denominator is safely away from zero.
std::optional<Complex> graph_value(const RationalGraph& g, Complex u, Complex v) {
  const Complex den = g.denominator(u, v);
  if (std::abs(den) <= kDenominatorFloor) return std::nullopt;
  return g.numerator(u, v) / den;
}

std::vector<Exponent<3>> monomials(int degree) {
  std::vector<Exponent<3>> out;
  for (int d = 1; d <= degree; ++d) {
    for (int i = d; i >= 0; --i) {
      for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
    }
  }
  return out;
}

// Row of monomial values w^e for each exponent.
void monomial_row(const Point3& w, const std::vector<Exponent<3>>& exps, int degree,
                  Complex* out) {
  std::array<std::array<Complex, kMaxCandidateDegree + 1>, 3> pw{};
  for (std::size_t j = 0; j < 3; ++j) {
    pw[j][0] = 1.0;
    for (int k = 1; k <= degree; ++k) pw[j][static_cast<std::size_t>(k)] = pw[j][static_cast<std::size_t>(k - 1)] * w[j];
  }
  for (std::size_t m = 0; m < exps.size(); ++m) {
    const auto& e = exps[m];
    out[m] = pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])] *
             pw[2][static_cast<std::size_t>(e[2])];
  }
}

Eigen::MatrixXcd monomial_matrix(const std::vector<Point3>& pts, const std::vector<Exponent<3>>& exps,
                                 int degree) {
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(
      static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(exps.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    monomial_row(pts[i], exps, degree, m.row(static_cast<Eigen::Index>(i)).data());
  }
  return m;
}

Complex eval_poly(const Point3& w, const std::vector<Exponent<3>>& exps, int degree,
                  const Eigen::VectorXcd& coef) {
  std::array<Complex, 256> row{};
  monomial_row(w, exps, degree, row.data());
  Complex out{};
  for (std::size_t m = 0; m < exps.size(); ++m) out += row[m] * coef[static_cast<Eigen::Index>(m)];
  return out;
}

// Largest Re(exp(-i theta_t) phi) over the fan of `directions` angles.
double fan_value(Complex phi, int directions) {
  const double step = kTwoPi / directions;
  const double t = std::round(std::arg(phi) / step) * step;
  return phi.real() * std::cos(t) + phi.imag() * std::sin(t);
}

void check_on_graph(const RationalGraph& g, const PolydiskPoint& p, const char* name) {
  if (p.dim() != 3) throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must lie in D^3");
  const auto [iu, iv] = free_coordinates(g.axis);
  const Complex u = p[iu];
  const Complex v = p[iv];
  const Complex w = p[axis_index(g.axis)];
  const double residual = std::abs(g.denominator(u, v) * w - g.numerator(u, v));
  double scale = 1.0;
  for (std::size_t j = 0; j < 3; ++j) scale += std::abs(g.a[j]) + std::abs(g.b[j]);
  if (residual > kMembershipTolerance * scale) {
    throw Error(ErrorCode::MemberCheckFailed,
                std::string(name) + " is off the variety (residual " + std::to_string(residual) + ")");
  }
}

struct DegreeResult {
  double value = 0.0;
  Eigen::VectorXcd coef;
  std::vector<Exponent<3>> exps;
  double sup = 1.0;
  int iterations = 0;
};

DegreeResult solve_degree(const CandidateSpace& space, int degree, const std::vector<Point3>& grid,
                          const std::vector<Point3>& refine, const std::vector<Point3>& validation,
                          const Point3& wmu, std::vector<std::pair<Eigen::Index, int>>& cuts) {
  DegreeResult out;
  out.exps = monomials(degree);
  const Eigen::MatrixXcd m = monomial_matrix(grid, out.exps, degree);

  // Orthonormal basis of the candidate space restricted to the constraint grid.
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > kRankTolerance * s[0]) ++rank;
  const Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXcd c = svd.matrixV().leftCols(rank) * s.head(rank).cwiseInverse().asDiagonal();

  Eigen::Matrix<Complex, 1, Eigen::Dynamic> mu_row(static_cast<Eigen::Index>(out.exps.size()));
  monomial_row(wmu, out.exps, degree, mu_row.data());
  const Eigen::VectorXcd objective = (mu_row * c).transpose();

  const double bound = 2.0 * std::sqrt(static_cast<double>(grid.size())) + 1.0;
  detail::PolygonLP lp(objective, bound, space.directions);
  lp.add_rows(u);
  lp.seed_cuts(cuts);
  lp.solve();

  std::vector<char> used(refine.size(), 0);
  std::vector<Point3> added;
  for (int round = 0; round < space.exchange_rounds; ++round) {
    const Eigen::VectorXcd coef = c * lp.coefficients();
    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t i = 0; i < refine.size(); ++i) {
      if (used[i]) continue;
      const double v = fan_value(eval_poly(refine[i], out.exps, degree, coef), space.directions);
      if (v > 1.0 + 1e-9) violated.emplace_back(v, i);
    }
    if (violated.empty()) break;
    const std::size_t keep = std::min(kExchangeBatch, violated.size());
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(keep),
                      violated.end(), std::greater<>());
    std::vector<Point3> batch;
    for (std::size_t k = 0; k < keep; ++k) {
      used[violated[k].second] = 1;
      batch.push_back(refine[violated[k].second]);
    }
    lp.add_rows(monomial_matrix(batch, out.exps, degree) * c);
    added.insert(added.end(), batch.begin(), batch.end());
    lp.solve();
  }

  cuts.clear();
  for (const auto& cut : lp.active_cuts(kSeedSlack)) {
    if (cut.first < static_cast<Eigen::Index>(grid.size())) cuts.push_back(cut);
  }
  out.coef = c * lp.coefficients();
  out.iterations = lp.stats().iterations;
  double sup = 0.0;
  const std::array<const std::vector<Point3>*, 3> checked{&grid, &added, &validation};
  for (const std::vector<Point3>* set : checked) {
    for (const Point3& w : *set) sup = std::max(sup, std::abs(eval_poly(w, out.exps, degree, out.coef)));
  }
  out.sup = sup;
  out.value = sup > 0.0 ? std::abs(eval_poly(wmu, out.exps, degree, out.coef)) / sup : 0.0;
  return out;
}

}  // namespace

std::vector<PolydiskPoint> sample_on_variety(const RationalGraph& g, int n, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "sample count must be nonnegative");
  std::vector<PolydiskPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  Halton halton(4, seed);
  const long long max_attempts = 100LL * n;
  for (long long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n; ++attempt) {
    const auto u = halton.next();
    const Complex x = std::polar(kSampleRadius * std::sqrt(u[0]), kTwoPi * u[1]);
    const Complex y = std::polar(kSampleRadius * std::sqrt(u[2]), kTwoPi * u[3]);
    const auto z = graph_value(g, x, y);
    if (!z || !(std::abs(*z) < kSampleRadius)) continue;
    const Point3 p = g.embed(x, y, *z);
    out.emplace_back(std::vector<Complex>(p.begin(), p.end()));
  }
  if (static_cast<int>(out.size()) < n) {
    throw Error(ErrorCode::SamplingStarved, "accepted " + std::to_string(out.size()) + " of " +
                                                std::to_string(n) + " requested samples");
  }
  return out;
}

std::vector<PolydiskPoint> sample_slices(const RationalGraph& g, const ArcT& arc, int n,
                                         std::uint64_t seed, double radius) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "sample count must be nonnegative");
  if (!(radius > 0.0 && radius < 1.0)) throw Error(ErrorCode::InvalidArgument, "radius must lie in (0, 1)");
  const double total = arc.length();
  if (n > 0 && total <= 0.0) throw Error(ErrorCode::SamplingStarved, "the arc is empty");
  std::vector<PolydiskPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  Halton halton(3, seed);
  const double t_max = std::atanh(radius);
  const long long max_attempts = 100LL * n;
  for (long long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n; ++attempt) {
    const auto u = halton.next();
    const Complex zeta = std::polar(std::tanh(u[0] * t_max), kTwoPi * u[1]);
    double s = u[2] * total;
    double theta = arc.intervals.back().second;
    for (const auto& [a, b] : arc.intervals) {
      if (s < b - a) {
        theta = a + s;
        break;
      }
      s -= b - a;
    }
    const Complex v = std::polar(1.0, theta) * zeta;
    const auto w = graph_value(g, zeta, v);
    if (!w || !(std::abs(*w) < 1.0)) continue;
    const Point3 p = g.embed(zeta, v, *w);
    out.emplace_back(std::vector<Complex>(p.begin(), p.end()));
  }
  if (static_cast<int>(out.size()) < n) {
    throw Error(ErrorCode::SamplingStarved, "accepted " + std::to_string(out.size()) + " of " +
                                                std::to_string(n) + " requested slice samples");
  }
  return out;
}

int CandidateSpace::side() const {
  return std::max(8, static_cast<int>(std::lround(std::sqrt(static_cast<double>(grid)))));
}

std::vector<Point3> CandidateSpace::boundary_grid(const PolydiskPoint& lambda, int n,
                                                  double offset) const {
  const auto [iu, iv] = free_coordinates(graph.axis);
  const std::size_t iw = axis_index(graph.axis);
  std::vector<Complex> circle(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) circle[static_cast<std::size_t>(k)] = std::polar(1.0, kTwoPi * (k + offset) / n);

  std::vector<Point3> out;
  out.reserve(3 * circle.size() * circle.size());
  auto emit = [&](std::size_t i, Complex wi, std::size_t j, Complex wj, std::size_t k,
                  std::optional<Complex> solved) {
    if (!solved || !(std::abs(*solved) <= 1.0)) return;
    Point3 p{};
    p[i] = wi;
    p[j] = wj;
    p[k] = center(*solved, lambda[k]);
    out.push_back(p);
  };
  for (Complex a : circle) {
    for (Complex b : circle) {
      // Free coordinates unimodular.
      const Complex u = uncenter(a, lambda[iu]);
      const Complex v = uncenter(b, lambda[iv]);
      emit(iu, a, iv, b, iw, graph_value(graph, u, v));
      // First free coordinate and the solved coordinate unimodular.
      const Complex w = uncenter(b, lambda[iw]);
      emit(iu, a, iw, b, iv, graph.solve_v(u, w));
      // Second free coordinate and the solved coordinate unimodular.
      const Complex v2 = uncenter(a, lambda[iv]);
      emit(iv, a, iw, b, iu, graph.solve_u(v2, w));
    }
  }
  return out;
}

std::vector<Point3> CandidateSpace::constraint_grid(const PolydiskPoint& lambda) const {
  return boundary_grid(lambda, side(), 0.5);
}

std::vector<Point3> CandidateSpace::validation_grid(const PolydiskPoint& lambda) const {
  return boundary_grid(lambda, 3 * side(), 0.25);
}

Complex Witness::operator()(std::span<const Complex> z) const {
  const std::vector<Complex> w = normalizer.apply_raw(z);
  Complex out{};
  for (std::size_t m = 0; m < exponents.size(); ++m) {
    const auto& e = exponents[m];
    out += coefficients[m] * std::pow(w[0], e[0]) * std::pow(w[1], e[1]) * std::pow(w[2], e[2]);
  }
  return out;
}

std::string Witness::id() const {
  if (source == Source::PolydiskExtremal) return "extremal";
  return "poly-d" + std::to_string(degree);
}

LowerBound cara_lower_bound(const CandidateSpace& space, const PolydiskPoint& lambda,
                            const PolydiskPoint& mu) {
  if (space.degree < 1 || space.degree > kMaxCandidateDegree) {
    throw Error(ErrorCode::InvalidArgument, "candidate degree must lie in 1..8");
  }
  if (space.grid <= 0 || space.directions < 3 || space.exchange_rounds < 0) {
    throw Error(ErrorCode::InvalidArgument, "grid, directions and exchange rounds must be positive");
  }
  check_on_graph(space.graph, lambda, "lambda");
  check_on_graph(space.graph, mu, "mu");

  LowerBound out;
  out.witness.normalizer = PolydiskAutomorphism::centering(lambda);
  if (carath_polydisk(lambda, mu) == 0.0) return out;

  // The polydisk extremal is a degree-one candidate of sup at most one.
  const ExtremalFunction f = balanced_extremal(lambda, mu);
  out.witness.exponents = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  out.witness.coefficients = {f.weights[0], f.weights[1], f.weights[2]};
  out.witness.degree = 1;
  out.value = rho_raw(out.witness(lambda), out.witness(mu));

  const std::vector<Complex> wmu_vec = out.witness.normalizer.apply_raw(mu.coords());
  const Point3 wmu{wmu_vec[0], wmu_vec[1], wmu_vec[2]};
  const std::vector<Point3> grid = space.constraint_grid(lambda);
  const std::vector<Point3> refine = space.boundary_grid(lambda, 2 * space.side(), 0.25);
  const std::vector<Point3> validation = space.validation_grid(lambda);
  if (grid.empty()) throw Error(ErrorCode::SamplingStarved, "empty boundary grid");

  // Nested candidate spaces: the best over degrees 1..d never decreases in d.
  std::vector<std::pair<Eigen::Index, int>> cuts;
  for (int d = 1; d <= space.degree; ++d) {
    const DegreeResult r = solve_degree(space, d, grid, refine, validation, wmu, cuts);
    out.iterations += r.iterations;
    if (!(r.value > out.value)) continue;
    Witness w;
    w.source = Witness::Source::Polynomial;
    w.degree = d;
    w.normalizer = out.witness.normalizer;
    w.exponents = r.exps;
    w.coefficients.resize(r.exps.size());
    for (std::size_t m = 0; m < r.exps.size(); ++m) w.coefficients[m] = r.coef[static_cast<Eigen::Index>(m)] / r.sup;
    w.validation_sup = r.sup;
    const double value = rho_raw(w(lambda), w(mu));
    if (value > out.value) {
      out.value = value;
      out.witness = std::move(w);
    }
  }
  return out;
}

std::string_view to_string(PairKind k) noexcept {
  switch (k) {
    case PairKind::Generic: return "generic";
    case PairKind::TwoBalanced: return "2-balanced";
    case PairKind::ThreeBalanced: return "3-balanced";
  }
  return "unknown";
}

std::optional<PairKind> pair_kind_from_string(std::string_view s) noexcept {
  for (PairKind k : {PairKind::Generic, PairKind::TwoBalanced, PairKind::ThreeBalanced}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

namespace {

std::optional<PolydiskPoint> as_sample(const Point3& p) {
  if (!inside(p, kSampleRadius)) return std::nullopt;
  return PolydiskPoint(std::vector<Complex>(p.begin(), p.end()));
}

// mu with two coordinates at pseudo-hyperbolic distance r from lambda and the third closer.
std::optional<PolydiskPoint> two_balanced(const RationalGraph& g, const PolydiskPoint& lambda,
                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = 0.2 + 0.6 * unit(rng);
  const Complex s = std::polar(r, kTwoPi * unit(rng));
  const Complex t = std::polar(r, kTwoPi * unit(rng));
  const auto [iu, iv] = free_coordinates(g.axis);
  const std::size_t iw = axis_index(g.axis);
  const int which = static_cast<int>(unit(rng) * 3.0);
  Point3 p{};
  std::optional<Complex> third;
  std::size_t k = iw;
  if (which == 0) {
    p[iu] = uncenter(s, lambda[iu]);
    p[iv] = uncenter(t, lambda[iv]);
    third = graph_value(g, p[iu], p[iv]);
  } else if (which == 1) {
    p[iu] = uncenter(s, lambda[iu]);
    p[iw] = uncenter(t, lambda[iw]);
    third = g.solve_v(p[iu], p[iw]);
    k = iv;
  } else {
    p[iv] = uncenter(s, lambda[iv]);
    p[iw] = uncenter(t, lambda[iw]);
    third = g.solve_u(p[iv], p[iw]);
    k = iu;
  }
  if (!third || !(std::abs(*third) < kSampleRadius)) return std::nullopt;
  p[k] = *third;
  if (!(rho_raw(lambda[k], p[k]) < r - 1e-6)) return std::nullopt;
  return as_sample(p);
}

// mu with all three coordinates at distance r: the phase of the second
// coordinate is tuned by bisection so that the solved coordinate lands at r.
// Some varieties admit no such pair (on z = xy the third distance is strictly
// smaller); with allow_near the scanned phase of least imbalance is used.
std::optional<PolydiskPoint> three_balanced(const RationalGraph& g, const PolydiskPoint& lambda,
                                            std::mt19937_64& rng, bool allow_near) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = 0.2 + 0.6 * unit(rng);
  const auto [iu, iv] = free_coordinates(g.axis);
  const std::size_t iw = axis_index(g.axis);
  const Complex u = uncenter(std::polar(r, kTwoPi * unit(rng)), lambda[iu]);
  auto excess = [&](double psi) -> std::optional<double> {
    const Complex v = uncenter(std::polar(r, psi), lambda[iv]);
    const auto w = graph_value(g, u, v);
    if (!w || !(std::abs(*w) < kSampleRadius)) return std::nullopt;
    return rho_raw(lambda[iw], *w) - r;
  };
  constexpr int kScan = 720;
  std::vector<std::pair<double, double>> brackets;
  std::optional<double> prev = excess(0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double psi = kTwoPi * k / kScan;
    const std::optional<double> cur = excess(psi);
    if (prev && cur && ((*prev < 0.0) != (*cur < 0.0))) brackets.emplace_back(kTwoPi * (k - 1) / kScan, psi);
    prev = cur;
  }
  if (brackets.empty()) {
    if (!allow_near) return std::nullopt;
    std::optional<std::pair<double, double>> best;  // (|excess|, psi)
    for (int k = 0; k < kScan; ++k) {
      const double psi = kTwoPi * k / kScan;
      if (const auto e = excess(psi); e && (!best || std::abs(*e) < best->first)) best.emplace(std::abs(*e), psi);
    }
    if (!best) return std::nullopt;
    const Complex v = uncenter(std::polar(r, best->second), lambda[iv]);
    const auto w = graph_value(g, u, v);
    if (!w) return std::nullopt;
    return as_sample(g.embed(u, v, *w));
  }
  auto [a, b] = brackets[static_cast<std::size_t>(unit(rng) * static_cast<double>(brackets.size())) % brackets.size()];
  const bool neg_at_a = *excess(a) < 0.0;
  for (int it = 0; it < 80; ++it) {
    const double m = 0.5 * (a + b);
    const std::optional<double> e = excess(m);
    if (!e) return std::nullopt;
    if ((*e < 0.0) == neg_at_a) a = m; else b = m;
  }
  const Complex v = uncenter(std::polar(r, a), lambda[iv]);
  const auto w = graph_value(g, u, v);
  if (!w) return std::nullopt;
  const auto mu = as_sample(g.embed(u, v, *w));
  if (!mu || balance_type(lambda, *mu).n != 3) return std::nullopt;
  return mu;
}

}  // namespace

std::vector<SampledPair> sample_pairs(const RationalGraph& g, int n, std::uint64_t seed) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "pair count must be nonnegative");
  const std::vector<PolydiskPoint> base = sample_on_variety(g, n, seed);
  const std::vector<PolydiskPoint> partners = sample_on_variety(g, 4 * n, seed + 1);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<SampledPair> out;
  out.reserve(static_cast<std::size_t>(n));
  std::size_t next_partner = 0;
  constexpr int kMaxAttempts = 2000;
  constexpr int kExactAttempts = 64;
  for (int i = 0; i < n; ++i) {
    const PolydiskPoint& lambda = base[static_cast<std::size_t>(i)];
    const PairKind kind = i % 3 == 0 ? PairKind::ThreeBalanced
                        : i % 3 == 1 ? PairKind::TwoBalanced
                                     : PairKind::Generic;
    std::optional<PolydiskPoint> mu;
    for (int attempt = 0; attempt < kMaxAttempts && !mu; ++attempt) {
      switch (kind) {
        case PairKind::ThreeBalanced:
          mu = three_balanced(g, lambda, rng, attempt >= kExactAttempts);
          break;
        case PairKind::TwoBalanced: mu = two_balanced(g, lambda, rng); break;
        case PairKind::Generic:
          if (next_partner >= partners.size()) break;
          mu = partners[next_partner++];
          if (*mu == lambda || balance_type(lambda, *mu).n != 1) mu.reset();
          break;
      }
    }
    if (!mu) {
      throw Error(ErrorCode::SamplingStarved,
                  "could not build a " + std::string(to_string(kind)) + " partner for pair " + std::to_string(i));
    }
    out.push_back({lambda, *mu, kind});
  }
  return out;
}

GapSummary summarize(const std::vector<PairReport>& pairs, double threshold) {
  GapSummary s;
  s.threshold = threshold;
  double total = 0.0;
  for (const PairReport& p : pairs) {
    s.max_gap = std::max(s.max_gap, p.gap);
    total += p.gap;
    if (p.gap > threshold) ++s.above_threshold;
  }
  s.mean_gap = pairs.empty() ? 0.0 : total / static_cast<double>(pairs.size());
  if (s.max_gap > 3.0 * threshold) {
    s.verdict = "refuted";
  } else if (s.max_gap <= threshold) {
    s.verdict = "consistent";
  } else {
    s.verdict = "inconclusive";
  }
  return s;
}

GapReport gap_report(const RationalGraph& g, const Polynomial3& p, int n_pairs,
                     const GapOptions& options) {
  if (n_pairs < 1) throw Error(ErrorCode::InvalidArgument, "gap report needs at least one pair");
  if (!(options.threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be positive");
  const std::vector<SampledPair> pairs = sample_pairs(g, n_pairs, options.seed);
  for (const SampledPair& sp : pairs) {
    if (!is_member(p, sp.lambda, kMembershipTolerance) || !is_member(p, sp.mu, kMembershipTolerance)) {
      throw Error(ErrorCode::MemberCheckFailed, "sampled pair is off the zero set of P");
    }
  }
  CandidateSpace space;
  space.graph = g;
  space.degree = options.degree;
  space.grid = options.grid;

  GapReport report;
  report.options = options;
  report.pairs.resize(pairs.size());
  detail::parallel_for(pairs.size(), options.threads, [&](std::size_t i) {
    const SampledPair& sp = pairs[i];
    const LowerBound lb = cara_lower_bound(space, sp.lambda, sp.mu);
    PairReport& r = report.pairs[i];
    r.lambda = sp.lambda;
    r.mu = sp.mu;
    r.kind = sp.kind;
    r.balance = balance_type(sp.lambda, sp.mu).n;
    r.c_polydisk = carath_polydisk(sp.lambda, sp.mu);
    r.c_lower = std::max(lb.value, r.c_polydisk);
    r.witness_id = lb.witness.id();
    r.gap = r.c_lower - r.c_polydisk;
  });
  report.summary = summarize(report.pairs, options.threshold);
  return report;
}

double extremal_range_coverage(const ExtremalFunction& phi,
                               const std::vector<PolydiskPoint>& samples) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "coverage needs at least one sample");
  std::vector<Complex> image;
  image.reserve(samples.size());
  for (const PolydiskPoint& s : samples) image.push_back(phi(s));
  constexpr int kGrid = 64;
  double worst = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    const double radius = kSampleRadius * i / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const Complex target = std::polar(radius, kTwoPi * j / kGrid);
      double nearest = std::numeric_limits<double>::infinity();
      for (Complex c : image) nearest = std::min(nearest, rho_raw(target, c));
      worst = std::max(worst, nearest);
    }
  }
  return worst;
}

}  // namespace caraset
