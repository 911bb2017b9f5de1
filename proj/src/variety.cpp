#include "caraset/variety.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "roots.hpp"

namespace caraset {

namespace {

std::string fmt_complex(Complex c) {
  std::ostringstream os;
  os.precision(6);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double grad_norm(const std::array<Complex, 3>& g) {
  return std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
}

// P restricted to the complex line p + t d, as dense coefficients in t.
std::vector<Complex> restrict_to_line(const Polynomial3& p, const std::array<Complex, 3>& base,
                                      const std::array<Complex, 3>& dir) {
  std::array<std::vector<Polynomial1>, 3> powers;
  for (std::size_t j = 0; j < 3; ++j) {
    const Polynomial1 lin =
        Polynomial1::constant(base[j]) + Polynomial1::variable(0) * dir[j];
    powers[j].push_back(Polynomial1::constant(1.0));
    for (int k = 1; k <= p.degree_in(j); ++k) powers[j].push_back(powers[j].back() * lin);
  }
  Polynomial1 out;
  for (const auto& [e, c] : p.terms()) {
    out += powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * c;
  }
  return dense_coefficients(out);
}

}  // namespace

std::array<std::size_t, 2> free_coordinates(Axis axis) noexcept {
  switch (axis) {
    case Axis::X: return {1, 2};
    case Axis::Y: return {0, 2};
    case Axis::Z: break;
  }
  return {0, 1};
}

std::array<Complex, 3> RationalGraph::embed(Complex u, Complex v, Complex w) const noexcept {
  std::array<Complex, 3> out{};
  const auto [i, j] = free_coordinates(axis);
  out[i] = u;
  out[j] = v;
  out[axis_index(axis)] = w;
  return out;
}

std::optional<Complex> RationalGraph::solve_v(Complex u, Complex w) const noexcept {
  // a1 u + a2 v + a3 u v = w (1 + b1 u + b2 v + b3 u v), linear in v.
  const Complex lin = a[1] + a[2] * u - w * (b[1] + b[2] * u);
  const Complex rhs = w * (1.0 + b[0] * u) - a[0] * u;
  if (std::abs(lin) <= 1e-300) return std::nullopt;
  return rhs / lin;
}

std::optional<Complex> RationalGraph::solve_u(Complex v, Complex w) const noexcept {
  const Complex lin = a[0] + a[2] * v - w * (b[0] + b[2] * v);
  const Complex rhs = w * (1.0 + b[1] * v) - a[1] * v;
  if (std::abs(lin) <= 1e-300) return std::nullopt;
  return rhs / lin;
}

Polynomial3 RationalGraph::rebuild() const {
  const auto [i, j] = free_coordinates(axis);
  const Polynomial3 u = Polynomial3::variable(i);
  const Polynomial3 v = Polynomial3::variable(j);
  const Polynomial3 w = Polynomial3::variable(axis_index(axis));
  const Polynomial3 num = a[0] * u + a[1] * v + a[2] * (u * v);
  const Polynomial3 den = Polynomial3::constant(1.0) + b[0] * u + b[1] * v + b[2] * (u * v);
  return den * w - num;
}

KalphaParams KalphaParams::normalized(std::array<Complex, 3> alpha) {
  double top = 0.0;
  for (Complex c : alpha) top = std::max(top, std::abs(c));
  if (top == 0.0) throw Error(ErrorCode::InvalidArgument, "alpha must not be all zero");
  for (Complex& c : alpha) c /= top;
  for (Complex c : alpha) {
    if (std::abs(c) <= 1e-12) continue;
    const bool flip = c.real() < -1e-12 || (std::abs(c.real()) <= 1e-12 && c.imag() < 0.0);
    if (flip) {
      for (Complex& d : alpha) d = -d;
    }
    break;
  }
  for (Complex& c : alpha) {
    if (std::abs(c) <= 1e-15) c = 0.0;
  }
  KalphaParams out;
  out.alpha = alpha;
  out.is_triangle = triangle_test({std::abs(alpha[0]), std::abs(alpha[1]), std::abs(alpha[2])});
  return out;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Retract: return "Retract";
    case Verdict::ExceptionalK: return "ExceptionalK";
    case Verdict::NeitherStructure: return "NeitherStructure";
  }
  return "Unknown";
}

bool is_member(const Polynomial3& p, std::span<const Complex> point, double tol) {
  if (point.size() != 3) {
    throw Error(ErrorCode::DimensionMismatch, "membership needs a point of D^3");
  }
  return std::abs(p(point)) <= tol * (1.0 + p.coefficient_norm1());
}

std::array<Complex, 3> grad_poly(const Polynomial3& p, std::span<const Complex> point) {
  return {p.derivative(0)(point), p.derivative(1)(point), p.derivative(2)(point)};
}

bool is_squarefree(const Polynomial3& p, int samples, double tol, unsigned long long seed) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  const std::array<Polynomial3, 3> grads{p.derivative(0), p.derivative(1), p.derivative(2)};
  const double scale = std::max(1.0, p.coefficient_norm1());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto random_in_disk = [&](double radius) {
    while (true) {
      const Complex c(unit(rng), unit(rng));
      if (std::abs(c) < 1.0) return c * radius;
    }
  };

  int found = 0;
  int good = 0;
  const int max_lines = 50 * samples;
  for (int line = 0; line < max_lines && found < samples; ++line) {
    std::array<Complex, 3> base{}, dir{};
    for (std::size_t j = 0; j < 3; ++j) {
      base[j] = random_in_disk(0.9);
      dir[j] = random_in_disk(1.0);
    }
    const std::vector<Complex> coeffs = restrict_to_line(p, base, dir);
    for (Complex t : detail::polynomial_roots(coeffs)) {
      std::array<Complex, 3> q{};
      bool inside = true;
      for (std::size_t j = 0; j < 3; ++j) {
        q[j] = base[j] + t * dir[j];
        inside = inside && std::abs(q[j]) < 1.0;
      }
      if (!inside) continue;
      ++found;
      const std::array<Complex, 3> g{grads[0](q), grads[1](q), grads[2](q)};
      if (grad_norm(g) > tol * scale) ++good;
      if (found >= samples) break;
    }
  }
  if (found == 0) {
    throw Error(ErrorCode::UnableToSample, "no zero-set points found in the open tridisk");
  }
  return static_cast<double>(good) >= 0.99 * static_cast<double>(found);
}

TangentPlane tangent_plane_at_origin(const Polynomial3& p) {
  const std::array<Complex, 3> zero{};
  const Complex value = p(zero);
  if (std::abs(value) > kOriginTolerance * std::max(1.0, p.coefficient_max())) {
    throw Error(ErrorCode::NotThroughOrigin, "|P(0)| = " + fmt_real(std::abs(value)));
  }
  const std::array<Complex, 3> g = grad_poly(p, zero);
  const double n = grad_norm(g);
  if (n <= kSingularGradientTolerance * std::max(1.0, p.coefficient_max())) {
    throw Error(ErrorCode::SingularAtOrigin, "|grad P(0)| = " + fmt_real(n));
  }
  return {g[0] / n, g[1] / n, g[2] / n};
}

NormalizedVariety normalize_to_origin(const Polynomial3& p, const PolydiskPoint& p0) {
  if (p0.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "base point must lie in D^3");
  if (!is_member(p, p0, kMembershipTolerance)) {
    throw Error(ErrorCode::MemberCheckFailed,
                "|P(p0)| = " + fmt_real(std::abs(p(p0.coords()))));
  }
  PolydiskAutomorphism phi = PolydiskAutomorphism::centering(p0);

  // x_j = (w_j + a_j) / (1 + conj(a_j) w_j); clear denominators coordinatewise.
  std::array<std::vector<Polynomial3>, 3> num_pow, den_pow;
  std::array<int, 3> deg{};
  for (std::size_t j = 0; j < 3; ++j) {
    const Complex a = p0[j];
    deg[j] = p.degree_in(j);
    const Polynomial3 w = Polynomial3::variable(j);
    const Polynomial3 num = w + Polynomial3::constant(a);
    const Polynomial3 den = Polynomial3::constant(1.0) + std::conj(a) * w;
    num_pow[j].push_back(Polynomial3::constant(1.0));
    den_pow[j].push_back(Polynomial3::constant(1.0));
    for (int k = 1; k <= deg[j]; ++k) {
      num_pow[j].push_back(num_pow[j].back() * num);
      den_pow[j].push_back(den_pow[j].back() * den);
    }
  }
  Polynomial3 out;
  for (const auto& [e, c] : p.terms()) {
    Polynomial3 term = Polynomial3::constant(c);
    for (std::size_t j = 0; j < 3; ++j) {
      term = term * num_pow[j][e[j]] * den_pow[j][deg[j] - e[j]];
    }
    out += term;
  }
  // The constant term is P(p0) times a unit; it is zero up to the membership tolerance.
  auto terms = out.terms();
  terms.erase(Exponent<3>{0, 0, 0});
  const Polynomial3 snapped(std::move(terms));
  if (snapped.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "normalized polynomial vanishes");
  return {snapped * Complex(1.0 / snapped.coefficient_max()), std::move(phi)};
}

RationalGraph graph_extract(const Polynomial3& p, Axis axis) {
  const std::size_t k = axis_index(axis);
  const auto [iu, iv] = free_coordinates(axis);
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot extract a graph from 0");
  if (std::abs(p.coefficient({0, 0, 0})) > kOriginTolerance * std::max(1.0, p.coefficient_max())) {
    throw Error(ErrorCode::NotThroughOrigin,
                "|P(0)| = " + fmt_real(std::abs(p.coefficient({0, 0, 0}))));
  }
  const int d = p.degree_in(k);
  if (d != 1) {
    throw Error(ErrorCode::NotDegreeOneInAxis, "degree " + std::to_string(d) + " in coordinate " +
                                                   std::to_string(k + 1));
  }
  // P = D(u, v) w - N(u, v) with D, N keyed by (deg_u, deg_v).
  std::map<std::pair<int, int>, Complex> den, num;
  std::vector<std::string> excess;
  for (const auto& [e, c] : p.terms()) {
    const int eu = e[iu];
    const int ev = e[iv];
    if (eu > 1 || ev > 1) {
      excess.push_back(to_string(Polynomial3(Polynomial3::Terms{{e, c}})));
      continue;
    }
    (e[k] == 1 ? den : num)[{eu, ev}] += (e[k] == 1 ? c : -c);
  }
  const Complex d0 = den.count({0, 0}) ? den[{0, 0}] : Complex{};
  if (std::abs(d0) <= kOriginTolerance * std::max(1.0, p.coefficient_max())) {
    throw Error(ErrorCode::DenominatorVanishesAtOrigin,
                "coefficient of the solved coordinate vanishes at the origin");
  }
  if (!excess.empty()) {
    std::string list;
    for (const std::string& s : excess) list += (list.empty() ? "" : ", ") + s;
    throw Error(ErrorCode::ExcessDegree, "bidegree above (1,1): " + list);
  }
  auto get = [](const std::map<std::pair<int, int>, Complex>& m, int a, int b) {
    const auto it = m.find({a, b});
    return it == m.end() ? Complex{} : it->second;
  };
  RationalGraph g;
  g.axis = axis;
  g.a = {get(num, 1, 0) / d0, get(num, 0, 1) / d0, get(num, 1, 1) / d0};
  g.b = {get(den, 1, 0) / d0, get(den, 0, 1) / d0, get(den, 1, 1) / d0};
  return g;
}

bool triangle_test(const std::array<double, 3>& t) {
  for (double v : t) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "triangle test needs nonnegative finite lengths");
    }
  }
  if (t[0] == 0.0 && t[1] == 0.0 && t[2] == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "triangle test of three zero lengths");
  }
  return t[0] < t[1] + t[2] && t[1] < t[0] + t[2] && t[2] < t[0] + t[1];
}

Polynomial3 kalpha_poly(const KalphaParams& params) {
  const auto& al = params.alpha;
  if (al[0] == 0.0 && al[1] == 0.0 && al[2] == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "alpha must not be all zero");
  }
  const Polynomial3 x = Polynomial3::variable(0);
  const Polynomial3 y = Polynomial3::variable(1);
  const Polynomial3 z = Polynomial3::variable(2);
  return al[0] * x + al[1] * y + al[2] * z - std::conj(al[0]) * (y * z) -
         std::conj(al[1]) * (x * z) - std::conj(al[2]) * (x * y);
}

KalphaParams canonical_kalpha(const RationalGraph& g) {
  const auto& a = g.a;
  const auto& b = g.b;
  double scale = 1.0;
  for (std::size_t j = 0; j < 3; ++j) scale = std::max({scale, std::abs(a[j]), std::abs(b[j])});
  const double tol = kKalphaConstraintTolerance * scale;

  auto violated = [](const std::string& what, double residual) {
    throw Error(ErrorCode::ConstraintViolated, what + " (residual " + fmt_real(residual) + ")");
  };
  const double m3 = std::abs(a[2]);
  if (std::abs(m3 - 1.0) > tol) violated("|a3| = " + fmt_real(m3) + " != 1", std::abs(m3 - 1.0));
  if (std::abs(b[2]) > tol) violated("b3 = " + fmt_complex(b[2]) + " != 0", std::abs(b[2]));
  const Complex r1 = b[0] - std::conj(a[1]) * a[2];
  if (std::abs(r1) > tol) violated("b1 != conj(a2) a3", std::abs(r1));
  const Complex r2 = b[1] - std::conj(a[0]) * a[2];
  if (std::abs(r2) > tol) violated("b2 != conj(a1) a3", std::abs(r2));

  const Complex beta = std::sqrt(std::conj(a[2]));
  return KalphaParams::normalized({a[0] * beta, a[1] * beta, -beta});
}

ClassificationResult classify(const Polynomial3& p, const PolydiskPoint& p0,
                              const ClassifyOptions& options) {
  ClassificationResult result;
  auto& diag = result.diagnostics;
  validate_defining_polynomial(p);
  if (p0.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "base point must lie in D^3");

  if (!is_member(p, p0, options.membership_tol)) {
    diag.push_back({"membership", "failed"});
    throw Error(ErrorCode::MemberCheckFailed,
                "|P(p0)| = " + fmt_real(std::abs(p(p0.coords()))));
  }
  diag.push_back({"membership", "ok"});

  if (!is_squarefree(p, options.squarefree_samples, kSquarefreeGradientTolerance)) {
    diag.push_back({"squarefree", "failed"});
    throw Error(ErrorCode::NotSquarefree, "gradient vanishes on a sampled component");
  }
  diag.push_back({"squarefree", "ok"});

  NormalizedVariety nv = normalize_to_origin(p, p0);
  result.normalizer = nv.automorphism;
  diag.push_back({"normalize", "ok"});

  const TangentPlane tp = tangent_plane_at_origin(nv.polynomial);
  const std::array<double, 3> moduli{std::abs(tp.a), std::abs(tp.b), std::abs(tp.c)};
  const bool tri = triangle_test(moduli);
  diag.push_back({"tangent_plane", "(" + fmt_complex(tp.a) + ", " + fmt_complex(tp.b) + ", " +
                                       fmt_complex(tp.c) + ")" + (tri ? " triangle" : " non-triangle")});
  if (!tri) {
    result.verdict = Verdict::Retract;
    result.reason = "tangent plane moduli do not form a triangle";
    return result;
  }

  std::optional<RationalGraph> graph_z;
  for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
    const std::string stage = "graph_extract[" + std::to_string(static_cast<int>(axis)) + "]";
    try {
      RationalGraph g = graph_extract(nv.polynomial, axis);
      diag.push_back({stage, "ok"});
      if (axis == Axis::Z) graph_z = g;
    } catch (const Error& e) {
      diag.push_back({stage, e.what()});
      result.verdict = Verdict::NeitherStructure;
      result.reason = stage + ": " + e.what();
      return result;
    }
  }

  try {
    const KalphaParams params = canonical_kalpha(*graph_z);
    diag.push_back({"canonical_kalpha", params.is_triangle ? "triangle" : "non-triangle"});
    if (params.is_triangle) {
      result.verdict = Verdict::ExceptionalK;
      result.kalpha = params;
      result.reason = "K_alpha normal form with triangle parameters";
    } else {
      result.verdict = Verdict::Retract;
      result.reason = "K_alpha normal form with non-triangle parameters";
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ConstraintViolated) throw;
    diag.push_back({"canonical_kalpha", e.what()});
    result.verdict = Verdict::NeitherStructure;
    result.reason = e.detail();
  }
  return result;
}

}  // namespace caraset
