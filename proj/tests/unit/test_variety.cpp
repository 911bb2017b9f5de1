#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "caraset/error.hpp"
#include "caraset/variety.hpp"

using namespace caraset;
using oracle::C;

namespace {

const C kOmega = std::polar(1.0, 2.0 * oracle::kPi / 3.0);

Polynomial3 poly(std::initializer_list<std::pair<Exponent<3>, Complex>> terms) {
  const std::vector<std::pair<Exponent<3>, Complex>> list(terms);
  return Polynomial3::from_terms(list);
}

Polynomial3 z_minus_xy() { return poly({{{0, 0, 1}, 1.0}, {{1, 1, 0}, -1.0}}); }
Polynomial3 z_minus_x_minus_y() { return poly({{{0, 0, 1}, 1.0}, {{1, 0, 0}, -1.0}, {{0, 1, 0}, -1.0}}); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("polynomial construction and evaluation") {
  const Polynomial3 k = k_polynomial();
  CHECK(k.terms() == Polynomial3(oracle::k_terms()).terms());
  CHECK(k.total_degree() == 2);
  CHECK(code_of([] { poly({{{1, 0, 0}, 1.0}, {{1, 0, 0}, 2.0}}); }) == ErrorCode::DuplicateExponent);
  CHECK(code_of([] { validate_defining_polynomial(Polynomial3()); }) == ErrorCode::ZeroPolynomial);
  CHECK(code_of([] { validate_defining_polynomial(Polynomial3::variable(0).pow(17)); }) ==
        ErrorCode::DegreeCapExceeded);
  // Tiny coefficients are dropped.
  CHECK(poly({{{1, 0, 0}, 1e-16}}).is_zero());
}

TEST_CASE("evaluation agrees with a naive monomial sum (property)") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> deg(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::array<int, 3>, C> terms;
    for (int t = 0; t < 8; ++t) terms[{deg(rng), deg(rng), deg(rng)}] = oracle::random_disk(rng, 2.0);
    const Polynomial3 p{Polynomial3::Terms(terms.begin(), terms.end())};
    const std::array<C, 3> x{oracle::random_disk(rng, 1.2), oracle::random_disk(rng, 1.2),
                             oracle::random_disk(rng, 1.2)};
    CHECK(close(p(x), oracle::eval(terms, x), 1e-11));
  }
}

TEST_CASE("arithmetic identities") {
  const Polynomial3 x = Polynomial3::variable(0), y = Polynomial3::variable(1);
  const Polynomial3 sq = (x + y).pow(2);
  CHECK(sq == x * x + Complex(2.0) * x * y + y * y);
  CHECK((sq - sq).is_zero());
  CHECK(sq.derivative(0) == Complex(2.0) * x + Complex(2.0) * y);
  CHECK(dense_coefficients(Polynomial1::variable(0).pow(3)) == std::vector<Complex>{0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("grad_poly examples") {
  const std::array<Complex, 3> o{};
  const auto gk = grad_poly(k_polynomial(), o);
  for (Complex g : gk) CHECK(close(g, 1.0, 1e-15));
  const auto gz = grad_poly(z_minus_xy(), o);
  CHECK(close(gz[0], 0.0, 0.0));
  CHECK(close(gz[2], 1.0, 0.0));
  for (Complex g : grad_poly(Polynomial3::variable(2).pow(2), o)) CHECK(g == Complex(0.0));
  // Symbolic gradient of K: (1 - y - z, 1 - x - z, 1 - x - y).
  const std::array<Complex, 3> p{C(0.1, 0.2), C(-0.3, 0.1), C(0.25, -0.4)};
  const auto g = grad_poly(k_polynomial(), p);
  CHECK(close(g[0], 1.0 - p[1] - p[2], 1e-15));
  CHECK(close(g[1], 1.0 - p[0] - p[2], 1e-15));
  CHECK(close(g[2], 1.0 - p[0] - p[1], 1e-15));
}

TEST_CASE("is_member examples") {
  const Polynomial3 k = k_polynomial();
  CHECK(is_member(k, PolydiskPoint::origin(3), 1e-9));
  CHECK(is_member(k, PolydiskPoint({0.3, -0.3, -0.09}), 1e-9));
  CHECK_FALSE(is_member(k, PolydiskPoint({0.1, 0.1, 0.1}), 1e-9));
  CHECK(std::abs(z_minus_x_minus_y()(std::array<Complex, 3>{0.1, 0.2, 0.3})) < 1e-15);
}

TEST_CASE("is_squarefree examples") {
  CHECK(is_squarefree(k_polynomial(), 200, kSquarefreeGradientTolerance));
  CHECK(is_squarefree(z_minus_x_minus_y(), 200, kSquarefreeGradientTolerance));
  CHECK_FALSE(is_squarefree(z_minus_xy().pow(2), 200, kSquarefreeGradientTolerance));
}

TEST_CASE("tangent_plane_at_origin examples") {
  const double s = 1.0 / std::sqrt(3.0);
  const TangentPlane k = tangent_plane_at_origin(k_polynomial());
  CHECK(close(k.a, s, 1e-15));
  CHECK(close(k.b, s, 1e-15));
  CHECK(close(k.c, s, 1e-15));
  const TangentPlane plane = tangent_plane_at_origin(z_minus_x_minus_y());
  CHECK(close(plane.a, -s, 1e-15));
  CHECK(close(plane.c, s, 1e-15));
  const TangentPlane xy = tangent_plane_at_origin(z_minus_xy());
  CHECK(close(xy.c, 1.0, 0.0));
  CHECK(code_of([] { tangent_plane_at_origin(k_polynomial() + Polynomial3::constant(0.5)); }) ==
        ErrorCode::NotThroughOrigin);
  CHECK(code_of([] { tangent_plane_at_origin(Polynomial3::variable(2).pow(2)); }) ==
        ErrorCode::SingularAtOrigin);
}

TEST_CASE("normalize_to_origin examples") {
  const NormalizedVariety same = normalize_to_origin(k_polynomial(), PolydiskPoint::origin(3));
  const Complex ratio = same.polynomial.coefficient({1, 0, 0});
  CHECK(same.polynomial == k_polynomial() * ratio);
  for (const auto& f : same.automorphism.factors()) CHECK(f.mobius.pole().value() == Complex(0.0));

  const PolydiskPoint p0({0.3, -0.3, -0.09});
  const NormalizedVariety moved = normalize_to_origin(k_polynomial(), p0);
  CHECK(std::abs(moved.polynomial(std::array<Complex, 3>{})) < 1e-12);

  const NormalizedVariety xy = normalize_to_origin(z_minus_xy(), PolydiskPoint({0.5, 0.5, 0.25}));
  CHECK(std::abs(xy.polynomial.coefficient({0, 0, 0})) < 1e-12);
  CHECK_NOTHROW(graph_extract(xy.polynomial, Axis::Z));

  CHECK(code_of([] { normalize_to_origin(k_polynomial(), PolydiskPoint({0.1, 0.1, 0.1})); }) ==
        ErrorCode::MemberCheckFailed);
}

TEST_CASE("membership transport under normalization (property)") {
  std::mt19937_64 rng(22);
  const Polynomial3 k = k_polynomial();
  int checked = 0;
  while (checked < 1000) {
    const C x = oracle::random_disk(rng, 0.9), y = oracle::random_disk(rng, 0.9);
    const C z = oracle::k_solve_z(x, y);
    if (std::abs(z) >= 0.95) continue;
    const PolydiskPoint p({x, y, z});
    const C a = oracle::random_disk(rng, 0.9), b = oracle::random_disk(rng, 0.9);
    const C c = oracle::k_solve_z(a, b);
    if (std::abs(c) >= 0.95) continue;
    const NormalizedVariety n = normalize_to_origin(k, PolydiskPoint({a, b, c}));
    CHECK(is_member(n.polynomial, automorphism_apply(n.automorphism, p), 1e-9));
    ++checked;
  }
}

TEST_CASE("graph_extract examples") {
  const RationalGraph k = graph_extract(k_polynomial(), Axis::Z);
  const std::array<Complex, 3> ka{-1.0, -1.0, 1.0}, kb{-1.0, -1.0, 0.0};
  for (int j = 0; j < 3; ++j) {
    CHECK(close(k.a[j], ka[j], 1e-15));
    CHECK(close(k.b[j], kb[j], 1e-15));
  }
  // The extracted graph solves K for z, as the hand solution does.
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const C x = oracle::random_disk(rng, 0.5), y = oracle::random_disk(rng, 0.5);
    CHECK(close(k(x, y), oracle::k_solve_z(x, y), 1e-12));
  }
  const RationalGraph xy = graph_extract(z_minus_xy(), Axis::Z);
  CHECK(close(xy.a[2], 1.0, 0.0));
  CHECK(close(xy.a[0], 0.0, 0.0));
  CHECK(close(xy.b[0], 0.0, 0.0));
  CHECK(code_of([] {
          graph_extract(poly({{{0, 0, 2}, 1.0}, {{1, 0, 0}, -1.0}}), Axis::Z);
        }) == ErrorCode::NotDegreeOneInAxis);
  CHECK(code_of([] {
          graph_extract(poly({{{0, 0, 1}, 1.0}, {{2, 0, 0}, -1.0}}), Axis::Z);
        }) == ErrorCode::ExcessDegree);
  CHECK(code_of([] {
          graph_extract(poly({{{1, 0, 1}, 1.0}, {{1, 0, 0}, -1.0}}), Axis::Z);
        }) == ErrorCode::DenominatorVanishesAtOrigin);
}

TEST_CASE("graph_extract inverts rebuild (property)") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 200; ++i) {
    RationalGraph g;
    g.axis = std::array<Axis, 3>{Axis::X, Axis::Y, Axis::Z}[i % 3];
    for (int j = 0; j < 3; ++j) {
      g.a[j] = oracle::random_disk(rng, 2.0);
      g.b[j] = oracle::random_disk(rng, 2.0);
    }
    const RationalGraph back = graph_extract(g.rebuild(), g.axis);
    for (int j = 0; j < 3; ++j) {
      CHECK(close(back.a[j], g.a[j], 1e-12));
      CHECK(close(back.b[j], g.b[j], 1e-12));
    }
  }
}

TEST_CASE("triangle_test examples") {
  CHECK(triangle_test({1, 1, 1}));
  CHECK_FALSE(triangle_test({2, 1, 1}));
  CHECK(triangle_test({3, 4, 5}));
  CHECK_FALSE(triangle_test({1, 0.5, 0.5}));
  CHECK_FALSE(triangle_test({0, 0, 1}));
}

TEST_CASE("kalpha_poly examples") {
  KalphaParams ones;
  ones.alpha = {1.0, 1.0, 1.0};
  CHECK(kalpha_poly(ones) == k_polynomial());
  KalphaParams last;
  last.alpha = {0.0, 0.0, 1.0};
  CHECK(kalpha_poly(last) == z_minus_xy());
  KalphaParams neg;
  neg.alpha = {-1.0, -1.0, -1.0};
  CHECK(kalpha_poly(neg) == k_polynomial() * Complex(-1.0));
  // Vanishes identically on the disk (zeta, omega zeta, omega^2 zeta).
  const Polynomial3 k = kalpha_poly(ones);
  for (int m = 0; m < 8; ++m) {
    const C zeta = std::polar(0.9, 2.0 * oracle::kPi * m / 8.0);
    CHECK(std::abs(k(std::array<Complex, 3>{zeta, kOmega * zeta, kOmega * kOmega * zeta})) < 1e-14);
  }
}

TEST_CASE("canonical_kalpha examples") {
  const KalphaParams k = canonical_kalpha(graph_extract(k_polynomial(), Axis::Z));
  for (Complex a : k.alpha) CHECK(close(a, 1.0, 1e-12));
  CHECK(k.is_triangle);

  const RationalGraph plane = graph_extract(z_minus_x_minus_y(), Axis::Z);
  CHECK(code_of([&] { canonical_kalpha(plane); }) == ErrorCode::ConstraintViolated);

  const KalphaParams xy = canonical_kalpha(graph_extract(z_minus_xy(), Axis::Z));
  CHECK(close(xy.alpha[0], 0.0, 1e-15));
  CHECK(close(xy.alpha[1], 0.0, 1e-15));
  CHECK(std::abs(xy.alpha[2]) == doctest::Approx(1.0));
  CHECK_FALSE(xy.is_triangle);
}

TEST_CASE("canonical_kalpha does not depend on the square-root branch (property)") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * oracle::kPi);
  for (int i = 0; i < 50; ++i) {
    KalphaParams params;
    params.alpha = {std::polar(0.8, angle(rng)), std::polar(0.6, angle(rng)), std::polar(1.0, angle(rng))};
    const Polynomial3 p = kalpha_poly(params);
    const KalphaParams a = canonical_kalpha(graph_extract(p, Axis::Z));
    const KalphaParams b = canonical_kalpha(graph_extract(p * Complex(-1.0), Axis::Z));
    const KalphaParams expected = KalphaParams::normalized(params.alpha);
    for (int j = 0; j < 3; ++j) {
      CHECK(close(a.alpha[j], b.alpha[j], 1e-12));
      CHECK(close(a.alpha[j], expected.alpha[j], 1e-9));
    }
  }
}

TEST_CASE("classify examples") {
  const PolydiskPoint o = PolydiskPoint::origin(3);
  const ClassificationResult k = classify(k_polynomial(), o);
  CHECK(k.verdict == Verdict::ExceptionalK);
  REQUIRE(k.kalpha.has_value());
  for (Complex a : k.kalpha->alpha) CHECK(close(a, 1.0, 1e-12));

  KalphaParams thin;
  thin.alpha = {1.0, 0.5, 0.5};
  CHECK(classify(kalpha_poly(thin), o).verdict == Verdict::Retract);
  CHECK(classify(z_minus_x_minus_y(), o).verdict == Verdict::NeitherStructure);
  CHECK(classify(z_minus_xy(), o).verdict == Verdict::Retract);
}

TEST_CASE("classify verdicts survive Mobius recentring (property)") {
  std::mt19937_64 rng(26);
  KalphaParams thin;
  thin.alpha = {1.0, 0.5, 0.5};
  const std::vector<std::pair<Polynomial3, Verdict>> cases{{k_polynomial(), Verdict::ExceptionalK},
                                                           {kalpha_poly(thin), Verdict::Retract},
                                                           {z_minus_x_minus_y(), Verdict::NeitherStructure},
                                                           {z_minus_xy(), Verdict::Retract}};
  for (const auto& [p, verdict] : cases) {
    int tested = 0;
    while (tested < 5) {
      const C x = oracle::random_disk(rng, 0.6), y = oracle::random_disk(rng, 0.6);
      const RationalGraph g = graph_extract(p, Axis::Z);
      const C z = g(x, y);
      if (std::abs(z) >= 0.9) continue;
      CHECK(classify(p, PolydiskPoint({x, y, z})).verdict == verdict);
      ++tested;
    }
  }
}
