#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "caraset/error.hpp"
#include "caraset/verifier.hpp"

using namespace caraset;
using oracle::C;

namespace {

Polynomial3 z_minus_xy() {
  return Polynomial3(Polynomial3::Terms{{{0, 0, 1}, 1.0}, {{1, 1, 0}, -1.0}});
}

RationalGraph k_graph() { return graph_extract(k_polynomial(), Axis::Z); }

CandidateSpace small_space(const RationalGraph& g, int degree) {
  CandidateSpace s;
  s.graph = g;
  s.degree = degree;
  s.grid = 256;
  return s;
}

}  // namespace

TEST_CASE("sample_on_variety examples") {
  const RationalGraph k = k_graph();
  CHECK(sample_on_variety(k, 0, 1).empty());
  CHECK(sample_on_variety(k, 50, 3) == sample_on_variety(k, 50, 3));
  CHECK_FALSE(sample_on_variety(k, 50, 3) == sample_on_variety(k, 50, 4));
  const std::vector<PolydiskPoint> pts = sample_on_variety(k, 100, 7);
  REQUIRE(pts.size() == 100);
  for (const PolydiskPoint& p : pts) {
    const std::array<C, 3> q{p[0], p[1], p[2]};
    CHECK(std::abs(oracle::eval(oracle::k_terms(), q)) < 1e-9);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(q[j]) < 0.95);
  }
  CHECK_THROWS_AS(sample_on_variety(k, -1, 0), Error);
}

TEST_CASE("sample_slices stays on the variety") {
  const RationalGraph k = k_graph();
  const std::vector<PolydiskPoint> pts = sample_slices(k, t_arc(k), 500, 9);
  REQUIRE(pts.size() == 500);
  for (const PolydiskPoint& p : pts) {
    CHECK(std::abs(oracle::eval(oracle::k_terms(), {p[0], p[1], p[2]})) < 1e-9);
  }
}

TEST_CASE("boundary grids lie on the variety and are disjoint from each other") {
  const RationalGraph k = k_graph();
  const CandidateSpace space = small_space(k, 2);
  const PolydiskPoint lambda = PolydiskPoint::origin(3);
  const std::vector<Point3> grid = space.constraint_grid(lambda);
  const std::vector<Point3> validation = space.validation_grid(lambda);
  CHECK(grid.size() > 0);
  CHECK(validation.size() >= 8 * grid.size());
  for (const Point3& p : grid) {
    CHECK(std::abs(oracle::eval(oracle::k_terms(), p)) < 1e-9);
    // Two coordinates are unimodular on each boundary piece.
    int unimodular = 0;
    for (C c : p) unimodular += std::abs(std::abs(c) - 1.0) < 1e-9;
    CHECK(unimodular >= 2);
  }
  for (std::size_t i = 0; i < 50; ++i) {
    for (const Point3& q : grid) {
      const Point3& p = validation[i];
      CHECK_FALSE((std::abs(p[0] - q[0]) < 1e-12 && std::abs(p[1] - q[1]) < 1e-12));
    }
  }
}

TEST_CASE("cara_lower_bound examples") {
  const RationalGraph k = k_graph();
  const PolydiskPoint o = PolydiskPoint::origin(3);
  CHECK(cara_lower_bound(small_space(k, 4), o, o).value == 0.0);

  CandidateSpace space = small_space(k, 4);
  space.grid = 1024;
  const LowerBound lb = cara_lower_bound(space, o, PolydiskPoint({0.3, -0.3, -0.09}));
  CHECK(lb.value == doctest::Approx(0.3).epsilon(1e-2 / 0.3));
  CHECK(lb.value >= 0.3 - 1e-12);

  CHECK_THROWS_AS(cara_lower_bound(small_space(k, 9), o, PolydiskPoint({0.3, -0.3, -0.09})), Error);
  CHECK_THROWS_AS(cara_lower_bound(small_space(k, 2), o, PolydiskPoint({0.1, 0.1, 0.1})), Error);
}

TEST_CASE("lower bounds are sound, floored and monotone in degree (property)") {
  for (const auto& [p, g] : {std::pair{k_polynomial(), k_graph()},
                             std::pair{z_minus_xy(), graph_extract(z_minus_xy(), Axis::Z)}}) {
    const std::vector<SampledPair> pairs = sample_pairs(g, 6, 5);
    const std::vector<PolydiskPoint> fresh = sample_on_variety(g, 20000, 99);
    for (const SampledPair& sp : pairs) {
      const double floor = carath_polydisk(sp.lambda, sp.mu);
      double previous = 0.0;
      for (int degree : {1, 2, 4}) {
        const LowerBound lb = cara_lower_bound(small_space(g, degree), sp.lambda, sp.mu);
        CHECK(lb.value >= floor - 1e-12);
        CHECK(lb.value >= previous - 1e-12);
        previous = lb.value;
        CHECK(std::abs(oracle::rho(lb.witness(sp.lambda), lb.witness(sp.mu)) - lb.value) < 1e-10);
        double sup = 0.0;
        for (const PolydiskPoint& q : fresh) sup = std::max(sup, std::abs(lb.witness(q)));
        CHECK(sup <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("sample_pairs cycles through balance types") {
  const RationalGraph k = k_graph();
  const std::vector<SampledPair> pairs = sample_pairs(k, 9, 0);
  REQUIRE(pairs.size() == 9);
  const std::array<PairKind, 3> cycle{PairKind::ThreeBalanced, PairKind::TwoBalanced, PairKind::Generic};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(pairs[i].kind == cycle[i % 3]);
    CHECK(is_member(k_polynomial(), pairs[i].lambda, 1e-9));
    CHECK(is_member(k_polynomial(), pairs[i].mu, 1e-9));
    if (pairs[i].kind == PairKind::TwoBalanced) CHECK(balance_type(pairs[i].lambda, pairs[i].mu).n == 2);
  }
  CHECK(sample_pairs(k, 9, 0).front().mu == pairs.front().mu);
  // z = xy has no exactly 3-balanced pairs; the sampler falls back instead of failing.
  CHECK(sample_pairs(graph_extract(z_minus_xy(), Axis::Z), 3, 0).size() == 3);
}

TEST_CASE("pair kind names round trip") {
  for (PairKind k : {PairKind::Generic, PairKind::TwoBalanced, PairKind::ThreeBalanced}) {
    CHECK(pair_kind_from_string(to_string(k)) == k);
  }
  CHECK_FALSE(pair_kind_from_string("bogus").has_value());
}

TEST_CASE("summarize verdict bands") {
  auto with_gaps = [](std::vector<double> gaps) {
    std::vector<PairReport> out(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) out[i].gap = gaps[i];
    return out;
  };
  CHECK(summarize({}, 0.02).verdict == "consistent");
  const GapSummary ok = summarize(with_gaps({0.0, 0.01, 0.02}), 0.02);
  CHECK(ok.verdict == "consistent");
  CHECK(ok.max_gap == 0.02);
  CHECK(ok.mean_gap == doctest::Approx(0.01));
  CHECK(ok.above_threshold == 0);
  CHECK(summarize(with_gaps({0.0, 0.05}), 0.02).verdict == "inconclusive");
  const GapSummary bad = summarize(with_gaps({0.07, 0.03, 0.0}), 0.02);
  CHECK(bad.verdict == "refuted");
  CHECK(bad.above_threshold == 2);
}

TEST_CASE("gap_report is deterministic and thread-count independent") {
  const RationalGraph k = k_graph();
  GapOptions options;
  options.degree = 2;
  options.grid = 256;
  options.threads = 1;
  const GapReport a = gap_report(k, k_polynomial(), 4, options);
  const GapReport b = gap_report(k, k_polynomial(), 4, options);
  options.threads = 2;
  const GapReport c = gap_report(k, k_polynomial(), 4, options);
  REQUIRE(a.pairs.size() == 4);
  CHECK(a.summary.max_gap == b.summary.max_gap);
  CHECK(a.summary.mean_gap == b.summary.mean_gap);
  for (std::size_t i = 0; i < a.pairs.size(); ++i) {
    CHECK(a.pairs[i].c_lower == b.pairs[i].c_lower);
    CHECK(std::abs(a.pairs[i].c_lower - c.pairs[i].c_lower) <= 1e-12);
    CHECK(a.pairs[i].gap >= -1e-12);
    CHECK(a.pairs[i].gap == doctest::Approx(a.pairs[i].c_lower - a.pairs[i].c_polydisk));
  }
  CHECK_THROWS_AS(gap_report(k, k_polynomial(), 0, options), Error);
}

TEST_CASE("extremal_range_coverage sanity cases") {
  const RationalGraph xy = graph_extract(z_minus_xy(), Axis::Z);
  const PolydiskPoint o = PolydiskPoint::origin(3);
  // Coordinate extremal: the first coordinate.
  const ExtremalFunction first = balanced_extremal(o, PolydiskPoint({0.5, 0.1, 0.05}));
  CHECK(extremal_range_coverage(first, sample_on_variety(xy, 10000, 1)) < 0.1);

  const std::vector<PolydiskPoint> single{o};
  const double r = extremal_range_coverage(first, single);
  CHECK(r < 1.0);
  // The farthest grid point from phi(0) = 0 sits on the outer ring, 0.95 * 63 / 64.
  CHECK(r == doctest::Approx(0.95 * 63.0 / 64.0).epsilon(1e-12));
  CHECK_THROWS_AS(extremal_range_coverage(first, {}), Error);
}
