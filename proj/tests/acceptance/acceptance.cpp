// Acceptance run: one PASS/FAIL line per criterion, exit status nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "caraset/extremals.hpp"
#include "caraset/report.hpp"
#include "caraset/variety.hpp"
#include "caraset/verifier.hpp"

using namespace caraset;
using oracle::C;

namespace {

const double kTwoPi = 2.0 * oracle::kPi;
const C kOmega = std::polar(1.0, kTwoPi / 3.0);

std::string fixture(const std::string& name) { return std::string(CARASET_FIXTURES) + "/" + name; }

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

GapReport run_gap(const Polynomial3& p, const GapOptions& options, int pairs) {
  const RationalGraph g = graph_extract(p, Axis::Z);
  return gap_report(g, p, pairs, options);
}

GapOptions headline_options() {
  GapOptions o;
  o.degree = 4;
  o.grid = 4096;
  o.seed = 0;
  o.threads = 0;
  return o;
}

std::string gap_detail(const GapReport& r) {
  return "max gap " + fmt(r.summary.max_gap) + ", mean " + fmt(r.summary.mean_gap) + ", above threshold " +
         std::to_string(r.summary.above_threshold) + "/" + std::to_string(r.pairs.size()) + ", verdict " +
         r.summary.verdict;
}

}  // namespace

int main() {
  criterion(1, [] {
    std::mt19937_64 rng(1);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const MobiusMap m(DiskPoint(oracle::random_disk(rng)));
      const DiskPoint z(oracle::random_disk(rng)), w(oracle::random_disk(rng));
      worst = std::max(worst, std::abs(rho(mobius_apply(m, z), mobius_apply(m, w)) - rho(z, w)));
    }
    const double secs = elapsed_since(start);
    return Outcome{worst < 1e-12 && secs < 5.0,
                   "max invariance error " + fmt(worst) + " over 1e5 triples in " + fmt(secs) + " s"};
  });

  criterion(2, [] {
    const PolydiskPoint o = PolydiskPoint::origin(3);
    const ClassificationResult k = classify(load_polynomial(fixture("K.json")), o);
    bool ok = k.verdict == Verdict::ExceptionalK && k.kalpha.has_value();
    if (ok) {
      for (Complex a : k.kalpha->alpha) ok = ok && std::abs(a - 1.0) < 1e-9;
    }
    const Verdict thin = classify(load_polynomial(fixture("kalpha_thin.json")), o).verdict;
    const Verdict xy = classify(load_polynomial(fixture("xy.json")), o).verdict;
    const Verdict plane = classify(load_polynomial(fixture("plane_xy.json")), o).verdict;
    ok = ok && thin == Verdict::Retract && xy == Verdict::Retract && plane == Verdict::NeitherStructure;
    return Outcome{ok, "K " + std::string(to_string(k.verdict)) + ", K_(1,.5,.5) " + std::string(to_string(thin)) +
                           ", z=xy " + std::string(to_string(xy)) + ", z=x+y " + std::string(to_string(plane))};
  });

  criterion(3, [] {
    const Polynomial3 k = k_polynomial();
    double worst = 0.0;
    for (int m = 0; m < 256; ++m) {
      const C zeta = std::polar(0.9, kTwoPi * m / 256.0);
      worst = std::max(worst, std::abs(k(std::array<Complex, 3>{zeta, kOmega * zeta, kOmega * kOmega * zeta})));
    }
    std::vector<double> angles = infinitesimal_disks(graph_extract(k, Axis::Z)).angles;
    std::sort(angles.begin(), angles.end());
    const bool angles_ok = angles.size() == 2 && std::abs(angles[0] + kTwoPi / 3.0) < 1e-12 &&
                           std::abs(angles[1] - kTwoPi / 3.0) < 1e-12;
    std::string listed;
    for (double a : angles) listed += " " + fmt(a);
    return Outcome{worst < 1e-12 && angles_ok, "max |P_K| on the flat disk " + fmt(worst) + ", angles" + listed};
  });

  criterion(4, [] {
    const auto start = std::chrono::steady_clock::now();
    const Polynomial3 k = k_polynomial();
    const RationalGraph g = graph_extract(k, Axis::Z);
    const ScanResult scan = scan_slices(k, g, 64);
    bool degrees_ok = scan.degrees.size() == 64;
    double deviation = 0.0;
    for (std::size_t i = 0; i < scan.degrees.size(); ++i) {
      degrees_ok = degrees_ok && scan.degrees[i] == 2 && scan.statuses[i] == BlaschkeResult::Status::Ok;
      deviation = std::max(deviation, scan.deviations[i]);
    }
    const double length_error = std::abs(scan.arc.length() - kTwoPi / 3.0);
    const double secs = elapsed_since(start);
    const bool ok = length_error < 1e-9 && scan.exceptions.empty() && degrees_ok && deviation < 1e-6 && secs < 30.0;
    return Outcome{ok, "|T| error " + fmt(length_error) + ", S size " + std::to_string(scan.exceptions.size()) +
                           ", degree 2 at all 64 angles: " + (degrees_ok ? "yes" : "no") + ", max deviation " +
                           fmt(deviation)};
  });

  criterion(5, [] {
    const auto start = std::chrono::steady_clock::now();
    const GapReport r = run_gap(load_polynomial(fixture("K.json")), headline_options(), 200);
    const double secs = elapsed_since(start);
    const bool ok = r.summary.max_gap <= 0.02 && r.summary.verdict == "consistent" && secs <= 900.0;
    return Outcome{ok, "K: " + gap_detail(r)};
  });

  criterion(6, [] {
    std::ifstream in(fixture("plane_refutation.json"));
    const nlohmann::json cfg = nlohmann::json::parse(in);
    GapOptions options = headline_options();
    options.degree = cfg["degree"].get<int>();
    options.grid = cfg["grid"].get<int>();
    options.seed = cfg["seed"].get<std::uint64_t>();
    options.threshold = cfg["threshold"].get<double>();
    const double bar = cfg["gap_bar"].get<double>();
    const GapReport r =
        run_gap(load_polynomial(fixture(cfg["polynomial"].get<std::string>())), options, cfg["pairs"].get<int>());
    const bool ok = r.summary.max_gap > bar && r.summary.verdict == "refuted";
    return Outcome{ok, "z=x+y: " + gap_detail(r) + ", bar " + fmt(bar)};
  });

  criterion(7, [] {
    const GapReport r = run_gap(load_polynomial(fixture("xy.json")), headline_options(), 200);
    const bool ok = r.summary.max_gap <= r.summary.threshold && r.summary.verdict == "consistent";
    return Outcome{ok, "z=xy: " + gap_detail(r)};
  });

  criterion(8, [] {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_sup = 0.0, worst_rho = 0.0;
    for (int pair = 0; pair < 100; ++pair) {
      // Balanced by construction: n coordinates of the centred image share the top modulus.
      const int n = 1 + pair % 3;
      const PolydiskPoint lambda({oracle::random_disk(rng, 0.9), oracle::random_disk(rng, 0.9),
                                  oracle::random_disk(rng, 0.9)});
      const double r = 0.05 + 0.9 * unit(rng);
      std::vector<Complex> image(3);
      for (int j = 0; j < 3; ++j) image[j] = std::polar(j < n ? r : r * unit(rng) * 0.99, kTwoPi * unit(rng));
      std::shuffle(image.begin(), image.end(), rng);
      const PolydiskPoint mu =
          automorphism_apply(PolydiskAutomorphism::centering(lambda).inverse(), PolydiskPoint(image));
      const ExtremalFunction phi = balanced_extremal(lambda, mu);
      worst_rho = std::max(worst_rho, std::abs(oracle::rho(phi(lambda), phi(mu)) - carath_polydisk(lambda, mu)));
      for (int s = 0; s < 10000; ++s) {
        const std::array<Complex, 3> z{oracle::random_disk(rng, 1.0), oracle::random_disk(rng, 1.0),
                                       oracle::random_disk(rng, 1.0)};
        worst_sup = std::max(worst_sup, std::abs(phi(z)));
      }
    }
    return Outcome{worst_sup <= 1.0 + 1e-12 && worst_rho <= 1e-12,
                   "max sup " + fmt(worst_sup) + ", max |rho - c_polydisk| " + fmt(worst_rho)};
  });

  criterion(9, [] {
    double worst_sup = 0.0, worst_value = 0.0;
    int monotone_violations = 0, pairs_checked = 0;
    for (const char* name : {"K.json", "plane_xy.json"}) {
      const Polynomial3 p = load_polynomial(fixture(name));
      const RationalGraph g = graph_extract(p, Axis::Z);
      const std::vector<PolydiskPoint> fresh = sample_on_variety(g, 100000, 0xfee1);
      for (const SampledPair& sp : sample_pairs(g, 10, 900)) {
        ++pairs_checked;
        double previous = 0.0;
        for (int degree : {1, 2, 4}) {
          CandidateSpace space;
          space.graph = g;
          space.degree = degree;
          const LowerBound lb = cara_lower_bound(space, sp.lambda, sp.mu);
          if (lb.value < previous - 1e-12) ++monotone_violations;
          previous = lb.value;
          worst_value = std::max(worst_value, std::abs(oracle::rho(lb.witness(sp.lambda), lb.witness(sp.mu)) - lb.value));
          for (const PolydiskPoint& q : fresh) worst_sup = std::max(worst_sup, std::abs(lb.witness(q)));
        }
      }
    }
    const bool ok = worst_sup <= 1.0 + 1e-9 && worst_value <= 1e-10 && monotone_violations == 0;
    return Outcome{ok, std::to_string(pairs_checked) + " pairs: max fresh-sample sup " + fmt(worst_sup) +
                           ", max value mismatch " + fmt(worst_value) + ", monotonicity violations " +
                           std::to_string(monotone_violations)};
  });

  criterion(10, [] {
    const Polynomial3 k = k_polynomial();
    const RationalGraph g = graph_extract(k, Axis::Z);
    const double t = 0.4;
    const ExtremalFunction phi =
        balanced_extremal(PolydiskPoint::origin(3), PolydiskPoint({t, kOmega * t, kOmega * kOmega * t}));
    const ArcT arc = t_arc(g);
    const double small = extremal_range_coverage(phi, sample_slices(g, arc, 10000, 10));
    const double large = extremal_range_coverage(phi, sample_slices(g, arc, 40000, 10));
    return Outcome{small < 0.2 && large < small,
                   "covering radius " + fmt(small) + " at 1e4 samples, " + fmt(large) + " at 4e4"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
