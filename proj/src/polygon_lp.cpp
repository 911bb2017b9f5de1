#include "polygon_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "caraset/error.hpp"

namespace caraset::detail {

namespace {

constexpr int kMaxIpmIterations = 120;
constexpr int kMaxRounds = 200;
constexpr int kInitialAngles = 4;
constexpr std::size_t kCutBatch = 512;
constexpr double kWarmMargin = 0.02;
constexpr double kWarmDualFloor = 1e-2;

struct Violation {
  double amount = 0.0;
  int direction = 0;
};

// Largest Re(exp(-i theta_t) phi) - 1 over the direction fan.
Violation violation(std::complex<double> phi, int directions) {
  const double step = 2.0 * std::numbers::pi / directions;
  long t = std::lround(std::arg(phi) / step);
  t %= directions;
  if (t < 0) t += directions;
  const double theta = step * static_cast<double>(t);
  return {phi.real() * std::cos(theta) + phi.imag() * std::sin(theta) - 1.0, static_cast<int>(t)};
}

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

}  // namespace

PolygonLP::PolygonLP(const Eigen::VectorXcd& objective, double bound, int directions)
    : bound_(bound), directions_(directions) {
  const Eigen::Index r = objective.size();
  c_.resize(2 * r);
  c_.head(r) = objective.real();
  c_.tail(r) = -objective.imag();
  u_.resize(0, r);
  rotations_.resize(directions);
  for (int t = 0; t < directions; ++t) {
    rotations_[t] = std::polar(1.0, -2.0 * std::numbers::pi * t / directions);
  }
  x_ = Eigen::VectorXd::Zero(2 * r);
}

void PolygonLP::add_rows(const Eigen::MatrixXcd& rows) {
  if (rows.rows() == 0) return;
  const Eigen::Index old = u_.rows();
  u_.conservativeResize(old + rows.rows(), Eigen::NoChange);
  u_.bottomRows(rows.rows()) = rows;
  in_set_.resize(static_cast<std::size_t>(u_.rows()) * static_cast<std::size_t>(directions_), 0);
}

void PolygonLP::seed_cuts(const std::vector<std::pair<Eigen::Index, int>>& cuts) {
  for (const auto& [row, t] : cuts) {
    if (row < 0 || row >= u_.rows() || t < 0 || t >= directions_) continue;
    char& flag = in_set_[static_cast<std::size_t>(row * directions_ + t)];
    if (flag) continue;
    flag = 1;
    cuts_.emplace_back(row, t);
  }
}

Eigen::VectorXd PolygonLP::cut_vector(Eigen::Index row, int direction) const {
  const Eigen::Index r = u_.cols();
  const Eigen::VectorXcd w = (u_.row(row) * rotations_[direction]).transpose();
  Eigen::VectorXd a(2 * r);
  a.head(r) = w.real();
  a.tail(r) = -w.imag();
  return a;
}

int PolygonLP::solve_restricted() {
  // Inequality form G x <= h: the cuts followed by the box.
  const Eigen::Index m = c_.size();
  const Eigen::Index k = static_cast<Eigen::Index>(cuts_.size());
  const Eigen::Index n = k + 2 * m;
  Eigen::MatrixXd g(n, m);
  Eigen::VectorXd h(n);
  for (Eigen::Index i = 0; i < k; ++i) {
    g.row(i) = cut_vector(cuts_[static_cast<std::size_t>(i)].first,
                          cuts_[static_cast<std::size_t>(i)].second).transpose();
    h[i] = 1.0;
  }
  g.bottomRows(2 * m).setZero();
  for (Eigen::Index j = 0; j < m; ++j) {
    g(k + 2 * j, j) = 1.0;
    g(k + 2 * j + 1, j) = -1.0;
  }
  h.tail(2 * m).setConstant(bound_);

  // Mehrotra predictor-corrector. The first solve starts from x = 0; later ones
  // start from the previous point pulled toward 0 until every slack is positive.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(n);
  if (warm_) {
    const Eigen::VectorXd gx = g * x_;
    double theta = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (gx[i] > 0.0) theta = std::min(theta, h[i] / gx[i]);
    }
    x = (1.0 - kWarmMargin) * theta * x_;
    const Eigen::Index old = static_cast<Eigen::Index>(z_cuts_.size());
    const double floor = kWarmDualFloor;
    for (Eigen::Index i = 0; i < k; ++i) z[i] = i < old ? std::max(z_cuts_[i], floor) : floor;
    z.tail(2 * m) = z_box_.cwiseMax(floor);
  }
  Eigen::VectorXd s = h - g * x;
  const double scale_c = 1.0 + c_.norm();
  const double scale_h = 1.0 + h.norm();
  double last_objective = 0.0;
  int stalled = 0;

  for (int it = 1; it <= kMaxIpmIterations; ++it) {
    const Eigen::VectorXd rd = g.transpose() * z - c_;
    const Eigen::VectorXd rp = g * x + s - h;
    const double mu = s.dot(z) / static_cast<double>(n);
    const double objective = c_.dot(x);
    const bool primal_ok = rp.norm() <= 1e-10 * scale_h;
    const bool gap_ok = s.dot(z) <= 1e-11 * (1.0 + std::abs(objective));
    // Degenerate optima can leave a dual residual that no longer shrinks; a
    // stalled primal objective with a closed gap is accepted then.
    stalled = std::abs(objective - last_objective) <= 1e-13 * (1.0 + std::abs(objective))
                  ? stalled + 1
                  : 0;
    last_objective = objective;
    if (primal_ok && gap_ok && (rd.norm() <= 1e-10 * scale_c || stalled >= 3)) {
      x_ = x;
      z_cuts_ = z.head(k);
      z_box_ = z.tail(2 * m);
      warm_ = true;
      return it;
    }
    const Eigen::VectorXd d = z.cwiseQuotient(s);
    const Eigen::MatrixXd scaled = g.array().colwise() * d.array().sqrt();
    Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(m, m);
    normal.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
    normal.diagonal().array() += 1e-13 * normal.diagonal().maxCoeff();
    const Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> ldlt(normal);
    if (ldlt.info() != Eigen::Success) break;

    auto direction = [&](const Eigen::VectorXd& rc, Eigen::VectorXd& dx, Eigen::VectorXd& ds,
                         Eigen::VectorXd& dz) {
      const Eigen::VectorXd t = (z.cwiseProduct(rp) - rc).cwiseQuotient(s);
      dx = ldlt.solve(-rd - g.transpose() * t);
      ds = -rp - g * dx;
      dz = (z.cwiseProduct(rp + g * dx) - rc).cwiseQuotient(s);
    };

    Eigen::VectorXd dx, ds, dz;
    const Eigen::VectorXd sz = s.cwiseProduct(z);
    direction(sz, dx, ds, dz);
    const double ap = max_step(s, ds);
    const double ad = max_step(z, dz);
    const double mu_aff = (s + ap * ds).dot(z + ad * dz) / static_cast<double>(n);
    const double sigma = std::pow(mu_aff / mu, 3);
    const Eigen::VectorXd rc =
        sz + ds.cwiseProduct(dz) - Eigen::VectorXd::Constant(n, sigma * mu);
    direction(rc, dx, ds, dz);
    const double step_p = std::min(1.0, 0.99 * max_step(s, ds));
    const double step_d = std::min(1.0, 0.99 * max_step(z, dz));
    x += step_p * dx;
    s += step_p * ds;
    z += step_d * dz;
    s = s.cwiseMax(1e-300);
    z = z.cwiseMax(1e-300);
  }
  throw Error(ErrorCode::InfeasibleNumerics,
              "interior point solve did not converge on " + std::to_string(k) + " cuts");
}

void PolygonLP::solve(double feasibility_tol) {
  const Eigen::Index m = c_.size();
  const Eigen::Index total = u_.rows();
  if (stats_.rounds == 0 && total > 0) {
    // Seed with a coarse angle fan on an even subsample of the rows.
    const Eigen::Index want = std::min<Eigen::Index>(total, std::max<Eigen::Index>(8 * m, 64));
    for (Eigen::Index i = 0; i < want; ++i) {
      const Eigen::Index row = i * total / want;
      for (int a = 0; a < kInitialAngles; ++a) {
        const int t = a * directions_ / kInitialAngles;
        char& flag = in_set_[static_cast<std::size_t>(row * directions_ + t)];
        if (flag) continue;
        flag = 1;
        cuts_.emplace_back(row, t);
      }
    }
  }

  for (int round = 0; round < kMaxRounds; ++round) {
    stats_.iterations += solve_restricted();
    ++stats_.rounds;
    const Eigen::VectorXcd phi = u_ * coefficients();
    std::vector<std::pair<double, Eigen::Index>> violated;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < total; ++i) {
      const Violation v = violation(phi[i], directions_);
      worst = std::max(worst, v.amount);
      if (v.amount > feasibility_tol) violated.emplace_back(v.amount, i);
    }
    stats_.max_violation = worst;
    stats_.working_set = cuts_.size();
    if (violated.empty()) return;
    const std::size_t keep = std::min(kCutBatch, violated.size());
    std::partial_sort(violated.begin(), violated.begin() + static_cast<std::ptrdiff_t>(keep),
                      violated.end(), std::greater<>());
    std::size_t added = 0;
    for (std::size_t j = 0; j < keep; ++j) {
      const Eigen::Index row = violated[j].second;
      const int t = violation(phi[row], directions_).direction;
      char& flag = in_set_[static_cast<std::size_t>(row * directions_ + t)];
      if (flag) continue;
      flag = 1;
      cuts_.emplace_back(row, t);
      ++added;
    }
    // Violations left only on cuts already in the set mean the restricted solve is inexact.
    if (added == 0) {
      if (worst <= 1e3 * feasibility_tol) return;
      throw Error(ErrorCode::InfeasibleNumerics,
                  "cut loop stalled with violation " + std::to_string(worst));
    }
  }
  throw Error(ErrorCode::InfeasibleNumerics,
              "cut loop exceeded " + std::to_string(kMaxRounds) + " rounds");
}

std::vector<std::pair<Eigen::Index, int>> PolygonLP::active_cuts(double slack) const {
  std::vector<std::pair<Eigen::Index, int>> out;
  for (const auto& [row, t] : cuts_) {
    if (1.0 - cut_vector(row, t).dot(x_) <= slack) out.emplace_back(row, t);
  }
  return out;
}

Eigen::VectorXcd PolygonLP::coefficients() const {
  const Eigen::Index r = u_.cols();
  return x_.head(r) + std::complex<double>(0.0, 1.0) * x_.tail(r);
}

double PolygonLP::objective_value() const {
  return c_.dot(x_);
}

}  // namespace caraset::detail
