#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

namespace caraset::detail {

/// max Re(e . c) over complex coefficient vectors c subject to
/// Re(exp(-i theta_t) u_q . c) <= 1 for every constraint row u_q and each of
/// `directions` equally spaced angles theta_t, with a box |Re c_k|, |Im c_k| <= bound.
///
/// Cutting planes: a working set of (row, angle) half-planes is solved with a
/// dense primal-dual interior point method, then the most violated half-planes
/// over all rows join the set until none is violated beyond the tolerance.
class PolygonLP {
 public:
  struct Stats {
    int iterations = 0;
    int rounds = 0;
    std::size_t working_set = 0;
    double max_violation = 0.0;
  };

  PolygonLP(const Eigen::VectorXcd& objective, double bound, int directions = 32);

  void add_rows(const Eigen::MatrixXcd& rows);
  /// Starts the working set from (row, angle index) pairs, e.g. the cuts of a related problem.
  void seed_cuts(const std::vector<std::pair<Eigen::Index, int>>& cuts);
  /// Working-set cuts whose slack at the current solution is at most `slack`.
  std::vector<std::pair<Eigen::Index, int>> active_cuts(double slack) const;
  std::size_t rows() const noexcept { return static_cast<std::size_t>(u_.rows()); }

  /// Throws InfeasibleNumerics if the restricted solves or the cut loop fail to converge.
  void solve(double feasibility_tol = 1e-7);

  Eigen::VectorXcd coefficients() const;
  double objective_value() const;
  const Stats& stats() const noexcept { return stats_; }

 private:
  /// Solves max c.x over the working set and the box; returns the iterations used.
  int solve_restricted();
  Eigen::VectorXd cut_vector(Eigen::Index row, int direction) const;

  Eigen::VectorXd c_;
  Eigen::MatrixXcd u_;
  double bound_;
  int directions_;
  Eigen::VectorXcd rotations_;

  std::vector<std::pair<Eigen::Index, int>> cuts_;
  std::vector<char> in_set_;  // rows() * directions flags
  Eigen::VectorXd x_;
  Eigen::VectorXd z_cuts_;
  Eigen::VectorXd z_box_;
  bool warm_ = false;
  Stats stats_;
};

}  // namespace caraset::detail
