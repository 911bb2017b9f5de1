#include "roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace caraset::detail {

using Complex = std::complex<double>;

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  double scale = 0.0;
  for (Complex c : coeffs) scale = std::max(scale, std::abs(c));
  std::size_t deg = coeffs.size();
  while (deg > 0 && std::abs(coeffs[deg - 1]) <= 1e-14 * scale) --deg;
  if (deg <= 1) return {};
  const std::size_t n = deg - 1;
  const Complex lead = coeffs[n];

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                      static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<Complex> roots(solver.eigenvalues().begin(), solver.eigenvalues().end());

  for (Complex& r : roots) {
    for (int it = 0; it < 4; ++it) {
      Complex f{}, df{};
      for (std::size_t k = n + 1; k-- > 0;) {
        df = df * r + f;
        f = f * r + coeffs[k];
      }
      if (std::abs(df) < 1e-300) break;
      const Complex step = f / df;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
  }
  return roots;
}

}  // namespace caraset::detail
