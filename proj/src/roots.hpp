#pragma once

#include <complex>
#include <span>
#include <vector>

namespace caraset::detail {

/// Roots of sum_k coeffs[k] zeta^k via companion-matrix eigenvalues, each
/// polished by a few Newton steps. Leading zero coefficients are trimmed.
std::vector<std::complex<double>> polynomial_roots(std::span<const std::complex<double>> coeffs);

}  // namespace caraset::detail
