#pragma once

// Sparse polynomials in N complex variables with complex coefficients.

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caraset/error.hpp"

namespace caraset {

using Complex = std::complex<double>;

/// Coefficients with modulus below this are not stored.
inline constexpr double kCoefficientDropTolerance = 1e-14;
inline constexpr int kDefaultDegreeCap = 16;

template <std::size_t N>
using Exponent = std::array<int, N>;

template <std::size_t N>
class Polynomial {
 public:
  using Exp = Exponent<N>;
  using Terms = std::map<Exp, Complex>;

  Polynomial() = default;
  explicit Polynomial(Terms terms);
  /// Builds from a term list; a repeated exponent is a DuplicateExponent error.
  static Polynomial from_terms(std::span<const std::pair<Exp, Complex>> terms);
  static Polynomial constant(Complex c);
  static Polynomial variable(std::size_t index);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Complex coefficient(const Exp& e) const;
  int total_degree() const noexcept;
  int degree_in(std::size_t var) const noexcept;
  double coefficient_norm1() const noexcept;
  double coefficient_max() const noexcept;

  /// Nested Horner evaluation over the exponent lattice.
  Complex operator()(std::span<const Complex> point) const;
  Complex operator()(const std::array<Complex, N>& point) const {
    return (*this)(std::span<const Complex>(point));
  }

  Polynomial derivative(std::size_t var) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(Complex scalar);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, Complex s) { return a *= s; }
  friend Polynomial operator*(Complex s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.times(b); }
  Polynomial pow(int k) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  Polynomial times(const Polynomial& other) const;
  void add_term(const Exp& e, Complex c);
  void prune();

  Terms terms_;
};

using Polynomial3 = Polynomial<3>;
using Polynomial2 = Polynomial<2>;
using Polynomial1 = Polynomial<1>;

/// Dense coefficient vector c[k] of zeta^k for a univariate polynomial.
std::vector<Complex> dense_coefficients(const Polynomial1& p);

/// Rejects zero polynomials and degrees above the cap.
void validate_defining_polynomial(const Polynomial3& p, int degree_cap = kDefaultDegreeCap);

/// x + y + z - xy - yz - zx.
Polynomial3 k_polynomial();

std::string to_string(const Polynomial3& p);

extern template class Polynomial<1>;
extern template class Polynomial<2>;
extern template class Polynomial<3>;

}  // namespace caraset
