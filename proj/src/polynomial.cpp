#include "caraset/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace caraset {

namespace {

// Horner over the first variable of a lexicographically sorted block of
// terms whose leading `depth` exponents agree. Recurses into later variables.
template <std::size_t N, typename It>
Complex horner_block(It first, It last, std::size_t depth, std::span<const Complex> point) {
  if (depth == N) {
    // All exponents agree; a sorted map holds at most one such term.
    return first == last ? Complex{} : first->second;
  }
  const Complex x = point[depth];
  Complex acc{};
  int current = -1;
  // Walk blocks in decreasing exponent order of variable `depth`.
  auto block_end = last;
  while (block_end != first) {
    auto block_begin = block_end;
    const int e = std::prev(block_begin)->first[depth];
    while (block_begin != first && std::prev(block_begin)->first[depth] == e) {
      --block_begin;
    }
    if (current >= 0) {
      for (int k = e; k < current; ++k) acc *= x;
    }
    acc += horner_block<N>(block_begin, block_end, depth + 1, point);
    current = e;
    block_end = block_begin;
  }
  for (int k = 0; k < current; ++k) acc *= x;
  return acc;
}

}  // namespace

template <std::size_t N>
Polynomial<N>::Polynomial(Terms terms) : terms_(std::move(terms)) {
  for (const auto& [e, c] : terms_) {
    for (int k : e) {
      if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    }
    (void)c;
  }
  prune();
}

template <std::size_t N>
Polynomial<N> Polynomial<N>::from_terms(std::span<const std::pair<Exp, Complex>> terms) {
  Terms map;
  for (const auto& [e, c] : terms) {
    if (!map.emplace(e, c).second) {
      std::ostringstream os;
      os << "exponent (";
      for (std::size_t i = 0; i < N; ++i) os << (i ? "," : "") << e[i];
      os << ") appears twice";
      throw Error(ErrorCode::DuplicateExponent, os.str());
    }
  }
  return Polynomial(std::move(map));
}

template <std::size_t N>
Polynomial<N> Polynomial<N>::constant(Complex c) {
  Terms t;
  t[Exp{}] = c;
  return Polynomial(std::move(t));
}

template <std::size_t N>
Polynomial<N> Polynomial<N>::variable(std::size_t index) {
  Exp e{};
  e.at(index) = 1;
  Terms t;
  t[e] = Complex{1.0, 0.0};
  return Polynomial(std::move(t));
}

template <std::size_t N>
Complex Polynomial<N>::coefficient(const Exp& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

template <std::size_t N>
int Polynomial<N>::total_degree() const noexcept {
  int best = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    best = std::max(best, s);
  }
  return best;
}

template <std::size_t N>
int Polynomial<N>::degree_in(std::size_t var) const noexcept {
  int best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, e[var]);
  return best;
}

template <std::size_t N>
double Polynomial<N>::coefficient_norm1() const noexcept {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c);
  return s;
}

template <std::size_t N>
double Polynomial<N>::coefficient_max() const noexcept {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s = std::max(s, std::abs(c));
  return s;
}

template <std::size_t N>
Complex Polynomial<N>::operator()(std::span<const Complex> point) const {
  if (point.size() != N) {
    throw Error(ErrorCode::DimensionMismatch, "polynomial evaluated at point of wrong dimension");
  }
  return horner_block<N>(terms_.begin(), terms_.end(), 0, point);
}

template <std::size_t N>
Polynomial<N> Polynomial<N>::derivative(std::size_t var) const {
  Terms out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exp d = e;
    d[var] -= 1;
    out[d] += c * static_cast<double>(e[var]);
  }
  return Polynomial(std::move(out));
}

template <std::size_t N>
void Polynomial<N>::add_term(const Exp& e, Complex c) {
  terms_[e] += c;
}

template <std::size_t N>
void Polynomial<N>::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kCoefficientDropTolerance; });
}

template <std::size_t N>
Polynomial<N>& Polynomial<N>::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  prune();
  return *this;
}

template <std::size_t N>
Polynomial<N>& Polynomial<N>::operator-=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  prune();
  return *this;
}

template <std::size_t N>
Polynomial<N>& Polynomial<N>::operator*=(Complex scalar) {
  for (auto& [e, c] : terms_) c *= scalar;
  prune();
  return *this;
}

template <std::size_t N>
Polynomial<N> Polynomial<N>::times(const Polynomial& other) const {
  Terms out;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : other.terms_) {
      Exp e;
      for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  return Polynomial(std::move(out));
}

template <std::size_t N>
Polynomial<N> Polynomial<N>::pow(int k) const {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  Polynomial result = constant(Complex{1.0, 0.0});
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

template class Polynomial<1>;
template class Polynomial<2>;
template class Polynomial<3>;

std::vector<Complex> dense_coefficients(const Polynomial1& p) {
  std::vector<Complex> out(static_cast<std::size_t>(p.total_degree()) + 1);
  for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(e[0])] += c;
  return out;
}

void validate_defining_polynomial(const Polynomial3& p, int degree_cap) {
  if (p.is_zero()) {
    throw Error(ErrorCode::ZeroPolynomial, "a variety needs at least one nonzero coefficient");
  }
  if (p.total_degree() > degree_cap) {
    throw Error(ErrorCode::DegreeCapExceeded, "total degree " + std::to_string(p.total_degree()) +
                                                  " exceeds cap " + std::to_string(degree_cap));
  }
}

Polynomial3 k_polynomial() {
  const Complex one{1.0, 0.0};
  Polynomial3::Terms t;
  t[{1, 0, 0}] = one;
  t[{0, 1, 0}] = one;
  t[{0, 0, 1}] = one;
  t[{1, 1, 0}] = -one;
  t[{0, 1, 1}] = -one;
  t[{1, 0, 1}] = -one;
  return Polynomial3(std::move(t));
}

std::string to_string(const Polynomial3& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os << std::setprecision(12);
  bool first = true;
  static constexpr const char* names[] = {"x", "y", "z"};
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    for (std::size_t i = 0; i < 3; ++i) {
      if (e[i] == 1) os << "*" << names[i];
      if (e[i] > 1) os << "*" << names[i] << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace caraset
