#pragma once

// Serialization of polynomials and module reports. JSON output has a fixed
// key order and prints every float rounded to 12 significant digits, so the
// same report always serializes to the same bytes and re-parses to itself.

#include <optional>
#include <string>
#include <string_view>

#include "caraset/extremals.hpp"
#include "caraset/hyperbolic.hpp"
#include "caraset/polynomial.hpp"
#include "caraset/variety.hpp"
#include "caraset/verifier.hpp"

namespace caraset {

enum class Format { Text, Json, Csv };
std::string_view to_string(Format f) noexcept;
std::optional<Format> format_from_string(std::string_view s) noexcept;

/// Rounds to 12 significant digits (the printed precision of every report).
double round12(double x) noexcept;
/// "%.12g" of the value.
std::string format_number(double x);
/// Real part alone when the imaginary part is negligible, "a+bi" otherwise.
std::string format_complex(Complex z);

/// {"terms": [{"exp": [i, j, k], "coef": [re, im]}, ...]}. Malformed text or
/// structure is MalformedInput (with line and column for syntax errors); a
/// repeated exponent triple is DuplicateExponent.
Polynomial3 parse_polynomial(std::string_view json_text);
Polynomial3 load_polynomial(const std::string& path);
std::string polynomial_to_json(const Polynomial3& p);

/// The balanced extremal of a pair together with the values it attains.
struct ExtremalReport {
  PolydiskPoint lambda;
  PolydiskPoint mu;
  BalanceType balance;
  double c_polydisk = 0.0;
  ExtremalFunction phi;
  Complex phi_lambda{};
  Complex phi_mu{};
  double rho_attained = 0.0;
};
ExtremalReport make_extremal_report(const PolydiskPoint& lambda, const PolydiskPoint& mu);

struct FlatDiskReport {
  FlatDisk disk;
  int samples = 0;
  bool flat = false;
  /// max |P| over the sampled points of the disk.
  double max_residual = 0.0;
};
FlatDiskReport make_flatdisk_report(const Polynomial3& p, const FlatDisk& disk, int samples);

std::string emit_report(const ClassificationResult& r, Format f);
std::string emit_report(const ScanResult& r, Format f);
std::string emit_report(const GapReport& r, Format f);
std::string emit_report(const ExtremalReport& r, Format f);
std::string emit_report(const FlatDiskReport& r, Format f);

/// Inverse of the JSON form of a gap report.
GapReport parse_gap_report(std::string_view json_text);

}  // namespace caraset
