#include "caraset/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "caraset/error.hpp"

namespace caraset {

using Json = nlohmann::ordered_json;

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json point_json(const PolydiskPoint& p) {
  Json out = Json::array();
  for (Complex z : p.coords()) out.push_back(complex_json(z));
  return out;
}

template <class T, class F>
Json array_of(const std::vector<T>& values, F&& f) {
  Json out = Json::array();
  for (const T& v : values) out.push_back(f(v));
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedInput, what); }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    malformed("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
}

double get_number(const Json& j, const char* what) {
  if (!j.is_number()) malformed(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex get_complex(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) malformed(std::string(what) + " must be a [re, im] pair");
  return {get_number(j[0], what), get_number(j[1], what)};
}

PolydiskPoint get_point(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array of [re, im] pairs");
  std::vector<Complex> coords;
  for (const Json& z : j) coords.push_back(get_complex(z, what));
  return PolydiskPoint(std::move(coords));
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string_view to_string(Format f) noexcept {
  switch (f) {
    case Format::Text: return "text";
    case Format::Json: return "json";
    case Format::Csv: return "csv";
  }
  return "text";
}

std::optional<Format> format_from_string(std::string_view s) noexcept {
  for (Format f : {Format::Text, Format::Json, Format::Csv}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

double round12(double x) noexcept {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(Complex z) {
  const double re = round12(z.real());
  const double im = round12(z.imag());
  if (std::abs(im) <= 1e-12 * std::max(1.0, std::abs(re))) return format_number(re == 0.0 ? 0.0 : re);
  if (std::abs(re) <= 1e-12 * std::abs(im)) return format_number(im) + "i";
  return format_number(re) + (im < 0.0 ? "-" : "+") + format_number(std::abs(im)) + "i";
}

Polynomial3 parse_polynomial(std::string_view json_text) {
  const Json doc = parse_json(json_text);
  if (!doc.is_object()) malformed("polynomial JSON must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "terms") malformed("unknown field \"" + key + "\" in polynomial JSON");
  }
  const Json& terms = field(doc, "terms");
  if (!terms.is_array()) malformed("\"terms\" must be an array");
  std::vector<std::pair<Exponent<3>, Complex>> list;
  for (const Json& t : terms) {
    if (!t.is_object()) malformed("each term must be an object");
    for (const auto& [key, value] : t.items()) {
      if (key != "exp" && key != "coef") malformed("unknown field \"" + key + "\" in a term");
    }
    const Json& exp = field(t, "exp");
    if (!exp.is_array() || exp.size() != 3) malformed("\"exp\" must hold three exponents");
    Exponent<3> e{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (!exp[k].is_number_integer() || exp[k].get<long long>() < 0 || exp[k].get<long long>() > 1000) {
        malformed("exponents must be nonnegative integers");
      }
      e[k] = static_cast<int>(exp[k].get<long long>());
    }
    list.emplace_back(e, get_complex(field(t, "coef"), "\"coef\""));
  }
  Polynomial3 p = Polynomial3::from_terms(list);
  validate_defining_polynomial(p);
  return p;
}

Polynomial3 load_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_polynomial(buffer.str());
}

std::string polynomial_to_json(const Polynomial3& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(Json{{"exp", Json::array({e[0], e[1], e[2]})}, {"coef", complex_json(c)}});
  }
  return dump(Json{{"terms", terms}});
}

ExtremalReport make_extremal_report(const PolydiskPoint& lambda, const PolydiskPoint& mu) {
  ExtremalReport r;
  r.lambda = lambda;
  r.mu = mu;
  r.balance = balance_type(lambda, mu);
  r.c_polydisk = carath_polydisk(lambda, mu);
  r.phi = balanced_extremal(lambda, mu);
  r.phi_lambda = r.phi(lambda);
  r.phi_mu = r.phi(mu);
  r.rho_attained = rho_raw(r.phi_lambda, r.phi_mu);
  return r;
}

FlatDiskReport make_flatdisk_report(const Polynomial3& p, const FlatDisk& disk, int samples) {
  FlatDiskReport r;
  r.disk = disk;
  r.samples = samples;
  r.flat = flat_disk_check(p, disk, samples);
  for (int k = 0; k < samples; ++k) {
    const Complex zeta = std::polar(kSliceRadius, 2.0 * std::numbers::pi * k / samples);
    r.max_residual = std::max(r.max_residual, std::abs(p(disk.at(zeta))));
  }
  return r;
}

// ---- classification ----

std::string emit_report(const ClassificationResult& r, Format f) {
  const std::string verdict(to_string(r.verdict));
  if (f == Format::Json) {
    Json j;
    j["verdict"] = verdict;
    if (r.kalpha) {
      j["alpha"] = Json::array({complex_json(r.kalpha->alpha[0]), complex_json(r.kalpha->alpha[1]),
                                complex_json(r.kalpha->alpha[2])});
      j["is_triangle"] = r.kalpha->is_triangle;
    } else {
      j["alpha"] = nullptr;
      j["is_triangle"] = nullptr;
    }
    j["reason"] = r.reason;
    Json norm;
    norm["permutation"] = array_of(r.normalizer.permutation(), [](std::size_t i) { return Json(i); });
    norm["poles"] = array_of(r.normalizer.factors(), [](const PolydiskAutomorphism::Factor& fac) {
      return complex_json(fac.mobius.pole().value());
    });
    norm["rotations"] = array_of(r.normalizer.factors(), [](const PolydiskAutomorphism::Factor& fac) {
      return complex_json(fac.rotation.value());
    });
    j["normalizer"] = norm;
    j["diagnostics"] = array_of(r.diagnostics, [](const StageRecord& s) {
      return Json{{"stage", s.stage}, {"outcome", s.outcome}};
    });
    return dump(j);
  }
  if (f == Format::Csv) {
    std::string out = "verdict,alpha1_re,alpha1_im,alpha2_re,alpha2_im,alpha3_re,alpha3_im,is_triangle,reason\n";
    out += verdict;
    for (std::size_t k = 0; k < 3; ++k) {
      if (r.kalpha) {
        out += "," + format_number(r.kalpha->alpha[k].real()) + "," + format_number(r.kalpha->alpha[k].imag());
      } else {
        out += ",,";
      }
    }
    out += "," + std::string(r.kalpha ? (r.kalpha->is_triangle ? "true" : "false") : "");
    out += "," + csv_quote(r.reason) + "\n";
    return out;
  }
  std::string out;
  switch (r.verdict) {
    case Verdict::ExceptionalK:
      out = verdict + " α=(" + format_complex(r.kalpha->alpha[0]) + "," + format_complex(r.kalpha->alpha[1]) +
            "," + format_complex(r.kalpha->alpha[2]) + ")\n";
      break;
    case Verdict::Retract: out = verdict + ": " + r.reason + "\n"; break;
    case Verdict::NeitherStructure: out = verdict + ": " + r.reason + "\n"; break;
  }
  for (const StageRecord& s : r.diagnostics) out += "  " + s.stage + ": " + s.outcome + "\n";
  return out;
}

// ---- slice scan ----

std::string emit_report(const ScanResult& r, Format f) {
  if (f == Format::Json) {
    Json j;
    j["T"] = array_of(r.arc.intervals, [](const std::pair<double, double>& iv) {
      return Json::array({number(iv.first), number(iv.second)});
    });
    j["T_length"] = number(r.arc.length());
    j["S"] = array_of(r.exceptions, [](double a) { return number(a); });
    j["angles"] = array_of(r.angles, [](double a) { return number(a); });
    j["degrees"] = array_of(r.degrees, [](int d) { return Json(d); });
    j["max_deviation"] = array_of(r.deviations, [](double d) { return number(d); });
    j["status"] = array_of(r.statuses, [](BlaschkeResult::Status s) { return Json(std::string(to_string(s))); });
    return dump(j);
  }
  if (f == Format::Csv) {
    std::string out = "angle,degree,max_deviation,status\n";
    for (std::size_t i = 0; i < r.angles.size(); ++i) {
      out += format_number(r.angles[i]) + "," + std::to_string(r.degrees[i]) + "," +
             format_number(r.deviations[i]) + "," + std::string(to_string(r.statuses[i])) + "\n";
    }
    return out;
  }
  std::string out = "T =";
  if (r.arc.intervals.empty()) out += " (empty)";
  for (const auto& [a, b] : r.arc.intervals) out += " [" + format_number(a) + ", " + format_number(b) + "]";
  out += "\nlength(T) = " + format_number(r.arc.length()) + "\nS = [";
  for (std::size_t i = 0; i < r.exceptions.size(); ++i) out += (i ? ", " : "") + format_number(r.exceptions[i]);
  out += "]\n";
  std::vector<std::pair<int, int>> histogram;  // degree, count
  double worst = 0.0;
  for (std::size_t i = 0; i < r.degrees.size(); ++i) {
    worst = std::max(worst, r.deviations[i]);
    auto it = std::find_if(histogram.begin(), histogram.end(), [&](auto& h) { return h.first == r.degrees[i]; });
    if (it == histogram.end()) histogram.emplace_back(r.degrees[i], 1); else ++it->second;
  }
  out += "degrees over " + std::to_string(r.angles.size()) + " angles:";
  for (const auto& [d, n] : histogram) out += " " + std::to_string(d) + " (x" + std::to_string(n) + ")";
  out += "\nmax boundary deviation = " + format_number(worst) + "\n";
  return out;
}

// ---- gap report ----

namespace {

constexpr const char* kGapCsvHeader =
    "lambda1_re,lambda1_im,lambda2_re,lambda2_im,lambda3_re,lambda3_im,"
    "mu1_re,mu1_im,mu2_re,mu2_im,mu3_re,mu3_im,c_polydisk,c_lower,gap\n";

}  // namespace

std::string emit_report(const GapReport& r, Format f) {
  if (f == Format::Json) {
    Json j;
    j["options"] = Json{{"degree", r.options.degree},
                        {"grid", r.options.grid},
                        {"seed", r.options.seed},
                        {"threshold", number(r.options.threshold)}};
    j["summary"] = Json{{"pairs", r.pairs.size()},
                        {"max_gap", number(r.summary.max_gap)},
                        {"mean_gap", number(r.summary.mean_gap)},
                        {"above_threshold", r.summary.above_threshold},
                        {"threshold", number(r.summary.threshold)},
                        {"verdict", r.summary.verdict}};
    j["pairs"] = array_of(r.pairs, [](const PairReport& p) {
      return Json{{"kind", std::string(to_string(p.kind))},
                  {"balance", p.balance},
                  {"lambda", point_json(p.lambda)},
                  {"mu", point_json(p.mu)},
                  {"c_polydisk", number(p.c_polydisk)},
                  {"c_lower", number(p.c_lower)},
                  {"gap", number(p.gap)},
                  {"witness", p.witness_id}};
    });
    return dump(j);
  }
  if (f == Format::Csv) {
    std::string out = kGapCsvHeader;
    for (const PairReport& p : r.pairs) {
      for (const PolydiskPoint* pt : {&p.lambda, &p.mu}) {
        for (Complex z : pt->coords()) out += format_number(z.real()) + "," + format_number(z.imag()) + ",";
      }
      out += format_number(p.c_polydisk) + "," + format_number(p.c_lower) + "," + format_number(p.gap) + "\n";
    }
    return out;
  }
  std::string out = "verdict: " + r.summary.verdict + "\n";
  out += "pairs: " + std::to_string(r.pairs.size()) + " (degree " + std::to_string(r.options.degree) +
         ", grid " + std::to_string(r.options.grid) + ", seed " + std::to_string(r.options.seed) + ")\n";
  out += "max gap: " + format_number(r.summary.max_gap) + "\n";
  out += "mean gap: " + format_number(r.summary.mean_gap) + "\n";
  out += "above threshold " + format_number(r.summary.threshold) + ": " +
         std::to_string(r.summary.above_threshold) + "\n";
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const PairReport& p = r.pairs[i];
    out += "  #" + std::to_string(i) + " " + std::string(to_string(p.kind)) + " c_polydisk=" +
           format_number(p.c_polydisk) + " c_lower=" + format_number(p.c_lower) + " gap=" +
           format_number(p.gap) + " witness=" + p.witness_id + "\n";
  }
  return out;
}

GapReport parse_gap_report(std::string_view json_text) {
  const Json doc = parse_json(json_text);
  GapReport r;
  const Json& opts = field(doc, "options");
  r.options.degree = field(opts, "degree").get<int>();
  r.options.grid = field(opts, "grid").get<int>();
  r.options.seed = field(opts, "seed").get<std::uint64_t>();
  r.options.threshold = get_number(field(opts, "threshold"), "threshold");
  const Json& sum = field(doc, "summary");
  r.summary.max_gap = get_number(field(sum, "max_gap"), "max_gap");
  r.summary.mean_gap = get_number(field(sum, "mean_gap"), "mean_gap");
  r.summary.above_threshold = field(sum, "above_threshold").get<int>();
  r.summary.threshold = get_number(field(sum, "threshold"), "threshold");
  r.summary.verdict = field(sum, "verdict").get<std::string>();
  const Json& pairs = field(doc, "pairs");
  if (!pairs.is_array()) malformed("\"pairs\" must be an array");
  for (const Json& p : pairs) {
    PairReport pr;
    const auto kind = pair_kind_from_string(field(p, "kind").get<std::string>());
    if (!kind) malformed("unknown pair kind");
    pr.kind = *kind;
    pr.balance = field(p, "balance").get<int>();
    pr.lambda = get_point(field(p, "lambda"), "lambda");
    pr.mu = get_point(field(p, "mu"), "mu");
    pr.c_polydisk = get_number(field(p, "c_polydisk"), "c_polydisk");
    pr.c_lower = get_number(field(p, "c_lower"), "c_lower");
    pr.gap = get_number(field(p, "gap"), "gap");
    pr.witness_id = field(p, "witness").get<std::string>();
    r.pairs.push_back(std::move(pr));
  }
  if (static_cast<std::size_t>(field(sum, "pairs").get<long long>()) != r.pairs.size()) {
    malformed("summary pair count does not match the pair list");
  }
  return r;
}

// ---- extremal and flat disk ----

std::string emit_report(const ExtremalReport& r, Format f) {
  const std::string kind = r.phi.kind == ExtremalFunction::Kind::Averaged ? "averaged" : "coordinate";
  if (f == Format::Json) {
    Json j;
    j["lambda"] = point_json(r.lambda);
    j["mu"] = point_json(r.mu);
    j["balance"] = r.balance.n;
    j["ordering"] = array_of(r.balance.ordering, [](std::size_t i) { return Json(i); });
    j["distances"] = array_of(r.balance.distances, [](double d) { return number(d); });
    j["c_polydisk"] = number(r.c_polydisk);
    j["kind"] = kind;
    j["coordinates"] = array_of(r.phi.coordinates, [](std::size_t i) { return Json(i); });
    j["weights"] = Json::array({complex_json(r.phi.weights[0]), complex_json(r.phi.weights[1]),
                                complex_json(r.phi.weights[2])});
    j["omegas"] = array_of(r.phi.omegas, [](Complex w) { return complex_json(w); });
    j["phi_lambda"] = complex_json(r.phi_lambda);
    j["phi_mu"] = complex_json(r.phi_mu);
    j["rho"] = number(r.rho_attained);
    return dump(j);
  }
  if (f == Format::Csv) {
    return "balance,kind,c_polydisk,rho,phi_mu_re,phi_mu_im\n" + std::to_string(r.balance.n) + "," + kind +
           "," + format_number(r.c_polydisk) + "," + format_number(r.rho_attained) + "," +
           format_number(r.phi_mu.real()) + "," + format_number(r.phi_mu.imag()) + "\n";
  }
  std::string out = std::to_string(r.balance.n) + "-balanced pair, c_polydisk = " + format_number(r.c_polydisk) + "\n";
  out += "phi = " + kind + " extremal, weights (" + format_complex(r.phi.weights[0]) + ", " +
         format_complex(r.phi.weights[1]) + ", " + format_complex(r.phi.weights[2]) + ")\n";
  out += "phi(lambda) = " + format_complex(r.phi_lambda) + ", phi(mu) = " + format_complex(r.phi_mu) + "\n";
  out += "rho(phi(lambda), phi(mu)) = " + format_number(r.rho_attained) + "\n";
  return out;
}

std::string emit_report(const FlatDiskReport& r, Format f) {
  if (f == Format::Json) {
    Json j;
    j["direction"] = Json::array({complex_json(r.disk.direction[0]), complex_json(r.disk.direction[1]),
                                  complex_json(r.disk.direction[2])});
    j["samples"] = r.samples;
    j["flat"] = r.flat;
    j["max_residual"] = number(r.max_residual);
    return dump(j);
  }
  if (f == Format::Csv) {
    return "flat,samples,max_residual\n" + std::string(r.flat ? "true" : "false") + "," +
           std::to_string(r.samples) + "," + format_number(r.max_residual) + "\n";
  }
  return std::string(r.flat ? "flat disk: yes" : "flat disk: no") + " (max |P| = " + format_number(r.max_residual) +
         " over " + std::to_string(r.samples) + " samples)\n";
}

}  // namespace caraset
