#include "caraset/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "caraset/error.hpp"
#include "caraset/extremals.hpp"
#include "caraset/variety.hpp"

namespace caraset::cli {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

PolydiskPoint point_from_floats(const std::vector<double>& f, std::size_t offset, const char* what) {
  if (f.size() < offset + 6) invalid(std::string(what) + " needs 6 floats");
  return PolydiskPoint({Complex(f[offset], f[offset + 1]), Complex(f[offset + 2], f[offset + 3]),
                        Complex(f[offset + 4], f[offset + 5])});
}

PolydiskPoint base_point(const RunConfig& c) {
  return c.point.empty() ? PolydiskPoint::origin(3) : point_from_floats(c.point, 0, "--point");
}

// The z-graph when it exists, then the other axes; the first failure is reported.
RationalGraph any_graph(const Polynomial3& p) {
  std::optional<Error> first;
  for (Axis axis : {Axis::Z, Axis::Y, Axis::X}) {
    try {
      return graph_extract(p, axis);
    } catch (const Error& e) {
      if (!first) first = e;
    }
  }
  throw *first;
}

Polynomial3 require_input(const RunConfig& c) {
  if (c.input.empty()) invalid(std::string(to_string(c.command)) + " needs --in <polynomial.json>");
  return load_polynomial(c.input);
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Classify: return "classify";
    case Command::Verify: return "verify";
    case Command::Scan: return "scan";
    case Command::Extremal: return "extremal";
    case Command::FlatDisk: return "flatdisk";
  }
  return "classify";
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) invalid("tol must be positive");
  if (degree < 1 || degree > kMaxCandidateDegree) invalid("degree must lie in 1..8");
  if (grid <= 0) invalid("grid must be positive");
  if (pairs <= 0) invalid("pairs must be positive");
  if (!(threshold > 0.0)) invalid("threshold must be positive");
  if (threads < 0) invalid("threads must be nonnegative");
  if (samples <= 0) invalid("samples must be positive");
  if (!point.empty() && point.size() != 6) invalid("--point needs 6 floats");
  if (command == Command::Extremal && pair.size() != 12) invalid("extremal needs --pair with 12 floats");
  if (command == Command::FlatDisk && dir.size() != 6) invalid("flatdisk needs --dir with 6 floats");
}

void apply_config_json(RunConfig& config, std::string_view json_text, const std::vector<std::string>& skip) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, std::string("config: ") + e.what());
  }
  if (!doc.is_object()) invalid("config must be a JSON object");
  auto skipped = [&](const std::string& key) { return std::find(skip.begin(), skip.end(), key) != skip.end(); };
  try {
    for (const auto& [key, value] : doc.items()) {
      if (skipped(key)) continue;
      if (key == "in" || key == "input") config.input = value.get<std::string>();
      else if (key == "out" || key == "output") config.output = value.get<std::string>();
      else if (key == "tol") config.tol = value.get<double>();
      else if (key == "degree") config.degree = value.get<int>();
      else if (key == "grid") config.grid = value.get<int>();
      else if (key == "pairs") config.pairs = value.get<int>();
      else if (key == "seed") config.seed = value.get<std::uint64_t>();
      else if (key == "threshold") config.threshold = value.get<double>();
      else if (key == "threads") config.threads = value.get<int>();
      else if (key == "samples") config.samples = value.get<int>();
      else if (key == "point") config.point = value.get<std::vector<double>>();
      else if (key == "pair") config.pair = value.get<std::vector<double>>();
      else if (key == "dir") config.dir = value.get<std::vector<double>>();
      else if (key == "format") {
        const auto f = format_from_string(value.get<std::string>());
        if (!f) invalid("config: unknown format");
        config.format = *f;
      } else {
        invalid("config: unknown key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    invalid(std::string("config: ") + e.what());
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    std::string report;
    int code = kExitOk;
    switch (config.command) {
      case Command::Classify: {
        const Polynomial3 p = require_input(config);
        ClassifyOptions options;
        options.membership_tol = config.tol;
        const ClassificationResult r = classify(p, base_point(config), options);
        report = emit_report(r, config.format);
        if (r.verdict == Verdict::NeitherStructure) code = kExitNeither;
        break;
      }
      case Command::Verify: {
        Polynomial3 p = require_input(config);
        if (!config.point.empty()) p = normalize_to_origin(p, base_point(config)).polynomial;
        GapOptions options;
        options.degree = config.degree;
        options.grid = config.grid;
        options.threshold = config.threshold;
        options.seed = config.seed;
        options.threads = config.threads;
        report = emit_report(gap_report(any_graph(p), p, config.pairs, options), config.format);
        break;
      }
      case Command::Scan: {
        const Polynomial3 p = normalize_to_origin(require_input(config), base_point(config)).polynomial;
        report = emit_report(scan_slices(p, any_graph(p), config.grid), config.format);
        break;
      }
      case Command::Extremal: {
        const PolydiskPoint lambda = point_from_floats(config.pair, 0, "--pair");
        const PolydiskPoint mu = point_from_floats(config.pair, 6, "--pair");
        report = emit_report(make_extremal_report(lambda, mu), config.format);
        break;
      }
      case Command::FlatDisk: {
        const Polynomial3 p = require_input(config);
        const auto& d = config.dir;
        const FlatDisk disk = FlatDisk::make({Complex(d[0], d[1]), Complex(d[2], d[3]), Complex(d[4], d[5])});
        const int samples = std::max(config.samples, p.total_degree() + 1);
        report = emit_report(make_flatdisk_report(p, disk, samples), config.format);
        break;
      }
    }
    if (config.output.empty()) {
      out << report;
    } else {
      std::ofstream file(config.output);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + config.output);
      file << report;
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Carathéodory-set toolkit for algebraic subsets of the tridisk", "caraset"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string format = "text";
  app.add_option("--config", config_path, "JSON file with option values (unknown keys rejected)");
  app.add_option("--in", config.input, "Polynomial JSON");
  app.add_option("--out", config.output, "Write the report here instead of stdout");
  app.add_option("--tol", config.tol, "Membership tolerance");
  app.add_option("--degree", config.degree, "Candidate polynomial degree");
  app.add_option("--grid", config.grid, "Constraint grid size (verify) or scan angles (scan)");
  app.add_option("--pairs", config.pairs, "Number of sampled pairs");
  app.add_option("--seed", config.seed, "Random seed (CARASET_SEED overrides)");
  app.add_option("--threshold", config.threshold, "Gap threshold for verdicts");
  app.add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", config.threads, "Worker threads for verify; 0 = all cores");
  app.add_option("--point", config.point, "Point moved to the origin: 6 floats")->expected(6);
  app.add_option("--samples", config.samples, "Samples for flatdisk");

  CLI::App* classify_cmd = app.add_subcommand("classify", "Retract / K_alpha / neither verdict");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Gap report of a lower bound against the polydisk distance");
  CLI::App* scan_cmd = app.add_subcommand("scan", "Arc T, exceptions S and slice Blaschke degrees");
  CLI::App* extremal_cmd = app.add_subcommand("extremal", "Balanced extremal for a pair of D^3");
  extremal_cmd->add_option("--pair", config.pair, "lambda then mu: 12 floats")->expected(12)->required();
  CLI::App* flat_cmd = app.add_subcommand("flatdisk", "Flat disk test along a direction");
  flat_cmd->add_option("--dir", config.dir, "direction: 6 floats")->expected(6)->required();

  std::ostringstream help_out, help_err;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitError;
  }

  if (classify_cmd->parsed()) config.command = Command::Classify;
  if (verify_cmd->parsed()) config.command = Command::Verify;
  if (scan_cmd->parsed()) config.command = Command::Scan;
  if (extremal_cmd->parsed()) config.command = Command::Extremal;
  if (flat_cmd->parsed()) config.command = Command::FlatDisk;

  try {
    config.format = *format_from_string(format);
    if (!config_path.empty()) {
      // Explicit command-line values win over the file.
      std::vector<std::string> explicit_keys;
      for (const CLI::Option* opt : app.get_options()) {
        if (opt->count() > 0) explicit_keys.push_back(opt->get_name().substr(2));
      }
      std::ifstream file(config_path);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open config " + config_path);
      std::stringstream buffer;
      buffer << file.rdbuf();
      apply_config_json(config, buffer.str(), explicit_keys);
    }
    if (const char* env = std::getenv("CARASET_SEED")) {
      char* end = nullptr;
      const unsigned long long seed = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') throw Error(ErrorCode::InvalidArgument, "CARASET_SEED must be an integer");
      config.seed = seed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return run(config, out, err);
}

}  // namespace caraset::cli
