#pragma once

// Command-line front end:
//
//   qmeasure compute {mu1|mu2|prho|entropy} --input PATH [--rho PATH] [--subspace]
//   qmeasure verify [all|<check>]
//   qmeasure sample --dim D --count N
//
// Shared flags: --output PATH, --format json|csv, --seed N, --tolerance X,
// --bisection-tolerance X, --max-iterations N.
//
// Exit codes: 0 success, 1 verification failure, 2 bad input or usage,
// 3 optimizer did not converge (the partial result is still written).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmeasure/measures.hpp"
#include "qmeasure/serialize.hpp"
#include "qmeasure/verify.hpp"

namespace qmeasure::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kBadInput = 2, kNotConverged = 3 };

/// 9 significant digits in fixed notation: 2 -> "2.00000000",
/// 0.5 -> "0.500000000".
inline std::string format_value(double x) {
  if (x == 0.0 || !std::isfinite(x)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8f", x);
    return buf;
  }
  const int magnitude = static_cast<int>(std::floor(std::log10(std::abs(x))));
  const int decimals = std::max(0, 8 - magnitude);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError("cannot write " + path);
  out << text;
}

struct Options {
  std::string subject;
  std::string input;
  std::string rho;
  std::string output;
  std::string format = "json";
  bool subspace = false;
  std::string suite = "all";
  int dim = 0;
  int count = 0;
  int trials = -1;
  std::uint64_t seed = SuiteSettings{}.seed;
  double tolerance = OptimizerSettings{}.tolerance;
  double bisection_tolerance = OptimizerSettings{}.bisection_tolerance;
  int max_iterations = OptimizerSettings{}.max_iterations;

  OptimizerSettings optimizer() const {
    OptimizerSettings o;
    o.tolerance = tolerance;
    o.bisection_tolerance = bisection_tolerance;
    o.max_iterations = max_iterations;
    o.seed = seed;
    o.validate();
    return o;
  }
};

inline std::string csv_bool(bool b) { return b ? "true" : "false"; }

inline std::string measure_csv(const MeasureResult& r) {
  std::ostringstream s;
  s.precision(17);
  s << "value,entropy_bits,converged,gap_bound\n"
    << r.value << ',' << r.entropy_bits << ',' << csv_bool(r.converged) << ',' << r.gap_bound << '\n';
  return s.str();
}

inline std::string fraction_csv(const FractionResult& r) {
  std::ostringstream s;
  s.precision(17);
  s << "lambda,converged,bracket_width,upper_bound\n"
    << r.lambda << ',' << csv_bool(r.converged) << ',' << r.bracket_width << ',' << r.upper_bound << '\n';
  return s.str();
}

inline std::string reports_csv(const std::vector<PropertyReport>& reports) {
  std::ostringstream s;
  s.precision(17);
  s << "property_name,trials,violations,worst_violation,tolerance_used,asserting,passed\n";
  for (const auto& r : reports)
    s << r.property_name << ',' << r.trials << ',' << r.violations << ',' << r.worst_violation << ','
      << r.tolerance_used << ',' << csv_bool(r.asserting) << ',' << csv_bool(r.passed) << '\n';
  return s.str();
}

inline int run_compute(const Options& opt, std::ostream& out) {
  const auto settings = opt.optimizer();
  const Json input = parse_document(read_file(opt.input));

  std::string report;
  std::string printed;
  bool converged = true;

  if (opt.subject == "prho") {
    if (opt.rho.empty()) throw DocumentError("prho requires --rho");
    const auto rho = density_matrix_from_json(parse_document(read_file(opt.rho)));
    FractionResult r;
    if (opt.subspace) {
      const auto v = subspace_from_json(input);
      if (v.ambient_dim() != rho.dim()) throw DimensionMismatch(v.ambient_dim(), rho.dim());
      r = p_rho_subspace(rho, v, settings);
    } else {
      const auto u = state_set_from_json(input);
      if (u.dim() != rho.dim()) throw DimensionMismatch(u.dim(), rho.dim());
      r = p_rho(rho, u, settings);
    }
    converged = r.converged;
    printed = format_value(r.lambda);
    Json j = to_json(r);
    j["subject"] = opt.subject;
    report = opt.format == "csv" ? fraction_csv(r) : j.dump(2) + "\n";
  } else {
    MeasureResult r;
    if (opt.subject == "entropy") {
      const auto rho = opt.rho.empty() ? uniform_mixture(state_set_from_json(input))
                                       : density_matrix_from_json(parse_document(read_file(opt.rho)));
      const double s = von_neumann_entropy(rho);
      r = MeasureResult{std::exp2(s), s, std::nullopt, true, 0.0};
      printed = format_value(s);
    } else {
      if (opt.subspace) {
        const auto v = subspace_from_json(input);
        r = opt.subject == "mu1" ? mu_first(v.as_state_set()) : mu_subspace(v, settings);
      } else {
        const auto u = state_set_from_json(input);
        r = opt.subject == "mu1" ? mu_first(u) : mu_second(u, settings);
      }
      printed = format_value(r.value);
    }
    converged = r.converged;
    Json j = to_json(r);
    j["subject"] = opt.subject;
    report = opt.format == "csv" ? measure_csv(r) : j.dump(2) + "\n";
  }

  if (!opt.output.empty()) write_output(opt.output, report);
  out << printed << '\n';
  return converged ? kOk : kNotConverged;
}

inline int run_verify(const Options& opt, std::ostream& out) {
  SuiteSettings settings;
  settings.seed = opt.seed;
  settings.optimizer = opt.optimizer();
  // the master seed drives instance generation; restarts keep their own
  settings.optimizer.seed = OptimizerSettings{}.seed;
  if (opt.trials >= 0) settings = settings.with_count(opt.trials);

  std::vector<PropertyReport> reports;
  if (opt.suite == "all") {
    reports = run_full_suite(settings);
  } else {
    reports.push_back(run_check(opt.suite, settings));
  }
  const bool ok = suite_passed(reports);

  std::string report;
  if (opt.format == "csv") {
    report = reports_csv(reports);
  } else {
    Json j{{"seed", opt.seed}, {"suite", opt.suite}, {"passed", ok}, {"reports", Json::array()}};
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    report = j.dump(2) + "\n";
  }
  if (opt.output.empty()) {
    out << report;
  } else {
    write_output(opt.output, report);
    for (const auto& r : reports)
      out << (r.asserting ? (r.passed ? "PASS   " : "FAIL   ") : "REPORT ") << r.property_name << "  trials="
          << r.trials << " violations=" << r.violations << '\n';
  }
  return ok ? kOk : kVerificationFailed;
}

inline int run_sample(const Options& opt, std::ostream& out) {
  if (opt.dim < 1 || opt.count < 1) throw CLI::ValidationError("sample", "--dim and --count must be >= 1");
  RandomSource rng(opt.seed);
  std::vector<PureState> states;
  for (int i = 0; i < opt.count; ++i) states.push_back(haar_sample(static_cast<std::size_t>(opt.dim), rng));
  // rays may coincide only with probability zero; skip the StateSet check so
  // d = 1 (a single ray) still samples `count` vectors
  Json doc{{"dim", opt.dim}, {"states", Json::array()}};
  for (const auto& s : states) doc["states"].push_back(to_json(s));
  const std::string text = doc.dump() + "\n";
  if (opt.output.empty()) {
    out << text;
  } else {
    write_output(opt.output, text);
  }
  return kOk;
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> names{"all"};
  for (const auto& c : registered_checks()) names.emplace_back(c.name);
  return names;
}

/// Entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Non-additive state-counting measures: compute, verify, sample"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", opt.output, "Write the report to PATH");
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", opt.seed, "Random seed");
    sub->add_option("--tolerance", opt.tolerance, "Optimizer gap tolerance (bits)")->check(CLI::PositiveNumber);
    sub->add_option("--bisection-tolerance", opt.bisection_tolerance, "Bisection bracket width")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iterations", opt.max_iterations, "Optimizer iteration cap")->check(CLI::PositiveNumber);
  };

  auto* compute = app.add_subcommand("compute", "Evaluate a measure on a state-set document");
  compute->add_option("subject", opt.subject, "mu1 | mu2 | prho | entropy")
      ->required()
      ->check(CLI::IsMember({"mu1", "mu2", "prho", "entropy"}));
  compute->add_option("--input", opt.input, "State-set (or subspace) JSON document")->required();
  compute->add_option("--rho", opt.rho, "Density-matrix JSON document (prho, entropy)");
  compute->add_flag("--subspace", opt.subspace, "Treat --input as an orthonormal subspace basis");
  add_common(compute);

  auto* verify = app.add_subcommand("verify", "Run property checks");
  verify->add_option("suite", opt.suite, "all or a check name")->check(CLI::IsMember(check_names()));
  verify->add_option("--trials", opt.trials, "Override the trial count of every check")->check(CLI::NonNegativeNumber);
  add_common(verify);

  auto* sample = app.add_subcommand("sample", "Write Haar-random states as a state-set document");
  sample->add_option("--dim", opt.dim, "Hilbert-space dimension")->required();
  sample->add_option("--count", opt.count, "Number of states")->required();
  add_common(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kBadInput;
  }

  try {
    if (compute->parsed()) return run_compute(opt, out);
    if (verify->parsed()) return run_verify(opt, out);
    return run_sample(opt, out);
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNotConverged;
  }
}

}  // namespace qmeasure::cli
