#pragma once

// Command implementations behind the `lapbounds` executable. Each command
// writes its document to `out`, diagnostics to `err`, and returns the
// process exit status.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lapbounds/bounds.hpp"
#include "lapbounds/edge_list.hpp"
#include "lapbounds/generate.hpp"
#include "lapbounds/oracle.hpp"
#include "lapbounds/report.hpp"

namespace lapbounds::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

inline constexpr double default_verify_tol = 1e-8;

inline WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_edge_list(in);
}

namespace detail {

/// Maps the library's exception types onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (raise with --cap)\n";
    return kUsageError;
  } catch (const OracleError& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace detail

struct BoundsOptions {
  std::string input;
  bool exact = false;
  double tol = default_verify_tol;
  std::size_t cap = default_oracle_cap;
};

inline int cmd_bounds(const BoundsOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto g = load_graph(opt.input);
    if (opt.exact) enforce_cap(g, opt.cap);
    ReportDocument doc;
    doc.command = "bounds";
    doc.n = g.order();
    doc.intervals = interval_report(g);
    doc.degrees = doc.intervals->degrees;
    doc.tolerance = opt.tol;
    int status = kPass;
    if (opt.exact) {
      const auto spectrum = laplacian_spectrum(g);
      doc.spectrum = spectrum.values;
      doc.verification = verify_bounds(g, *doc.intervals, spectrum, opt.tol);
      doc.pass = doc.verification->passed;
      if (!*doc.pass) status = kVerificationFailure;
    }
    out << serialize(doc);
    return status;
  });
}

struct SpectrumOptions {
  std::string input;
  double tol = default_solver_tol;
  std::size_t cap = default_oracle_cap;
};

inline int cmd_spectrum(const SpectrumOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto g = load_graph(opt.input);
    enforce_cap(g, opt.cap);
    ReportDocument doc;
    doc.command = "spectrum";
    doc.n = g.order();
    doc.degrees = degree_view(g).degrees;
    doc.spectrum = symmetric_spectrum(laplacian(g), opt.tol).values;
    doc.tolerance = opt.tol;
    out << serialize(doc);
    return int{kPass};
  });
}

struct VerifyOptions {
  std::string input;
  double tol = default_verify_tol;
  std::size_t cap = default_oracle_cap;
  /// Negative control: push the upper bound at this index below its lower bound.
  std::optional<std::size_t> corrupt_index;
};

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto g = load_graph(opt.input);
    enforce_cap(g, opt.cap);
    auto report = interval_report(g);
    if (opt.corrupt_index) {
      auto& e = report.at(*opt.corrupt_index);
      e.upper = e.lower - 1.0;
    }
    const auto spectrum = laplacian_spectrum(g);
    ReportDocument doc;
    doc.command = "verify";
    doc.n = g.order();
    doc.degrees = report.degrees;
    doc.verification = verify_bounds(g, report, spectrum, opt.tol);
    doc.complement = check_complement_identity(g, opt.tol, opt.cap);
    doc.intervals = std::move(report);
    doc.spectrum = spectrum.values;
    doc.tolerance = opt.tol;
    doc.pass = doc.verification->passed && doc.complement->passed;
    out << serialize(doc);
    if (!*doc.pass) {
      for (auto m : doc.verification->failed_indices()) err << "violation at index " << m << '\n';
      if (!doc.complement->passed) err << "complement identity residual exceeds tolerance\n";
      return int{kVerificationFailure};
    }
    return int{kPass};
  });
}

struct FuzzOptions {
  Family family = Family::Gnp;
  std::size_t n_min = 2;
  std::size_t n_max = 30;
  std::vector<double> p{0.3};
  double max_weight = 10.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  double tol = default_verify_tol;
  std::size_t cap = default_oracle_cap;
};

/// One spec per trial: n drawn from [n_min, n_max], p cycling through the
/// given values, seed = base seed + trial index.
inline std::vector<GenSpec> fuzz_specs(const FuzzOptions& opt) {
  if (opt.n_min < 1 || opt.n_min > opt.n_max) throw std::invalid_argument("invalid n range");
  if (opt.p.empty()) throw std::invalid_argument("at least one p is required");
  Rng sizes(opt.seed);
  std::vector<GenSpec> specs;
  specs.reserve(opt.trials);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    GenSpec s;
    s.family = opt.family;
    s.n = sizes.between(opt.n_min, opt.n_max);
    if (s.family == Family::Cycle) s.n = std::max<std::size_t>(s.n, 3);
    if (s.family == Family::StarPlusEdges) s.n = std::max<std::size_t>(s.n, 2);
    s.p = opt.p[t % opt.p.size()];
    s.max_weight = opt.max_weight;
    s.seed = opt.seed + t;
    specs.push_back(s);
  }
  return specs;
}

inline json to_json(const FuzzStats& s) {
  json rules = json::object();
  for (const auto& [rule, rs] : s.rules) {
    rules[std::string(rule_name(rule))] = {
        {"asserted", rs.asserted},
        {"exceptional", rs.exceptional},
        {"tight", rs.tight},
        {"min_gap", lapbounds::detail::real_to_json(rs.asserted ? rs.min_gap : 0.0)},
        {"mean_gap", lapbounds::detail::real_to_json(rs.mean_gap())},
        {"max_gap", lapbounds::detail::real_to_json(rs.asserted ? rs.max_gap : 0.0)}};
  }
  return {{"instances", s.instances},
          {"indices_checked", s.indices_checked},
          {"violations", s.violations},
          {"equality_predictions", s.equality_predictions},
          {"worst_bound_residual", lapbounds::detail::real_to_json(s.worst_bound_residual)},
          {"worst_complement_residual", lapbounds::detail::real_to_json(s.worst_complement_residual)},
          {"rules", rules}};
}

inline int cmd_fuzz(const FuzzOptions& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto specs = fuzz_specs(opt);
    json doc = {{"command", "fuzz"},
                {"family", std::string(family_name(opt.family))},
                {"n_min", opt.n_min},
                {"n_max", opt.n_max},
                {"p", opt.p},
                {"max_weight", opt.max_weight},
                {"trials", opt.trials},
                {"seed", opt.seed},
                {"tolerance", opt.tol}};
    try {
      const auto stats = fuzz_bounds(specs, 1, opt.tol, opt.cap);
      doc["stats"] = to_json(stats);
      doc["pass"] = true;
      out << doc.dump(2) << '\n';
      return int{kPass};
    } catch (const FuzzViolation& v) {
      err << "violation: " << v.what() << "\nreplay: lapbounds gen --family "
          << family_name(v.spec().family) << " --n " << v.spec().n << " --p "
          << format_real(v.spec().p) << " --max-weight " << format_real(v.spec().max_weight)
          << " --seed " << v.spec().seed << '\n';
      doc["violation"] = {{"spec", v.spec().describe()},
                          {"bounds", to_json(v.bounds_report())},
                          {"complement_identity", to_json(v.complement_report())}};
      doc["pass"] = false;
      out << doc.dump(2) << '\n';
      return int{kVerificationFailure};
    }
  });
}

inline int cmd_gen(const GenSpec& spec, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    write_edge_list(out, generate(spec));
    return int{kPass};
  });
}

}  // namespace lapbounds::cli
