#pragma once

// JSON serialization of interval reports, spectra and verification results.
//
// Field names are a stable contract. Doubles are written in the shortest
// form that parses back to the same bits; non-finite values are written as
// the strings "inf", "-inf" or "nan".

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lapbounds/bounds.hpp"
#include "lapbounds/oracle.hpp"

namespace lapbounds {

using json = nlohmann::ordered_json;

/// Everything a CLI command reports, as one serializable document.
struct ReportDocument {
  std::string command;
  std::size_t n = 0;
  std::vector<double> degrees;
  std::optional<IntervalReport> intervals;
  std::optional<std::vector<double>> spectrum;
  std::optional<VerificationReport> verification;
  std::optional<VerificationReport> complement;
  double tolerance = 0.0;
  std::optional<bool> pass;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

namespace detail {

inline json real_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double real_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("not a number: " + s);
  }
  return j.get<double>();
}

inline json reals_to_json(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(real_to_json(x));
  return arr;
}

inline std::vector<double> reals_from_json(const json& j) {
  std::vector<double> out;
  for (const auto& x : j) out.push_back(real_from_json(x));
  return out;
}

inline json rules_to_json(const std::vector<Rule>& rules) {
  json arr = json::array();
  for (Rule r : rules) arr.push_back(std::string(rule_name(r)));
  return arr;
}

inline Rule rule_from_json(const json& j) {
  const auto name = j.get<std::string>();
  const auto r = rule_from_name(name);
  if (!r) throw std::invalid_argument("unknown rule: " + name);
  return *r;
}

inline std::vector<Rule> rules_from_json(const json& j) {
  std::vector<Rule> out;
  for (const auto& x : j) out.push_back(rule_from_json(x));
  return out;
}

}  // namespace detail

inline json to_json(const BoundResult& b) {
  return {{"rule", std::string(rule_name(b.rule))},
          {"index", b.index},
          {"value", detail::real_to_json(b.value)},
          {"exceptional", b.exceptional}};
}

inline json to_json(const IntervalReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json bounds = json::array();
    for (const auto& b : e.bounds) bounds.push_back(to_json(b));
    entries.push_back({{"index", e.index},
                       {"lower", detail::real_to_json(e.lower)},
                       {"lower_rules", detail::rules_to_json(e.lower_rules)},
                       {"upper", detail::real_to_json(e.upper)},
                       {"upper_rules", detail::rules_to_json(e.upper_rules)},
                       {"equality_predicted", e.equality_predicted},
                       {"pinned", e.pinned},
                       {"exceptional_flags", detail::rules_to_json(e.exceptional_rules())},
                       {"bounds", bounds}});
  }
  return {{"n", r.n},
          {"unweighted", r.unweighted},
          {"max_weight", detail::real_to_json(r.max_weight)},
          {"degrees", detail::reals_to_json(r.degrees)},
          {"intervals", entries}};
}

inline IntervalReport interval_report_from_json(const json& j) {
  IntervalReport r;
  r.n = j.at("n").get<std::size_t>();
  r.unweighted = j.at("unweighted").get<bool>();
  r.max_weight = detail::real_from_json(j.at("max_weight"));
  r.degrees = detail::reals_from_json(j.at("degrees"));
  for (const auto& je : j.at("intervals")) {
    IntervalEntry e;
    e.index = je.at("index").get<std::size_t>();
    e.lower = detail::real_from_json(je.at("lower"));
    e.lower_rules = detail::rules_from_json(je.at("lower_rules"));
    e.upper = detail::real_from_json(je.at("upper"));
    e.upper_rules = detail::rules_from_json(je.at("upper_rules"));
    e.equality_predicted = je.at("equality_predicted").get<bool>();
    e.pinned = je.at("pinned").get<bool>();
    for (const auto& jb : je.at("bounds")) {
      e.bounds.push_back({detail::real_from_json(jb.at("value")), detail::rule_from_json(jb.at("rule")),
                          jb.at("exceptional").get<bool>(), jb.at("index").get<std::size_t>()});
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

inline json to_json(const VerificationReport& v) {
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"index", c.index},
                      {"eigenvalue", detail::real_to_json(c.eigenvalue)},
                      {"lower", detail::real_to_json(c.lower)},
                      {"upper", detail::real_to_json(c.upper)},
                      {"lower_ok", c.lower_ok},
                      {"upper_ok", c.upper_ok},
                      {"slack", detail::real_to_json(c.slack)}});
  }
  return {{"tolerance", detail::real_to_json(v.tolerance)},
          {"checks", checks},
          {"complement_residuals", detail::reals_to_json(v.complement_residuals)},
          {"matrix_identity_residual", detail::real_to_json(v.matrix_identity_residual)},
          {"worst_residual", detail::real_to_json(v.worst_residual)},
          {"passed", v.passed}};
}

inline VerificationReport verification_from_json(const json& j) {
  VerificationReport v;
  v.tolerance = detail::real_from_json(j.at("tolerance"));
  for (const auto& jc : j.at("checks")) {
    IndexCheck c;
    c.index = jc.at("index").get<std::size_t>();
    c.eigenvalue = detail::real_from_json(jc.at("eigenvalue"));
    c.lower = detail::real_from_json(jc.at("lower"));
    c.upper = detail::real_from_json(jc.at("upper"));
    c.lower_ok = jc.at("lower_ok").get<bool>();
    c.upper_ok = jc.at("upper_ok").get<bool>();
    c.slack = detail::real_from_json(jc.at("slack"));
    v.checks.push_back(c);
  }
  v.complement_residuals = detail::reals_from_json(j.at("complement_residuals"));
  v.matrix_identity_residual = detail::real_from_json(j.at("matrix_identity_residual"));
  v.worst_residual = detail::real_from_json(j.at("worst_residual"));
  v.passed = j.at("passed").get<bool>();
  return v;
}

inline json to_json(const ReportDocument& d) {
  json j = {{"command", d.command}, {"n", d.n}, {"degrees", detail::reals_to_json(d.degrees)}};
  if (d.intervals) j["report"] = to_json(*d.intervals);
  if (d.spectrum) j["spectrum"] = detail::reals_to_json(*d.spectrum);
  if (d.verification) j["verification"] = to_json(*d.verification);
  if (d.complement) j["complement_identity"] = to_json(*d.complement);
  j["tolerance"] = detail::real_to_json(d.tolerance);
  if (d.pass) j["pass"] = *d.pass;
  return j;
}

inline ReportDocument report_document_from_json(const json& j) {
  ReportDocument d;
  d.command = j.at("command").get<std::string>();
  d.n = j.at("n").get<std::size_t>();
  d.degrees = detail::reals_from_json(j.at("degrees"));
  if (j.contains("report")) d.intervals = interval_report_from_json(j.at("report"));
  if (j.contains("spectrum")) d.spectrum = detail::reals_from_json(j.at("spectrum"));
  if (j.contains("verification")) d.verification = verification_from_json(j.at("verification"));
  if (j.contains("complement_identity"))
    d.complement = verification_from_json(j.at("complement_identity"));
  d.tolerance = detail::real_from_json(j.at("tolerance"));
  if (j.contains("pass")) d.pass = j.at("pass").get<bool>();
  return d;
}

inline std::string serialize(const ReportDocument& d) { return to_json(d).dump(2) + "\n"; }

inline ReportDocument parse_report_document(const std::string& text) {
  return report_document_from_json(json::parse(text));
}

}  // namespace lapbounds
