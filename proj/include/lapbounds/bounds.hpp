#pragma once

// Degree-based two-sided bounds on Laplacian eigenvalues.
//
// Eigenvalues are indexed 1..n in ascending order (lambda_1 = 0). Four rules:
//
//   BhLower        lambda_i     >= d_i - n + i + 1            unweighted, G != K_{n-i+1} + (i-1)K_1
//   MainUpper      lambda_{m+1} <= d_m + m - 1                unweighted, co-G != K_m + (n-m)K_1
//   WeightedLower  lambda_m     >= d_m - maxdeg(G[l_m])
//   WeightedUpper  lambda_{m+1} <= d_m + m*a - mindeg(G[S_m])
//
// where l_m holds the n-m+1 largest-degree vertices, S_m the m smallest and
// a is the maximal edge weight. Induced degrees use original weights.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lapbounds/graph.hpp"

namespace lapbounds {

enum class Rule { BhLower, MainUpper, WeightedLower, WeightedUpper };

inline constexpr std::array<Rule, 4> all_rules = {Rule::BhLower, Rule::MainUpper,
                                                  Rule::WeightedLower, Rule::WeightedUpper};

inline std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::BhLower: return "BH_LOWER";
    case Rule::MainUpper: return "MAIN_UPPER";
    case Rule::WeightedLower: return "WEIGHTED_LOWER";
    case Rule::WeightedUpper: return "WEIGHTED_UPPER";
  }
  return "?";
}

inline std::optional<Rule> rule_from_name(std::string_view s) {
  for (Rule r : all_rules)
    if (rule_name(r) == s) return r;
  return std::nullopt;
}

inline bool is_lower_rule(Rule r) { return r == Rule::BhLower || r == Rule::WeightedLower; }

/// One bound on lambda_index. `value` is the raw right-hand side of the rule
/// and is kept even when the graph is in the rule's excluded family; such a
/// bound is never asserted (see `asserted()`).
struct BoundResult {
  double value = 0.0;
  Rule rule = Rule::BhLower;
  bool exceptional = false;
  std::size_t index = 1;

  std::optional<double> asserted() const {
    if (exceptional) return std::nullopt;
    return value;
  }

  friend bool operator==(const BoundResult&, const BoundResult&) = default;
};

struct IntervalEntry {
  std::size_t index = 1;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::vector<Rule> lower_rules;  // rules attaining `lower`
  std::vector<Rule> upper_rules;  // rules attaining `upper`
  bool equality_predicted = false;
  /// Index 1 is fixed to [0, 0] because 0 is always the smallest Laplacian eigenvalue.
  bool pinned = false;
  /// Every candidate bound considered for this index, exceptional ones included.
  std::vector<BoundResult> bounds;

  std::vector<Rule> exceptional_rules() const {
    std::vector<Rule> out;
    for (const auto& b : bounds)
      if (b.exceptional) out.push_back(b.rule);
    return out;
  }

  friend bool operator==(const IntervalEntry&, const IntervalEntry&) = default;
};

struct IntervalReport {
  std::size_t n = 0;
  bool unweighted = true;
  double max_weight = 0.0;
  std::vector<double> degrees;  // ascending
  std::vector<IntervalEntry> entries;  // entries[m-1] describes lambda_m

  const IntervalEntry& at(std::size_t m) const { return entries.at(m - 1); }
  IntervalEntry& at(std::size_t m) { return entries.at(m - 1); }

  friend bool operator==(const IntervalReport&, const IntervalReport&) = default;
};

class BoundError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {

inline void check_index(std::size_t m, std::size_t lo, std::size_t hi, const char* what) {
  if (m < lo || m > hi)
    throw std::out_of_range(std::string(what) + ": index " + std::to_string(m) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

inline double max_degree(const WeightedGraph& h) {
  double best = 0.0;
  for (double d : h.degrees()) best = std::max(best, d);
  return best;
}

inline double min_degree(const WeightedGraph& h) {
  double best = std::numeric_limits<double>::infinity();
  for (double d : h.degrees()) best = std::min(best, d);
  return best;
}

inline BoundResult bh_lower(const DegreeView& view, std::size_t i, std::optional<std::size_t> family) {
  const double n = static_cast<double>(view.degrees.size());
  return {view.d(i) - n + static_cast<double>(i) + 1.0, Rule::BhLower, family == i, i};
}

inline BoundResult main_upper(const DegreeView& view, std::size_t m,
                              std::optional<std::size_t> co_family) {
  return {view.d(m) + static_cast<double>(m) - 1.0, Rule::MainUpper, co_family == m, m + 1};
}

}  // namespace detail

/// Maximum vertex degree of h; dominates the spectral radius of A(h) by
/// Gershgorin's disc theorem (A(h) is nonnegative with row sums = degrees).
inline double gershgorin_radius(const WeightedGraph& h) { return detail::max_degree(h); }

inline BoundResult lower_bound_bh(const WeightedGraph& g, std::size_t i) {
  require_unit_weights(g, "lower_bound_bh");
  detail::check_index(i, 1, g.order(), "lower_bound_bh");
  const auto view = degree_view(g);
  return detail::bh_lower(view, i, clique_plus_isolated_index(view.degrees));
}

/// Bound on lambda_{m+1}; exceptional when the complement is K_m + (n-m)K_1.
inline BoundResult upper_bound_main(const WeightedGraph& g, std::size_t m) {
  require_unit_weights(g, "upper_bound_main");
  detail::check_index(m, 1, g.order() - 1, "upper_bound_main");
  const auto view = degree_view(g);
  return detail::main_upper(view, m, complement_clique_plus_isolated_index(view.degrees));
}

inline BoundResult lower_bound_weighted(const WeightedGraph& g, std::size_t m) {
  detail::check_index(m, 1, g.order(), "lower_bound_weighted");
  const auto view = degree_view(g);
  const auto top = induced_subgraph(g, top_set(view, m));
  return {view.d(m) - gershgorin_radius(top), Rule::WeightedLower, false, m};
}

/// Bound on lambda_{m+1}.
inline BoundResult upper_bound_weighted(const WeightedGraph& g, std::size_t m) {
  detail::check_index(m, 1, g.order() - 1, "upper_bound_weighted");
  const auto view = degree_view(g);
  const auto bottom = induced_subgraph(g, bottom_set(view, m));
  const double value =
      view.d(m) + static_cast<double>(m) * g.max_weight() - detail::min_degree(bottom);
  return {value, Rule::WeightedUpper, false, m + 1};
}

namespace detail {

/// maxdeg(G[l_m]) for every m in 1..n, in O(n + |E|): l_m grows by one
/// vertex as m decreases, induced degrees only increase, so the maximum is
/// a running maximum.
inline std::vector<double> top_set_max_degrees(const WeightedGraph& g, const DegreeView& view) {
  const std::size_t n = g.order();
  std::vector<double> inner(n, 0.0);
  std::vector<char> member(n, 0);
  std::vector<double> out(n, 0.0);
  double running = 0.0;
  for (std::size_t m = n; m >= 1; --m) {
    const Vertex v = view.perm[m - 1];
    auto nb = g.neighbors(v);
    auto wt = g.neighbor_weights(v);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (!member[nb[k]]) continue;
      inner[nb[k]] += wt[k];
      inner[v] += wt[k];
      running = std::max(running, inner[nb[k]]);
    }
    member[v] = 1;
    running = std::max(running, inner[v]);
    out[m - 1] = running;
  }
  return out;
}

/// mindeg(G[S_m]) for every m in 1..n. S_m grows with m and induced degrees
/// only increase, so a lazy min-heap keyed on current degree suffices.
inline std::vector<double> bottom_set_min_degrees(const WeightedGraph& g, const DegreeView& view) {
  const std::size_t n = g.order();
  std::vector<double> inner(n, 0.0);
  std::vector<char> member(n, 0);
  std::vector<double> out(n, 0.0);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t m = 1; m <= n; ++m) {
    const Vertex v = view.perm[m - 1];
    auto nb = g.neighbors(v);
    auto wt = g.neighbor_weights(v);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (!member[nb[k]]) continue;
      inner[nb[k]] += wt[k];
      inner[v] += wt[k];
      heap.emplace(inner[nb[k]], nb[k]);
    }
    member[v] = 1;
    heap.emplace(inner[v], v);
    while (heap.top().first != inner[heap.top().second]) heap.pop();
    out[m - 1] = heap.top().first;
  }
  return out;
}

inline void choose(IntervalEntry& entry) {
  entry.lower = -std::numeric_limits<double>::infinity();
  entry.upper = std::numeric_limits<double>::infinity();
  for (const auto& b : entry.bounds) {
    if (b.exceptional) continue;
    if (is_lower_rule(b.rule))
      entry.lower = std::max(entry.lower, b.value);
    else
      entry.upper = std::min(entry.upper, b.value);
  }
  if (entry.pinned) {
    entry.lower = 0.0;
    entry.upper = 0.0;
  }
  entry.lower_rules.clear();
  entry.upper_rules.clear();
  if (entry.pinned) return;
  for (const auto& b : entry.bounds) {
    if (b.exceptional) continue;
    if (is_lower_rule(b.rule) && b.value == entry.lower) entry.lower_rules.push_back(b.rule);
    if (!is_lower_rule(b.rule) && b.value == entry.upper) entry.upper_rules.push_back(b.rule);
  }
}

}  // namespace detail

/// Certified interval for every lambda_m, m = 1..n.
///
/// Entry m takes the lower rules at index m and the upper rules at parameter
/// m-1 (they bound lambda_{(m-1)+1}). Exceptional bounds are recorded but
/// omitted from the max/min. Unweighted graphs additionally get the
/// unweighted rules and the equality prediction d_m = d_{m-1} + n - 3.
/// Runs in O(n log n + |E| log |E|) time and O(n + |E|) memory.
inline IntervalReport interval_report(const WeightedGraph& g) {
  const std::size_t n = g.order();
  const auto view = degree_view(g);
  const bool unweighted = g.unit_weights();
  const double a = g.max_weight();

  std::optional<std::size_t> family, co_family;
  if (unweighted) {
    family = clique_plus_isolated_index(view.degrees);
    co_family = complement_clique_plus_isolated_index(view.degrees);
  }
  const auto top_max = detail::top_set_max_degrees(g, view);
  const auto bottom_min = detail::bottom_set_min_degrees(g, view);

  IntervalReport report;
  report.n = n;
  report.unweighted = unweighted;
  report.max_weight = a;
  report.degrees = view.degrees;
  report.entries.resize(n);

  for (std::size_t m = 1; m <= n; ++m) {
    auto& entry = report.entries[m - 1];
    entry.index = m;
    entry.pinned = (m == 1);
    if (unweighted) entry.bounds.push_back(detail::bh_lower(view, m, family));
    entry.bounds.push_back({view.d(m) - top_max[m - 1], Rule::WeightedLower, false, m});
    if (m >= 2) {
      const std::size_t p = m - 1;
      if (unweighted) entry.bounds.push_back(detail::main_upper(view, p, co_family));
      entry.bounds.push_back({view.d(p) + static_cast<double>(p) * a - bottom_min[p - 1],
                              Rule::WeightedUpper, false, m});
      entry.equality_predicted = unweighted && family != m && co_family != p &&
                                 view.d(m) == view.d(p) + static_cast<double>(n) - 3.0;
    }
    detail::choose(entry);
    const double slack = 1e-9 * std::max(1.0, std::abs(entry.upper));
    if (entry.lower > entry.upper + slack)
      throw BoundError("interval inverted at index " + std::to_string(m));
  }
  return report;
}

}  // namespace lapbounds
