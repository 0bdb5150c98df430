#pragma once

// Seeded graph generators and the fuzz driver that checks every interval
// against the eigensolver.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Uniform doubles are formed from the top 53 bits, so
// corpora replay identically on any conforming implementation (the sparse
// G(n, p) skip additionally relies on std::log).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lapbounds/bounds.hpp"
#include "lapbounds/graph.hpp"
#include "lapbounds/oracle.hpp"

namespace lapbounds {

enum class Family {
  Gnp,
  GnpWeighted,
  SplitLike,
  StarPlusEdges,
  CliquePlusIsolated,
  Cycle,
  Path,
  Complete
};

inline constexpr std::array<Family, 8> all_families = {
    Family::Gnp,   Family::GnpWeighted, Family::SplitLike, Family::StarPlusEdges,
    Family::CliquePlusIsolated, Family::Cycle, Family::Path, Family::Complete};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Gnp: return "gnp";
    case Family::GnpWeighted: return "gnp-weighted";
    case Family::SplitLike: return "split-like";
    case Family::StarPlusEdges: return "star-plus-edges";
    case Family::CliquePlusIsolated: return "clique-plus-isolated";
    case Family::Cycle: return "cycle";
    case Family::Path: return "path";
    case Family::Complete: return "complete";
  }
  return "?";
}

inline std::optional<Family> family_from_name(std::string_view s) {
  for (Family f : all_families)
    if (family_name(f) == s) return f;
  return std::nullopt;
}

/// Parameters of one generated instance.
///
///   gnp, gnp-weighted     each pair independently with probability p;
///                         weights uniform on (0, max_weight]
///   split-like            clique on 0..k-1, independent set k..n-1, each
///                         cross pair with probability p; k uniform in [1, n]
///   star-plus-edges       K_{1,n-1} (hub 0) plus leaf pairs: exactly `extra`
///                         distinct random pairs if set, else each with probability p
///   clique-plus-isolated  K_k + (n-k)K_1 with k uniform in [1, n]
///   cycle, path, complete deterministic
struct GenSpec {
  Family family = Family::Gnp;
  std::size_t n = 1;
  double p = 0.5;
  double max_weight = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> extra;

  void validate() const {
    if (n < 1) throw std::invalid_argument("GenSpec: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("GenSpec: p must lie in [0, 1]");
    if (!(max_weight > 0.0) || !std::isfinite(max_weight))
      throw std::invalid_argument("GenSpec: max_weight must be positive and finite");
    if (family == Family::Cycle && n < 3) throw std::invalid_argument("GenSpec: cycle needs n >= 3");
    if (family == Family::StarPlusEdges) {
      if (n < 2) throw std::invalid_argument("GenSpec: star-plus-edges needs n >= 2");
      const std::size_t leaf_pairs = (n - 1) * (n - 2) / 2;
      if (extra && *extra > leaf_pairs)
        throw std::invalid_argument("GenSpec: extra exceeds the number of leaf pairs");
    }
  }

  /// Everything needed to replay the instance.
  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "family=" << family_name(family) << " n=" << n << " p=" << p
       << " max_weight=" << max_weight << " seed=" << seed;
    if (extra) os << " extra=" << *extra;
    return os.str();
  }

  friend bool operator==(const GenSpec&, const GenSpec&) = default;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }
  /// Uniform integer on [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::size_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return lo + static_cast<std::size_t>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

/// Visits each pair u < v of [0, n) with probability p, in lexicographic
/// order of (v, u), using geometric skips so sparse graphs cost O(n + |E|).
template <typename Visit>
void sample_pairs(std::size_t n, double p, Rng& rng, Visit&& visit) {
  if (p <= 0.0 || n < 2) return;
  if (p >= 1.0) {
    for (std::size_t v = 1; v < n; ++v)
      for (std::size_t u = 0; u < v; ++u) visit(u, v);
    return;
  }
  const double log_q = std::log1p(-p);
  std::size_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
    if (skip > 1e18) return;
    w += 1 + static_cast<std::int64_t>(skip);
    while (v < n && w >= static_cast<std::int64_t>(v)) {
      w -= static_cast<std::int64_t>(v);
      ++v;
    }
    if (v < n) visit(static_cast<std::size_t>(w), v);
  }
}

}  // namespace detail

inline WeightedGraph generate(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const std::size_t n = spec.n;
  std::vector<WeightedEdge> edges;
  switch (spec.family) {
    case Family::Gnp:
      detail::sample_pairs(n, spec.p, rng, [&](std::size_t u, std::size_t v) {
        edges.push_back({u, v, 1.0});
      });
      break;
    case Family::GnpWeighted:
      detail::sample_pairs(n, spec.p, rng, [&](std::size_t u, std::size_t v) {
        edges.push_back({u, v, spec.max_weight * rng.uniform_open_closed()});
      });
      break;
    case Family::SplitLike: {
      const std::size_t k = rng.between(1, n);
      for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = u + 1; v < k; ++v) edges.push_back({u, v, 1.0});
      for (std::size_t u = 0; u < k; ++u)
        for (std::size_t v = k; v < n; ++v)
          if (rng.uniform() < spec.p) edges.push_back({u, v, 1.0});
      break;
    }
    case Family::StarPlusEdges: {
      for (std::size_t v = 1; v < n; ++v) edges.push_back({0, v, 1.0});
      std::vector<std::pair<std::size_t, std::size_t>> leaf_pairs;
      for (std::size_t u = 1; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) leaf_pairs.emplace_back(u, v);
      if (spec.extra) {
        // Partial Fisher-Yates: the first `extra` slots become the sample.
        for (std::size_t k = 0; k < *spec.extra; ++k)
          std::swap(leaf_pairs[k], leaf_pairs[rng.between(k, leaf_pairs.size() - 1)]);
        leaf_pairs.resize(*spec.extra);
        for (auto [u, v] : leaf_pairs) edges.push_back({u, v, 1.0});
      } else {
        for (auto [u, v] : leaf_pairs)
          if (rng.uniform() < spec.p) edges.push_back({u, v, 1.0});
      }
      break;
    }
    case Family::CliquePlusIsolated: {
      const std::size_t k = rng.between(1, n);
      return clique_plus_isolated(k, n - k);
    }
    case Family::Cycle: return cycle(n);
    case Family::Path: return path(n);
    case Family::Complete: return complete(n);
  }
  return WeightedGraph(n, std::move(edges));
}

// ---------------------------------------------------------------------------
// Fuzzing

/// Signed gap (bound - eigenvalue) statistics for one rule over all indices
/// where the rule was asserted.
struct RuleStats {
  std::size_t asserted = 0;
  std::size_t exceptional = 0;
  std::size_t tight = 0;  // |gap| within tolerance
  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = -std::numeric_limits<double>::infinity();
  double sum_gap = 0.0;

  double mean_gap() const { return asserted ? sum_gap / static_cast<double>(asserted) : 0.0; }
};

struct FuzzStats {
  std::size_t instances = 0;
  std::size_t indices_checked = 0;
  std::size_t violations = 0;
  std::size_t equality_predictions = 0;
  double worst_bound_residual = 0.0;
  double worst_complement_residual = 0.0;
  std::map<Rule, RuleStats> rules;
};

class FuzzViolation : public std::runtime_error {
 public:
  FuzzViolation(GenSpec spec, VerificationReport bounds, VerificationReport complement)
      : std::runtime_error("verification failed for " + spec.describe()),
        spec_(spec),
        bounds_(std::move(bounds)),
        complement_(std::move(complement)) {}

  const GenSpec& spec() const noexcept { return spec_; }
  const VerificationReport& bounds_report() const noexcept { return bounds_; }
  const VerificationReport& complement_report() const noexcept { return complement_; }

 private:
  GenSpec spec_;
  VerificationReport bounds_;
  VerificationReport complement_;
};

/// Adds one verified instance to the running statistics.
inline void accumulate(FuzzStats& stats, const IntervalReport& report, const Spectrum& spectrum,
                       const VerificationReport& bounds, const VerificationReport& complement) {
  ++stats.instances;
  stats.indices_checked += report.n;
  stats.violations += bounds.failed_indices().size();
  stats.worst_bound_residual = std::max(stats.worst_bound_residual, bounds.worst_residual);
  stats.worst_complement_residual =
      std::max(stats.worst_complement_residual, complement.worst_residual);
  for (const auto& entry : report.entries) {
    if (entry.equality_predicted) ++stats.equality_predictions;
    for (const auto& b : entry.bounds) {
      auto& rs = stats.rules[b.rule];
      if (b.exceptional) {
        ++rs.exceptional;
        continue;
      }
      const double gap = b.value - spectrum.values[b.index - 1];
      ++rs.asserted;
      rs.sum_gap += gap;
      rs.min_gap = std::min(rs.min_gap, gap);
      rs.max_gap = std::max(rs.max_gap, gap);
      if (std::abs(gap) <= bounds.tolerance) ++rs.tight;
    }
  }
}

/// Runs interval_report, verify_bounds and check_complement_identity on
/// `trials` instances of every spec (seed + trial index). Throws
/// FuzzViolation on the first failure.
inline FuzzStats fuzz_bounds(const std::vector<GenSpec>& specs, std::size_t trials, double tol,
                             std::size_t cap = default_oracle_cap) {
  FuzzStats stats;
  for (const auto& base : specs) {
    base.validate();
    if (base.n > cap)
      throw CapExceeded("fuzz spec n=" + std::to_string(base.n) + " exceeds oracle cap " +
                        std::to_string(cap));
    for (std::size_t t = 0; t < trials; ++t) {
      GenSpec spec = base;
      spec.seed = base.seed + t;
      const auto g = generate(spec);
      const auto report = interval_report(g);
      const auto spectrum = laplacian_spectrum(g);
      const auto bounds = verify_bounds(g, report, spectrum, tol);
      const auto complement = check_complement_identity(g, tol, cap);
      if (!bounds.passed || !complement.passed) throw FuzzViolation(spec, bounds, complement);
      accumulate(stats, report, spectrum, bounds, complement);
    }
  }
  return stats;
}

}  // namespace lapbounds
