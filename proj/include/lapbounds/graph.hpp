#pragma once

// Simple undirected weighted graphs, degree orderings, complements and
// the small structured families used throughout the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lapbounds {

using Vertex = std::size_t;

struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable simple undirected graph with strictly positive edge weights.
///
/// Edges are stored canonically (u < v, sorted lexicographically) together
/// with a CSR adjacency whose neighbour lists are sorted by vertex id. The
/// degree of a vertex is the sum of its incident weights, accumulated once in
/// neighbour order; every consumer (bounds, Laplacian diagonal) reads that
/// same value.
class WeightedGraph {
 public:
  WeightedGraph() : WeightedGraph(1, {}) {}

  /// Validates and builds. Throws GraphError on n == 0, self-loops,
  /// duplicate edges (either orientation), ids >= n, or weights that are not
  /// finite and strictly positive.
  WeightedGraph(std::size_t n, std::vector<WeightedEdge> edges) : n_(n) {
    if (n == 0) throw GraphError("graph must have at least one vertex");
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n)
        throw GraphError("vertex id out of range in edge (" + std::to_string(e.u) + ", " +
                         std::to_string(e.v) + ")");
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (!std::isfinite(e.weight) || e.weight <= 0.0)
        throw GraphError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                         ") has non-positive or non-finite weight");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t k = 1; k < edges.size(); ++k) {
      if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v)
        throw GraphError("duplicate edge (" + std::to_string(edges[k].u) + ", " +
                         std::to_string(edges[k].v) + ")");
    }
    edges_ = std::move(edges);
    build_adjacency();
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const WeightedEdge> edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::span<const double> neighbor_weights(Vertex v) const noexcept {
    return {adj_weight_.data() + offsets_[v], adj_weight_.data() + offsets_[v + 1]};
  }

  double degree(Vertex v) const noexcept { return degree_[v]; }
  std::span<const double> degrees() const noexcept { return degree_; }

  /// Weight of {u, v}, or 0 if the pair is not an edge.
  double weight(Vertex u, Vertex v) const noexcept {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return 0.0;
    return adj_weight_[offsets_[u] + static_cast<std::size_t>(it - nb.begin())];
  }

  /// True when every edge weight is exactly 1 (edgeless graphs included).
  bool unit_weights() const noexcept { return unit_weights_; }

  /// Largest edge weight, 0 for an edgeless graph.
  double max_weight() const noexcept { return max_weight_; }

  double total_weight() const noexcept {
    double s = 0.0;
    for (const auto& e : edges_) s += e.weight;
    return s;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adj_.resize(2 * edges_.size());
    adj_weight_.resize(2 * edges_.size());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    // Canonical edge order already yields neighbour lists sorted by id:
    // for fixed x, partners < x arrive (as e.v == x) before partners > x.
    for (const auto& e : edges_) {
      adj_[fill[e.u]] = e.v;
      adj_weight_[fill[e.u]++] = e.weight;
      adj_[fill[e.v]] = e.u;
      adj_weight_[fill[e.v]++] = e.weight;
    }
    degree_.assign(n_, 0.0);
    unit_weights_ = true;
    max_weight_ = 0.0;
    for (Vertex v = 0; v < n_; ++v) {
      double d = 0.0;
      for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) d += adj_weight_[k];
      degree_[v] = d;
    }
    for (const auto& e : edges_) {
      if (e.weight != 1.0) unit_weights_ = false;
      max_weight_ = std::max(max_weight_, e.weight);
    }
  }

  std::size_t n_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<double> adj_weight_;
  std::vector<double> degree_;
  bool unit_weights_ = true;
  double max_weight_ = 0.0;
};

inline WeightedGraph new_graph(std::size_t n, std::vector<WeightedEdge> edges) {
  return WeightedGraph(n, std::move(edges));
}

/// Sorted ascending list of distinct vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
      throw GraphError("vertex set contains duplicates");
  }

  std::span<const Vertex> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> ids_;
};

/// Degrees sorted ascending; ties are broken by increasing vertex id.
struct DegreeView {
  std::vector<double> degrees;
  std::vector<Vertex> perm;

  double min_degree() const { return degrees.front(); }
  double max_degree() const { return degrees.back(); }
  /// 1-based access matching the d_1 <= ... <= d_n convention.
  double d(std::size_t m) const { return degrees.at(m - 1); }
};

inline DegreeView degree_view(const WeightedGraph& g) {
  DegreeView view;
  view.perm.resize(g.order());
  std::iota(view.perm.begin(), view.perm.end(), Vertex{0});
  std::stable_sort(view.perm.begin(), view.perm.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  view.degrees.reserve(g.order());
  for (Vertex v : view.perm) view.degrees.push_back(g.degree(v));
  return view;
}

inline WeightedGraph complement_unweighted(const WeightedGraph& g) {
  if (!g.unit_weights()) throw GraphError("complement_unweighted requires unit weights");
  const std::size_t n = g.order();
  std::vector<WeightedEdge> out;
  for (Vertex u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (Vertex v = u + 1; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      out.push_back({u, v, 1.0});
    }
  }
  return WeightedGraph(n, std::move(out));
}

struct Normalized {
  WeightedGraph graph;
  double scale = 0.0;  // the maximal edge weight a; 0 for edgeless input
};

/// Divides every weight by the maximal weight. Unit-weight and edgeless
/// graphs come back unchanged.
inline Normalized normalize(const WeightedGraph& g) {
  const double a = g.max_weight();
  if (g.size() == 0 || a == 1.0) return {g, a};
  std::vector<WeightedEdge> edges(g.edges().begin(), g.edges().end());
  for (auto& e : edges) e.weight = e.weight / a;
  return {WeightedGraph(g.order(), std::move(edges)), a};
}

/// Pair weight 1 - w for weights in (0, 1]; pairs ending at weight 0 carry no edge.
inline WeightedGraph complement_normalized(const WeightedGraph& g) {
  if (g.max_weight() > 1.0) throw GraphError("complement_normalized requires weights in (0, 1]");
  const std::size_t n = g.order();
  std::vector<WeightedEdge> out;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double w = 1.0 - g.weight(u, v);
      if (w > 0.0) out.push_back({u, v, w});
    }
  }
  return WeightedGraph(n, std::move(out));
}

/// Subgraph induced by `s`, vertices renumbered by their position in `s`.
inline WeightedGraph induced_subgraph(const WeightedGraph& g, const VertexSet& s) {
  if (s.empty()) throw GraphError("induced_subgraph requires a nonempty vertex set");
  if (s.ids().back() >= g.order()) throw GraphError("vertex set not contained in graph");
  constexpr std::size_t absent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position(g.order(), absent);
  for (std::size_t k = 0; k < s.size(); ++k) position[s.ids()[k]] = k;
  std::vector<WeightedEdge> out;
  for (const auto& e : g.edges()) {
    if (position[e.u] != absent && position[e.v] != absent)
      out.push_back({position[e.u], position[e.v], e.weight});
  }
  return WeightedGraph(s.size(), std::move(out));
}

/// The n - m + 1 largest-degree vertices (perm[m-1 .. n-1]).
inline VertexSet top_set(const DegreeView& view, std::size_t m) {
  const std::size_t n = view.perm.size();
  if (m < 1 || m > n) throw std::out_of_range("top_set: m must lie in [1, n]");
  return VertexSet(std::vector<Vertex>(view.perm.begin() + static_cast<std::ptrdiff_t>(m - 1),
                                       view.perm.end()));
}
inline VertexSet top_set(const WeightedGraph& g, std::size_t m) { return top_set(degree_view(g), m); }

/// The m smallest-degree vertices (perm[0 .. m-1]).
inline VertexSet bottom_set(const DegreeView& view, std::size_t m) {
  const std::size_t n = view.perm.size();
  if (m < 1 || m > n) throw std::out_of_range("bottom_set: m must lie in [1, n]");
  return VertexSet(
      std::vector<Vertex>(view.perm.begin(), view.perm.begin() + static_cast<std::ptrdiff_t>(m)));
}
inline VertexSet bottom_set(const WeightedGraph& g, std::size_t m) {
  return bottom_set(degree_view(g), m);
}

/// For an ascending unit-weight degree sequence, the unique m such that the
/// graph is K_{n-m+1} + (m-1)K_1, if any.
///
/// Degrees alone decide membership: when the m-1 smallest degrees are 0 and
/// the n-m+1 largest all equal n-m, each of those vertices has n-m
/// neighbours, none of them isolated, so they form a clique.
inline std::optional<std::size_t> clique_plus_isolated_index(std::span<const double> sorted_degrees) {
  const std::size_t n = sorted_degrees.size();
  std::size_t zeros = 0;
  while (zeros < n && sorted_degrees[zeros] == 0.0) ++zeros;
  if (zeros == n) return n;  // edgeless: K_1 + (n-1)K_1
  const std::size_t m = zeros + 1;
  const double clique_degree = static_cast<double>(n - m);
  for (std::size_t k = zeros; k < n; ++k)
    if (sorted_degrees[k] != clique_degree) return std::nullopt;
  return m;
}

/// Clique size m such that the complement is K_m + (n-m)K_1, read off the
/// degrees of the graph itself (the complement is never built).
inline std::optional<std::size_t> complement_clique_plus_isolated_index(
    std::span<const double> sorted_degrees) {
  const std::size_t n = sorted_degrees.size();
  std::vector<double> complement(n);
  for (std::size_t k = 0; k < n; ++k)
    complement[k] = static_cast<double>(n - 1) - sorted_degrees[n - 1 - k];
  const auto idx = clique_plus_isolated_index(complement);
  if (!idx) return std::nullopt;
  return n - *idx + 1;
}

inline void require_unit_weights(const WeightedGraph& g, const char* what) {
  if (!g.unit_weights()) throw GraphError(std::string(what) + " requires an unweighted graph");
}

/// True iff g is K_{n-m+1} + (m-1)K_1.
inline bool is_clique_plus_isolated(const WeightedGraph& g, std::size_t m) {
  require_unit_weights(g, "is_clique_plus_isolated");
  if (m < 1 || m > g.order()) throw std::out_of_range("is_clique_plus_isolated: m must lie in [1, n]");
  return clique_plus_isolated_index(degree_view(g).degrees) == m;
}

// ---------------------------------------------------------------------------
// Structured families (all unit weight).

inline WeightedGraph complete(std::size_t n) {
  if (n < 1) throw GraphError("complete: n must be >= 1");
  std::vector<WeightedEdge> e;
  e.reserve(n * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v, 1.0});
  return WeightedGraph(n, std::move(e));
}

inline WeightedGraph path(std::size_t n) {
  if (n < 1) throw GraphError("path: n must be >= 1");
  std::vector<WeightedEdge> e;
  for (Vertex u = 0; u + 1 < n; ++u) e.push_back({u, u + 1, 1.0});
  return WeightedGraph(n, std::move(e));
}

inline WeightedGraph cycle(std::size_t n) {
  if (n < 3) throw GraphError("cycle: n must be >= 3");
  std::vector<WeightedEdge> e;
  for (Vertex u = 0; u < n; ++u) e.push_back({u, (u + 1) % n, 1.0});
  return WeightedGraph(n, std::move(e));
}

/// K_{1,n-1} with hub 0.
inline WeightedGraph star(std::size_t n) {
  if (n < 2) throw GraphError("star: n must be >= 2");
  std::vector<WeightedEdge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({0, v, 1.0});
  return WeightedGraph(n, std::move(e));
}

/// K_k + isolated*K_1: clique on 0..k-1, isolated vertices k..k+isolated-1.
inline WeightedGraph clique_plus_isolated(std::size_t k, std::size_t isolated) {
  if (k < 1) throw GraphError("clique_plus_isolated: clique size must be >= 1");
  std::vector<WeightedEdge> e;
  for (Vertex u = 0; u < k; ++u)
    for (Vertex v = u + 1; v < k; ++v) e.push_back({u, v, 1.0});
  return WeightedGraph(k + isolated, std::move(e));
}

/// K_{1,n-1} (hub 0) plus the given leaf-leaf edges.
inline WeightedGraph star_plus_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> extra) {
  if (n < 2) throw GraphError("star_plus_edges: n must be >= 2");
  std::vector<WeightedEdge> e;
  for (Vertex v = 1; v < n; ++v) e.push_back({0, v, 1.0});
  for (auto [a, b] : extra) {
    if (a == 0 || b == 0) throw GraphError("star_plus_edges: extra edge touches the hub");
    e.push_back({a, b, 1.0});
  }
  return WeightedGraph(n, std::move(e));
}

inline WeightedGraph star_plus_edges(std::size_t n,
                                     std::initializer_list<std::pair<Vertex, Vertex>> extra) {
  return star_plus_edges(n, std::span<const std::pair<Vertex, Vertex>>(extra.begin(), extra.size()));
}

}  // namespace lapbounds
