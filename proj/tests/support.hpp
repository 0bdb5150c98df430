#pragma once

// Test-only helpers: small fixtures and a reference eigensolver (Eigen)
// independent of the library's Jacobi implementation.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "lapbounds/lapbounds.hpp"

namespace lapbounds::testing {

inline WeightedGraph weighted_triangle() { return new_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 3.0}}); }

/// K_4 minus the edge {2, 3}.
inline WeightedGraph k4_minus_edge() {
  return new_graph(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}});
}

inline Eigen::MatrixXd dense_laplacian(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    l(u, v) -= e.weight;
    l(v, u) -= e.weight;
    l(u, u) += e.weight;
    l(v, v) += e.weight;
  }
  return l;
}

/// Ascending Laplacian eigenvalues via Eigen's self-adjoint solver.
inline std::vector<double> reference_spectrum(const WeightedGraph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_laplacian(g), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline double reference_adjacency_radius(const WeightedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = e.weight;
    a(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = e.weight;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Mixed corpus of small graphs: every family, several sizes and seeds.
inline std::vector<WeightedGraph> fuzz_corpus(std::size_t count, std::uint64_t seed, std::size_t n_max = 20) {
  std::vector<WeightedGraph> out;
  Rng rng(seed);
  const double ps[] = {0.1, 0.3, 0.5, 0.8};
  for (std::size_t t = 0; t < count; ++t) {
    GenSpec s;
    s.family = all_families[t % all_families.size()];
    s.n = rng.between(s.family == Family::Cycle ? 3 : 2, n_max);
    s.p = ps[t % 4];
    s.max_weight = 10.0;
    s.seed = seed + t;
    out.push_back(generate(s));
  }
  return out;
}

}  // namespace lapbounds::testing
