#pragma once

// Dense symmetric eigensolver (cyclic Jacobi) and the verification engine
// that checks degree bounds against exact spectra.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lapbounds/bounds.hpp"
#include "lapbounds/graph.hpp"

namespace lapbounds {

inline constexpr double default_solver_tol = 1e-12;
inline constexpr std::size_t default_sweep_cap = 100;
inline constexpr std::size_t default_oracle_cap = 300;

/// Dense symmetric matrix, row-major. `set` writes both triangles so the
/// entries stay exactly symmetric.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t n = 0) : n_(n), a_(n * n, 0.0) {}

  std::size_t order() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }
  double frobenius() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }
  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j] * x[j];
      y[i] = s;
    }
    return y;
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// L(G) = D(G) - A(G). The diagonal is the graph's stored degree, the same
/// value every bound reads.
inline SymMatrix laplacian(const WeightedGraph& g) {
  SymMatrix l(g.order());
  for (Vertex v = 0; v < g.order(); ++v) l.set(v, v, g.degree(v));
  for (const auto& e : g.edges()) l.set(e.u, e.v, -e.weight);
  return l;
}

inline SymMatrix adjacency(const WeightedGraph& g) {
  SymMatrix a(g.order());
  for (const auto& e : g.edges()) a.set(e.u, e.v, e.weight);
  return a;
}

/// Column-major n x n matrix of eigenvectors; column k pairs with eigenvalue k.
struct Eigenvectors {
  std::size_t n = 0;
  std::vector<double> data;

  double operator()(std::size_t row, std::size_t col) const { return data[col * n + row]; }
  double& operator()(std::size_t row, std::size_t col) { return data[col * n + row]; }
  std::vector<double> column(std::size_t k) const {
    return {data.begin() + static_cast<std::ptrdiff_t>(k * n),
            data.begin() + static_cast<std::ptrdiff_t>((k + 1) * n)};
  }
};

struct Spectrum {
  std::vector<double> values;  // ascending
  std::optional<Eigenvectors> vectors;
  std::size_t sweeps = 0;
  std::vector<double> off_norm_history;  // off-diagonal Frobenius norm after each sweep
};

class OracleError : public std::runtime_error {
 public:
  OracleError(const std::string& what, std::size_t sweeps, double off_norm)
      : std::runtime_error(what + " (sweeps=" + std::to_string(sweeps) +
                           ", off-diagonal norm=" + std::to_string(off_norm) + ")"),
        sweeps_(sweeps),
        off_norm_(off_norm) {}
  std::size_t sweeps() const noexcept { return sweeps_; }
  double off_norm() const noexcept { return off_norm_; }

 private:
  std::size_t sweeps_;
  double off_norm_;
};

class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

namespace detail {

inline double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(2.0 * s);
}

}  // namespace detail

/// Eigen-decomposition by cyclic-by-row Jacobi rotations with threshold
/// pivoting. Converged once the off-diagonal Frobenius norm drops to
/// tol * ||M||_F. Throws OracleError if `sweep_cap` sweeps do not suffice.
inline Spectrum symmetric_spectrum(const SymMatrix& m, double tol = default_solver_tol,
                                   bool with_vectors = false,
                                   std::size_t sweep_cap = default_sweep_cap) {
  const std::size_t n = m.order();
  if (n == 0) throw std::invalid_argument("symmetric_spectrum: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("symmetric_spectrum: tol must be positive");

  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  std::vector<double> v;
  if (with_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }

  Spectrum out;
  const double target = tol * m.frobenius();
  double off = detail::off_diagonal_norm(a, n);
  while (off > target) {
    if (out.sweeps == sweep_cap)
      throw OracleError("Jacobi eigensolver did not converge", out.sweeps, off);
    // Rotations below this magnitude are skipped during the sweep; the
    // threshold shrinks with the remaining off-diagonal mass.
    const double threshold = 0.2 * off / static_cast<double>(n * n);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0 || std::abs(apq) < threshold) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          const double np = c * akp - s * akq;
          const double nq = s * akp + c * akq;
          a[k * n + p] = np;
          a[p * n + k] = np;
          a[k * n + q] = nq;
          a[q * n + k] = nq;
        }
        if (with_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[k * n + p];
            const double vkq = v[k * n + q];
            v[k * n + p] = c * vkp - s * vkq;
            v[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
    ++out.sweeps;
    off = detail::off_diagonal_norm(a, n);
    out.off_norm_history.push_back(off);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  out.values.reserve(n);
  for (std::size_t k : order) out.values.push_back(a[k * n + k]);
  if (with_vectors) {
    Eigenvectors ev{n, std::vector<double>(n * n)};
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t row = 0; row < n; ++row) ev(row, col) = v[row * n + order[col]];
    out.vectors = std::move(ev);
  }
  return out;
}

inline Spectrum laplacian_spectrum(const WeightedGraph& g, double tol = default_solver_tol) {
  return symmetric_spectrum(laplacian(g), tol);
}

// ---------------------------------------------------------------------------
// Verification

struct IndexCheck {
  std::size_t index = 1;
  double eigenvalue = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool lower_ok = true;
  bool upper_ok = true;
  /// Distance from the eigenvalue to the nearer interval end; negative on violation.
  double slack = 0.0;

  friend bool operator==(const IndexCheck&, const IndexCheck&) = default;
};

struct VerificationReport {
  double tolerance = 0.0;  // absolute tolerance actually applied
  std::vector<IndexCheck> checks;
  /// |lambda_i(complement) - (n - lambda_{n-i+2}(base))| for i = 2..n.
  std::vector<double> complement_residuals;
  /// max |L(base) + L(complement) - (nI - J)|.
  double matrix_identity_residual = 0.0;
  double worst_residual = 0.0;  // largest bound violation or identity residual
  bool passed = true;

  std::vector<std::size_t> failed_indices() const {
    std::vector<std::size_t> out;
    for (const auto& c : checks)
      if (!c.lower_ok || !c.upper_ok) out.push_back(c.index);
    return out;
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

inline void enforce_cap(const WeightedGraph& g, std::size_t cap) {
  if (g.order() > cap)
    throw CapExceeded("graph has " + std::to_string(g.order()) + " vertices, oracle cap is " +
                      std::to_string(cap));
}

/// Checks lower_m - t <= lambda_m <= upper_m + t with t = tol * max(1, lambda_n).
inline VerificationReport verify_bounds(const WeightedGraph& g, const IntervalReport& report,
                                        const Spectrum& spectrum, double tol) {
  if (report.n != g.order() || spectrum.values.size() != g.order())
    throw std::invalid_argument("verify_bounds: report, spectrum and graph disagree on n");
  VerificationReport out;
  out.tolerance = tol * std::max(1.0, spectrum.values.back());
  for (std::size_t m = 1; m <= g.order(); ++m) {
    const auto& e = report.at(m);
    IndexCheck c;
    c.index = m;
    c.eigenvalue = spectrum.values[m - 1];
    c.lower = e.lower;
    c.upper = e.upper;
    c.lower_ok = e.lower - out.tolerance <= c.eigenvalue;
    c.upper_ok = c.eigenvalue <= e.upper + out.tolerance;
    c.slack = std::min(c.eigenvalue - e.lower, e.upper - c.eigenvalue);
    out.worst_residual = std::max(out.worst_residual, -c.slack);
    out.passed = out.passed && c.lower_ok && c.upper_ok;
    out.checks.push_back(c);
  }
  return out;
}

inline VerificationReport verify_bounds(const WeightedGraph& g, const IntervalReport& report,
                                        double tol, std::size_t cap = default_oracle_cap) {
  enforce_cap(g, cap);
  return verify_bounds(g, report, laplacian_spectrum(g), tol);
}

/// Base and complement used for the identity check: the normalized graph and
/// its weighted complement (classical complement for unit weights).
struct ComplementPair {
  WeightedGraph base;
  WeightedGraph complement;
};

inline ComplementPair complement_pair(const WeightedGraph& g) {
  auto base = normalize(g).graph;
  auto co = complement_normalized(base);
  return {std::move(base), std::move(co)};
}

/// Checks lambda_i(co-G) = n - lambda_{n-i+2}(G) for i = 2..n within tol * n,
/// and L(G) + L(co-G) = nI - J within the same tolerance.
inline VerificationReport check_complement_identity(const WeightedGraph& g, double tol,
                                                    std::size_t cap = default_oracle_cap) {
  enforce_cap(g, cap);
  const auto [base, co] = complement_pair(g);
  const std::size_t n = g.order();
  const double nd = static_cast<double>(n);
  const auto lb = laplacian(base);
  const auto lc = laplacian(co);
  const auto sb = symmetric_spectrum(lb).values;
  const auto sc = symmetric_spectrum(lc).values;

  VerificationReport out;
  out.tolerance = tol * nd;
  for (std::size_t i = 2; i <= n; ++i) {
    const double r = std::abs(sc[i - 1] - (nd - sb[n - i + 1]));
    out.complement_residuals.push_back(r);
    out.worst_residual = std::max(out.worst_residual, r);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double expected = (i == j ? nd : 0.0) - 1.0;
      out.matrix_identity_residual =
          std::max(out.matrix_identity_residual, std::abs(lb(i, j) + lc(i, j) - expected));
    }
  out.worst_residual = std::max(out.worst_residual, out.matrix_identity_residual);
  out.passed = out.worst_residual <= out.tolerance;
  return out;
}

struct RayleighResult {
  bool passed = true;
  double eigenvalue = 0.0;
  double max_quotient = -std::numeric_limits<double>::infinity();
  double eigenvector_quotient = 0.0;  // quotient at f = v_k
  std::size_t samples = 0;
};

/// Courant-Fischer check for lambda_k (1-based): random vectors projected
/// orthogonal to eigenvectors k+1..n never have a Rayleigh quotient above
/// lambda_k + tol, and the eigenvector v_k attains lambda_k within tol.
inline RayleighResult rayleigh_consistency(const SymMatrix& m, std::size_t k, std::size_t trials,
                                           std::uint64_t seed, double tol = 1e-8) {
  const std::size_t n = m.order();
  if (k < 1 || k > n) throw std::out_of_range("rayleigh_consistency: k must lie in [1, n]");
  const auto spec = symmetric_spectrum(m, default_solver_tol, true);
  const auto& vecs = *spec.vectors;
  const double t = tol;

  auto quotient = [&](const std::vector<double>& f) {
    const auto mf = m.multiply(f);
    return std::inner_product(mf.begin(), mf.end(), f.begin(), 0.0) /
           std::inner_product(f.begin(), f.end(), f.begin(), 0.0);
  };

  RayleighResult out;
  out.eigenvalue = spec.values[k - 1];
  out.eigenvector_quotient = quotient(vecs.column(k - 1));
  out.passed = std::abs(out.eigenvector_quotient - out.eigenvalue) <= t;

  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<double> f(n);
    for (auto& x : f) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    // Two passes of Gram-Schmidt against the constrained eigenvectors.
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t c = k; c < n; ++c) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += vecs(r, c) * f[r];
        for (std::size_t r = 0; r < n; ++r) f[r] -= dot * vecs(r, c);
      }
    const double norm2 = std::inner_product(f.begin(), f.end(), f.begin(), 0.0);
    if (norm2 < 1e-24) continue;
    const double q = quotient(f);
    ++out.samples;
    out.max_quotient = std::max(out.max_quotient, q);
    if (q > out.eigenvalue + t) out.passed = false;
  }
  return out;
}

}  // namespace lapbounds
