// Intervals for a star with one extra leaf edge, checked against the exact spectrum.

#include <iostream>

#include "lapbounds/lapbounds.hpp"

int main() {
  using namespace lapbounds;
  const auto g = star_plus_edges(6, {{1, 2}});
  const auto report = interval_report(g);
  const auto spectrum = laplacian_spectrum(g);

  std::cout << "m  lower  lambda_m  upper  equality\n";
  for (const auto& e : report.entries) {
    std::cout << e.index << "  " << e.lower << "  " << spectrum.values[e.index - 1] << "  " << e.upper
              << "  " << (e.equality_predicted ? "yes" : "") << '\n';
  }
  const auto check = verify_bounds(g, report, spectrum, 1e-8);
  std::cout << (check.passed ? "all intervals verified\n" : "VIOLATION\n");
  return check.passed ? 0 : 1;
}
