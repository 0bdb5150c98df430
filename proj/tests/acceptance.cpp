// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <new>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "lapbounds/cli.hpp"
#include "lapbounds/lapbounds.hpp"

// Heap accounting for the memory criterion. GCC flags the free() in the
// replacement delete once it is inlined into callers of new.
#pragma GCC diagnostic ignored "-Wmismatched-new-delete"
namespace {
std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};
}  // namespace

void* operator new(std::size_t size) {
  std::size_t* p = static_cast<std::size_t*>(std::malloc(size + sizeof(std::max_align_t)));
  if (!p) throw std::bad_alloc();
  *p = size;
  const std::size_t live = g_live.fetch_add(size) + size;
  std::size_t peak = g_peak.load();
  while (live > peak && !g_peak.compare_exchange_weak(peak, live)) {
  }
  return reinterpret_cast<char*>(p) + sizeof(std::max_align_t);
}
void operator delete(void* ptr) noexcept {
  if (!ptr) return;
  auto* base = reinterpret_cast<std::size_t*>(static_cast<char*>(ptr) - sizeof(std::max_align_t));
  g_live.fetch_sub(*base);
  std::free(base);
}
void operator delete(void* ptr, std::size_t) noexcept { operator delete(ptr); }

using namespace lapbounds;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// 1. Star plus one leaf edge: lambda_n = n is pinned from both sides.
Outcome equality_family() {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::size_t n = 4; n <= 12; ++n) {
    const auto g = star_plus_edges(n, {{1, 2}});
    const auto r = interval_report(g);
    const auto lambda = laplacian_spectrum(g).values;
    const auto& e = r.at(n);
    const double nn = static_cast<double>(n);
    if (e.lower != nn || e.upper != nn || std::abs(lambda[n - 1] - nn) > 1e-8 || !e.equality_predicted) {
      o.pass = false;
      o.detail = "n=" + std::to_string(n) + " interval [" + fmt(e.lower) + ", " + fmt(e.upper) + "]";
      return o;
    }
  }
  const double elapsed = seconds_since(t0);
  o.pass = elapsed < 1.0;
  o.detail = "n=4..12 pinned at [n,n]; " + fmt(elapsed) + " s";
  return o;
}

std::vector<GenSpec> unweighted_corpus() {
  std::vector<GenSpec> specs;
  const double ps[] = {0.1, 0.3, 0.5, 0.8};
  Rng sizes(2024);
  const Family families[] = {Family::Gnp, Family::StarPlusEdges, Family::SplitLike};
  for (Family f : families) {
    const std::size_t count = f == Family::Gnp ? 1000 : 200;
    for (std::size_t t = 0; t < count; ++t) {
      GenSpec s;
      s.family = f;
      s.n = sizes.between(2, 30);
      s.p = f == Family::StarPlusEdges ? 0.05 : ps[t % 4];
      s.seed = 5000 + t;
      specs.push_back(s);
    }
  }
  return specs;
}

// 2. Wherever d_m = d_{m-1} + n - 3 and neither excluded family applies, both
//    unweighted bounds coincide with lambda_m.
Outcome equality_trigger() {
  Outcome o;
  std::size_t hits = 0;
  double worst = 0.0;
  for (const auto& s : unweighted_corpus()) {
    const auto g = generate(s);
    const auto r = interval_report(g);
    const auto lambda = laplacian_spectrum(g).values;
    const auto family = clique_plus_isolated_index(r.degrees);
    const auto co_family = complement_clique_plus_isolated_index(r.degrees);
    const double n = static_cast<double>(g.order());
    for (std::size_t m = 2; m <= g.order(); ++m) {
      if (r.degrees[m - 1] != r.degrees[m - 2] + n - 3.0) continue;
      if (family == m || co_family == m - 1) continue;
      ++hits;
      if (!r.at(m).equality_predicted) {
        o.pass = false;
        o.detail = "prediction missing for " + s.describe();
      }
      const double dev = std::max(std::abs(lambda[m - 1] - r.at(m).lower), std::abs(lambda[m - 1] - r.at(m).upper));
      worst = std::max(worst, dev);
      if (dev > 1e-8) {
        o.pass = false;
        o.detail = s.describe() + " m=" + std::to_string(m) + " deviation " + fmt(dev);
      }
    }
  }
  if (hits == 0) {
    o.pass = false;
    o.detail = "corpus produced no equality instances";
  }
  if (o.pass) o.detail = std::to_string(hits) + " equality instances, max deviation " + fmt(worst);
  return o;
}

// 3. 1000 G(n,p) + 1000 weighted G(n,p), zero violations.
Outcome soundness() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t instances = 0, violations = 0;
  double worst = 0.0;
  for (Family f : {Family::Gnp, Family::GnpWeighted}) {
    cli::FuzzOptions opt;
    opt.family = f;
    opt.n_min = 2;
    opt.n_max = 30;
    opt.p = {0.1, 0.3, 0.5, 0.8};
    opt.max_weight = 10.0;
    opt.trials = 1000;
    opt.seed = f == Family::Gnp ? 1 : 100001;
    try {
      const auto stats = fuzz_bounds(cli::fuzz_specs(opt), 1, 1e-8);
      instances += stats.instances;
      violations += stats.violations;
      worst = std::max(worst, stats.worst_bound_residual);
    } catch (const FuzzViolation& v) {
      o.pass = false;
      o.detail = v.what();
      return o;
    }
  }
  const double elapsed = seconds_since(t0);
  o.pass = violations == 0 && instances == 2000 && elapsed < 60.0;
  o.detail = std::to_string(instances) + " graphs, " + std::to_string(violations) + " violations, " +
             fmt(elapsed) + " s";
  return o;
}

// 4. Excluded families really violate the raw bounds, and the detectors fire
//    exactly where a raw bound fails.
Outcome exception_necessity() {
  Outcome o;
  std::size_t bh_cases = 0, main_cases = 0;
  auto fail = [&](const std::string& why) {
    if (o.pass) o.detail = why;
    o.pass = false;
  };
  auto sweep = [&](const WeightedGraph& g, const std::string& label) {
    const auto lambda = laplacian_spectrum(g).values;
    const std::size_t n = g.order();
    for (std::size_t i = 1; i <= n; ++i) {
      const auto b = lower_bound_bh(g, i);
      const bool violated = b.value > lambda[i - 1] + 1e-8;
      if (violated != b.exceptional) fail(label + ": BH detector mismatch at i=" + std::to_string(i));
    }
    for (std::size_t m = 1; m < n; ++m) {
      const auto b = upper_bound_main(g, m);
      const bool violated = b.value < lambda[m] - 1e-8;
      if (violated != b.exceptional) fail(label + ": main detector mismatch at m=" + std::to_string(m));
    }
  };
  for (std::size_t n = 3; n <= 12; ++n) {
    for (std::size_t i = 2; i <= n; ++i) {
      const auto g = clique_plus_isolated(n - i + 1, i - 1);
      const auto b = lower_bound_bh(g, i);
      const double excess = b.value - laplacian_spectrum(g).values[i - 1];
      ++bh_cases;
      if (!b.exceptional || excess < 1.0 - 1e-8)
        fail("K_" + std::to_string(n - i + 1) + "+" + std::to_string(i - 1) + "K_1 excess " + fmt(excess));
      sweep(g, "clique family n=" + std::to_string(n) + " i=" + std::to_string(i));
    }
    for (std::size_t m = 1; m <= n - 2; ++m) {
      const auto g = complement_unweighted(clique_plus_isolated(m, n - m));
      const auto b = upper_bound_main(g, m);
      const double shortfall = laplacian_spectrum(g).values[m] - b.value;
      ++main_cases;
      if (!b.exceptional || shortfall < 1.0 - 1e-8)
        fail("co-(K_" + std::to_string(m) + "+" + std::to_string(n - m) + "K_1) shortfall " + fmt(shortfall));
      sweep(g, "complement family n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  if (o.pass)
    o.detail = std::to_string(bh_cases) + " clique-family and " + std::to_string(main_cases) +
               " complement-family instances; detectors fire iff raw bound fails";
  return o;
}

// 5. lambda_i(co-G) = n - lambda_{n-i+2}(G) on 200 graphs.
Outcome complement_identity() {
  Outcome o;
  double worst_ratio = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    GenSpec s;
    s.family = t % 2 ? Family::GnpWeighted : Family::Gnp;
    s.n = 2 + t % 29;
    s.p = (t % 4 + 1) * 0.2;
    s.max_weight = 10.0;
    s.seed = 777 + t;
    const auto g = generate(s);
    const auto r = check_complement_identity(g, 1e-8);
    double max_res = 0.0;
    for (double x : r.complement_residuals) max_res = std::max(max_res, x);
    worst_ratio = std::max(worst_ratio, max_res / static_cast<double>(g.order()));
    if (max_res > 1e-8 * static_cast<double>(g.order()) || !r.passed) {
      o.pass = false;
      o.detail = s.describe() + " residual " + fmt(max_res);
      return o;
    }
  }
  o.detail = "200 graphs, max residual/n " + fmt(worst_ratio);
  return o;
}

// 6. Closed-form spectra.
Outcome oracle_fixtures() {
  Outcome o;
  double worst = 0.0;
  auto check = [&](const WeightedGraph& g, std::vector<double> want, const std::string& label) {
    std::sort(want.begin(), want.end());
    const auto got = laplacian_spectrum(g).values;
    double scale = 1.0;
    for (double w : want) scale = std::max(scale, std::abs(w));
    for (std::size_t k = 0; k < want.size(); ++k) {
      const double rel = std::abs(got[k] - want[k]) / scale;
      worst = std::max(worst, rel);
      if (rel > 1e-10) {
        o.pass = false;
        o.detail = label + " k=" + std::to_string(k);
      }
    }
  };
  for (std::size_t n = 1; n <= 20; ++n) {
    std::vector<double> want(n, double(n));
    want[0] = 0.0;
    check(complete(n), want, "K_" + std::to_string(n));
  }
  check(path(3), {0.0, 1.0, 3.0}, "P_3");
  for (std::size_t n = 3; n <= 30; ++n) {
    std::vector<double> want;
    for (std::size_t k = 0; k < n; ++k)
      want.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * double(k) / double(n)));
    check(cycle(n), want, "C_" + std::to_string(n));
  }
  for (std::size_t n = 2; n <= 20; ++n) {
    std::vector<double> want(n, 1.0);
    want[0] = 0.0;
    want[n - 1] = double(n);
    check(star(n), want, "K_1," + std::to_string(n - 1));
  }
  check(new_graph(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 3.0}}), {0.0, 6.0 - std::sqrt(3.0), 6.0 + std::sqrt(3.0)},
        "weighted triangle");
  if (o.pass) o.detail = "max relative error " + fmt(worst);
  return o;
}

// 7. Courant-Fischer consistency for every k.
Outcome rayleigh() {
  Outcome o;
  std::vector<WeightedGraph> graphs{path(4)};
  for (std::size_t t = 0; t < 20; ++t) {
    GenSpec s;
    s.family = t % 2 ? Family::GnpWeighted : Family::Gnp;
    s.n = 3 + t % 15;
    s.p = 0.4;
    s.max_weight = 10.0;
    s.seed = 300 + t;
    graphs.push_back(generate(s));
  }
  std::size_t checks = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto m = laplacian(graphs[gi]);
    for (std::size_t k = 1; k <= graphs[gi].order(); ++k) {
      const auto r = rayleigh_consistency(m, k, 100, 1000 * gi + k, 1e-8);
      ++checks;
      if (!r.passed) {
        o.pass = false;
        o.detail = "graph " + std::to_string(gi) + " k=" + std::to_string(k) + " max quotient " +
                   fmt(r.max_quotient) + " vs " + fmt(r.eigenvalue);
        return o;
      }
    }
  }
  o.detail = std::to_string(checks) + " (graph, k) pairs x 100 vectors";
  return o;
}

// 8. Bounds-only path at n = 100000, expected degree 10.
Outcome performance() {
  Outcome o;
  GenSpec s;
  s.family = Family::Gnp;
  s.n = 100000;
  s.p = 10.0 / static_cast<double>(s.n - 1);
  s.seed = 8;
  const auto g = generate(s);
  const std::size_t elements = g.order() + g.size();

  const std::size_t live_before = g_live.load();
  g_peak.store(live_before);
  const auto t0 = Clock::now();
  const auto r = interval_report(g);
  const double elapsed = seconds_since(t0);
  const std::size_t extra = g_peak.load() - live_before;
  const double bytes_per_element = static_cast<double>(extra) / static_cast<double>(elements);

  // Linear-memory budget: a few hundred bytes per vertex or edge. Anything
  // quadratic would need ~n^2 = 1e10 bytes.
  constexpr double budget = 256.0;
  o.pass = elapsed < 2.0 && bytes_per_element <= budget && r.entries.size() == g.order();
  o.detail = "n=" + std::to_string(g.order()) + " |E|=" + std::to_string(g.size()) + ": " + fmt(elapsed) +
             " s, peak " + fmt(static_cast<double>(extra) / 1048576.0) + " MiB (" + fmt(bytes_per_element) +
             " B per vertex+edge, budget " + fmt(budget) + ")";
  return o;
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = std::string(LAPBOUNDS_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. gen and fuzz are byte-identical across runs.
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "lapbounds_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> commands = {
      "gen --family gnp --n 10 --p 0.5 --seed 1",
      "gen --family gnp-weighted --n 40 --p 0.3 --max-weight 10 --seed 99",
      "gen --family star-plus-edges --n 5 --extra 1 --seed 7",
      "fuzz --family gnp --n-min 2 --n-max 30 --p 0.1 0.3 0.5 0.8 --trials 200 --seed 5",
      "fuzz --family gnp-weighted --n-min 2 --n-max 20 --p 0.4 --max-weight 10 --trials 100 --seed 6",
  };
  for (std::size_t k = 0; k < commands.size(); ++k) {
    const auto a = dir / ("a" + std::to_string(k));
    const auto b = dir / ("b" + std::to_string(k));
    const int sa = run_cli(commands[k], a);
    const int sb = run_cli(commands[k], b);
    if (sa != 0 || sb != 0 || slurp(a) != slurp(b) || slurp(a).empty()) {
      o.pass = false;
      o.detail = "'" + commands[k] + "' differs or failed";
    }
  }
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands byte-identical across two runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 equality family star+edge", equality_family},
      {"AC2 equality trigger d_m = d_{m-1}+n-3", equality_trigger},
      {"AC3 soundness fuzz 1000 GNP + 1000 weighted", soundness},
      {"AC4 exception necessity", exception_necessity},
      {"AC5 complement identity", complement_identity},
      {"AC6 oracle fixtures", oracle_fixtures},
      {"AC7 Rayleigh consistency", rayleigh},
      {"AC8 bounds-only performance n=100000", performance},
      {"AC9 determinism of gen and fuzz", determinism},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
