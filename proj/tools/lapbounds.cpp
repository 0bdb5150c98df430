// lapbounds: degree-based Laplacian eigenvalue intervals from the command line.
//
//   lapbounds bounds   <graph> [--exact] [--tol t] [--cap n]
//   lapbounds spectrum <graph> [--tol t] [--cap n]
//   lapbounds verify   <graph> [--tol t] [--cap n]
//   lapbounds fuzz     --family f --n-min a --n-max b --p x [y ...] --max-weight w
//                      --trials k --seed s [--tol t] [--cap n]
//   lapbounds gen      --family f --n k [--p x] [--extra e] [--max-weight w]
//                      [--seed s] [--out path]
//
// Exit status: 0 pass, 1 verification failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "lapbounds/cli.hpp"

namespace {

std::map<std::string, lapbounds::Family> family_map() {
  std::map<std::string, lapbounds::Family> m;
  for (auto f : lapbounds::all_families) m.emplace(std::string(lapbounds::family_name(f)), f);
  return m;
}

// Runs `body` against --out if given, stdout otherwise.
template <typename Body>
int with_output(const std::string& out_path, Body&& body) {
  if (out_path.empty()) return body(std::cout);
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return lapbounds::cli::kUsageError;
  }
  return body(file);
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = lapbounds::cli;
  CLI::App app{"Certified Laplacian eigenvalue bounds from degree data"};
  app.require_subcommand(1);
  const auto families = family_map();

  std::string out_path;

  cli::BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Per-index eigenvalue intervals");
  bounds_cmd->add_option("input", bounds.input, "Edge-list file")->required();
  bounds_cmd->add_flag("--exact", bounds.exact, "Also run the eigensolver and verify");
  bounds_cmd->add_option("--tol", bounds.tol, "Verification tolerance (relative to max(1, lambda_n))");
  bounds_cmd->add_option("--cap", bounds.cap, "Largest n the eigensolver accepts");
  bounds_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  cli::SpectrumOptions spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Laplacian eigenvalues, ascending");
  spectrum_cmd->add_option("input", spectrum.input, "Edge-list file")->required();
  spectrum_cmd->add_option("--tol", spectrum.tol, "Jacobi convergence tolerance");
  spectrum_cmd->add_option("--cap", spectrum.cap, "Largest n the eigensolver accepts");
  spectrum_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  cli::VerifyOptions verify;
  std::size_t corrupt = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Check intervals and the complement identity");
  verify_cmd->add_option("input", verify.input, "Edge-list file")->required();
  verify_cmd->add_option("--tol", verify.tol, "Verification tolerance");
  verify_cmd->add_option("--cap", verify.cap, "Largest n the eigensolver accepts");
  verify_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
  auto* corrupt_opt = verify_cmd->add_option("--inject-corruption", corrupt)->group("");

  cli::FuzzOptions fuzz;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Verify intervals on random graphs");
  fuzz_cmd->add_option("--family", fuzz.family, "Generator family")
      ->transform(CLI::CheckedTransformer(families, CLI::ignore_case));
  fuzz_cmd->add_option("--n-min", fuzz.n_min, "Smallest vertex count");
  fuzz_cmd->add_option("--n-max", fuzz.n_max, "Largest vertex count");
  fuzz_cmd->add_option("--p", fuzz.p, "Edge probabilities, cycled across trials")->expected(1, -1);
  fuzz_cmd->add_option("--max-weight", fuzz.max_weight, "Upper end of the weight range");
  fuzz_cmd->add_option("--trials", fuzz.trials, "Number of instances");
  fuzz_cmd->add_option("--seed", fuzz.seed, "Base seed; trial t uses seed + t");
  fuzz_cmd->add_option("--tol", fuzz.tol, "Verification tolerance");
  fuzz_cmd->add_option("--cap", fuzz.cap, "Largest n the eigensolver accepts");
  fuzz_cmd->add_option("--out", out_path, "Write the statistics here instead of stdout");

  lapbounds::GenSpec gen;
  std::size_t extra = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen_cmd->add_option("--family", gen.family, "Generator family")
      ->required()
      ->transform(CLI::CheckedTransformer(families, CLI::ignore_case));
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
  gen_cmd->add_option("--p", gen.p, "Edge probability");
  auto* extra_opt = gen_cmd->add_option("--extra", extra, "star-plus-edges: exact number of leaf pairs");
  gen_cmd->add_option("--max-weight", gen.max_weight, "Upper end of the weight range");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", out_path, "Write the edge list here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  if (*bounds_cmd)
    return with_output(out_path, [&](std::ostream& os) { return cli::cmd_bounds(bounds, os, std::cerr); });
  if (*spectrum_cmd)
    return with_output(out_path,
                       [&](std::ostream& os) { return cli::cmd_spectrum(spectrum, os, std::cerr); });
  if (*verify_cmd) {
    if (*corrupt_opt) verify.corrupt_index = corrupt;
    return with_output(out_path, [&](std::ostream& os) { return cli::cmd_verify(verify, os, std::cerr); });
  }
  if (*fuzz_cmd)
    return with_output(out_path, [&](std::ostream& os) { return cli::cmd_fuzz(fuzz, os, std::cerr); });
  if (*gen_cmd) {
    if (*extra_opt) gen.extra = extra;
    return with_output(out_path, [&](std::ostream& os) { return cli::cmd_gen(gen, os, std::cerr); });
  }
  return cli::kUsageError;
}
