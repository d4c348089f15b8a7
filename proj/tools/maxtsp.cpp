// Command-line front end: solve, oracle, gen, verify-gadget, bench.
//
// Exit codes: 0 ok, 2 a certified check failed, 64 usage, 65 unreadable
// instance.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxtsp/gadgets.hpp"
#include "maxtsp/pipeline.hpp"
#include "maxtsp/tour.hpp"

namespace fs = std::filesystem;
using namespace maxtsp;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kUsage = 64;
constexpr int kParse = 65;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MAXTSP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring MAXTSP_SEED=" << env << "\n";
    }
  }
  return 1;
}

void print_tour(std::ostream& out, const Tour& t) {
  out << "tour";
  for (VertexId v : t.order) out << ' ' << v;
  out << "\nweight " << to_decimal_string(t.weight) << '\n';
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

int cmd_solve(const std::string& file, const std::string& report, bool with_oracle, std::uint64_t seed) {
  const Instance inst = read_instance_file(file);
  if (with_oracle && inst.size() > kOracleCap) {
    std::cerr << "--oracle needs n <= " << kOracleCap << ", got " << inst.size() << "\n";
    return kUsage;
  }
  PipelineOptions options;
  options.with_oracle = with_oracle;
  options.seed = seed;
  const PipelineResult r = run_pipeline(inst, options);
  const CertificateChecks k = checks(r.certificate);
  print_tour(std::cout, r.tour);
  std::cout << "method " << r.certificate.method << '\n';
  if (r.certificate.oracle) std::cout << "opt " << to_decimal_string(*r.certificate.oracle) << '\n';
  if (r.certificate.safety_net_events > 0) std::cout << "safety-net events " << r.certificate.safety_net_events << '\n';
  if (!report.empty() && !write_text(report, certificate_text(r.certificate))) {
    std::cerr << "cannot write " << report << "\n";
    return kUsage;
  }
  if (!k.all()) {
    std::cerr << "certificate check failed\n";
    return kValidation;
  }
  return kOk;
}

int cmd_oracle(const std::string& file) {
  const Instance inst = read_instance_file(file);
  if (inst.size() > kOracleCap) {
    std::cerr << "oracle is limited to n <= " << kOracleCap << ", got " << inst.size() << "\n";
    return kUsage;
  }
  print_tour(std::cout, oracle_opt_parallel(inst));
  return kOk;
}

int cmd_gen(int n, int max_w, std::uint64_t seed, const std::string& out_path) {
  if (n < 2 || max_w < 0) {
    std::cerr << "gen needs --n >= 2 and --max-w >= 0\n";
    return kUsage;
  }
  const Instance inst = generate_instance(n, max_w, seed);
  if (out_path.empty()) {
    write_instance(std::cout, inst);
    return kOk;
  }
  std::ofstream out(out_path);
  write_instance(out, inst);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return kUsage;
  }
  return kOk;
}

int cmd_verify_gadget(int trials, std::uint64_t seed) {
  if (trials < 0) {
    std::cerr << "--trials must be nonnegative\n";
    return kUsage;
  }
  const auto start = std::chrono::steady_clock::now();
  const GadgetTrials t = run_gadget_trials(trials, seed);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "squares " << t.squares << " triangles " << t.triangles << " violations " << t.violations << '\n';
  std::printf("worst square error / w(c) %.6f (bound %.6f)\nseconds %.3f\n", to_double(t.worst_error_ratio), 1.0 / 18,
              secs);
  for (const auto& v : t.first_violations) std::cerr << v << '\n';
  return t.violations == 0 ? kOk : kValidation;
}

int cmd_bench(const std::string& dir, const std::string& report) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) {
    std::cerr << "cannot list " << dir << ": " << ec.message() << "\n";
    return kUsage;
  }
  std::sort(files.begin(), files.end());

  nlohmann::json runs = nlohmann::json::array();
  bool all_ok = true;
  for (const auto& path : files) {
    Instance inst = [&] {
      try {
        return read_instance_file(path.string());
      } catch (const InstanceError& e) {
        throw InstanceError(path.filename().string() + ": " + e.what());
      }
    }();
    PipelineOptions options;
    options.with_oracle = inst.size() <= kOracleCap;
    const auto start = std::chrono::steady_clock::now();
    const PipelineResult r = run_pipeline(inst, options);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = checks(r.certificate).all();
    all_ok = all_ok && ok;
    nlohmann::json run = {{"file", path.filename().string()},
                          {"n", inst.size()},
                          {"method", r.certificate.method},
                          {"tour_weight", to_decimal_string(r.tour.weight)},
                          {"seconds", secs},
                          {"checks_ok", ok},
                          {"safety_net_events", r.certificate.safety_net_events}};
    if (r.certificate.oracle) run["oracle"] = to_decimal_string(*r.certificate.oracle);
    std::printf("%-24s n=%-4d %-14s tour=%s%s  %.3fs%s\n", path.filename().string().c_str(), inst.size(),
                r.certificate.method.c_str(), to_decimal_string(r.tour.weight).c_str(),
                r.certificate.oracle ? (" opt=" + to_decimal_string(*r.certificate.oracle)).c_str() : "", secs,
                ok ? "" : "  CHECK FAILED");
    runs.push_back(std::move(run));
  }
  if (!report.empty() && !write_text(report, nlohmann::json{{"runs", runs}}.dump(2) + "\n")) {
    std::cerr << "cannot write " << report << "\n";
    return kUsage;
  }
  return all_ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max TSP 7/9-approximation with certificates"};
  app.require_subcommand(1);

  std::string file, report, out_path, dir;
  bool with_oracle = false;
  std::uint64_t seed = default_seed();
  int n = 0, max_w = 100, trials = 10000;

  auto* solve = app.add_subcommand("solve", "run the pipeline on an instance file");
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("--report", report, "write the JSON certificate here");
  solve->add_flag("--oracle", with_oracle, "also compute the exact optimum (n <= 12)");
  solve->add_option("--seed", seed, "seed recorded in the certificate (default MAXTSP_SEED or 1)");

  auto* oracle = app.add_subcommand("oracle", "exact optimum by subset dynamic programming");
  oracle->add_option("file", file, "instance file")->required();

  auto* gen = app.add_subcommand("gen", "random instance with integer weights in [0, max-w]");
  gen->add_option("--n", n, "number of vertices")->required();
  gen->add_option("--max-w", max_w, "largest weight");
  gen->add_option("--seed", seed, "generator seed (default MAXTSP_SEED or 1)");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* gadget = app.add_subcommand("verify-gadget", "check random square and triangle gadgets by enumeration");
  gadget->add_option("--trials", trials, "number of squares (and of triangles)");
  gadget->add_option("--seed", seed, "generator seed (default MAXTSP_SEED or 1)");

  auto* bench = app.add_subcommand("bench", "run the pipeline on every file of a directory");
  bench->add_option("--dir", dir, "directory of instance files")->required();
  bench->add_option("--report", report, "write a JSON summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) return cmd_solve(file, report, with_oracle, seed);
    if (*oracle) return cmd_oracle(file);
    if (*gen) return cmd_gen(n, max_w, seed, out_path);
    if (*gadget) return cmd_verify_gadget(trials, seed);
    if (*bench) return cmd_bench(dir, report);
  } catch (const InstanceError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}
