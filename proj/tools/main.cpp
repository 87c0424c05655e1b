#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zarank/cli.hpp"

using namespace zarank;

namespace {

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& side, std::string& mode,
                      std::string& convention) {
  cmd->add_option("--p", cfg.p, "field characteristic (prime)");
  cmd->add_option("--k", cfg.k, "extension degree");
  cmd->add_option("--s", cfg.s, "points per part exponent / subset size");
  cmd->add_option_function<std::uint32_t>(
      "--d", [&cfg](const std::uint32_t& v) { cfg.d = v; },
      "degree bound (default s^2 - s + 2)");
  cmd->add_option("--seed", cfg.seed, "run seed");
  cmd->add_option("--trials", cfg.trials, "trial count (0 = command default)");
  cmd->add_option_function<std::uint64_t>(
      "--threshold,--C", [&cfg](const std::uint64_t& v) { cfg.threshold = v; },
      "bad-set threshold C (default: dichotomy-scan policy)");
  cmd->add_option_function<std::uint32_t>(
      "--t", [&cfg](const std::uint32_t& v) { cfg.t = v; }, "forbidden K_{s,t} part size");
  cmd->add_option("--side", side, "subset side: left | right");
  cmd->add_option("--mode", mode, "scan mode: exhaustive | sampled");
  cmd->add_option("--samples", cfg.samples, "sample count in sampled mode");
  cmd->add_option("--work-cap", cfg.work_cap,
                  "work cap (pair evaluations / subsets); env ZARANK_WORK_CAP");
  cmd->add_option("--convention", convention, "degree convention: block-total | per-variable");
  cmd->add_option("--workers", cfg.workers, "worker threads for scans and builds");
  cmd->add_option("--z-threshold", cfg.z_threshold, "z-score pass threshold");
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
  cmd->add_option("--format", cfg.format, "output format: json | csv | edges | poly");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random algebraic constructions of K_{s,t}-free bipartite graphs"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string side = "left", mode = "exhaustive", convention = "block-total";
  if (const char* env = std::getenv("ZARANK_WORK_CAP")) cfg.work_cap = std::strtoull(env, nullptr, 10);

  auto* construct = app.add_subcommand("construct", "build, analyze, purge and re-verify");
  add_common_flags(construct, cfg, side, mode, convention);

  auto* baseline = app.add_subcommand("baseline", "coin-flip graph through the same analysis");
  add_common_flags(baseline, cfg, side, mode, convention);
  baseline->add_option_function<std::uint32_t>(
      "--n", [&cfg](const std::uint32_t& v) { cfg.n = v; }, "part size (default q^s)");

  auto* verify = app.add_subcommand("verify", "Monte Carlo checks of the probability claims");
  add_common_flags(verify, cfg, side, mode, convention);

  auto* dichotomy = app.add_subcommand("dichotomy", "zero-set gap scan");
  add_common_flags(dichotomy, cfg, side, mode, convention);

  auto* oracle = app.add_subcommand("oracle", "exact small-n Turan numbers vs the ceiling");
  add_common_flags(oracle, cfg, side, mode, convention);
  oracle->add_option("--max-n", cfg.max_n, "largest n in the table (<= 8)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.side = side == "right" ? Side::Right : Side::Left;
    cfg.mode = mode == "sampled" ? ScanMode::Sampled : ScanMode::Exhaustive;
    cfg.convention = parse_convention(convention);

    const RunResult result = run_command(cfg);
    const std::string payload = render_output(result, cfg);
    if (cfg.out.empty()) {
      std::cout << payload;
    } else {
      std::ofstream of(cfg.out, std::ios::binary);
      if (!of) throw PreconditionFailed("cannot open output path: " + cfg.out);
      of << payload;
    }
    return result.checks_passed ? 0 : 2;
  } catch (const Error& e) {
    std::cout << error_json(e.kind(), e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << error_json("Internal", e.what()).dump(2) << "\n";
    return 1;
  }
}
