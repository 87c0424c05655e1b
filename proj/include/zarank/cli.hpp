#pragma once

// Command pipelines behind the zarank binary: construct (build, analyze,
// purge, re-verify), baseline (coin-flip graph through the same analysis),
// verify (Monte Carlo checks of the vanishing / joint-vanishing / moment /
// tail statements), dichotomy (zero-set gap scan) and oracle (exact
// desk-scale Turan numbers against the ceiling).
//
// Reports are deterministic in (config, seed) except for the "timing"
// object; digests cover the canonical polynomial text and the sorted edge
// list. Streams are allocated per phase from fixed substreams of the run
// seed so phases never share draws.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zarank/errors.hpp"
#include "zarank/graphgen.hpp"
#include "zarank/kst_analysis.hpp"
#include "zarank/mpoly.hpp"
#include "zarank/rng.hpp"
#include "zarank/variety.hpp"

namespace zarank {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;
  std::uint32_t p = 7;
  std::uint32_t k = 1;
  std::uint32_t s = 2;
  std::optional<std::uint32_t> d;          // default s^2 - s + 2
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;                // 0 = per-command defaults
  std::optional<std::uint64_t> threshold;  // C; absent = dichotomy-scan policy
  std::optional<std::uint32_t> t;          // K_{s,t} query; default C + 1
  Side side = Side::Left;
  ScanMode mode = ScanMode::Exhaustive;
  std::uint64_t samples = 2000;  // sampled-mode subset count
  std::uint64_t work_cap = kDefaultWorkCap;
  DegreeConvention convention = DegreeConvention::BlockTotal;
  std::uint32_t workers = 1;
  std::optional<std::uint32_t> n;  // baseline part size; default q^s
  std::uint32_t max_n = 7;         // oracle table limit
  double z_threshold = 4.0;
  std::string out;                  // output path; empty = stdout
  std::string format = "json";      // json | csv | edges | poly

  std::uint32_t effective_d() const { return d.value_or(s * s - s + 2); }
};

struct RunResult {
  Json report;
  std::map<std::string, std::string> artifacts;  // csv / edge-list / polynomial texts
  bool checks_passed = true;
};

namespace detail {

class PhaseTimer {
public:
  void lap(const std::string& name) {
    const auto now = Clock::now();
    timing_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  Json json() const { return timing_; }

private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point last_ = Clock::now();
  Json timing_ = Json::object();
};

inline Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["p"] = c.p;
  j["k"] = c.k;
  j["s"] = c.s;
  j["d"] = c.effective_d();
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  if (c.threshold) j["threshold"] = *c.threshold;
  if (c.t) j["t"] = *c.t;
  j["side"] = to_string(c.side);
  j["mode"] = to_string(c.mode);
  j["samples"] = c.samples;
  j["work_cap"] = c.work_cap;
  j["convention"] = to_string(c.convention);
  j["workers"] = c.workers;
  if (c.n) j["n"] = *c.n;
  j["max_n"] = c.max_n;
  j["z_threshold"] = c.z_threshold;
  j["format"] = c.format;
  return j;
}

inline Json field_json(const FieldContext& f) {
  Json j;
  j["p"] = f.p();
  j["k"] = f.k();
  j["q"] = f.q();
  j["modulus"] = f.modulus();
  return j;
}

inline Json histogram_json(const Histogram& h) {
  Json j = Json::object();
  for (const auto& [v, c] : h) j[std::to_string(v)] = c;
  return j;
}

inline Json neighborhood_json(const NeighborhoodReport& r) {
  Json j;
  j["side"] = to_string(r.side);
  j["s"] = r.s;
  j["mode"] = to_string(r.mode);
  j["subsets"] = r.subsets;
  j["histogram"] = histogram_json(r.histogram);
  j["max_value"] = r.max_value;
  j["d"] = r.d;
  j["empirical_moment_d"] = r.empirical_moment_d;
  j["moment_bound_M"] = r.moment_bound_M;
  return j;
}

inline Json check_json(const McCheck& c, double z_threshold) {
  Json j;
  j["name"] = c.name;
  if (!c.note.empty()) j["note"] = c.note;
  j["trials"] = c.trials;
  j["empirical"] = c.empirical;
  j["expected"] = c.expected;
  j["abs_deviation"] = std::abs(c.empirical - c.expected);
  j["sigma"] = c.sigma;
  j["z"] = c.z;
  if (c.skipped) {
    j["skipped"] = true;
    j["pass"] = true;
  } else {
    j["pass"] = std::abs(c.z) <= z_threshold;
  }
  return j;
}

inline Json dichotomy_json(const DichotomyReport& r, std::uint64_t policy_C0) {
  Json j;
  j["q"] = r.q;
  j["s"] = r.s;
  j["d"] = r.d;
  j["threshold_C"] = r.threshold_C;
  j["bezout_heuristic_C"] = policy_C0;
  j["trials"] = r.trials;
  j["high_threshold"] = double(r.q) - double(r.threshold_C) * std::sqrt(double(r.q));
  if (r.max_low) j["max_zero_dimensional"] = *r.max_low;
  if (r.min_high) j["min_higher_dimensional"] = *r.min_high;
  Json viols = Json::array();
  for (auto t : r.violations) {
    Json v;
    v["trial"] = t;
    v["size"] = r.per_trial[t].size;
    v["poly_digest"] = r.per_trial[t].poly_digest;
    viols.push_back(v);
  }
  j["violations"] = viols;
  Histogram sizes;
  for (const auto& tr : r.per_trial) ++sizes[tr.size];
  j["size_histogram"] = histogram_json(sizes);
  return j;
}

// Bezout product d^s, the heuristic display ceiling for the low side.
inline std::uint64_t bezout_heuristic(std::uint32_t s, std::uint32_t d) {
  std::uint64_t c = 1;
  for (std::uint32_t i = 0; i < s; ++i) {
    c *= d;
    if (c > (1ull << 40)) return 1ull << 40;
  }
  return c < 1 ? 1 : c;
}

inline BigInt pow_big(std::uint64_t base, std::uint32_t e) {
  BigInt r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace detail

// Shared analysis tail: neighborhoods, bad sets, purge, K_{s,t} re-check,
// bounds. Mutates `g` only through copies; fills report sections.
template <class Rng>
inline void analyze_graph(const RunConfig& config, const FieldContext* field_or_null,
                          const BipartiteGraph& g, std::uint64_t C, const std::string& policy,
                          Rng& rng_sample, Json& report, RunResult& result,
                          detail::PhaseTimer& timer) {
  const std::uint32_t s = config.s;
  const std::uint32_t d = config.effective_d();
  const std::uint64_t n = g.n_left();
  ScanOptions scan_opts{config.mode, config.samples, config.work_cap, config.workers};

  if (s > g.n_left() || s > g.n_right()) return;  // nothing to scan at this size

  auto nbhd = neighborhood_distribution(g, s, config.side, d, scan_opts, rng_sample);
  report["neighborhoods"] = detail::neighborhood_json(nbhd);
  result.artifacts["histogram.csv"] = histogram_csv(nbhd.histogram);
  timer.lap("neighborhoods");

  ScanOptions exhaustive{ScanMode::Exhaustive, 0, config.work_cap, config.workers};
  auto bad = find_bad_sets(g, s, C, exhaustive);
  {
    Json j;
    j["threshold"] = C;
    j["policy"] = policy;
    j["count"] = bad.count();
    Json sets = Json::array();
    for (const auto& e : bad.sets) {
      Json se;
      se["side"] = to_string(e.side);
      se["ids"] = e.ids;
      se["common"] = e.n_common;
      sets.push_back(se);
    }
    j["sets"] = sets;
    report["bad_sets"] = j;
  }
  timer.lap("bad_sets");

  auto purged = purge_bad_sets(g, bad);
  const bool clean = find_bad_sets(purged.graph, s, C, exhaustive).count() == 0;
  {
    Json j;
    j["removed_left"] = purged.removed_left;
    j["removed_right"] = purged.removed_right;
    j["removed_count"] = purged.removed_count();
    j["edges_before"] = purged.edges_before;
    j["edges_after"] = purged.edges_after;
    j["retention"] =
        purged.edges_before ? double(purged.edges_after) / double(purged.edges_before) : 1.0;
    j["clean"] = clean;
    report["purge"] = j;
  }
  if (!clean) result.checks_passed = false;
  timer.lap("purge");

  // the pipeline guarantees K_{s,C+1}-freeness after the purge; the gate
  // checks that, while --t may query any other size informationally
  const std::uint32_t t_guarantee =
      static_cast<std::uint32_t>(std::min<std::uint64_t>(C + 1, UINT32_MAX));
  const std::uint32_t t_query = config.t.value_or(t_guarantee);
  auto witness = contains_kst(purged.graph, s, t_query, config.work_cap);
  const bool guarantee_free =
      t_query == t_guarantee
          ? !witness.has_value()
          : !contains_kst(purged.graph, s, t_guarantee, config.work_cap).has_value();
  if (!guarantee_free) result.checks_passed = false;
  {
    Json j;
    j["s"] = s;
    j["t"] = t_query;
    j["found"] = witness.has_value();
    if (witness) {
      Json w;
      w["left_ids"] = witness->left_ids;
      w["right_ids"] = witness->right_ids;
      j["witness"] = w;
    }
    j["t_guarantee"] = t_guarantee;
    j["guarantee_free"] = guarantee_free;
    j["t_paper"] = detail::pow_big(s, d).convert_to<double>() + 1.0;
    j["t_paper_exact"] = (detail::pow_big(s, d) + 1).str();
    j["outside_paper_regime"] = s < 4;
    report["kst"] = j;
  }
  timer.lap("kst");

  {
    Json j;
    const BigInt M = moment_bound(d);
    j["M"] = static_cast<double>(M);
    j["M_exact"] = M.str();
    Json tails;
    for (double lambda : {2.0, 4.0, field_or_null ? field_or_null->q() / 2.0 : 0.0}) {
      if (lambda <= 0) continue;
      std::ostringstream key;
      key << lambda;
      tails[key.str()] = tail_bound(lambda, d);
    }
    j["tail_bounds"] = tails;
    if (field_or_null)
      j["expected_bad_bound"] = expected_bad_bound(n, s, field_or_null->q(), d);
    if (t_query >= 2) j["kst_upper_bound"] = kst_upper_bound(n, s, t_query);
    // double-counting stars in the K_{s,t_guarantee}-free purged graph
    const auto stars = star_count_identity(purged.graph, s);
    j["star_count_N"] = stars.total.convert_to<double>();
    j["star_count_N_exact"] = stars.total.str();
    const BigInt star_bound = star_count_bound(n, s, t_guarantee);
    j["star_count_bound"] = star_bound.convert_to<double>();
    if (guarantee_free && stars.total > star_bound) result.checks_passed = false;
    report["bounds"] = j;
  }
  timer.lap("bounds");

  result.artifacts["edges_purged.txt"] = purged.graph.export_edge_list();
  report["digests"]["graph_purged"] = purged.graph.digest();
}

inline RunResult cmd_construct(const RunConfig& config) {
  RunResult result;
  detail::PhaseTimer timer;
  Json& report = result.report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = detail::config_json(config);

  auto ctx = make_field(config.p, config.k, std::nullopt, /*seed=*/0);
  report["field"] = detail::field_json(*ctx);
  const std::uint32_t d = config.effective_d();

  SplitMix64Rng base(config.seed);
  auto rng_poly = base.substream(0);
  auto rng_scan = base.substream(1);
  auto rng_sample = base.substream(2);

  ConstructionParams params;
  params.p = config.p;
  params.k = config.k;
  params.s = config.s;
  params.d = d;
  params.seed = config.seed;
  params.convention = config.convention;
  params.work_cap = config.work_cap;
  params.workers = config.workers;
  auto [graph, poly] = build_algebraic_graph(params, rng_poly);
  timer.lap("build");

  const std::uint64_t n = graph.n_left();
  {
    Json j;
    j["kind"] = "algebraic";
    j["n"] = n;
    j["q"] = ctx->q();
    j["s"] = config.s;
    j["d"] = d;
    j["edge_count"] = graph.edge_count();
    j["expected_edges"] = double(n) * double(n) / double(ctx->q());
    j["density"] = double(graph.edge_count()) / (double(n) * double(n));
    report["construction"] = j;
  }
  report["digests"]["polynomial"] = poly.digest();
  report["digests"]["graph"] = graph.digest();
  result.artifacts["polynomial.txt"] = poly.serialize();
  result.artifacts["edges.txt"] = graph.export_edge_list();

  // threshold C: explicit, or probed by a dichotomy scan at the Bezout
  // heuristic ceiling and set to (largest zero-dimensional size) + 1
  std::uint64_t C;
  std::string policy;
  const std::uint64_t C0 = detail::bezout_heuristic(config.s, d);
  if (config.threshold) {
    C = *config.threshold;
    policy = "explicit";
  } else {
    const std::uint64_t scan_trials = config.trials ? config.trials : 200;
    auto scan = dichotomy_scan(ctx, config.s, d, config.convention, C0, scan_trials, rng_scan,
                               config.work_cap, config.workers);
    C = scan.max_low ? *scan.max_low + 1 : C0;
    policy = "scan-max-low-plus-1";
    report["dichotomy"] = detail::dichotomy_json(scan, C0);
    result.artifacts["dichotomy.csv"] = scan.csv();
  }
  timer.lap("threshold_policy");

  analyze_graph(config, ctx.get(), graph, C, policy, rng_sample, report, result, timer);
  report["timing"] = timer.json();
  return result;
}

inline RunResult cmd_baseline(const RunConfig& config) {
  RunResult result;
  detail::PhaseTimer timer;
  Json& report = result.report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = detail::config_json(config);

  std::uint32_t n;
  if (config.n) {
    n = *config.n;
  } else {
    auto ctx = make_field(config.p, config.k, std::nullopt, 0);
    std::uint64_t qs = 1;
    for (std::uint32_t i = 0; i < config.s; ++i) {
      qs *= ctx->q();
      if (qs > kMaxPartSize) throw CapExceeded("q^s exceeds the part-size cap");
    }
    n = static_cast<std::uint32_t>(qs);
  }
  SplitMix64Rng base(config.seed);
  auto rng_build = base.substream(0);
  auto rng_sample = base.substream(2);
  auto graph = build_random_graph(n, config.s, rng_build, config.work_cap);
  graph.provenance().seed = config.seed;
  timer.lap("build");

  const double p_edge = std::pow(double(n), -1.0 / config.s);
  {
    Json j;
    j["kind"] = "random";
    j["n"] = n;
    j["s"] = config.s;
    j["edge_prob"] = p_edge;
    j["edge_count"] = graph.edge_count();
    j["expected_edges"] = p_edge * double(n) * double(n);  // n^{2 - 1/s}
    if (n >= 3) {
      const double lnn = std::log(double(n));
      j["sketch_t_upper"] = 10.0 * config.s * lnn / std::log(lnn);
      j["sketch_t_lower"] = 0.1 * config.s * lnn / std::log(lnn);
    }
    report["construction"] = j;
  }
  report["digests"]["graph"] = graph.digest();
  result.artifacts["edges.txt"] = graph.export_edge_list();

  // no field here: C comes from the flag or from the sketch threshold
  std::uint64_t C;
  std::string policy;
  if (config.threshold) {
    C = *config.threshold;
    policy = "explicit";
  } else if (n >= 3) {
    const double lnn = std::log(double(n));
    const double t_sketch = 10.0 * config.s * lnn / std::log(lnn);
    C = static_cast<std::uint64_t>(std::max(1.0, std::ceil(t_sketch) - 1.0));
    policy = "sketch-threshold-minus-1";
  } else {
    C = 1;
    policy = "floor";
  }
  timer.lap("threshold_policy");

  analyze_graph(config, nullptr, graph, C, policy, rng_sample, report, result, timer);
  report["timing"] = timer.json();
  return result;
}

inline RunResult cmd_verify(const RunConfig& config) {
  RunResult result;
  detail::PhaseTimer timer;
  Json& report = result.report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = detail::config_json(config);

  auto ctx = make_field(config.p, config.k, std::nullopt, 0);
  report["field"] = detail::field_json(*ctx);
  const std::uint32_t s = config.s, d = config.effective_d();
  const std::uint64_t t_vanish = config.trials ? config.trials : 100000;
  const std::uint64_t t_joint = config.trials ? config.trials : 1000000;
  const std::uint64_t t_moment = config.trials ? config.trials : 2000;

  SplitMix64Rng base(config.seed);
  Json checks = Json::array();

  // 1. pointwise vanishing frequency vs 1/q
  {
    auto rng_pts = base.substream(0);
    PointVec u(s), v(s);
    for (auto& c : u) c = {static_cast<std::uint32_t>(uniform_below(rng_pts, ctx->q()))};
    for (auto& c : v) c = {static_cast<std::uint32_t>(uniform_below(rng_pts, ctx->q()))};
    auto rng = base.substream(1);
    auto check = monte_carlo_vanishing(ctx, s, d, config.convention, u, v, t_vanish, rng);
    checks.push_back(detail::check_json(check, config.z_threshold));
    if (std::abs(check.z) > config.z_threshold) result.checks_passed = false;
    timer.lap("vanishing");
  }

  // 2. joint vanishing on U x V for |V| = 1 and |V| = s (when the lemma's
  // r, s <= min(sqrt(q), d) precondition holds)
  const double sqrt_q = std::sqrt(double(ctx->q()));
  for (std::uint32_t r : std::vector<std::uint32_t>{1, s}) {
    McCheck check;
    if (s > sqrt_q || s > d || r > sqrt_q || r > d) {
      check.name = "joint-vanishing";
      check.skipped = true;
      std::ostringstream note;
      note << "|U|=" << s << " |V|=" << r << " outside r,s <= min(sqrt(q), d)";
      check.note = note.str();
    } else {
      auto rng_pts = base.substream(2 + r);
      const auto U = sample_simple_points(*ctx, s, s, rng_pts);
      const auto V = sample_simple_points(*ctx, s, r, rng_pts);
      auto rng = base.substream(100 + r);
      check = monte_carlo_joint_vanishing(ctx, s, d, config.convention, U, V, t_joint, rng);
      if (std::abs(check.z) > config.z_threshold) result.checks_passed = false;
    }
    checks.push_back(detail::check_json(check, config.z_threshold));
    timer.lap("joint_vanishing_r" + std::to_string(r));
  }

  // 3 + 4. moment bound and tail consistency for a fixed simple U
  {
    auto rng_pts = base.substream(200);
    const auto U = sample_simple_points(*ctx, s, s, rng_pts);
    auto rng = base.substream(201);
    auto stats = monte_carlo_neighborhood_moment(ctx, s, d, config.convention, U, t_moment, rng,
                                                 config.work_cap);
    const double slack = 1.25;
    Json j;
    j["name"] = "moment-bound";
    j["trials"] = stats.trials;
    j["d"] = d;
    j["empirical"] = stats.empirical_moment;
    j["expected"] = stats.bound_M;
    j["slack"] = slack;
    const bool ok = stats.empirical_moment <= stats.bound_M * slack;
    j["pass"] = ok;
    if (!ok) result.checks_passed = false;
    checks.push_back(j);

    for (double lambda : {2.0, 4.0}) {
      const double bound = std::min(1.0, tail_bound(lambda, d));
      const double freq = stats.tail_frequency(static_cast<std::uint64_t>(lambda));
      const double sigma = std::sqrt(std::max(freq * (1 - freq), 1.0 / double(stats.trials)) /
                                     double(stats.trials));
      Json tj;
      tj["name"] = "tail-bound";
      tj["lambda"] = lambda;
      tj["trials"] = stats.trials;
      tj["empirical"] = freq;
      tj["expected"] = bound;
      tj["sigma"] = sigma;
      const bool tok = freq <= bound + 3 * sigma;
      tj["pass"] = tok;
      if (!tok) result.checks_passed = false;
      checks.push_back(tj);
    }
    report["neighborhoods"] = Json{{"mode", "monte-carlo"},
                                   {"histogram", detail::histogram_json(stats.histogram)},
                                   {"trials", stats.trials},
                                   {"d", d}};
    result.artifacts["histogram.csv"] = histogram_csv(stats.histogram);
    timer.lap("moment_tail");
  }

  report["checks"] = checks;
  report["timing"] = timer.json();
  {
    std::ostringstream csv;
    csv << "name,trials,empirical,expected,z,pass\n";
    for (const auto& c : checks) {
      csv << c["name"].get<std::string>() << ',' << c["trials"].dump() << ','
          << (c.contains("empirical") ? c["empirical"].dump() : "") << ','
          << (c.contains("expected") ? c["expected"].dump() : "") << ','
          << (c.contains("z") ? c["z"].dump() : "") << ',' << c["pass"].dump() << '\n';
    }
    result.artifacts["checks.csv"] = csv.str();
  }
  return result;
}

inline RunResult cmd_dichotomy(const RunConfig& config) {
  RunResult result;
  detail::PhaseTimer timer;
  Json& report = result.report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = detail::config_json(config);

  auto ctx = make_field(config.p, config.k, std::nullopt, 0);
  report["field"] = detail::field_json(*ctx);
  const std::uint32_t d = config.effective_d();
  const std::uint64_t C0 = detail::bezout_heuristic(config.s, d);
  const std::uint64_t C = config.threshold.value_or(C0);
  const std::uint64_t trials = config.trials ? config.trials : 500;

  SplitMix64Rng base(config.seed);
  auto rng_scan = base.substream(1);
  auto scan = dichotomy_scan(ctx, config.s, d, config.convention, C, trials, rng_scan,
                             config.work_cap, config.workers);
  timer.lap("scan");
  report["dichotomy"] = detail::dichotomy_json(scan, C0);
  result.artifacts["dichotomy.csv"] = scan.csv();
  if (!scan.violations.empty()) result.checks_passed = false;
  report["timing"] = timer.json();
  return result;
}

inline RunResult cmd_oracle(const RunConfig& config) {
  RunResult result;
  detail::PhaseTimer timer;
  Json& report = result.report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = detail::config_json(config);

  const std::uint32_t s = config.s;
  const std::uint32_t t = config.t.value_or(2);
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "n,s,t,ex,kst_upper_bound\n";
  for (std::uint32_t n = 2; n <= config.max_n; ++n) {
    const std::uint64_t ex = brute_force_ex(n, s, t);
    const double bound = t >= 2 ? kst_upper_bound(n, s, t) : 0.0;
    Json row;
    row["n"] = n;
    row["s"] = s;
    row["t"] = t;
    row["ex"] = ex;
    if (t >= 2) {
      row["kst_upper_bound"] = bound;
      if (double(ex) > bound) result.checks_passed = false;
    }
    rows.push_back(row);
    csv << n << ',' << s << ',' << t << ',' << ex << ',';
    if (t >= 2) csv << bound;
    csv << '\n';
  }
  report["oracle"] = rows;
  result.artifacts["oracle.csv"] = csv.str();
  timer.lap("oracle");
  report["timing"] = timer.json();
  return result;
}

inline RunResult run_command(const RunConfig& config) {
  if (config.command == "construct") return cmd_construct(config);
  if (config.command == "baseline") return cmd_baseline(config);
  if (config.command == "verify") return cmd_verify(config);
  if (config.command == "dichotomy") return cmd_dichotomy(config);
  if (config.command == "oracle") return cmd_oracle(config);
  throw PreconditionFailed("unknown command: " + config.command);
}

inline Json error_json(const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = Json{{"kind", kind}, {"message", message}};
  return j;
}

// The artifact a given --format selects from a finished run.
inline std::string render_output(const RunResult& result, const RunConfig& config) {
  if (config.format == "json") return result.report.dump(2) + "\n";
  auto pick = [&](const char* name) -> std::string {
    auto it = result.artifacts.find(name);
    if (it == result.artifacts.end())
      throw PreconditionFailed(std::string("format not available for this command: ") +
                               config.format);
    return it->second;
  };
  if (config.format == "edges") return pick("edges.txt");
  if (config.format == "poly") return pick("polynomial.txt");
  if (config.format == "csv") {
    if (config.command == "dichotomy") return pick("dichotomy.csv");
    if (config.command == "oracle") return pick("oracle.csv");
    if (config.command == "verify") return pick("checks.csv");
    return pick("histogram.csv");
  }
  throw PreconditionFailed("unknown format: " + config.format);
}

}  // namespace zarank
