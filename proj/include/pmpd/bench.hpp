#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pmpd/bounds.hpp"
#include "pmpd/builder.hpp"
#include "pmpd/exact_search.hpp"
#include "pmpd/instance.hpp"
#include "pmpd/seeds.hpp"

namespace pmpd {

/// Worker count: PMPD_THREADS when set and positive, else the hardware
/// concurrency (at least 1).
inline int thread_count() {
  if (const char* env = std::getenv("PMPD_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count) on up to `threads` workers.
template <class Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

struct BenchConfig {
  int count = 100;
  int nodes_min = 4;  // n+1
  int nodes_max = 12;
  std::uint64_t seed = 1;
  double box = 100.0;
  SeedOptions seed_options{};
  int threads = 0;  // 0: thread_count()
};

struct BenchRow {
  int id = 0;
  std::uint64_t seed = 0;
  int nodes = 0;
  int k = 0;
  double r_n1 = 0.0, rd_n1 = 0.0, rd_n2 = 0.0;
  std::optional<double> r1;
  double r2 = 0.0, r2_alt = 0.0, r3 = 0.0;
  std::optional<double> ub_h1;
  double ub_h2 = 0.0, ub_h3 = 0.0;
  Scheme scheme = Scheme::O1;
  double seed_ms = 0.0, build_ms = 0.0;
  double ub = 0.0, lb = 0.0, gap_pct = 0.0;
  bool certified = false;
  Modality modality = Modality::unimodal;
  std::optional<ConjectureCheck> conjecture;
  std::string error;

  bool failed() const { return !error.empty(); }
};

struct BenchSummary {
  int rows = 0;
  int failures = 0;
  int certified = 0;
  int ub_below_lb = 0;
  double mean_gap_pct = 0.0;
  double max_gap_pct = 0.0;
  std::map<std::string, int> scheme_chosen;
  std::map<std::string, int> scheme_best;  // H-scheme reaching the row minimum (ties count for each)
  int conjecture_applicable = 0;
  int conjecture_holds = 0;
  double mean_seed_ms = 0.0, max_seed_ms = 0.0;
  double mean_build_ms = 0.0, max_build_ms = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  BenchSummary summary;
};

/// Row parameters drawn in instance order from one generator: n+1 uniform
/// in [nodes_min, nodes_max], q = r uniform in [2, n-1], and
/// k = n^2 + 2n + 1 + r.
struct BenchCase {
  std::uint64_t seed;
  int n;
  int k;
};

inline std::vector<BenchCase> bench_cases(const BenchConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<BenchCase> out;
  for (int i = 0; i < cfg.count; ++i) {
    const int span = cfg.nodes_max - cfg.nodes_min + 1;
    const int nodes = cfg.nodes_min + static_cast<int>(unit_draw(rng) * span);
    const int n = nodes - 1;
    const int r = 2 + static_cast<int>(unit_draw(rng) * (n - 2));
    out.push_back({cfg.seed * 1000003ULL + static_cast<std::uint64_t>(i), n, n * n + 2 * n + 1 + r});
  }
  return out;
}

inline BenchRow bench_row(int id, const BenchCase& c, const BenchConfig& cfg) {
  BenchRow row;
  row.id = id;
  row.seed = c.seed;
  row.nodes = c.n + 1;
  row.k = c.k;
  try {
    const Instance inst = random_instance(c.seed, c.n, cfg.box);
    const auto t0 = Clock::now();
    const SeedWalks seeds = compute_seeds(inst, cfg.seed_options);
    row.seed_ms = detail::elapsed_ms(t0);
    row.r_n1 = seeds.r_n1();
    row.rd_n1 = seeds.rd_n1();
    row.rd_n2 = seeds.rd_n2();
    row.certified = seeds.certified();
    row.modality = classify_values(row.rd_n1, row.rd_n2, row.r_n1);

    const auto t1 = Clock::now();
    const BuildResult built = build(seeds, inst, c.k);
    row.build_ms = detail::elapsed_ms(t1);
    row.scheme = built.scheme;
    row.ub = built.ub;
    row.lb = built.bound.lb;
    row.gap_pct = built.gap_pct;
    row.r1 = built.r1;
    row.r2 = built.r2;
    row.r2_alt = built.r2_alt;
    row.r3 = built.r3;

    if (h1_available(seeds)) row.ub_h1 = build_scheme(seeds, inst, c.k, Scheme::H1).ub;
    row.ub_h2 = build_scheme(seeds, inst, c.k, Scheme::H2).ub;
    row.ub_h3 = build_scheme(seeds, inst, c.k, Scheme::H3).ub;
    if (row.certified && definitely_gt(row.r_n1, row.rd_n2)) row.conjecture = conjecture1_check(seeds, inst);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline BenchSummary summarize(const std::vector<BenchRow>& rows) {
  BenchSummary s;
  s.rows = static_cast<int>(rows.size());
  int ok = 0;
  for (const auto& r : rows) {
    if (r.failed()) {
      ++s.failures;
      continue;
    }
    ++ok;
    if (r.certified) ++s.certified;
    if (definitely_lt(r.ub, r.lb)) ++s.ub_below_lb;
    s.mean_gap_pct += r.gap_pct;
    s.max_gap_pct = std::max(s.max_gap_pct, r.gap_pct);
    ++s.scheme_chosen[std::string(to_string(r.scheme))];
    double best = std::min(r.ub_h2, r.ub_h3);
    if (r.ub_h1) best = std::min(best, *r.ub_h1);
    if (r.ub_h1 && approx_eq(*r.ub_h1, best)) ++s.scheme_best["H1"];
    if (approx_eq(r.ub_h2, best)) ++s.scheme_best["H2"];
    if (approx_eq(r.ub_h3, best)) ++s.scheme_best["H3"];
    if (r.conjecture) {
      ++s.conjecture_applicable;
      if (r.conjecture->holds) ++s.conjecture_holds;
    }
    s.mean_seed_ms += r.seed_ms;
    s.max_seed_ms = std::max(s.max_seed_ms, r.seed_ms);
    s.mean_build_ms += r.build_ms;
    s.max_build_ms = std::max(s.max_build_ms, r.build_ms);
  }
  if (ok > 0) {
    s.mean_gap_pct /= ok;
    s.mean_seed_ms /= ok;
    s.mean_build_ms /= ok;
  }
  return s;
}

inline BenchReport run_bench(const BenchConfig& cfg) {
  const auto cases = bench_cases(cfg);
  BenchReport report;
  report.rows.resize(cases.size());
  parallel_for(static_cast<int>(cases.size()), cfg.threads > 0 ? cfg.threads : thread_count(),
               [&](int i) { report.rows[static_cast<std::size_t>(i)] = bench_row(i, cases[static_cast<std::size_t>(i)], cfg); });
  report.summary = summarize(report.rows);
  return report;
}

inline constexpr const char* kBenchCsvHeader =
    "id,seed,nodes,k,r_n1,rd_n1,rd_n2,r1,r2,r2_alt,r3,ub_h1,ub_h2,ub_h3,scheme,seed_ms,build_ms,ub,lb,gap_pct,"
    "certified,modality,conj_t_stid,conj_holds,error";

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchCsvHeader << "\n";
  auto num = [](double v) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << v;
    return s.str();
  };
  auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (const auto& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << r.id << ',' << r.seed << ',' << r.nodes << ',' << r.k << ',';
    if (r.failed()) {
      os << std::string(20, ',') << err << "\n";
      continue;
    }
    os << num(r.r_n1) << ',' << num(r.rd_n1) << ',' << num(r.rd_n2) << ',' << opt(r.r1) << ',' << num(r.r2) << ','
       << num(r.r2_alt) << ',' << num(r.r3) << ',' << opt(r.ub_h1) << ',' << num(r.ub_h2) << ',' << num(r.ub_h3) << ','
       << to_string(r.scheme) << ',' << num(r.seed_ms) << ',' << num(r.build_ms) << ',' << num(r.ub) << ','
       << num(r.lb) << ',' << num(r.gap_pct) << ',' << (r.certified ? "true" : "false") << ','
       << to_string(r.modality) << ',' << (r.conjecture ? num(r.conjecture->t_stid) : std::string()) << ','
       << (r.conjecture ? (r.conjecture->holds ? "true" : "false") : "") << ",\n";
  }
}

struct SweepPoint {
  int k = 0;
  int p = 0;
  int q = 0;
  double value = 0.0;
  double lb = 0.0;
  bool certified = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::optional<Modality> predicted;  // absent when seeds are not certified
  int observed_values = 0;            // distinct optima for k >= n^2+n+1
  int predicted_values = 0;           // distinct bound values over the same residues
  bool periodic = true;               // RD*(k+n) = RD*(k) wherever both are known
  bool modality_match = false;
};

namespace detail {

inline int count_distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  int distinct = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i == 0 || !approx_eq(v[i], v[i - 1])) ++distinct;
  return distinct;
}

}  // namespace detail

/// RD*(k) for k in [k_min, k_max] by exact search. `use_bound` lets the
/// search stop as soon as it meets the seed bound; with it off every point
/// is settled by exhaustion.
inline SweepResult sweep_rd(const Instance& inst, int k_min, int k_max, std::chrono::milliseconds budget,
                            bool use_bound = true) {
  const int n = inst.n();
  const SeedWalks seeds = compute_seeds(inst);
  SweepResult out;
  if (seeds.certified()) out.predicted = classify_asymptotic(seeds);
  for (int k = k_min; k <= k_max; ++k) {
    SolveOptions opts;
    opts.budget = budget;
    if (!use_bound) opts.lower_bound = 0.0;
    const auto report = lower_bound(seeds, k);
    const auto res = solve_exact(inst, k, opts);
    out.points.push_back({k, report.p, report.q, res.ub, report.proven_lb, res.cert.optimal()});
  }
  std::vector<double> observed;
  std::map<int, double> predicted_by_residue;
  bool all_certified = true;
  for (const auto& pt : out.points) {
    if (pt.k < n * n + n + 1) continue;
    all_certified = all_certified && pt.certified;
    if (pt.certified) observed.push_back(pt.value);
    predicted_by_residue[pt.q] = pt.lb;
  }
  std::vector<double> predicted;
  for (const auto& [q, v] : predicted_by_residue) predicted.push_back(v);
  out.observed_values = detail::count_distinct(observed);
  out.predicted_values = detail::count_distinct(predicted);
  for (const auto& a : out.points)
    for (const auto& b : out.points)
      if (b.k == a.k + n && a.k >= n * n + n + 1 && a.certified && b.certified && !approx_eq(a.value, b.value))
        out.periodic = false;
  out.modality_match = out.predicted.has_value() && all_certified && !observed.empty() &&
                       out.observed_values == out.predicted_values &&
                       out.observed_values <= mode_count(*out.predicted);
  return out;
}

}  // namespace pmpd
