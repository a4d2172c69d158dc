// pmpd: command-line front end for the persistent monitoring toolkit.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pmpd/io.hpp"
#include "pmpd/oracle.hpp"
#include "pmpd/pmpd.hpp"

namespace {

using pmpd::io::json;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

pmpd::Walk read_walk(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe) return pmpd::io::walk_from_json(pmpd::io::read_json_file(arg));
  return pmpd::parse_walk(arg);
}

pmpd::SeedOptions seed_options(long long budget_ms, int dp_threshold) {
  pmpd::SeedOptions o;
  o.budget = std::chrono::milliseconds(budget_ms);
  o.dp_threshold = dp_threshold;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent monitoring with a depot: bounds, constructions, exact search"};
  app.require_subcommand(1);

  std::string instance_path, walk_arg, out_path, csv_path, json_path;
  int k = 0, n = 5, k_min = 0, k_max = 0, dp_threshold = 16;
  std::uint64_t seed = 1;
  double box = 100.0;
  long long budget_ms = 60000;
  bool use_oracle = false, exhaustive = false;
  pmpd::BenchConfig bench_cfg;

  auto* gen = app.add_subcommand("gen", "Random Euclidean instance (depot first)");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--n", n, "Number of targets")->check(CLI::Range(3, 1000));
  gen->add_option("--box", box, "Side of the square");
  gen->add_option("--out", out_path, "Write to file instead of stdout");

  auto* eval = app.add_subcommand("eval", "Travel time, revisit time and per-target worst gap of a walk");
  eval->add_option("--instance", instance_path)->required();
  eval->add_option("--walk", walk_arg, "Walk JSON file or literal like \"(d,1,2,3,d)\"")->required();

  auto* seeds = app.add_subcommand("seeds", "Optimal seed walks with certificates");
  seeds->add_option("--instance", instance_path)->required();

  auto* bound = app.add_subcommand("bound", "Lower bound on the optimal revisit time");
  bound->add_option("--instance", instance_path)->required();
  bound->add_option("--k", k)->required();

  auto* construct = app.add_subcommand("construct", "Build a k-visit walk from the seed walks");
  construct->add_option("--instance", instance_path)->required();
  construct->add_option("--k", k)->required();
  construct->add_option("--emit", out_path, "Also write the walk JSON here");

  auto* solve = app.add_subcommand("solve", "Exact search over k-visit walks within a budget");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--k", k)->required();
  solve->add_flag("--oracle", use_oracle, "Exhaustive enumeration (n <= 4, k <= 10)")->group("");

  auto* classify = app.add_subcommand("classify", "Asymptotic modality predicted from the seeds");
  classify->add_option("--instance", instance_path)->required();

  auto* sweep = app.add_subcommand("sweep", "Optimal revisit time over a range of k");
  sweep->add_option("--instance", instance_path)->required();
  sweep->add_option("--k-min", k_min)->required();
  sweep->add_option("--k-max", k_max)->required();
  sweep->add_option("--csv", csv_path, "Write the series as CSV");
  sweep->add_flag("--exhaustive", exhaustive, "Do not stop at the seed bound");

  auto* bench = app.add_subcommand("bench", "Batch construction benchmark on random instances");
  bench->add_option("--count", bench_cfg.count);
  bench->add_option("--nodes-min", bench_cfg.nodes_min, "Smallest n+1")->check(CLI::Range(4, 1000));
  bench->add_option("--nodes-max", bench_cfg.nodes_max, "Largest n+1")->check(CLI::Range(4, 1000));
  bench->add_option("--seed", bench_cfg.seed);
  bench->add_option("--csv", csv_path, "Rows as CSV (stdout when omitted)");
  bench->add_option("--json", json_path, "Summary JSON (stdout when omitted)");

  for (auto* sub : {seeds, bound, construct, solve, classify, sweep, bench})
    sub->add_option("--budget-ms", budget_ms, "Time budget in milliseconds");
  for (auto* sub : {seeds, bound, construct, classify, bench})
    sub->add_option("--dp-threshold", dp_threshold, "Largest n solved by subset DP");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const json j = pmpd::io::instance_json(pmpd::random_instance(seed, n, box));
      if (out_path.empty())
        emit(j);
      else
        pmpd::io::write_json_file(out_path, j);
      return 0;
    }

    if (*bench) {
      if (bench_cfg.nodes_max < bench_cfg.nodes_min) throw pmpd::Error(pmpd::ErrorCode::malformed_input, "empty node range");
      bench_cfg.seed_options = seed_options(budget_ms, dp_threshold);
      const auto report = pmpd::run_bench(bench_cfg);
      if (csv_path.empty()) {
        pmpd::write_bench_csv(std::cout, report.rows);
      } else {
        std::ofstream csv(csv_path);
        pmpd::write_bench_csv(csv, report.rows);
      }
      const auto& s = report.summary;
      const json summary{{"rows", s.rows},
                         {"failures", s.failures},
                         {"certified", s.certified},
                         {"ub_below_lb", s.ub_below_lb},
                         {"mean_gap_pct", s.mean_gap_pct},
                         {"max_gap_pct", s.max_gap_pct},
                         {"scheme_chosen", s.scheme_chosen},
                         {"scheme_best", s.scheme_best},
                         {"conjecture_applicable", s.conjecture_applicable},
                         {"conjecture_holds", s.conjecture_holds},
                         {"mean_seed_ms", s.mean_seed_ms},
                         {"max_seed_ms", s.max_seed_ms},
                         {"mean_build_ms", s.mean_build_ms},
                         {"max_build_ms", s.max_build_ms}};
      if (json_path.empty())
        std::cerr << summary.dump(2) << "\n";
      else
        pmpd::io::write_json_file(json_path, summary);
      return s.failures > 0 ? 2 : 0;
    }

    const pmpd::Instance inst = pmpd::io::load_instance(instance_path);
    const auto sopts = seed_options(budget_ms, dp_threshold);

    if (*eval) {
      emit(pmpd::io::profile_json(pmpd::revisit_profile(read_walk(walk_arg), inst)));
    } else if (*seeds) {
      emit(pmpd::io::seeds_json(pmpd::compute_seeds(inst, sopts)));
    } else if (*bound) {
      emit(pmpd::io::bound_json(pmpd::lower_bound(pmpd::compute_seeds(inst, sopts), k)));
    } else if (*construct) {
      const auto result = pmpd::build(pmpd::compute_seeds(inst, sopts), inst, k);
      if (!out_path.empty()) pmpd::io::write_json_file(out_path, pmpd::io::walk_json(result.walk));
      emit(pmpd::io::build_json(result));
    } else if (*solve) {
      if (use_oracle) {
        emit(pmpd::io::solve_json(pmpd::oracle::brute_force_optimal(inst, k)));
      } else {
        pmpd::SolveOptions o;
        o.budget = std::chrono::milliseconds(budget_ms);
        emit(pmpd::io::solve_json(pmpd::solve_exact(inst, k, o)));
      }
    } else if (*classify) {
      const auto s = pmpd::compute_seeds(inst, sopts);
      const auto m = pmpd::classify_values(s.rd_n1(), s.rd_n2(), s.r_n1());
      emit({{"modality", std::string(pmpd::to_string(m))},
            {"certified", s.certified()},
            {"r_n1", s.r_n1()},
            {"rd_n1", s.rd_n1()},
            {"rd_n2", s.rd_n2()}});
    } else if (*sweep) {
      const auto res = pmpd::sweep_rd(inst, k_min, k_max, std::chrono::milliseconds(budget_ms), !exhaustive);
      json points = json::array();
      for (const auto& p : res.points)
        points.push_back({{"k", p.k}, {"p", p.p}, {"q", p.q}, {"value", p.value}, {"lb", p.lb}, {"certified", p.certified}});
      emit({{"points", points},
            {"predicted", res.predicted ? json(std::string(pmpd::to_string(*res.predicted))) : json(nullptr)},
            {"observed_values", res.observed_values},
            {"predicted_values", res.predicted_values},
            {"periodic", res.periodic},
            {"modality_match", res.modality_match}});
      if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        csv << std::setprecision(12) << "k,p,q,value,lb,certified\n";
        for (const auto& p : res.points)
          csv << p.k << ',' << p.p << ',' << p.q << ',' << p.value << ',' << p.lb << ','
              << (p.certified ? "true" : "false") << "\n";
      }
    }
    return 0;
  } catch (const pmpd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
