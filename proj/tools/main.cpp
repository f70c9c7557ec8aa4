// fairrank: fair-ranking metric evaluation, axiomatic property checks, and
// synthetic experiment sweeps.
//
// Exit codes: 0 success, 1 I/O or data failure, 2 usage error,
// 3 golden-table mismatch.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fairrank/experiments.hpp"
#include "fairrank/generators.hpp"
#include "fairrank/properties.hpp"

namespace {

using namespace fairrank;

struct GlobalOptions {
  std::string cutoffs = "step:10";
  std::string log_base = "base2";
  std::string normalizer = "extreme";
  std::uint64_t seed = 0x5eedULL;
};

Cutoffs parse_cutoffs(const std::string& text) {
  if (text == "every") return Cutoffs::every_rank();
  if (text.rfind("step:", 0) == 0) {
    return Cutoffs::step(static_cast<std::size_t>(std::stoull(text.substr(5))));
  }
  std::vector<std::size_t> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? comma : comma - start);
    if (tok.empty()) throw CLI::ValidationError("--cutoffs", "empty cutoff entry");
    values.push_back(static_cast<std::size_t>(std::stoull(tok)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Cutoffs::explicit_list(std::move(values));
}

MetricConfig metric_config_from(const GlobalOptions& g) {
  MetricConfig cfg;
  cfg.cutoffs = parse_cutoffs(g.cutoffs);
  if (g.log_base == "natural") {
    cfg.log_base_divergence = LogBase::Natural;
  } else if (g.log_base == "base2") {
    cfg.log_base_divergence = LogBase::Base2;
  } else {
    throw CLI::ValidationError("--log-base", "expected natural or base2");
  }
  if (g.normalizer == "brute") {
    cfg.normalizer_mode = NormalizerMode::BruteForce;
  } else if (g.normalizer == "extreme") {
    cfg.normalizer_mode = NormalizerMode::ExtremeRanking;
  } else {
    throw CLI::ValidationError("--normalizer", "expected brute or extreme");
  }
  return cfg;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!tok.empty()) out.push_back(tok);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int cmd_metrics_compute(const std::string& run_path, const std::string& query,
                        const std::string& metric_arg, const GlobalOptions& g) {
  RunFile run = load_run_file(run_path);
  if (!run.has_query(query)) {
    std::cerr << "error: query '" << query << "' not present in " << run_path << "\n";
    return 1;
  }
  std::vector<MetricName> metrics;
  if (metric_arg == "all") {
    metrics.assign(kAllMetrics.begin(), kAllMetrics.end());
  } else {
    for (const std::string& name : split_list(metric_arg)) {
      const auto m = metric_from_string(name);
      if (!m) {
        std::cerr << "error: unknown metric '" << name << "'\n";
        return 2;
      }
      metrics.push_back(*m);
    }
  }
  PopulationPtr pop = run.population_for(query);
  const Ranking ranking = relevance_ranking(pop);
  MetricEvaluator eval(metric_config_from(g));
  for (MetricName m : metrics) {
    std::optional<double> value;
    try {
      value = eval.evaluate(m, *pop, ranking);
    } catch (const UndefinedMetricError&) {
    } catch (const NormalizerZeroError&) {
    }
    std::cout << to_string(m) << "," << (value ? format_double(*value) : "undefined") << "\n";
  }
  return 0;
}

int cmd_properties_check(bool golden, const std::vector<std::string>& metric_args,
                         const std::vector<std::string>& property_args,
                         const std::string& format, const GlobalOptions& g) {
  SearchBudget budget = SearchBudget::defaults();
  budget.seed = g.seed;
  MetricConfig cfg = metric_config_from(g);
  budget.grid_cutoffs = cfg.cutoffs;
  budget.log_base = cfg.log_base_divergence;
  budget.normalizer_mode = cfg.normalizer_mode;

  std::vector<MetricName> metrics(kAllMetrics.begin(), kAllMetrics.end());
  if (!metric_args.empty()) {
    metrics.clear();
    for (const std::string& name : metric_args) {
      const auto m = metric_from_string(name);
      if (!m) {
        std::cerr << "error: unknown metric '" << name << "'\n";
        return 2;
      }
      metrics.push_back(*m);
    }
  }
  std::vector<PropertyId> properties(kAllProperties.begin(), kAllProperties.end());
  if (!property_args.empty()) {
    properties.clear();
    for (const std::string& code : property_args) {
      const auto p = property_from_string(code);
      if (!p) {
        std::cerr << "error: unknown property '" << code << "'\n";
        return 2;
      }
      properties.push_back(*p);
    }
  }

  const bool full_table = metrics.size() == kAllMetrics.size() &&
                          properties.size() == kAllProperties.size();
  if (full_table) {
    SatisfactionTable table = satisfaction_table(budget);
    if (format == "json") {
      std::cout << table.to_json();
    } else {
      std::cout << table.to_text();
    }
    if (golden) {
      const auto mismatches = golden_mismatches(table);
      if (!mismatches.empty()) {
        std::cerr << mismatches.size() << " cell(s) differ from the published table:\n";
        for (const auto& [m, p] : mismatches) {
          std::cerr << "  " << to_string(m) << "/" << property_code(p) << ": got "
                    << to_string(table.at(m, p).status) << ", expected "
                    << to_string(expected_verdict(m, p)) << "\n";
        }
        return 3;
      }
      std::cout << "golden: all " << kAllMetrics.size() * kAllProperties.size()
                << " cells match the published table\n";
    }
    return 0;
  }

  int golden_bad = 0;
  for (MetricName m : metrics) {
    for (PropertyId p : properties) {
      const PropertyVerdict v = check_property(p, m, budget);
      std::cout << to_string(m) << "," << property_code(p) << ","
                << to_string(v.status);
      if (v.threshold) std::cout << ",N'=" << *v.threshold;
      if (v.counterexample) std::cout << "," << v.counterexample->inequality;
      std::cout << "\n";
      if (golden && v.status != expected_verdict(m, p)) ++golden_bad;
    }
  }
  if (golden && golden_bad > 0) {
    std::cerr << golden_bad << " cell(s) differ from the published table\n";
    return 3;
  }
  return 0;
}

int cmd_experiments_run(const std::string& sweep, const std::string& output,
                        const std::string& run_path, const std::string& queries_arg,
                        const GlobalOptions& g) {
  SweepConfig cfg = SweepConfig::defaults();
  cfg.metric_config = metric_config_from(g);
  cfg.seed = g.seed;
  std::vector<ExperimentRow> rows;
  if (sweep == "length") {
    rows = run_length_sweep(cfg);
  } else if (sweep == "proportion") {
    rows = run_proportion_sweep(cfg);
  } else if (sweep == "closeness") {
    rows = run_closeness_sweep(cfg);
  } else if (sweep == "translation" || sweep == "rescaling") {
    if (run_path.empty()) {
      std::cerr << "error: --run is required for the " << sweep << " sweep\n";
      return 2;
    }
    RunFile run = load_run_file(run_path);
    const std::vector<std::string> queries = split_list(queries_arg);
    for (const std::string& q : queries) {
      if (!run.has_query(q)) {
        std::cerr << "error: query '" << q << "' not present in " << run_path << "\n";
        return 1;
      }
    }
    rows = sweep == "translation" ? run_translation_sweep(run, queries, cfg)
                                  : run_rescaling_sweep(run, queries, cfg);
  } else {
    std::cerr << "error: unknown sweep '" << sweep
              << "' (expected length|proportion|closeness|translation|rescaling)\n";
    return 2;
  }
  std::ofstream out(output);
  if (!out) {
    std::cerr << "error: cannot open output file " << output << "\n";
    return 1;
  }
  write_csv(out, rows);
  std::cout << "wrote " << rows.size() << " rows to " << output << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair-ranking metrics, axiomatic property checks, and experiment sweeps"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand arguments
  GlobalOptions g;
  app.add_option("--cutoffs", g.cutoffs, "prefix-metric cutoffs: comma list, step:K, or every");
  app.add_option("--log-base", g.log_base, "divergence log base: natural|base2");
  app.add_option("--normalizer", g.normalizer, "prefix normalizer mode: brute|extreme");
  app.add_option("--seed", g.seed, "seed for randomized searches and sweeps");

  auto* metrics = app.add_subcommand("metrics", "evaluate metrics on run-file queries");
  metrics->fallthrough();
  auto* compute = metrics->add_subcommand("compute", "print metric,value lines for one query");
  compute->fallthrough();
  std::string run_path, query, metric_arg = "all";
  compute->add_option("--run", run_path, "run CSV file")->required();
  compute->add_option("--query", query, "query id")->required();
  compute->add_option("--metric", metric_arg, "metric name, comma list, or 'all'");
  metrics->require_subcommand(1);

  auto* properties = app.add_subcommand("properties", "run the axiomatic property checkers");
  properties->fallthrough();
  auto* check = properties->add_subcommand("check", "verdict table over metrics x properties");
  check->fallthrough();
  bool golden = false;
  std::string format = "table";
  std::vector<std::string> metric_filter, property_filter;
  check->add_flag("--golden", golden, "compare against the published table; exit 3 on mismatch");
  check->add_option("--metric", metric_filter, "restrict to these metrics");
  check->add_option("--property", property_filter, "restrict to these properties (P1..P13)");
  check->add_option("--format", format, "table|json");
  properties->require_subcommand(1);

  auto* experiments = app.add_subcommand("experiments", "reproduce the synthetic sweeps");
  experiments->fallthrough();
  auto* runcmd = experiments->add_subcommand("run", "run a sweep and write CSV plot data");
  runcmd->fallthrough();
  std::string sweep, output, exp_run_path, queries_arg;
  runcmd->add_option("sweep", sweep, "length|proportion|closeness|translation|rescaling")
      ->required();
  runcmd->add_option("-o,--output", output, "output CSV path")->required();
  runcmd->add_option("--run", exp_run_path, "run CSV file (translation/rescaling)");
  runcmd->add_option("--queries", queries_arg, "comma-separated query ids (default: all)");
  experiments->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) {
      return cmd_metrics_compute(run_path, query, metric_arg, g);
    }
    if (check->parsed()) {
      return cmd_properties_check(golden, metric_filter, property_filter, format, g);
    }
    if (runcmd->parsed()) {
      return cmd_experiments_run(sweep, output, exp_run_path, queries_arg, g);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
