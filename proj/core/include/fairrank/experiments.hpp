#ifndef FAIRRANK_EXPERIMENTS_HPP_
#define FAIRRANK_EXPERIMENTS_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairrank/domain.hpp"
#include "fairrank/metrics.hpp"

namespace fairrank {

/// One record of an external relevance-scored ranking file.
struct RunRecord {
  std::string query_id;
  std::string candidate_id;
  Group group = Group::NonProtected;
  double relevance = 0.0;
};

/// Parsed and validated run file. Each query forms its own candidate
/// population: group sizes and average relevances are per query.
class RunFile {
 public:
  explicit RunFile(std::vector<RunRecord> records);

  const std::vector<RunRecord>& records() const { return records_; }
  std::vector<std::string> query_ids() const;  // sorted ascending
  bool has_query(const std::string& query_id) const;

  /// The query's candidates as a population (ids are candidate ids). The
  /// optional linear transform y -> a*y + c is applied to every relevance.
  PopulationPtr population_for(const std::string& query_id, double a = 1.0,
                               double c = 0.0) const;

 private:
  std::vector<RunRecord> records_;
  std::map<std::string, std::vector<std::size_t>> by_query_;
};

/// Loads a UTF-8 CSV `query_id,candidate_id,group,relevance` with a required
/// header. Raises ParseError / ValidationError carrying the 1-based line.
RunFile load_run_file(const std::string& path);
RunFile parse_run_csv(std::istream& in);

/// Ground-truth ranking of a query: stable descending sort by (transformed)
/// relevance, ties broken by ascending candidate id.
Ranking relevance_ranking(const PopulationPtr& pop);

/// One (configuration -> metric value) record of a sweep. Unset config
/// columns stay empty in the CSV; an unset value serializes as "undefined".
struct ExperimentRow {
  std::string experiment;
  std::string metric;
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<std::size_t> N;
  std::optional<double> a;
  std::optional<double> c;
  std::string ranking_kind;  // "first" / "last" / empty
  std::string query;
  std::optional<double> value;
};

/// Shared sweep settings. The defaults reproduce the published grids.
struct SweepConfig {
  MetricConfig metric_config;              // step-10 cutoffs, base-2, extreme mode
  std::vector<std::size_t> length_grid;    // 20..500 step 10
  double length_share = 0.3;
  std::size_t proportion_length = 100;
  std::vector<double> proportion_grid;     // 0.10..0.90 step 0.02
  std::vector<std::size_t> closeness_grid; // N = 1..64
  double closeness_share = 0.3;
  double closeness_awrf_share = 0.1;
  std::vector<double> translate_grid;      // c values
  std::vector<double> rescale_grid;        // a values
  std::uint64_t seed = 0x5eedULL;

  static SweepConfig defaults();
};

std::vector<ExperimentRow> run_length_sweep(const SweepConfig& cfg);
std::vector<ExperimentRow> run_proportion_sweep(const SweepConfig& cfg);
std::vector<ExperimentRow> run_closeness_sweep(const SweepConfig& cfg);
std::vector<ExperimentRow> run_translation_sweep(const RunFile& run,
                                                 const std::vector<std::string>& queries,
                                                 const SweepConfig& cfg);
std::vector<ExperimentRow> run_rescaling_sweep(const RunFile& run,
                                               const std::vector<std::string>& queries,
                                               const SweepConfig& cfg);

/// Writes `experiment,metric,n,p,N,a,c,ranking_kind,query,value` rows.
/// Doubles use the shortest round-trip decimal representation.
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

}  // namespace fairrank

#endif  // FAIRRANK_EXPERIMENTS_HPP_
