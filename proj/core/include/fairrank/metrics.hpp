#ifndef FAIRRANK_METRICS_HPP_
#define FAIRRANK_METRICS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairrank/divergence.hpp"
#include "fairrank/domain.hpp"

namespace fairrank {

/// Attention weight of rank k: 1 / log2(k + 1). Strictly decreasing,
/// b(1) = 1. k must be >= 1.
double position_bias(std::size_t k);

/// Sum of position_bias(1..n).
double position_bias_sum(std::size_t n);

/// The eleven group-fairness metrics.
enum class MetricName : std::uint8_t {
  rND, rRD, rKL, ED, ER, DTD, DTR, DID, DIR, AWRF, PSP,
};

constexpr std::array<MetricName, 11> kAllMetrics = {
    MetricName::rND, MetricName::rRD, MetricName::rKL, MetricName::ED,
    MetricName::ER,  MetricName::DTD, MetricName::DTR, MetricName::DID,
    MetricName::DIR, MetricName::AWRF, MetricName::PSP,
};

const char* to_string(MetricName m);
std::optional<MetricName> metric_from_string(const std::string& name);

inline bool is_prefix_metric(MetricName m) {
  return m == MetricName::rND || m == MetricName::rRD || m == MetricName::rKL;
}

/// Which ranking settings a metric supports.
struct SettingSet {
  bool full_population = true;
  bool subset_of_population = true;
};

/// Cut-off point policy for the prefix metrics. Either an explicit strictly
/// increasing list, an arithmetic progression {step, 2*step, ...}, or every
/// rank {1..n}. The policy is resolved against a concrete ranking length.
class Cutoffs {
 public:
  static Cutoffs explicit_list(std::vector<std::size_t> cutoffs);
  static Cutoffs step(std::size_t step);
  static Cutoffs every_rank();

  /// Concrete cutoffs for a ranking of length n. Explicit cutoffs beyond n
  /// raise PositionError; an empty resolution raises NormalizationError.
  std::vector<std::size_t> resolve(std::size_t n) const;

  std::string describe() const;
  bool operator==(const Cutoffs&) const = default;

 private:
  enum class Kind : std::uint8_t { Explicit, Step, EveryRank };
  Kind kind_ = Kind::Step;
  std::size_t step_ = 10;
  std::vector<std::size_t> explicit_;
};

/// Normalizer computation strategy for the prefix metrics.
///
/// BruteForce enumerates every group pattern of the candidate set (exact,
/// guarded at n <= 8). ExtremeRanking also enumerates exactly while n <= 8,
/// and beyond that falls back to the larger of the two extreme-ranking sums,
/// which is where the heuristic earns its name.
enum class NormalizerMode : std::uint8_t { BruteForce, ExtremeRanking };

/// Candidate-set size up to which normalizers are computed by exact
/// enumeration.
inline constexpr std::size_t kBruteForceThreshold = 8;

struct MetricConfig {
  Cutoffs cutoffs = Cutoffs::step(10);
  LogBase log_base_divergence = LogBase::Base2;
  NormalizerMode normalizer_mode = NormalizerMode::ExtremeRanking;
};

/// A metric's evaluation entry point plus its published metadata.
struct MetricDescriptor {
  MetricName name;
  double optimal_value;
  bool uses_relevance;
  SettingSet settings;

  double evaluate(const Population& pop, const Ranking& r, const MetricConfig& cfg) const;
};

const MetricDescriptor& descriptor(MetricName m);

/// Group exposure: (1/|G|) * sum of b(rank) over the group's members that
/// appear in the ranking. The divisor is the full-population group size;
/// an absent group contributes 0.
double exposure(const Population& pop, const Ranking& r, Group g);

/// Relevance-weighted exposure: (1/|G|) * sum of b(rank) * y(d).
double click_through_rate(const Population& pop, const Ranking& r, Group g);

/// Mean relevance of a group over the full population.
double group_average_relevance(const Population& pop, Group g);

/// Normalizer Z(D) for a prefix metric: the maximum of the unnormalized
/// discounted sum over rankings of the candidate set. Raises
/// NormalizerZeroError when the maximum vanishes and SizeGuardError when
/// BruteForce is requested beyond the enumeration threshold.
double prefix_normalizer(MetricName metric, const Population& pop, const CandidateSet& ds,
                         const MetricConfig& cfg);

/// Evaluate a metric on a ranking. Undefined denominators (and a setting
/// mismatch for PSP) raise UndefinedMetricError naming the vanished quantity.
double evaluate_metric(MetricName m, const Population& pop, const Ranking& r,
                       const MetricConfig& cfg);

/// Evaluation front-end that memoizes prefix normalizers across calls with
/// identical (metric, composition, cutoffs) keys. The cache only ever holds
/// values that are pure functions of the key, so reuse is safe.
class MetricEvaluator {
 public:
  explicit MetricEvaluator(MetricConfig cfg) : cfg_(std::move(cfg)) {}

  const MetricConfig& config() const { return cfg_; }
  double evaluate(MetricName m, const Population& pop, const Ranking& r) const;

 private:
  MetricConfig cfg_;
  mutable std::map<std::tuple<MetricName, std::size_t, std::size_t, std::size_t, std::size_t,
                              std::vector<std::size_t>>,
                   double>
      normalizer_cache_;
};

}  // namespace fairrank

#endif  // FAIRRANK_METRICS_HPP_
