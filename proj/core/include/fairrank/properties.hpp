#ifndef FAIRRANK_PROPERTIES_HPP_
#define FAIRRANK_PROPERTIES_HPP_

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairrank/metrics.hpp"

namespace fairrank {

/// The thirteen axiomatic properties. P1-P6 apply in both ranking settings,
/// P7-P10 assume the full population is ranked, P11-P13 assume a strict
/// subset.
enum class PropertyId : std::uint8_t {
  P1DistinguishabilityOfGroups,
  P2Boundedness,
  P3Monotonicity,
  P4Deepness,
  P5IntraGroupFairness,
  P6InvarianceToLinearTransform,
  P7OptimalityOfRandomRankings,
  P8InvarianceToRankingLength,
  P9InvarianceToGroupProportions,
  P10SymmetricPenalties,
  P11ClosenessThreshold,
  P12DeepnessThreshold,
  P13Sensitivity,
};

constexpr std::array<PropertyId, 13> kAllProperties = {
    PropertyId::P1DistinguishabilityOfGroups, PropertyId::P2Boundedness,
    PropertyId::P3Monotonicity,               PropertyId::P4Deepness,
    PropertyId::P5IntraGroupFairness,         PropertyId::P6InvarianceToLinearTransform,
    PropertyId::P7OptimalityOfRandomRankings, PropertyId::P8InvarianceToRankingLength,
    PropertyId::P9InvarianceToGroupProportions, PropertyId::P10SymmetricPenalties,
    PropertyId::P11ClosenessThreshold,        PropertyId::P12DeepnessThreshold,
    PropertyId::P13Sensitivity,
};

enum class PropertyScope : std::uint8_t { Universal, FullPopulation, SubsetOfPopulation };

const char* property_code(PropertyId p);  // "P1" .. "P13"
const char* property_name(PropertyId p);  // kebab-case descriptive name
PropertyScope property_scope(PropertyId p);
std::optional<PropertyId> property_from_string(const std::string& text);

enum class VerdictStatus : std::uint8_t { Satisfied, Violated, Inapplicable };
const char* to_string(VerdictStatus s);

/// A replayable witness of a violated property instance. Populations are
/// stored as full candidate lists; each ranking is an id sequence over one
/// of the stored populations.
struct Counterexample {
  struct RankingRef {
    std::size_t population_index = 0;
    std::vector<std::string> ids;
  };
  std::string inequality;  // the violated inequality, with values
  std::vector<std::vector<Candidate>> populations;
  std::vector<RankingRef> rankings;
  std::vector<double> values;  // metric values, parallel to rankings
  MetricConfig config;
};

struct PropertyVerdict {
  VerdictStatus status = VerdictStatus::Satisfied;
  std::optional<Counterexample> counterexample;
  std::optional<std::size_t> threshold;  // N' for the threshold properties
  std::string search_budget;             // description of the family searched
  std::string detail;                    // regime notes, held ranges, reasons
};

/// Finite search families for the checkers. The properties quantify
/// over infinite families; a checker can only falsify, so "Satisfied" always
/// means "no counterexample within this budget".
struct SearchBudget {
  std::vector<std::size_t> length_grid;    // P1/P8 population sizes
  double length_share = 0.3;               // protected share on the length grid
  std::size_t proportion_length = 100;     // P9/P10 population size
  std::vector<double> proportion_grid;     // P9/P10 protected shares
  Cutoffs grid_cutoffs = Cutoffs::step(10);

  std::size_t exhaustive_max_n = 6;     // P3/P4/P5/P13 full enumeration bound
  std::size_t random_instances = 200;   // P3/P4/P5 randomized stage
  std::size_t random_max_n = 50;

  std::vector<double> rescale_grid;    // P6 slopes a
  std::vector<double> translate_grid;  // P6 offsets c

  std::size_t expectation_max_n = 6;        // P7 population sizes 2..max
  std::size_t monte_carlo_samples = 100000; // P7 fallback beyond the oracle limit

  std::size_t threshold_max_n = 64;     // P11/P12 N range
  double exposure_family_share = 0.3;   // D_N family share (prefix P11 and exposure)
  double awrf_family_share = 0.1;       // D_N family share for AWRF
  double prefix_family_share = 0.8;     // P12/P13 prefix family share (I = {N})
  std::size_t prefix_family_max_n = 10; // P13 prefix family N range

  std::vector<std::size_t> growth_lengths;  // P2 growth family
  double bound_limit = 100.0;               // P2 divergence flag

  std::uint64_t seed = 0x5eedULL;
  LogBase log_base = LogBase::Base2;
  NormalizerMode normalizer_mode = NormalizerMode::ExtremeRanking;

  static SearchBudget defaults();
  std::string describe() const;
};

PropertyVerdict check_property(PropertyId p, MetricName m, const SearchBudget& budget);

/// 11 x 13 verdict matrix in kAllMetrics x kAllProperties order.
struct SatisfactionTable {
  std::array<std::array<PropertyVerdict, 13>, 11> cells;

  const PropertyVerdict& at(MetricName m, PropertyId p) const {
    return cells[static_cast<std::size_t>(m)][static_cast<std::size_t>(p)];
  }
  std::string to_text() const;  // aligned grid with (y)/(x)/N/A marks
  std::string to_json() const;
};

SatisfactionTable satisfaction_table(const SearchBudget& budget);

/// Verdict pattern of the published overview table.
VerdictStatus expected_verdict(MetricName m, PropertyId p);

/// Cells whose status differs from the published pattern.
std::vector<std::pair<MetricName, PropertyId>> golden_mismatches(const SatisfactionTable& table);

/// Re-evaluates a counterexample from its stored payload. Returns the metric
/// values in the same order they were recorded; for the expectation property
/// it returns the single recomputed expectation.
std::vector<double> replay_counterexample(PropertyId p, MetricName m, const Counterexample& c);

}  // namespace fairrank

#endif  // FAIRRANK_PROPERTIES_HPP_
