#ifndef FAIRRANK_ORACLE_HPP_
#define FAIRRANK_ORACLE_HPP_

#include "fairrank/metrics.hpp"

namespace fairrank {
namespace oracle {

/// Size bound for the oracle enumerations below.
inline constexpr std::size_t kOracleLimit = 8;

/// Exact maximum of a prefix metric's unnormalized discounted sum over all
/// n! rankings of the candidate set, found by walking every ranking. This is
/// a deliberately independent reference for prefix_normalizer; it returns
/// the raw maximum (possibly 0) instead of raising NormalizerZeroError.
double brute_force_normalizer(MetricName metric, const Population& pop,
                              const CandidateSet& ds, const MetricConfig& cfg);

/// Mean of a metric over all n! rankings of the full population, accumulated
/// with compensated summation. An undefined ranking aborts the enumeration:
/// the error is rethrown with the offending ranking attached.
double exact_expectation(MetricName metric, const Population& pop, const MetricConfig& cfg);

}  // namespace oracle
}  // namespace fairrank

#endif  // FAIRRANK_ORACLE_HPP_
