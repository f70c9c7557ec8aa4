#include "fairrank/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fairrank/generators.hpp"

namespace fairrank {
namespace oracle {

namespace {

void check_size(std::size_t n, const char* op) {
  if (n > kOracleLimit) {
    throw SizeGuardError(std::string(op) + " limited to n <= " + std::to_string(kOracleLimit) +
                         ", got n = " + std::to_string(n));
  }
}

/// Walks a concrete ranking and accumulates the discounted distance terms at
/// the resolved cutoffs. Written against the Ranking interface on purpose:
/// the production normalizer works on group patterns instead.
double ranking_prefix_sum(MetricName m, const Population& pop, const Ranking& r,
                          const std::vector<std::size_t>& cutoffs, LogBase base) {
  const GroupShares shares = pop.p_groups();
  double sum = 0.0;
  std::size_t protected_prefix = 0;
  std::size_t next = 0;
  for (std::size_t k = 1; k <= r.size() && next < cutoffs.size(); ++k) {
    if (r.at(k).group == Group::Protected) ++protected_prefix;
    if (k != cutoffs[next]) continue;
    ++next;
    const double k_d = static_cast<double>(k);
    double term = 0.0;
    switch (m) {
      case MetricName::rND:
        term = std::abs(static_cast<double>(protected_prefix) / k_d - shares.protected_share);
        break;
      case MetricName::rRD: {
        const std::size_t nonprotected_prefix = k - protected_prefix;
        const double ratio = nonprotected_prefix == 0
                                 ? 0.0
                                 : static_cast<double>(protected_prefix) /
                                       static_cast<double>(nonprotected_prefix);
        term = std::abs(ratio - shares.protected_share / shares.non_protected);
        break;
      }
      case MetricName::rKL: {
        const double p1k = static_cast<double>(protected_prefix) / k_d;
        const double p0k = static_cast<double>(k - protected_prefix) / k_d;
        const double prefix_dist[2] = {p0k, p1k};
        const double pop_dist[2] = {shares.non_protected, shares.protected_share};
        term = kl_divergence(prefix_dist, pop_dist, base);
        break;
      }
      default:
        throw Error("brute-force normalizer requested for a non-prefix metric");
    }
    sum += position_bias(k) * term;
  }
  return sum;
}

}  // namespace

double brute_force_normalizer(MetricName metric, const Population& pop,
                              const CandidateSet& ds, const MetricConfig& cfg) {
  check_size(ds.size(), "brute-force normalizer");
  const std::vector<std::size_t> cutoffs = cfg.cutoffs.resolve(ds.size());
  double best = -std::numeric_limits<double>::infinity();
  enumerate_rankings(ds, [&](const Ranking& r) {
    best = std::max(best, ranking_prefix_sum(metric, pop, r, cutoffs, cfg.log_base_divergence));
    return true;
  });
  return best;
}

double exact_expectation(MetricName metric, const Population& pop, const MetricConfig& cfg) {
  check_size(pop.size(), "exact expectation");
  const CandidateSet everyone = CandidateSet::full(
      std::make_shared<const Population>(pop));
  // Kahan summation: 5040 terms at n = 7 must stay exact to ~1e-12.
  double sum = 0.0;
  double carry = 0.0;
  std::uint64_t count = 0;
  enumerate_rankings(everyone, [&](const Ranking& r) {
    double value;
    try {
      value = evaluate_metric(metric, everyone.population(), r, cfg);
    } catch (const UndefinedMetricError& e) {
      std::string ids;
      for (const std::string& id : r.id_sequence()) {
        if (!ids.empty()) ids += ",";
        ids += id;
      }
      throw UndefinedMetricError(e.quantity(),
                                 std::string(e.what()) + " on ranking <" + ids + ">");
    }
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    ++count;
    return true;
  });
  return sum / static_cast<double>(count);
}

}  // namespace oracle
}  // namespace fairrank
