#include "fairrank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fairrank {

double position_bias(std::size_t k) {
  if (k < 1) throw PositionError("position bias requires k >= 1");
  return 1.0 / std::log2(static_cast<double>(k) + 1.0);
}

double position_bias_sum(std::size_t n) {
  double total = 0.0;
  for (std::size_t k = 1; k <= n; ++k) total += position_bias(k);
  return total;
}

const char* to_string(MetricName m) {
  switch (m) {
    case MetricName::rND: return "rND";
    case MetricName::rRD: return "rRD";
    case MetricName::rKL: return "rKL";
    case MetricName::ED: return "ED";
    case MetricName::ER: return "ER";
    case MetricName::DTD: return "DTD";
    case MetricName::DTR: return "DTR";
    case MetricName::DID: return "DID";
    case MetricName::DIR: return "DIR";
    case MetricName::AWRF: return "AWRF";
    case MetricName::PSP: return "PSP";
  }
  return "?";
}

std::optional<MetricName> metric_from_string(const std::string& name) {
  for (MetricName m : kAllMetrics) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

Cutoffs Cutoffs::explicit_list(std::vector<std::size_t> cutoffs) {
  if (cutoffs.empty()) throw NormalizationError("cutoff list must be nonempty");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 1) throw PositionError("cutoffs must be >= 1");
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
      throw NormalizationError("cutoffs must be strictly increasing");
    }
  }
  Cutoffs c;
  c.kind_ = Kind::Explicit;
  c.explicit_ = std::move(cutoffs);
  return c;
}

Cutoffs Cutoffs::step(std::size_t step) {
  if (step < 1) throw PositionError("cutoff step must be >= 1");
  Cutoffs c;
  c.kind_ = Kind::Step;
  c.step_ = step;
  return c;
}

Cutoffs Cutoffs::every_rank() {
  Cutoffs c;
  c.kind_ = Kind::EveryRank;
  return c;
}

std::vector<std::size_t> Cutoffs::resolve(std::size_t n) const {
  std::vector<std::size_t> out;
  switch (kind_) {
    case Kind::Explicit:
      for (std::size_t k : explicit_) {
        if (k > n) {
          throw PositionError("cutoff " + std::to_string(k) + " exceeds ranking length " +
                              std::to_string(n));
        }
        out.push_back(k);
      }
      break;
    case Kind::Step:
      for (std::size_t k = step_; k <= n; k += step_) out.push_back(k);
      break;
    case Kind::EveryRank:
      for (std::size_t k = 1; k <= n; ++k) out.push_back(k);
      break;
  }
  if (out.empty()) {
    throw NormalizationError("no cutoffs applicable to ranking length " + std::to_string(n));
  }
  return out;
}

std::string Cutoffs::describe() const {
  switch (kind_) {
    case Kind::Step: return "step:" + std::to_string(step_);
    case Kind::EveryRank: return "every";
    case Kind::Explicit: {
      std::string s;
      for (std::size_t k : explicit_) {
        if (!s.empty()) s += ",";
        s += std::to_string(k);
      }
      return s;
    }
  }
  return "?";
}

namespace {

constexpr double kNormalizerFloor = 1e-12;

const MetricDescriptor kDescriptors[] = {
    {MetricName::rND, 1.0, false, {true, true}},
    {MetricName::rRD, 1.0, false, {true, true}},
    {MetricName::rKL, 1.0, false, {true, true}},
    {MetricName::ED, 0.0, false, {true, true}},
    {MetricName::ER, 1.0, false, {true, true}},
    {MetricName::DTD, 0.0, true, {true, true}},
    {MetricName::DTR, 1.0, true, {true, true}},
    {MetricName::DID, 0.0, true, {true, true}},
    {MetricName::DIR, 1.0, true, {true, true}},
    {MetricName::AWRF, 1.0, false, {true, true}},
    {MetricName::PSP, 0.0, false, {true, false}},
};

/// Discounted distance term of a prefix metric at cutoff k, given the number
/// of protected candidates S among the top k.
double prefix_term(MetricName m, std::size_t S, std::size_t k, const GroupShares& shares,
                   LogBase base) {
  const double k_d = static_cast<double>(k);
  switch (m) {
    case MetricName::rND:
      return std::abs(static_cast<double>(S) / k_d - shares.protected_share);
    case MetricName::rRD: {
      const double population_ratio = shares.protected_share / shares.non_protected;
      // Zero non-protected prefix: the ratio is defined as 0, not an error.
      const double ratio =
          (k == S) ? 0.0 : static_cast<double>(S) / static_cast<double>(k - S);
      return std::abs(ratio - population_ratio);
    }
    case MetricName::rKL: {
      const double p1k = static_cast<double>(S) / k_d;
      const double p0k = static_cast<double>(k - S) / k_d;
      const double prefix_dist[2] = {p0k, p1k};
      const double pop_dist[2] = {shares.non_protected, shares.protected_share};
      return kl_divergence(prefix_dist, pop_dist, base);
    }
    default:
      throw Error("prefix term requested for a non-prefix metric");
  }
}

/// Unnormalized discounted sum over the resolved cutoffs for a group pattern
/// (protected flags in rank order). Accumulated in ascending-k order.
double prefix_pattern_sum(MetricName m, const std::vector<std::uint8_t>& pattern,
                          const GroupShares& shares, const std::vector<std::size_t>& cutoffs,
                          LogBase base) {
  double sum = 0.0;
  std::size_t S = 0;
  std::size_t next = 0;
  for (std::size_t k = 1; k <= pattern.size() && next < cutoffs.size(); ++k) {
    S += pattern[k - 1];
    if (k == cutoffs[next]) {
      sum += position_bias(k) * prefix_term(m, S, k, shares, base);
      ++next;
    }
  }
  return sum;
}

std::vector<std::uint8_t> pattern_of(const Ranking& r) {
  std::vector<std::uint8_t> pattern(r.size());
  for (std::size_t k = 1; k <= r.size(); ++k) {
    pattern[k - 1] = r.at(k).group == Group::Protected ? 1 : 0;
  }
  return pattern;
}

/// Exact maximum of the unnormalized sum via enumeration of all C(n, c1)
/// group patterns (the sum only depends on the pattern).
double max_sum_enumerated(MetricName m, const GroupShares& shares, std::size_t n,
                          std::size_t protected_count,
                          const std::vector<std::size_t>& cutoffs, LogBase base) {
  std::vector<std::uint8_t> pattern(n, 0);
  std::fill(pattern.begin(), pattern.begin() + static_cast<std::ptrdiff_t>(protected_count), 1);
  // prev_permutation walks all distinct arrangements of the 1/0 multiset.
  double best = -std::numeric_limits<double>::infinity();
  do {
    best = std::max(best, prefix_pattern_sum(m, pattern, shares, cutoffs, base));
  } while (std::prev_permutation(pattern.begin(), pattern.end()));
  return best;
}

double max_sum_extremes(MetricName m, const GroupShares& shares, std::size_t n,
                        std::size_t protected_count, const std::vector<std::size_t>& cutoffs,
                        LogBase base) {
  std::vector<std::uint8_t> first(n, 0);
  std::fill(first.begin(), first.begin() + static_cast<std::ptrdiff_t>(protected_count), 1);
  std::vector<std::uint8_t> last(n, 0);
  std::fill(last.end() - static_cast<std::ptrdiff_t>(protected_count), last.end(), 1);
  return std::max(prefix_pattern_sum(m, first, shares, cutoffs, base),
                  prefix_pattern_sum(m, last, shares, cutoffs, base));
}

double normalizer_for(MetricName m, const GroupShares& shares, std::size_t n,
                      std::size_t protected_count, const std::vector<std::size_t>& cutoffs,
                      const MetricConfig& cfg) {
  double z;
  if (cfg.normalizer_mode == NormalizerMode::BruteForce) {
    if (n > kBruteForceThreshold) {
      throw SizeGuardError("brute-force normalizer limited to n <= " +
                           std::to_string(kBruteForceThreshold) + ", got n = " +
                           std::to_string(n));
    }
    z = max_sum_enumerated(m, shares, n, protected_count, cutoffs, cfg.log_base_divergence);
  } else if (n <= kBruteForceThreshold) {
    // Exact enumeration is affordable here; the extreme-ranking shortcut is
    // reserved for lengths where enumeration is not.
    z = max_sum_enumerated(m, shares, n, protected_count, cutoffs, cfg.log_base_divergence);
  } else {
    z = max_sum_extremes(m, shares, n, protected_count, cutoffs, cfg.log_base_divergence);
  }
  if (z < kNormalizerFloor) {
    throw NormalizerZeroError("prefix-metric normalizer vanishes on this candidate set (" +
                              std::string(to_string(m)) + ", n=" + std::to_string(n) + ")");
  }
  return z;
}

double evaluate_prefix(MetricName m, const Population& pop, const Ranking& r,
                       const MetricConfig& cfg, double normalizer) {
  const std::vector<std::size_t> cutoffs = cfg.cutoffs.resolve(r.size());
  const double sum =
      prefix_pattern_sum(m, pattern_of(r), pop.p_groups(), cutoffs, cfg.log_base_divergence);
  return 1.0 - sum / normalizer;
}

double evaluate_awrf(const Population& pop, const Ranking& r, const MetricConfig& cfg) {
  double group_bias[2] = {0.0, 0.0};
  for (std::size_t k = 1; k <= r.size(); ++k) {
    group_bias[r.at(k).group == Group::Protected ? 1 : 0] += position_bias(k);
  }
  const double total = position_bias_sum(r.size());
  const double exposure_dist[2] = {group_bias[0] / total, group_bias[1] / total};
  const GroupShares shares = pop.p_groups();
  const double group_dist[2] = {shares.non_protected, shares.protected_share};
  return 1.0 - jensen_shannon_divergence(exposure_dist, group_dist, cfg.log_base_divergence);
}

double evaluate_psp(const Population& pop, const Ranking& r) {
  if (!r.candidate_set().is_full_population()) {
    throw SettingMismatchError("PSP is only applicable when the full population is ranked");
  }
  // Pairs (d in G0, d' in G1) with d' ranked higher, counted in one pass.
  long long favorable = 0;
  long long protected_seen = 0;
  for (std::size_t k = 1; k <= r.size(); ++k) {
    if (r.at(k).group == Group::Protected) {
      ++protected_seen;
    } else {
      favorable += protected_seen;
    }
  }
  const long long pairs = static_cast<long long>(pop.protected_count()) *
                          static_cast<long long>(pop.nonprotected_count());
  return static_cast<double>(2 * favorable - pairs) / static_cast<double>(pairs);
}

double require_nonzero(double value, const char* quantity) {
  if (value == 0.0) {
    throw UndefinedMetricError(quantity, std::string(quantity) + " is zero");
  }
  return value;
}

double evaluate_impl(MetricName m, const Population& pop, const Ranking& r,
                     const MetricConfig& cfg, const double* normalizer_hint) {
  switch (m) {
    case MetricName::rND:
    case MetricName::rRD:
    case MetricName::rKL: {
      const double z = normalizer_hint
                           ? *normalizer_hint
                           : prefix_normalizer(m, pop, r.candidate_set(), cfg);
      return evaluate_prefix(m, pop, r, cfg, z);
    }
    case MetricName::ED:
      return exposure(pop, r, Group::Protected) - exposure(pop, r, Group::NonProtected);
    case MetricName::ER: {
      const double e0 =
          require_nonzero(exposure(pop, r, Group::NonProtected), "Exposure(G0|r)");
      return exposure(pop, r, Group::Protected) / e0;
    }
    case MetricName::DTD: {
      const double y1 = require_nonzero(group_average_relevance(pop, Group::Protected), "Y(G1)");
      const double y0 =
          require_nonzero(group_average_relevance(pop, Group::NonProtected), "Y(G0)");
      return exposure(pop, r, Group::Protected) / y1 -
             exposure(pop, r, Group::NonProtected) / y0;
    }
    case MetricName::DTR: {
      const double y1 = require_nonzero(group_average_relevance(pop, Group::Protected), "Y(G1)");
      const double y0 =
          require_nonzero(group_average_relevance(pop, Group::NonProtected), "Y(G0)");
      const double e0 =
          require_nonzero(exposure(pop, r, Group::NonProtected), "Exposure(G0|r)");
      return (exposure(pop, r, Group::Protected) / e0) * (y0 / y1);
    }
    case MetricName::DID: {
      const double y1 = require_nonzero(group_average_relevance(pop, Group::Protected), "Y(G1)");
      const double y0 =
          require_nonzero(group_average_relevance(pop, Group::NonProtected), "Y(G0)");
      return click_through_rate(pop, r, Group::Protected) / y1 -
             click_through_rate(pop, r, Group::NonProtected) / y0;
    }
    case MetricName::DIR: {
      const double y1 = require_nonzero(group_average_relevance(pop, Group::Protected), "Y(G1)");
      const double y0 =
          require_nonzero(group_average_relevance(pop, Group::NonProtected), "Y(G0)");
      const double c0 =
          require_nonzero(click_through_rate(pop, r, Group::NonProtected), "CTR(G0|r)");
      return (click_through_rate(pop, r, Group::Protected) / c0) * (y0 / y1);
    }
    case MetricName::AWRF:
      return evaluate_awrf(pop, r, cfg);
    case MetricName::PSP:
      return evaluate_psp(pop, r);
  }
  throw Error("unknown metric");
}

}  // namespace

const MetricDescriptor& descriptor(MetricName m) {
  return kDescriptors[static_cast<std::size_t>(m)];
}

double MetricDescriptor::evaluate(const Population& pop, const Ranking& r,
                                  const MetricConfig& cfg) const {
  return evaluate_metric(name, pop, r, cfg);
}

double exposure(const Population& pop, const Ranking& r, Group g) {
  double total = 0.0;
  for (std::size_t k = 1; k <= r.size(); ++k) {
    if (r.at(k).group == g) total += position_bias(k);
  }
  return total / static_cast<double>(pop.group_size(g));
}

double click_through_rate(const Population& pop, const Ranking& r, Group g) {
  double total = 0.0;
  for (std::size_t k = 1; k <= r.size(); ++k) {
    const Candidate& c = r.at(k);
    if (c.group == g) total += position_bias(k) * c.relevance;
  }
  return total / static_cast<double>(pop.group_size(g));
}

double group_average_relevance(const Population& pop, Group g) {
  double total = 0.0;
  for (const Candidate& c : pop.candidates()) {
    if (c.group == g) total += c.relevance;
  }
  return total / static_cast<double>(pop.group_size(g));
}

double prefix_normalizer(MetricName metric, const Population& pop, const CandidateSet& ds,
                         const MetricConfig& cfg) {
  if (!is_prefix_metric(metric)) {
    throw Error("normalizer requested for a non-prefix metric");
  }
  const std::vector<std::size_t> cutoffs = cfg.cutoffs.resolve(ds.size());
  return normalizer_for(metric, pop.p_groups(), ds.size(), ds.count(Group::Protected),
                        cutoffs, cfg);
}

double evaluate_metric(MetricName m, const Population& pop, const Ranking& r,
                       const MetricConfig& cfg) {
  return evaluate_impl(m, pop, r, cfg, nullptr);
}

double MetricEvaluator::evaluate(MetricName m, const Population& pop, const Ranking& r) const {
  if (!is_prefix_metric(m)) {
    return evaluate_impl(m, pop, r, cfg_, nullptr);
  }
  const std::vector<std::size_t> cutoffs = cfg_.cutoffs.resolve(r.size());
  auto key = std::make_tuple(m, r.size(), r.candidate_set().count(Group::Protected),
                             pop.protected_count(), pop.size(), cutoffs);
  auto it = normalizer_cache_.find(key);
  if (it == normalizer_cache_.end()) {
    const double z = normalizer_for(m, pop.p_groups(), r.size(),
                                    r.candidate_set().count(Group::Protected), cutoffs, cfg_);
    it = normalizer_cache_.emplace(std::move(key), z).first;
  }
  const double z = it->second;
  return evaluate_impl(m, pop, r, cfg_, &z);
}

}  // namespace fairrank
