#ifndef FAIRRANK_GENERATORS_HPP_
#define FAIRRANK_GENERATORS_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "fairrank/domain.hpp"

namespace fairrank {

enum class RelevanceMode : std::uint8_t { Uniform, Explicit };

/// Blueprint for a synthetic population. The protected count is
/// round(p_protected * n), half away from zero, clamped so both groups keep
/// at least one member. Candidate ids are "p####" / "n####" so that
/// construction order equals ascending-id order within each group.
struct PopulationSpec {
  std::size_t n = 0;
  double p_protected = 0.5;
  RelevanceMode relevance_mode = RelevanceMode::Uniform;
  std::vector<double> relevances;  // used when relevance_mode == Explicit
};

Population make_population(const PopulationSpec& spec);
PopulationPtr make_population_ptr(const PopulationSpec& spec);

/// Representative of the rankings that place every protected member above
/// every non-protected member; ascending candidate id inside each block.
Ranking make_first(const CandidateSet& ds);

/// Mirror image: every non-protected member above every protected member.
Ranking make_last(const CandidateSet& ds);

/// The candidate-set pair used by the closeness/deepness threshold
/// properties: both sets have 2N members; one contains a single protected
/// candidate, the other N. Members are chosen by lowest id.
struct DnPair {
  CandidateSet lone_protected;  // |D ∩ G1| = 1
  CandidateSet half_protected;  // |D ∩ G1| = N
};

DnPair make_dn_pair(const PopulationPtr& pop, std::size_t N);

/// Enumeration guard: rankings are enumerated only up to this length.
inline constexpr std::size_t kEnumerationLimit = 9;

/// Visits all n! rankings of the candidate set exactly once, lexicographic
/// by candidate-id sequence. The visitor returns false to stop early.
/// Raises SizeGuardError beyond kEnumerationLimit.
void enumerate_rankings(const CandidateSet& ds,
                        const std::function<bool(const Ranking&)>& visit);

/// All rankings as a vector; small n only.
std::vector<Ranking> all_rankings(const CandidateSet& ds);

/// Number of rankings on a candidate set of size n (n!).
std::uint64_t ranking_count(std::size_t n);

/// Uniformly random ranking via a seeded Fisher-Yates shuffle. The draw is
/// reproducible across platforms: the generator is a fixed mt19937_64 and
/// bounded values are drawn by rejection, not by distribution adapters.
Ranking sample_ranking(const CandidateSet& ds, std::uint64_t seed);

}  // namespace fairrank

#endif  // FAIRRANK_GENERATORS_HPP_
