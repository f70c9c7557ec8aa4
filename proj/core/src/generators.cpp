#include "fairrank/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fairrank {

namespace {

std::string padded_id(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%05zu", prefix, i);
  return buf;
}

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw uniform and platform-independent.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Population make_population(const PopulationSpec& spec) {
  if (spec.n < 2) throw CapacityError("population needs at least 2 candidates");
  const double raw = spec.p_protected * static_cast<double>(spec.n);
  if (!(raw > 0.0)) throw CapacityError("p_protected must be positive");
  // llround rounds halves away from zero; clamp keeps both groups nonempty.
  std::size_t protected_count = static_cast<std::size_t>(std::llround(raw));
  protected_count = std::min(std::max<std::size_t>(protected_count, 1), spec.n - 1);
  if (spec.relevance_mode == RelevanceMode::Explicit &&
      spec.relevances.size() != spec.n) {
    throw ValidationError(0, "explicit relevance list must have n entries");
  }
  std::vector<Candidate> candidates;
  candidates.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const bool is_protected = i < protected_count;
    const double rel =
        spec.relevance_mode == RelevanceMode::Uniform ? 1.0 : spec.relevances[i];
    candidates.push_back({is_protected ? padded_id('p', i) : padded_id('n', i - protected_count),
                          is_protected ? Group::Protected : Group::NonProtected, rel});
  }
  return Population(std::move(candidates));
}

PopulationPtr make_population_ptr(const PopulationSpec& spec) {
  return std::make_shared<const Population>(make_population(spec));
}

namespace {

Ranking block_ranking(const CandidateSet& ds, Group top) {
  // members() is already ascending by id; stable partition keeps that order
  // inside each block.
  std::vector<std::size_t> order = ds.members();
  std::stable_partition(order.begin(), order.end(), [&](std::size_t idx) {
    return ds.population().candidate(idx).group == top;
  });
  return Ranking(ds, std::move(order));
}

}  // namespace

Ranking make_first(const CandidateSet& ds) { return block_ranking(ds, Group::Protected); }

Ranking make_last(const CandidateSet& ds) { return block_ranking(ds, Group::NonProtected); }

DnPair make_dn_pair(const PopulationPtr& pop, std::size_t N) {
  if (N < 1) throw CapacityError("dn pair requires N >= 1");
  std::vector<std::size_t> prot;
  std::vector<std::size_t> non;
  for (std::size_t i = 0; i < pop->size(); ++i) {
    (pop->candidate(i).group == Group::Protected ? prot : non).push_back(i);
  }
  auto by_id = [&](std::size_t a, std::size_t b) {
    return pop->candidate(a).id < pop->candidate(b).id;
  };
  std::sort(prot.begin(), prot.end(), by_id);
  std::sort(non.begin(), non.end(), by_id);
  if (prot.size() < N || non.size() < 2 * N - 1) {
    throw CapacityError("population too small for dn pair with N = " + std::to_string(N));
  }
  std::vector<std::size_t> lone(prot.begin(), prot.begin() + 1);
  lone.insert(lone.end(), non.begin(), non.begin() + static_cast<std::ptrdiff_t>(2 * N - 1));
  std::vector<std::size_t> half(prot.begin(), prot.begin() + static_cast<std::ptrdiff_t>(N));
  half.insert(half.end(), non.begin(), non.begin() + static_cast<std::ptrdiff_t>(N));
  return DnPair{CandidateSet(pop, std::move(lone)), CandidateSet(pop, std::move(half))};
}

void enumerate_rankings(const CandidateSet& ds,
                        const std::function<bool(const Ranking&)>& visit) {
  if (ds.size() > kEnumerationLimit) {
    throw SizeGuardError("ranking enumeration limited to n <= " +
                         std::to_string(kEnumerationLimit) + ", got n = " +
                         std::to_string(ds.size()));
  }
  // members() is sorted by id, so permuting position slots in ascending
  // lexicographic order yields id-lexicographic ranking order.
  std::vector<std::size_t> slot(ds.size());
  for (std::size_t i = 0; i < slot.size(); ++i) slot[i] = i;
  do {
    std::vector<std::size_t> order(ds.size());
    for (std::size_t i = 0; i < slot.size(); ++i) order[i] = ds.members()[slot[i]];
    if (!visit(Ranking(ds, std::move(order)))) return;
  } while (std::next_permutation(slot.begin(), slot.end()));
}

std::vector<Ranking> all_rankings(const CandidateSet& ds) {
  std::vector<Ranking> out;
  out.reserve(static_cast<std::size_t>(ranking_count(ds.size())));
  enumerate_rankings(ds, [&](const Ranking& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

std::uint64_t ranking_count(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

Ranking sample_ranking(const CandidateSet& ds, std::uint64_t seed) {
  std::vector<std::size_t> order = ds.members();
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i + 1));
    std::swap(order[i], order[j]);
  }
  return Ranking(ds, std::move(order));
}

}  // namespace fairrank
