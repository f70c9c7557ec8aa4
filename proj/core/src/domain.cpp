#include "fairrank/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace fairrank {

Population::Population(std::vector<Candidate> candidates)
    : candidates_(std::move(candidates)) {
  std::unordered_set<std::string> seen;
  seen.reserve(candidates_.size());
  for (const Candidate& c : candidates_) {
    if (!seen.insert(c.id).second) {
      throw DuplicateError("duplicate candidate id in population: " + c.id);
    }
    if (!std::isfinite(c.relevance)) {
      throw ValidationError(0, "non-finite relevance for candidate " + c.id);
    }
    if (c.group == Group::Protected) ++protected_count_;
  }
  if (protected_count_ == 0 || protected_count_ == candidates_.size()) {
    throw ValidationError(0, "population must contain both groups");
  }
}

GroupShares Population::p_groups() const {
  const double n = static_cast<double>(candidates_.size());
  return GroupShares{static_cast<double>(nonprotected_count()) / n,
                     static_cast<double>(protected_count()) / n};
}

std::size_t Population::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (candidates_[i].id == id) return i;
  }
  throw MembershipError("candidate not in population: " + id);
}

bool Population::contains(const std::string& id) const {
  for (const Candidate& c : candidates_) {
    if (c.id == id) return true;
  }
  return false;
}

CandidateSet::CandidateSet(PopulationPtr population, std::vector<std::size_t> members)
    : population_(std::move(population)), members_(std::move(members)) {
  if (!population_) throw MembershipError("candidate set requires a population");
  if (members_.empty()) throw ValidationError(0, "candidate set must be nonempty");
  for (std::size_t idx : members_) {
    if (idx >= population_->size()) {
      throw MembershipError("member index out of population range");
    }
  }
  std::sort(members_.begin(), members_.end(), [this](std::size_t a, std::size_t b) {
    return population_->candidate(a).id < population_->candidate(b).id;
  });
  for (std::size_t i = 1; i < members_.size(); ++i) {
    if (members_[i] == members_[i - 1]) {
      throw DuplicateError("duplicate member in candidate set");
    }
  }
}

CandidateSet CandidateSet::full(PopulationPtr population) {
  std::vector<std::size_t> all(population->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return CandidateSet(std::move(population), std::move(all));
}

std::size_t CandidateSet::count(Group g) const {
  std::size_t c = 0;
  for (std::size_t idx : members_) {
    if (population_->candidate(idx).group == g) ++c;
  }
  return c;
}

bool CandidateSet::contains_index(std::size_t population_index) const {
  return std::find(members_.begin(), members_.end(), population_index) != members_.end();
}

Ranking::Ranking(CandidateSet candidate_set, std::vector<std::size_t> order)
    : candidate_set_(std::move(candidate_set)), order_(std::move(order)) {
  if (order_.size() != candidate_set_.size()) {
    throw ValidationError(0, "ranking order must cover the candidate set exactly");
  }
  inverse_.assign(candidate_set_.population().size(),
                  std::numeric_limits<std::uint32_t>::max());
  for (std::size_t k = 0; k < order_.size(); ++k) {
    const std::size_t idx = order_[k];
    if (!candidate_set_.contains_index(idx)) {
      throw MembershipError("ranking contains a non-member candidate");
    }
    if (inverse_[idx] != std::numeric_limits<std::uint32_t>::max()) {
      throw DuplicateError("ranking repeats a candidate");
    }
    inverse_[idx] = static_cast<std::uint32_t>(k + 1);
  }
}

const Candidate& Ranking::at(std::size_t k) const {
  return population().candidate(population_index_at(k));
}

std::size_t Ranking::population_index_at(std::size_t k) const {
  if (k < 1 || k > order_.size()) {
    throw PositionError("position " + std::to_string(k) + " out of range 1.." +
                        std::to_string(order_.size()));
  }
  return order_[k - 1];
}

std::size_t Ranking::position_of(std::size_t population_index) const {
  if (population_index >= inverse_.size() ||
      inverse_[population_index] == std::numeric_limits<std::uint32_t>::max()) {
    throw MembershipError("candidate is not ranked");
  }
  return inverse_[population_index];
}

std::size_t Ranking::position_of(const std::string& id) const {
  return position_of(population().index_of(id));
}

std::vector<std::string> Ranking::id_sequence() const {
  std::vector<std::string> ids;
  ids.reserve(order_.size());
  for (std::size_t idx : order_) ids.push_back(population().candidate(idx).id);
  return ids;
}

Ranking swap(const Ranking& r, std::size_t i, std::size_t j) {
  const std::size_t n = r.size();
  if (i < 1 || j > n || i >= j) {
    throw PositionError("swap requires 1 <= i < j <= n, got i=" + std::to_string(i) +
                        " j=" + std::to_string(j) + " n=" + std::to_string(n));
  }
  std::vector<std::size_t> order = r.order();
  std::swap(order[i - 1], order[j - 1]);
  return Ranking(r.candidate_set(), std::move(order));
}

Ranking append(const Ranking& r, std::size_t candidate_index) {
  const CandidateSet& ds = r.candidate_set();
  if (candidate_index >= ds.population().size()) {
    throw MembershipError("appended candidate is not in the population");
  }
  if (ds.contains_index(candidate_index)) {
    throw DuplicateError("appended candidate is already in the candidate set");
  }
  std::vector<std::size_t> members = ds.members();
  members.push_back(candidate_index);
  CandidateSet extended(ds.population_ptr(), std::move(members));
  std::vector<std::size_t> order = r.order();
  order.push_back(candidate_index);
  return Ranking(std::move(extended), std::move(order));
}

Ranking append(const Ranking& r, const std::string& candidate_id) {
  return append(r, r.population().index_of(candidate_id));
}

Ranking invert(const Ranking& r) {
  std::vector<std::size_t> order(r.order().rbegin(), r.order().rend());
  return Ranking(r.candidate_set(), std::move(order));
}

double prefix_proportion(const Ranking& r, std::size_t k, Group g) {
  if (k < 1 || k > r.size()) {
    throw PositionError("prefix cutoff " + std::to_string(k) + " out of range 1.." +
                        std::to_string(r.size()));
  }
  std::size_t count = 0;
  for (std::size_t pos = 1; pos <= k; ++pos) {
    if (r.at(pos).group == g) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(k);
}

}  // namespace fairrank
