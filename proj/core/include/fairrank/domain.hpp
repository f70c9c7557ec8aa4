#ifndef FAIRRANK_DOMAIN_HPP_
#define FAIRRANK_DOMAIN_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fairrank/errors.hpp"

namespace fairrank {

/// Binary group attribute. The protected group is the historically
/// disadvantaged one; every candidate belongs to exactly one group.
enum class Group : std::uint8_t { NonProtected = 0, Protected = 1 };

inline const char* to_string(Group g) {
  return g == Group::Protected ? "protected" : "non-protected";
}

struct Candidate {
  std::string id;
  Group group = Group::NonProtected;
  double relevance = 1.0;
};

/// Relative group shares in a population. Both components lie in (0,1)
/// and sum to 1.
struct GroupShares {
  double non_protected = 0.0;
  double protected_share = 0.0;
};

/// The full candidate universe. Immutable after construction; checked
/// invariants: unique ids, finite relevances, both groups nonempty.
class Population {
 public:
  explicit Population(std::vector<Candidate> candidates);

  std::size_t size() const { return candidates_.size(); }
  const Candidate& candidate(std::size_t index) const { return candidates_[index]; }
  const std::vector<Candidate>& candidates() const { return candidates_; }

  std::size_t protected_count() const { return protected_count_; }
  std::size_t nonprotected_count() const { return candidates_.size() - protected_count_; }
  std::size_t group_size(Group g) const {
    return g == Group::Protected ? protected_count() : nonprotected_count();
  }
  GroupShares p_groups() const;

  /// Index of the candidate with the given id; MembershipError if absent.
  std::size_t index_of(const std::string& id) const;
  bool contains(const std::string& id) const;

 private:
  std::vector<Candidate> candidates_;
  std::size_t protected_count_ = 0;
};

using PopulationPtr = std::shared_ptr<const Population>;

/// A subset of a population selected for ranking. Members are stored as
/// population indices, sorted ascending by candidate id.
class CandidateSet {
 public:
  CandidateSet(PopulationPtr population, std::vector<std::size_t> members);

  /// The whole population as a candidate set (Setting 1).
  static CandidateSet full(PopulationPtr population);

  const Population& population() const { return *population_; }
  const PopulationPtr& population_ptr() const { return population_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::size_t>& members() const { return members_; }
  bool is_full_population() const { return members_.size() == population_->size(); }

  std::size_t count(Group g) const;
  bool contains_index(std::size_t population_index) const;

 private:
  PopulationPtr population_;
  std::vector<std::size_t> members_;  // sorted by candidate id
};

/// A total order over a candidate set. Positions are 1-based at every
/// interface. Immutable value object.
class Ranking {
 public:
  /// `order[k-1]` is the population index of the candidate at position k.
  Ranking(CandidateSet candidate_set, std::vector<std::size_t> order);

  const CandidateSet& candidate_set() const { return candidate_set_; }
  const Population& population() const { return candidate_set_.population(); }
  std::size_t size() const { return order_.size(); }

  /// Candidate at 1-based position k.
  const Candidate& at(std::size_t k) const;
  std::size_t population_index_at(std::size_t k) const;

  /// 1-based position of a candidate given by population index.
  std::size_t position_of(std::size_t population_index) const;
  std::size_t position_of(const std::string& id) const;

  const std::vector<std::size_t>& order() const { return order_; }

  /// Candidate ids in rank order, for diagnostics and counterexamples.
  std::vector<std::string> id_sequence() const;

 private:
  CandidateSet candidate_set_;
  std::vector<std::size_t> order_;      // position -> population index
  std::vector<std::uint32_t> inverse_;  // population index -> position
};

/// Ranking with the candidates at 1-based positions i < j exchanged.
Ranking swap(const Ranking& r, std::size_t i, std::size_t j);

/// Ranking of length n+1 with `candidate_index` (a population index that is
/// not yet a member) appended at position n+1.
Ranking append(const Ranking& r, std::size_t candidate_index);
Ranking append(const Ranking& r, const std::string& candidate_id);

/// Ranking with position k holding r(n+1-k).
Ranking invert(const Ranking& r);

/// Fraction of group-g candidates among the top-k positions, k in [1, n].
double prefix_proportion(const Ranking& r, std::size_t k, Group g);

}  // namespace fairrank

#endif  // FAIRRANK_DOMAIN_HPP_
