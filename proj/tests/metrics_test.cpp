#include "fairrank/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fairrank/generators.hpp"

namespace fairrank {
namespace {

MetricConfig every_rank_config() {
  MetricConfig cfg;
  cfg.cutoffs = Cutoffs::every_rank();
  return cfg;
}

PopulationPtr two_candidate_pop() {
  return std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 1.0},
      {"d1", Group::Protected, 1.0},
  });
}

Ranking ranking_of(const PopulationPtr& pop, const std::vector<std::string>& ids) {
  std::vector<std::size_t> order;
  for (const auto& id : ids) order.push_back(pop->index_of(id));
  return Ranking(CandidateSet(pop, order), order);
}

TEST(PositionBias, KnownValues) {
  EXPECT_DOUBLE_EQ(position_bias(1), 1.0);
  EXPECT_DOUBLE_EQ(position_bias(3), 0.5);
  EXPECT_NEAR(position_bias(2), 0.63093, 1e-5);
  EXPECT_THROW(position_bias(0), PositionError);
}

TEST(PositionBias, StrictlyDecreasingAndPositive) {
  double prev = position_bias(1);
  EXPECT_DOUBLE_EQ(prev, 1.0);
  for (std::size_t k = 2; k <= 10000; ++k) {
    const double b = position_bias(k);
    EXPECT_GT(b, 0.0);
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(KlDivergence, IdenticalDistributionsGiveZero) {
  const double p[2] = {0.3, 0.7};
  EXPECT_DOUBLE_EQ(kl_divergence(p, p, LogBase::Base2), 0.0);
  EXPECT_DOUBLE_EQ(kl_divergence(p, p, LogBase::Natural), 0.0);
}

TEST(KlDivergence, PointMassAgainstUniformIsOneBit) {
  const double p[2] = {1.0, 0.0};
  const double q[2] = {0.5, 0.5};
  EXPECT_DOUBLE_EQ(kl_divergence(p, q, LogBase::Base2), 1.0);
}

TEST(KlDivergence, GibbsInequality) {
  const double p[2] = {0.5, 0.5};
  const double q[2] = {0.25, 0.75};
  EXPECT_GE(kl_divergence(p, q, LogBase::Natural), 0.0);
}

TEST(KlDivergence, DomainAndNormalizationErrors) {
  const double p[2] = {0.5, 0.5};
  const double q[2] = {1.0, 0.0};
  EXPECT_THROW(kl_divergence(p, q), DivergenceDomainError);
  const double bad[2] = {0.5, 0.6};
  EXPECT_THROW(kl_divergence(bad, p), NormalizationError);
  EXPECT_THROW(kl_divergence(p, bad), NormalizationError);
}

TEST(Exposure, SingleProtectedAtTop) {
  auto pop = two_candidate_pop();
  Ranking r = ranking_of(pop, {"d1", "d0"});
  EXPECT_DOUBLE_EQ(exposure(*pop, r, Group::Protected), 1.0);
  EXPECT_NEAR(exposure(*pop, r, Group::NonProtected), 0.63093, 1e-5);
}

TEST(Exposure, AbsentGroupGetsZero) {
  auto pop = std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 1.0},
      {"d1", Group::Protected, 1.0},
      {"d2", Group::NonProtected, 1.0},
  });
  Ranking r = ranking_of(pop, {"d0", "d2"});
  EXPECT_DOUBLE_EQ(exposure(*pop, r, Group::Protected), 0.0);
}

TEST(Exposure, DivisorIsFullPopulationGroupSize) {
  // Two protected candidates in the population, only one ranked: the divisor
  // stays |G1| = 2.
  auto pop = std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 1.0},
      {"d1", Group::Protected, 1.0},
      {"d2", Group::Protected, 1.0},
  });
  Ranking r = ranking_of(pop, {"d1", "d0"});
  EXPECT_DOUBLE_EQ(exposure(*pop, r, Group::Protected), position_bias(1) / 2.0);
}

TEST(ClickThroughRate, UniformRelevanceEqualsExposure) {
  PopulationPtr pop = make_population_ptr({5, 0.4, RelevanceMode::Uniform, {}});
  Ranking r = sample_ranking(CandidateSet::full(pop), 5);
  for (Group g : {Group::Protected, Group::NonProtected}) {
    EXPECT_EQ(click_through_rate(*pop, r, g), exposure(*pop, r, g));
  }
}

TEST(ClickThroughRate, WeightsByRelevance) {
  auto pop = std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 1.0},
      {"d1", Group::Protected, 2.0},
  });
  Ranking r = ranking_of(pop, {"d1", "d0"});
  EXPECT_DOUBLE_EQ(click_through_rate(*pop, r, Group::Protected), 2.0);
  auto zero = std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 0.0},
      {"d1", Group::Protected, 0.0},
  });
  Ranking rz = ranking_of(zero, {"d1", "d0"});
  EXPECT_DOUBLE_EQ(click_through_rate(*zero, rz, Group::Protected), 0.0);
}

TEST(Descriptors, OptimalValuesAndFlags) {
  EXPECT_DOUBLE_EQ(descriptor(MetricName::rND).optimal_value, 1.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::rRD).optimal_value, 1.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::rKL).optimal_value, 1.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::ED).optimal_value, 0.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::ER).optimal_value, 1.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::DTD).optimal_value, 0.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::DTR).optimal_value, 1.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::DID).optimal_value, 0.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::DIR).optimal_value, 1.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::AWRF).optimal_value, 1.0);
  EXPECT_DOUBLE_EQ(descriptor(MetricName::PSP).optimal_value, 0.0);
  for (MetricName m : kAllMetrics) {
    const bool uses = descriptor(m).uses_relevance;
    const bool expected = m == MetricName::DTD || m == MetricName::DTR ||
                          m == MetricName::DID || m == MetricName::DIR;
    EXPECT_EQ(uses, expected) << to_string(m);
  }
  EXPECT_FALSE(descriptor(MetricName::PSP).settings.subset_of_population);
  EXPECT_TRUE(descriptor(MetricName::PSP).settings.full_population);
}

TEST(Descriptors, EvaluateEntryPointForwards) {
  auto pop = two_candidate_pop();
  Ranking r = ranking_of(pop, {"d1", "d0"});
  EXPECT_EQ(descriptor(MetricName::ED).evaluate(*pop, r, {}),
            evaluate_metric(MetricName::ED, *pop, r, {}));
}

TEST(EvaluateMetric, ExposureDifferenceTwoCandidates) {
  auto pop = two_candidate_pop();
  Ranking r = ranking_of(pop, {"d1", "d0"});
  EXPECT_NEAR(evaluate_metric(MetricName::ED, *pop, r, {}), 0.36907, 1e-5);
}

TEST(EvaluateMetric, PspExtremesAndPairs) {
  PopulationPtr pop = make_population_ptr({4, 0.5, RelevanceMode::Uniform, {}});
  const CandidateSet everyone = CandidateSet::full(pop);
  EXPECT_DOUBLE_EQ(evaluate_metric(MetricName::PSP, *pop, make_first(everyone), {}), 1.0);
  EXPECT_DOUBLE_EQ(evaluate_metric(MetricName::PSP, *pop, make_last(everyone), {}), -1.0);
  // alternating protected/non-protected: (3 - 1) / 4
  std::vector<std::size_t> prot, non;
  for (std::size_t i = 0; i < pop->size(); ++i) {
    (pop->candidate(i).group == Group::Protected ? prot : non).push_back(i);
  }
  std::vector<std::size_t> order = {prot[0], non[0], prot[1], non[1]};
  Ranking alternating(everyone, order);
  EXPECT_DOUBLE_EQ(evaluate_metric(MetricName::PSP, *pop, alternating, {}), 0.5);
}

TEST(EvaluateMetric, PspRequiresFullPopulation) {
  PopulationPtr pop = make_population_ptr({4, 0.5, RelevanceMode::Uniform, {}});
  CandidateSet subset(pop, {0, 2});
  Ranking r(subset, {0, 2});
  EXPECT_THROW(evaluate_metric(MetricName::PSP, *pop, r, {}), SettingMismatchError);
}

TEST(EvaluateMetric, RndPerfectPrefixScoresOne) {
  PopulationPtr pop = make_population_ptr({4, 0.5, RelevanceMode::Uniform, {}});
  const CandidateSet everyone = CandidateSet::full(pop);
  std::vector<std::size_t> prot, non;
  for (std::size_t i = 0; i < pop->size(); ++i) {
    (pop->candidate(i).group == Group::Protected ? prot : non).push_back(i);
  }
  Ranking alternating(everyone, {prot[0], non[0], prot[1], non[1]});
  MetricConfig cfg;
  cfg.cutoffs = Cutoffs::explicit_list({2});
  EXPECT_DOUBLE_EQ(evaluate_metric(MetricName::rND, *pop, alternating, cfg), 1.0);
}

TEST(EvaluateMetric, AwrfIsOneMinusJensenShannon) {
  auto pop = two_candidate_pop();
  Ranking r = ranking_of(pop, {"d1", "d0"});
  const double total = position_bias(1) + position_bias(2);
  const double exposure_dist[2] = {position_bias(2) / total, position_bias(1) / total};
  const double group_dist[2] = {0.5, 0.5};
  const double expected =
      1.0 - jensen_shannon_divergence(exposure_dist, group_dist, LogBase::Base2);
  EXPECT_DOUBLE_EQ(evaluate_metric(MetricName::AWRF, *pop, r, {}), expected);
}

TEST(EvaluateMetric, UndefinedDenominatorsRaiseTypedErrors) {
  // ER with no non-protected candidate in the ranked set
  auto pop = std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 1.0},
      {"d1", Group::Protected, 1.0},
      {"d2", Group::Protected, 1.0},
  });
  Ranking r = ranking_of(pop, {"d1", "d2"});
  try {
    evaluate_metric(MetricName::ER, *pop, r, {});
    FAIL() << "ER should be undefined";
  } catch (const UndefinedMetricError& e) {
    EXPECT_EQ(e.quantity(), "Exposure(G0|r)");
  }
  // DTD with zero average protected relevance
  auto zrel = std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 1.0},
      {"d1", Group::Protected, 0.0},
  });
  Ranking rz = ranking_of(zrel, {"d1", "d0"});
  try {
    evaluate_metric(MetricName::DTD, *zrel, rz, {});
    FAIL() << "DTD should be undefined";
  } catch (const UndefinedMetricError& e) {
    EXPECT_EQ(e.quantity(), "Y(G1)");
  }
  // DIR with zero non-protected click-through rate
  auto zctr = std::make_shared<const Population>(std::vector<Candidate>{
      {"d0", Group::NonProtected, 0.0},
      {"d1", Group::Protected, 1.0},
  });
  Ranking rc = ranking_of(zctr, {"d1", "d0"});
  try {
    evaluate_metric(MetricName::DIR, *zctr, rc, {});
    FAIL() << "DIR should be undefined";
  } catch (const UndefinedMetricError& e) {
    EXPECT_EQ(e.quantity(), "Y(G0)");
  }
}

TEST(EvaluateMetric, RrdZeroDenominatorConventionNeverThrows) {
  // All-protected prefix at the cutoff: the ratio term is |0 - p1/p0|.
  PopulationPtr pop = make_population_ptr({5, 0.4, RelevanceMode::Uniform, {}});
  const CandidateSet everyone = CandidateSet::full(pop);
  Ranking first = make_first(everyone);  // both protected candidates on top
  MetricConfig cfg;
  cfg.cutoffs = Cutoffs::explicit_list({2});
  EXPECT_NO_THROW(evaluate_metric(MetricName::rRD, *pop, first, cfg));
}

TEST(PrefixNormalizer, KnownValueAndModeAgreement) {
  PopulationPtr pop = make_population_ptr({4, 0.5, RelevanceMode::Uniform, {}});
  const CandidateSet everyone = CandidateSet::full(pop);
  MetricConfig cfg;
  cfg.cutoffs = Cutoffs::explicit_list({2});
  cfg.normalizer_mode = NormalizerMode::BruteForce;
  const double z = prefix_normalizer(MetricName::rND, *pop, everyone, cfg);
  EXPECT_EQ(z, position_bias(2) * 0.5);
  cfg.normalizer_mode = NormalizerMode::ExtremeRanking;
  EXPECT_EQ(prefix_normalizer(MetricName::rND, *pop, everyone, cfg), z);
}

TEST(PrefixNormalizer, DegenerateCutoffRaises) {
  PopulationPtr pop = make_population_ptr({4, 0.5, RelevanceMode::Uniform, {}});
  const CandidateSet everyone = CandidateSet::full(pop);
  MetricConfig cfg;
  cfg.cutoffs = Cutoffs::explicit_list({4});  // the full-set prefix always matches
  EXPECT_THROW(prefix_normalizer(MetricName::rND, *pop, everyone, cfg), NormalizerZeroError);
}

TEST(PrefixNormalizer, BruteForceGuard) {
  PopulationPtr pop = make_population_ptr({9, 0.5, RelevanceMode::Uniform, {}});
  const CandidateSet everyone = CandidateSet::full(pop);
  MetricConfig cfg;
  cfg.cutoffs = Cutoffs::explicit_list({3});
  cfg.normalizer_mode = NormalizerMode::BruteForce;
  EXPECT_THROW(prefix_normalizer(MetricName::rND, *pop, everyone, cfg), SizeGuardError);
  cfg.normalizer_mode = NormalizerMode::ExtremeRanking;
  EXPECT_GT(prefix_normalizer(MetricName::rND, *pop, everyone, cfg), 0.0);
}

TEST(MetricInvariants, RangesOverAllSmallRankings) {
  MetricEvaluator eval(every_rank_config());
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t c1 = 1; c1 < n; ++c1) {
      PopulationPtr pop = make_population_ptr(
          {n, static_cast<double>(c1) / static_cast<double>(n), RelevanceMode::Uniform, {}});
      const CandidateSet everyone = CandidateSet::full(pop);
      enumerate_rankings(everyone, [&](const Ranking& r) {
        for (MetricName m : {MetricName::rND, MetricName::rRD, MetricName::rKL,
                             MetricName::AWRF}) {
          const double v = eval.evaluate(m, *pop, r);
          EXPECT_GE(v, -1e-12) << to_string(m);
          EXPECT_LE(v, 1.0 + 1e-12) << to_string(m);
        }
        for (MetricName m : {MetricName::ED, MetricName::PSP}) {
          const double v = eval.evaluate(m, *pop, r);
          EXPECT_GE(v, -1.0 - 1e-12) << to_string(m);
          EXPECT_LE(v, 1.0 + 1e-12) << to_string(m);
        }
        return true;
      });
    }
  }
}

TEST(MetricInvariants, GroupRelabelAntisymmetry) {
  std::mt19937_64 seeds(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 7;
    const std::size_t c1 = 1 + t % (n - 1);
    PopulationPtr pop = make_population_ptr(
        {n, static_cast<double>(c1) / static_cast<double>(n), RelevanceMode::Uniform, {}});
    std::vector<Candidate> flipped = pop->candidates();
    for (Candidate& c : flipped) {
      c.group = c.group == Group::Protected ? Group::NonProtected : Group::Protected;
    }
    auto fpop = std::make_shared<const Population>(std::move(flipped));
    Ranking r = sample_ranking(CandidateSet::full(pop), seeds());
    Ranking fr(CandidateSet::full(fpop), r.order());
    EXPECT_DOUBLE_EQ(evaluate_metric(MetricName::ED, *fpop, fr, {}),
                     -evaluate_metric(MetricName::ED, *pop, r, {}));
    EXPECT_DOUBLE_EQ(evaluate_metric(MetricName::PSP, *fpop, fr, {}),
                     -evaluate_metric(MetricName::PSP, *pop, r, {}));
    EXPECT_NEAR(evaluate_metric(MetricName::ER, *fpop, fr, {}),
                1.0 / evaluate_metric(MetricName::ER, *pop, r, {}), 1e-9);
  }
}

TEST(MetricInvariants, PspNegatesUnderInversion) {
  std::mt19937_64 seeds(23);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 9;
    const std::size_t c1 = 1 + t % (n - 1);
    PopulationPtr pop = make_population_ptr(
        {n, static_cast<double>(c1) / static_cast<double>(n), RelevanceMode::Uniform, {}});
    Ranking r = sample_ranking(CandidateSet::full(pop), seeds());
    EXPECT_EQ(evaluate_metric(MetricName::PSP, *pop, invert(r), {}),
              -evaluate_metric(MetricName::PSP, *pop, r, {}));
  }
}

TEST(MetricInvariants, UniformRelevanceCollapse) {
  std::mt19937_64 seeds(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 10;
    const std::size_t c1 = 1 + t % (n - 1);
    PopulationPtr pop = make_population_ptr(
        {n, static_cast<double>(c1) / static_cast<double>(n), RelevanceMode::Uniform, {}});
    Ranking r = sample_ranking(CandidateSet::full(pop), seeds());
    EXPECT_EQ(evaluate_metric(MetricName::DTD, *pop, r, {}),
              evaluate_metric(MetricName::ED, *pop, r, {}));
    EXPECT_EQ(evaluate_metric(MetricName::DID, *pop, r, {}),
              evaluate_metric(MetricName::ED, *pop, r, {}));
    EXPECT_EQ(evaluate_metric(MetricName::DTR, *pop, r, {}),
              evaluate_metric(MetricName::ER, *pop, r, {}));
    EXPECT_EQ(evaluate_metric(MetricName::DIR, *pop, r, {}),
              evaluate_metric(MetricName::ER, *pop, r, {}));
  }
}

TEST(MetricInvariants, RescalingLaws) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 12;
    const std::size_t c1 = 1 + rng() % (n - 1);
    std::vector<double> rel(n);
    for (double& x : rel) x = (static_cast<double>(rng() % 1000) + 1.0) / 1000.0;
    PopulationPtr pop = make_population_ptr({n, static_cast<double>(c1) / static_cast<double>(n),
                                             RelevanceMode::Explicit, rel});
    Ranking r = sample_ranking(CandidateSet::full(pop), rng());
    for (double a : {0.5, 2.0, 10.0}) {
      std::vector<Candidate> scaled = pop->candidates();
      for (Candidate& c : scaled) c.relevance *= a;
      auto spop = std::make_shared<const Population>(std::move(scaled));
      Ranking sr(CandidateSet::full(spop), r.order());
      for (MetricName m : {MetricName::DTR, MetricName::DID, MetricName::DIR}) {
        const double v0 = evaluate_metric(m, *pop, r, {});
        const double v1 = evaluate_metric(m, *spop, sr, {});
        EXPECT_NEAR(v1, v0, std::abs(v0) * 1e-9 + 1e-15) << to_string(m);
      }
      const double d0 = evaluate_metric(MetricName::DTD, *pop, r, {});
      const double d1 = evaluate_metric(MetricName::DTD, *spop, sr, {});
      EXPECT_NEAR(d1 * a, d0, std::abs(d0) * 1e-9 + 1e-15);
    }
  }
}

TEST(MetricInvariants, ExposureFamilyMonotoneUnderConcordantCrossSwap) {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + rng() % 10;
    const std::size_t c1 = 1 + rng() % (n - 1);
    std::vector<double> rel(n);
    for (double& x : rel) x = (static_cast<double>(rng() % 1000) + 1.0) / 1000.0;
    PopulationPtr pop = make_population_ptr({n, static_cast<double>(c1) / static_cast<double>(n),
                                             RelevanceMode::Explicit, rel});
    Ranking r = sample_ranking(CandidateSet::full(pop), rng());
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        if (r.at(i).group != Group::NonProtected || r.at(j).group != Group::Protected) continue;
        if (!(r.at(i).relevance <= r.at(j).relevance)) continue;
        Ranking s = swap(r, i, j);
        for (MetricName m : {MetricName::ED, MetricName::ER, MetricName::DTD,
                             MetricName::DTR, MetricName::DID, MetricName::DIR}) {
          EXPECT_GT(evaluate_metric(m, *pop, s, {}), evaluate_metric(m, *pop, r, {}))
              << to_string(m);
        }
      }
    }
  }
}

TEST(MetricInvariants, IntraGroupSwapMovesImpactOnly) {
  auto pop = std::make_shared<const Population>(std::vector<Candidate>{
      {"p0", Group::Protected, 0.2},
      {"p1", Group::Protected, 0.9},
      {"n0", Group::NonProtected, 0.5},
      {"n1", Group::NonProtected, 0.7},
  });
  Ranking r = ranking_of(pop, {"p0", "n0", "p1", "n1"});
  Ranking s = swap(r, 1, 3);  // concordant swap inside the protected group
  for (MetricName m : {MetricName::DID, MetricName::DIR}) {
    EXPECT_GT(evaluate_metric(m, *pop, s, {}), evaluate_metric(m, *pop, r, {}))
        << to_string(m);
  }
  for (MetricName m : {MetricName::DTD, MetricName::DTR}) {
    EXPECT_EQ(evaluate_metric(m, *pop, s, {}), evaluate_metric(m, *pop, r, {}))
        << to_string(m);
  }
}

TEST(MetricInvariants, DtrEqualsErWithUniformRelevance) {
  PopulationPtr pop = make_population_ptr({6, 0.5, RelevanceMode::Uniform, {}});
  Ranking r = sample_ranking(CandidateSet::full(pop), 3);
  EXPECT_EQ(evaluate_metric(MetricName::DTR, *pop, r, {}),
            evaluate_metric(MetricName::ER, *pop, r, {}));
}

TEST(Cutoffs, ResolutionAndValidation) {
  EXPECT_EQ(Cutoffs::step(10).resolve(35), (std::vector<std::size_t>{10, 20, 30}));
  EXPECT_EQ(Cutoffs::every_rank().resolve(3), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(Cutoffs::explicit_list({2, 5}).resolve(6), (std::vector<std::size_t>{2, 5}));
  EXPECT_THROW(Cutoffs::explicit_list({2, 5}).resolve(4), PositionError);
  EXPECT_THROW(Cutoffs::step(10).resolve(5), NormalizationError);
  EXPECT_THROW(Cutoffs::explicit_list({}), NormalizationError);
  EXPECT_THROW(Cutoffs::explicit_list({3, 3}), NormalizationError);
}

}  // namespace
}  // namespace fairrank
