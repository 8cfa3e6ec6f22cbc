#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "plurality/decide.hpp"
#include "plurality/effects.hpp"

using namespace plurality;

namespace {

// X_1 = ... = X_n, uniform over [k].
ExplicitDistribution all_equal(int k, int n) {
  std::vector<Profile> diag;
  for (int a = 0; a < k; ++a) diag.emplace_back(std::vector<Alternative>(static_cast<std::size_t>(n), a));
  return ExplicitDistribution::uniform_over(k, diag);
}

}  // namespace

TEST_CASE("effect_vector on the basic examples") {
  // f = dictator on voter 1 ignores voter 2 and 3.
  const auto d = dictator(3, 3, 0);
  std::mt19937_64 rng(6);
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < 3; ++i) rows.push_back(oracle::random_row(rng, 3, Rational(1, 10)));
  const auto ev = effect_vector(d, ProductDistribution(rows), EffectMethod::exact());
  CHECK(ev.exact[1] == 0);
  CHECK(ev.exact[2] == 0);

  // Identical voters: every alternative contributes 1 - 0, so e_i = k.
  for (int k = 2; k <= 4; ++k) {
    const auto e = effect_vector(unweighted_plurality(k, 3), all_equal(k, 3), EffectMethod::exact());
    for (const auto& v : e.exact) CHECK(v == k);
  }

  const auto id = effect_vector(dictator(2, 1, 0), ProductDistribution::uniform(2, 1), EffectMethod::exact());
  CHECK(id.exact == std::vector<Rational>{Rational(2)});

  // Frozen from the brute-force oracle: uniform k=3, n=3 plurality with
  // first-match ties gives (2, 1, 1); k=2 n=3 majority gives (1, 1, 1).
  CHECK(effect_vector(unweighted_plurality(3, 3), ProductDistribution::uniform(3, 3), EffectMethod::exact()).exact ==
        std::vector<Rational>{Rational(2), Rational(1), Rational(1)});
  CHECK(effect_vector(unweighted_plurality(2, 3), ProductDistribution::uniform(2, 3), EffectMethod::exact()).exact ==
        std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
}

TEST_CASE("zero-probability conditioning contributes nothing") {
  const auto e = effect_vector(unweighted_plurality(3, 3), ExplicitDistribution::point_mass(3, Profile({2, 2, 1})),
                               EffectMethod::exact());
  for (const auto& v : e.exact) CHECK(v == 0);
}

TEST_CASE("exact effects match the literal definition") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 2 + trial % 3;
    const int n = 1 + trial % 4;
    std::vector<Alternative> table(profile_count(k, n));
    for (auto& v : table) v = static_cast<Alternative>(rng() % static_cast<unsigned>(k));
    const SocialChoiceFunction f(k, n, table);
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(oracle::random_row(rng, k));
    if (trial % 5 == 0) rows[0] = std::vector<Rational>(static_cast<std::size_t>(k), Rational(0)), rows[0][0] = 1;
    CHECK(effect_vector(f, ProductDistribution(rows), EffectMethod::exact()).exact ==
          oracle::effects(f, oracle::product_atoms(rows)));

    std::map<ProfileIndex, Rational> raw;
    for (int s = 0; s < 6; ++s) raw[rng() % table.size()] += Rational(1 + static_cast<int>(rng() % 4));
    Rational total = 0;
    for (auto& [x, m] : raw) total += m;
    for (auto& [x, m] : raw) m /= total;
    const ExplicitDistribution ex(k, n, raw);
    CHECK(effect_vector(f, ex, EffectMethod::exact()).exact == oracle::effects(f, oracle::explicit_atoms(ex)));
  }
}

TEST_CASE("exact path guard") {
  const auto f = unweighted_plurality(2, 3);
  CHECK_THROWS_AS(effect_vector(f, ProductDistribution::uniform(2, 4), EffectMethod::exact()), InvalidProfile);
}

TEST_CASE("covariance_sum") {
  // Constant function: every covariance vanishes.
  const auto c = covariance_sum(constant_function(3, 2, 1), ProductDistribution::uniform(3, 2), WeightVector::uniform(2));
  CHECK(c.total == 0);

  for (int k = 2; k <= 4; ++k) {
    const auto w = WeightVector({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
    CHECK(covariance_sum(unweighted_plurality(k, 3), all_equal(k, 3), w).total == Rational(k - 1, k));
    const auto dict = covariance_sum(dictator(k, 3, 0), ProductDistribution::uniform(k, 3), WeightVector::dictator(3, 0));
    CHECK(dict.total == Rational(k - 1, k));
  }
  // Frozen: uniform k=3 n=3 plurality, uniform weights -> 8/27.
  CHECK(covariance_sum(unweighted_plurality(3, 3), ProductDistribution::uniform(3, 3), WeightVector::uniform(3)).total ==
        Rational(8, 27));
}

TEST_CASE("covariance sum equals the expectation form") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const int k = 2 + trial % 3;
    const int n = 2 + trial % 3;
    const auto w = oracle::random_weights(rng, n);
    const auto f = build_weighted_plurality(k, n, w, TieBreakRule::first_matching_voter());
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(oracle::random_row(rng, k));
    CHECK(covariance_sum(f, ProductDistribution(rows), w).total ==
          oracle::covariance_expectation(f, oracle::product_atoms(rows), {w.entries().begin(), w.entries().end()}));
  }
}

TEST_CASE("effect dominates four times the covariances when they are nonnegative") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 3;
    const int n = 2 + trial % 3;
    const auto w = oracle::random_weights(rng, n);
    const auto f = build_weighted_plurality(k, n, w, TieBreakRule::first_matching_voter());
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(oracle::random_row(rng, k));
    const JointLaw law = joint_law(f, ProductDistribution(rows));
    const auto effects = exact_effects(law);
    const auto cov = covariance_sum(law, w);
    for (int i = 0; i < n; ++i) {
      bool nonneg = true;
      Rational sum = 0;
      for (const auto& c : cov.by_pair[static_cast<std::size_t>(i)]) {
        nonneg = nonneg && sgn(c) >= 0;
        sum += c;
      }
      if (!nonneg) continue;
      CHECK(effects[static_cast<std::size_t>(i)] >= 4 * sum);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("zero-weight voter without ties has zero effect") {
  // Weights (1/2, 0, 1/3, 1/6) on k = 2: voter 1 alone decides against
  // voters 3 and 4, and no profile is tied, so voter 2 never matters.
  const auto w = WeightVector({Rational(1, 2), Rational(0), Rational(1, 3), Rational(1, 6)});
  const auto f = build_weighted_plurality(2, 4, w, TieBreakRule::first_matching_voter());
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < 4; ++i) rows.push_back(oracle::random_row(rng, 2, Rational(1, 10)));
    CHECK(effect_vector(f, ProductDistribution(rows), EffectMethod::exact()).exact[1] == 0);
  }
}

TEST_CASE("aggregation_report") {
  const auto pl = unweighted_plurality(3, 3);
  const auto w = WeightVector::uniform(3);

  const auto point = aggregation_report(pl, w, ExplicitDistribution::point_mass(3, Profile({1, 1, 1})), {1});
  CHECK(point.p_not_in_set == 0);
  CHECK(point.delta == 1);
  CHECK(point.all_applicable_hold());

  const auto flat = aggregation_report(pl, w, ProductDistribution::uniform(3, 3), {1});
  CHECK(flat.delta == 0);
  CHECK(flat.vacuous());
  CHECK(flat.all_applicable_hold());

  // Frozen from the brute-force oracle over all 27 profiles.
  const auto biased = aggregation_report(
      pl, w, ProductDistribution::iid({Rational(1, 2), Rational(1, 4), Rational(1, 4)}, 3), {0});
  CHECK(biased.delta == Rational(1, 4));
  CHECK(biased.p_not_in_set == Rational(7, 16));
  CHECK(biased.covariance_sum == Rational(17, 64));
  CHECK(biased.effects == std::vector<Rational>{Rational(15, 8), Rational(23, 24), Rational(23, 24)});
  CHECK(biased.effect_bound == Rational(91, 288));
  CHECK(biased.chain_holds);
  CHECK(biased.delta * biased.p_not_in_set <= biased.covariance_sum);

  CHECK_THROWS_AS(aggregation_report(parity(3), WeightVector::uniform(3), ProductDistribution::uniform(2, 3), {1}),
                  NotAWeightedPlurality);
  CHECK_THROWS_AS(aggregation_report(pl, w, ProductDistribution::uniform(3, 3), {}), InvalidArgument);
  CHECK_THROWS_AS(aggregation_report(pl, w, ProductDistribution::uniform(3, 3), {0, 1, 2}), InvalidArgument);
}

TEST_CASE("Monte Carlo effects agree with exact values") {
  std::mt19937_64 rng(55);
  int within = 0, total = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const int k = 2 + trial % 2;
    const int n = 3;
    const auto f = build_weighted_plurality(k, n, oracle::random_weights(rng, n), TieBreakRule::first_matching_voter());
    std::vector<std::vector<Rational>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(oracle::random_row(rng, k, Rational(1, 20)));
    const Distribution p = ProductDistribution(rows);
    const auto exact = effect_vector(f, p, EffectMethod::exact());
    const auto mc = effect_vector(f, p, EffectMethod::monte_carlo(50'000, 1000 + trial));
    for (int i = 0; i < n; ++i) {
      ++total;
      const double diff = std::abs(mc.estimate[static_cast<std::size_t>(i)] - to_double(exact.exact[static_cast<std::size_t>(i)]));
      if (diff <= 4 * mc.standard_error[static_cast<std::size_t>(i)] + 1e-12) ++within;
    }
  }
  CHECK(within >= 0.95 * total);
}

TEST_CASE("Monte Carlo is deterministic per seed and stream count") {
  const auto f = unweighted_plurality(3, 3);
  const Distribution p = ProductDistribution::uniform(3, 3);
  const auto a = effect_vector(f, p, EffectMethod::monte_carlo(20'000, 9));
  const auto b = effect_vector(f, p, EffectMethod::monte_carlo(20'000, 9));
  CHECK(a.estimate == b.estimate);
  const auto c = effect_vector(f, p, EffectMethod::monte_carlo(20'000, 9, 3));
  const auto d = effect_vector(f, p, EffectMethod::monte_carlo(20'000, 9, 3));
  CHECK(c.estimate == d.estimate);
  CHECK(std::abs(c.estimate[0] - 2.0) < 6 * c.standard_error[0]);
}

TEST_CASE("scaling experiment at n = 1 is exact") {
  ScalingExperiment config;
  config.k = 2;
  config.n_values = {1};
  config.samples = 1000;
  config.seed = 3;
  for (auto family : {ScalingExperiment::Family::Uniform, ScalingExperiment::Family::Biased}) {
    config.family = family;
    config.delta = Rational(3, 10);
    const auto points = effect_scaling_experiment(config);
    REQUIRE(points.size() == 1);
    CHECK(points[0].estimate == 2.0);
    CHECK(points[0].standard_error == 0.0);
  }
}

TEST_CASE("biased family row") {
  ScalingExperiment config;
  config.k = 3;
  config.family = ScalingExperiment::Family::Biased;
  config.delta = Rational(3, 10);
  const auto row = family_row(config);
  CHECK(row == std::vector<Rational>{Rational(8, 15), Rational(7, 30), Rational(7, 30)});
  CHECK(row[0] - row[1] == config.delta);
  config.delta = 2;
  CHECK_THROWS_AS(family_row(config), InvalidArgument);
}
