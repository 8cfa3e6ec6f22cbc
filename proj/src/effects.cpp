#include "plurality/effects.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "plurality/decide.hpp"
#include "plurality/errors.hpp"

namespace plurality {

JointLaw joint_law(const SocialChoiceFunction& f, const Distribution& p) {
  if (f.k() != p.k() || f.n() != p.n())
    throw InvalidProfile("function is on [" + std::to_string(f.k()) + "]^" + std::to_string(f.n()) +
                         " but the distribution is on [" + std::to_string(p.k()) + "]^" + std::to_string(p.n()));
  p.enumeration_size();
  const auto k = static_cast<std::size_t>(f.k());
  const auto n = static_cast<std::size_t>(f.n());
  JointLaw law{f.k(), f.n(), std::vector<Rational>(k, Rational(0)),
               std::vector<std::vector<Rational>>(n, std::vector<Rational>(k, Rational(0))),
               std::vector<std::vector<Rational>>(n, std::vector<Rational>(k, Rational(0)))};
  p.for_each_atom([&](ProfileIndex index, std::span<const Alternative> x, const Rational& mass) {
    const auto chosen = static_cast<std::size_t>(f.at(index));
    law.outcome[chosen] += mass;
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = static_cast<std::size_t>(x[i]);
      if (!p.is_product()) law.vote[i][v] += mass;
      if (v == chosen) law.vote_and_outcome[i][v] += mass;
    }
  });
  if (const auto* prod = p.as_product()) law.vote = prod->marginals();
  return law;
}

std::vector<Rational> exact_effects(const JointLaw& law) {
  std::vector<Rational> effects(static_cast<std::size_t>(law.n), Rational(0));
  for (std::size_t i = 0; i < effects.size(); ++i) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(law.k); ++j) {
      const Rational& on = law.vote[i][j];
      const Rational off = 1 - on;
      if (sgn(on) == 0 || sgn(off) == 0) continue;
      const Rational& both = law.vote_and_outcome[i][j];
      effects[i] += both / on - (law.outcome[j] - both) / off;
    }
  }
  return effects;
}

namespace {

// counts[c * k + d] = #{X_i = c, f = d} for one voter.
using PairCounts = std::vector<std::uint64_t>;

EffectEstimate estimate_from_counts(const PairCounts& counts, int k, std::uint64_t total) {
  const auto kk = static_cast<std::size_t>(k);
  const double s = static_cast<double>(total);
  std::vector<double> votes(kk, 0), outcomes(kk, 0);
  for (std::size_t c = 0; c < kk; ++c)
    for (std::size_t d = 0; d < kk; ++d) {
      votes[c] += static_cast<double>(counts[c * kk + d]);
      outcomes[d] += static_cast<double>(counts[c * kk + d]);
    }
  std::vector<bool> valid(kk);
  std::vector<double> on(kk), off(kk), share(kk);
  EffectEstimate out;
  for (std::size_t j = 0; j < kk; ++j) {
    valid[j] = votes[j] > 0 && votes[j] < s;
    if (!valid[j]) continue;
    const double both = static_cast<double>(counts[j * kk + j]);
    on[j] = both / votes[j];
    off[j] = (outcomes[j] - both) / (s - votes[j]);
    share[j] = votes[j] / s;
    out.estimate += on[j] - off[j];
  }
  // Delta method: the estimator is a smooth function of cell frequencies;
  // psi(c, d) is its influence at a sample with X_i = c, f = d.
  double variance = 0;
  for (std::size_t c = 0; c < kk; ++c)
    for (std::size_t d = 0; d < kk; ++d) {
      const auto cell = counts[c * kk + d];
      if (cell == 0) continue;
      double psi = 0;
      for (std::size_t j = 0; j < kk; ++j) {
        if (!valid[j]) continue;
        const double hit = d == j ? 1.0 : 0.0;
        if (c == j)
          psi += (hit - on[j]) / share[j];
        else
          psi -= (hit - off[j]) / (1 - share[j]);
      }
      variance += static_cast<double>(cell) / s * psi * psi;
    }
  out.standard_error = std::sqrt(variance / s);
  return out;
}

std::vector<PairCounts> count_stream(const Sampler& sampler, int k, const RuleFunction& rule,
                                     std::span<const int> voters, std::uint64_t samples, std::uint64_t seed,
                                     unsigned stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  const auto kk = static_cast<std::size_t>(k);
  std::vector<PairCounts> counts(voters.size(), PairCounts(kk * kk, 0));
  std::vector<Alternative> x(static_cast<std::size_t>(sampler.n()));
  for (std::uint64_t s = 0; s < samples; ++s) {
    sampler.sample(rng, x);
    const auto d = static_cast<std::size_t>(rule(x));
    for (std::size_t v = 0; v < voters.size(); ++v)
      ++counts[v][static_cast<std::size_t>(x[static_cast<std::size_t>(voters[v])]) * kk + d];
  }
  return counts;
}

RuleFunction table_rule(const SocialChoiceFunction& f) {
  std::vector<ProfileIndex> powers(static_cast<std::size_t>(f.n()));
  ProfileIndex p = 1;
  for (auto& pw : powers) {
    pw = p;
    p *= static_cast<ProfileIndex>(f.k());
  }
  return [&f, powers](std::span<const Alternative> x) {
    ProfileIndex index = 0;
    for (std::size_t i = 0; i < x.size(); ++i) index += static_cast<ProfileIndex>(x[i]) * powers[i];
    return f.at(index);
  };
}

}  // namespace

std::vector<EffectEstimate> monte_carlo_effects(const Distribution& p, int k, const RuleFunction& rule,
                                                std::span<const int> voters, std::uint64_t samples,
                                                std::uint64_t seed, unsigned streams) {
  if (samples == 0) throw InvalidArgument("Monte Carlo needs at least one sample");
  if (k != p.k()) throw InvalidProfile("rule and distribution disagree on k");
  for (int v : voters)
    if (v < 0 || v >= p.n()) throw IndexError("voter " + std::to_string(v) + " out of range");
  streams = std::max(1u, streams);
  const Sampler sampler(p);

  std::vector<std::vector<PairCounts>> partial(streams);
  auto run = [&](unsigned s) {
    const std::uint64_t share = samples / streams + (s < samples % streams ? 1 : 0);
    partial[s] = count_stream(sampler, k, rule, voters, share, seed, s);
  };
  if (streams == 1) {
    run(0);
  } else {
    std::vector<std::thread> workers;
    for (unsigned s = 0; s < streams; ++s) workers.emplace_back(run, s);
    for (auto& w : workers) w.join();
  }

  std::vector<EffectEstimate> out;
  for (std::size_t v = 0; v < voters.size(); ++v) {
    PairCounts merged(partial[0][v].size(), 0);
    for (const auto& stream : partial)
      for (std::size_t c = 0; c < merged.size(); ++c) merged[c] += stream[v][c];
    out.push_back(estimate_from_counts(merged, k, samples));
  }
  return out;
}

EffectVector effect_vector(const SocialChoiceFunction& f, const Distribution& p, const EffectMethod& method) {
  EffectVector out{method, {}, {}, {}};
  if (method.kind == EffectMethod::Kind::Exact) {
    out.exact = exact_effects(joint_law(f, p));
    return out;
  }
  if (f.k() != p.k() || f.n() != p.n()) throw InvalidProfile("function and distribution dimensions differ");
  std::vector<int> voters(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.n(); ++i) voters[static_cast<std::size_t>(i)] = i;
  for (const auto& e : monte_carlo_effects(p, f.k(), table_rule(f), voters, method.samples, method.seed,
                                           method.streams)) {
    out.estimate.push_back(e.estimate);
    out.standard_error.push_back(e.standard_error);
  }
  return out;
}

bool CovarianceSum::all_nonnegative() const {
  for (const auto& row : by_pair)
    for (const auto& c : row)
      if (sgn(c) < 0) return false;
  return true;
}

CovarianceSum covariance_sum(const JointLaw& law, const WeightVector& w) {
  if (static_cast<int>(w.size()) != law.n) throw InvalidWeights("weight count differs from n");
  CovarianceSum out{Rational(0), {}};
  for (std::size_t i = 0; i < static_cast<std::size_t>(law.n); ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < static_cast<std::size_t>(law.k); ++j) {
      row.push_back(law.vote_and_outcome[i][j] - law.outcome[j] * law.vote[i][j]);
      out.total += w[i] * row.back();
    }
    out.by_pair.push_back(std::move(row));
  }
  return out;
}

CovarianceSum covariance_sum(const SocialChoiceFunction& f, const Distribution& p, const WeightVector& w) {
  return covariance_sum(joint_law(f, p), w);
}

bool AggregationReport::all_applicable_hold() const {
  if (vacuous()) return true;
  if (!chain_holds) return false;
  return !covariances_nonnegative || effect_bound_holds;
}

AggregationReport aggregation_report(const SocialChoiceFunction& f, const WeightVector& w, const Distribution& p,
                                     std::vector<Alternative> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.empty() || static_cast<int>(set.size()) >= f.k())
    throw InvalidArgument("the set A must be a nonempty proper subset of the alternatives");
  for (Alternative a : set)
    if (a < 0 || a >= f.k()) throw InvalidArgument("alternative " + std::to_string(a) + " outside [k]");
  if (static_cast<int>(w.size()) != f.n() || !verify_weights(f, w))
    throw NotAWeightedPlurality("the weights do not make f a weighted plurality");

  std::vector<bool> in_set(static_cast<std::size_t>(f.k()), false);
  for (Alternative a : set) in_set[static_cast<std::size_t>(a)] = true;

  const auto expected = expected_weights(p, w);
  std::optional<Rational> min_in, max_out;
  for (std::size_t j = 0; j < expected.values.size(); ++j) {
    const Rational& v = expected.values[j];
    if (in_set[j]) {
      if (!min_in || v < *min_in) min_in = v;
    } else if (!max_out || v > *max_out) {
      max_out = v;
    }
  }

  const JointLaw law = joint_law(f, p);
  AggregationReport report;
  report.set = std::move(set);
  report.delta = *min_in - *max_out;
  report.p_not_in_set = 0;
  for (std::size_t j = 0; j < law.outcome.size(); ++j)
    if (!in_set[j]) report.p_not_in_set += law.outcome[j];
  const auto cov = covariance_sum(law, w);
  report.covariance_sum = cov.total;
  report.covariances_nonnegative = cov.all_nonnegative();
  report.effects = exact_effects(law);
  report.effect_bound = 0;
  for (std::size_t i = 0; i < report.effects.size(); ++i) report.effect_bound += w[i] * report.effects[i];
  report.effect_bound /= 4;

  report.chain_holds = report.delta * report.p_not_in_set <= report.covariance_sum;
  if (!report.vacuous()) {
    report.effect_bound_holds = report.p_not_in_set * report.delta <= report.effect_bound;
    if (!report.chain_holds)
      throw SolverInconsistency("delta * P(f not in A) exceeds the covariance sum for a weighted plurality");
  }
  return report;
}

std::vector<Rational> family_row(const ScalingExperiment& config) {
  const auto k = static_cast<std::size_t>(config.k);
  if (config.k < 2) throw InvalidArgument("k must be at least 2");
  if (config.family == ScalingExperiment::Family::Uniform)
    return std::vector<Rational>(k, Rational(1, static_cast<unsigned long>(k)));
  if (sgn(config.delta) < 0 || config.delta > 1) throw InvalidArgument("bias delta must lie in [0, 1]");
  const Rational base(1, static_cast<unsigned long>(k));
  std::vector<Rational> row(k, base - config.delta / static_cast<unsigned long>(k));
  row[0] = base + config.delta * static_cast<unsigned long>(k - 1) / static_cast<unsigned long>(k);
  return row;
}

std::vector<ScalingPoint> effect_scaling_experiment(const ScalingExperiment& config) {
  const auto row = family_row(config);
  if (!std::is_sorted(config.n_values.begin(), config.n_values.end()))
    throw InvalidArgument("n values must be ascending");
  std::vector<ScalingPoint> out;
  for (int n : config.n_values) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    const Distribution p = ProductDistribution::iid(row, n);
    const FastPluralityRule rule(config.k, WeightVector::uniform(static_cast<std::size_t>(n)), config.tie_break);
    const RuleFunction evaluate = [&rule, k = config.k](std::span<const Alternative> x) {
      thread_local std::vector<std::int64_t> scratch;
      scratch.resize(static_cast<std::size_t>(k));
      return rule(x, scratch);
    };
    const int voter = 0;
    const auto e = monte_carlo_effects(p, config.k, evaluate, std::span<const int>(&voter, 1), config.samples,
                                       config.seed + static_cast<std::uint64_t>(n));
    out.push_back({n, e[0].estimate, e[0].standard_error});
  }
  return out;
}

}  // namespace plurality
