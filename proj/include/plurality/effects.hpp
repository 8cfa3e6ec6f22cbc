#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "plurality/dist.hpp"
#include "plurality/rational.hpp"
#include "plurality/scf.hpp"
#include "plurality/weights.hpp"

namespace plurality {

struct EffectMethod {
  enum class Kind { Exact, MonteCarlo };
  Kind kind = Kind::Exact;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  // Independent seeded streams merged by summation. Results depend on the
  // number of streams, not on scheduling.
  unsigned streams = 1;

  static EffectMethod exact() { return {}; }
  static EffectMethod monte_carlo(std::uint64_t samples, std::uint64_t seed, unsigned streams = 1) {
    return {Kind::MonteCarlo, samples, seed, streams};
  }
};

// e_i(f, P) for every voter. Exactly one of `exact` / (`estimate`,
// `standard_error`) is filled, according to `method.kind`.
struct EffectVector {
  EffectMethod method;
  std::vector<Rational> exact;
  std::vector<double> estimate;
  std::vector<double> standard_error;

  std::size_t size() const { return method.kind == EffectMethod::Kind::Exact ? exact.size() : estimate.size(); }
};

// Joint law of (X_i, f(X)) summarized by the quantities every exact
// computation here needs.
struct JointLaw {
  int k = 0;
  int n = 0;
  std::vector<Rational> outcome;                      // P(f = j)
  std::vector<std::vector<Rational>> vote;            // P(X_i = j)
  std::vector<std::vector<Rational>> vote_and_outcome;  // P(X_i = j, f = j)
};

// Enumerates the support (k^n profiles for a product measure). Throws
// TooLarge past the enumeration guard, InvalidProfile on dimension mismatch.
JointLaw joint_law(const SocialChoiceFunction& f, const Distribution& p);

// Sum over j of P(f=j | X_i=j) - P(f=j | X_i!=j); a term whose conditioning
// event has probability zero contributes zero.
std::vector<Rational> exact_effects(const JointLaw& law);

EffectVector effect_vector(const SocialChoiceFunction& f, const Distribution& p, const EffectMethod& method);

struct CovarianceSum {
  Rational total;                              // sum_{i,j} w_i Cov(1{f=j}, 1{X_i=j})
  std::vector<std::vector<Rational>> by_pair;  // Cov(1{f=j}, 1{X_i=j}), n x k
  bool all_nonnegative() const;
};

CovarianceSum covariance_sum(const JointLaw& law, const WeightVector& w);
CovarianceSum covariance_sum(const SocialChoiceFunction& f, const Distribution& p, const WeightVector& w);

struct AggregationReport {
  std::vector<Alternative> set;  // A, sorted
  Rational delta;                // min_{a in A} E W_a - max_{b not in A} E W_b
  Rational p_not_in_set;         // P(f(X) not in A)
  Rational covariance_sum;
  Rational effect_bound;  // (1/4) sum_i w_i e_i
  std::vector<Rational> effects;
  bool covariances_nonnegative = false;
  // delta * P(f not in A) <= covariance_sum; meaningful when delta > 0.
  bool chain_holds = false;
  // P(f not in A) <= effect_bound / delta; meaningful when delta > 0.
  bool effect_bound_holds = false;

  bool vacuous() const { return sgn(delta) <= 0; }
  // Every flag that applies holds: the chain when delta > 0, the effect bound
  // when additionally all covariances are nonnegative.
  bool all_applicable_hold() const;
};

// Throws NotAWeightedPlurality unless verify_weights(f, w), InvalidArgument
// unless A is a nonempty proper subset of [k], and SolverInconsistency if
// delta > 0 but the covariance chain fails.
AggregationReport aggregation_report(const SocialChoiceFunction& f, const WeightVector& w, const Distribution& p,
                                     std::vector<Alternative> set);

// Monte Carlo effect of the listed voters under a rule evaluated on the fly.
// `rule(x)` returns the winner for votes x.
using RuleFunction = std::function<Alternative(std::span<const Alternative>)>;

struct EffectEstimate {
  double estimate = 0;
  double standard_error = 0;
};

// Counts of (X_i, f(X)) over `samples` draws, converted to estimates with
// delta-method standard errors.
std::vector<EffectEstimate> monte_carlo_effects(const Distribution& p, int k, const RuleFunction& rule,
                                                std::span<const int> voters, std::uint64_t samples,
                                                std::uint64_t seed, unsigned streams = 1);

struct ScalingExperiment {
  enum class Family { Uniform, Biased };
  int k = 3;
  Family family = Family::Uniform;
  // Biased family: alternative 0 has probability 1/k + delta (k-1)/k and the
  // others 1/k - delta/k, a gap of exactly delta.
  Rational delta = 0;
  std::vector<int> n_values;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  TieBreakRule tie_break = TieBreakRule::first_matching_voter();
};

struct ScalingPoint {
  int n;
  double estimate;
  double standard_error;
};

// Unweighted plurality under iid voters; estimates e_1 at each n.
std::vector<ScalingPoint> effect_scaling_experiment(const ScalingExperiment& config);

// The iid row used by a scaling experiment family.
std::vector<Rational> family_row(const ScalingExperiment& config);

}  // namespace plurality
