#pragma once

#include <optional>
#include <span>
#include <vector>

#include "plurality/dist.hpp"
#include "plurality/errors.hpp"
#include "plurality/lp.hpp"
#include "plurality/scf.hpp"
#include "plurality/weights.hpp"

namespace plurality {

// An ordered pair (a, b): constraints say "when f picks `winner`, it carries
// at least as much weight as `challenger`".
struct LabelPair {
  Alternative winner;
  Alternative challenger;
  friend bool operator==(const LabelPair&, const LabelPair&) = default;
};

// (1,2) for k >= 3, (1,0) for k = 2.
LabelPair canonical_labels(int k);
std::vector<LabelPair> all_label_pairs(int k);

enum class DecisionMode { Neutral, General };

class NotNeutral : public Error {
 public:
  NotNeutral(const std::string& what, NeutralityViolation violation)
      : Error(what), violation_(std::move(violation)) {}
  const NeutralityViolation& violation() const { return violation_; }

 private:
  NeutralityViolation violation_;
};

// The weighted-plurality LP:
//   maximize t+ - t-
//   sum_i w_i = 1
//   for each pair (a,b) and x with f(x) = a:
//     sum_{x_i=a} w_i - sum_{x_i=b} w_i - g_x - (t+ - t-) = 0
// Row 0 is the normalization; row r >= 1 belongs to rows[r-1].
struct PrimalProgram {
  struct Row {
    LabelPair labels;
    ProfileIndex profile;
  };
  StandardFormLP lp;
  std::size_t t_plus = 0;
  std::size_t t_minus = 0;
  std::vector<std::size_t> weight_variables;
  std::vector<Row> rows;
};

// The dual, minimize a+ - a-, in standard form as
//   maximize -(a+ - a-)
//   sum u_x = 1                                   (u_x = -q_x >= 0)
//   for each voter i:
//     (a+ - a-) - sum u_x (1{x_i=a} - 1{x_i=b}) - s_i = 0
// so that value() = a* is the optimum of the minimization.
struct DualProgram {
  StandardFormLP lp;
  std::vector<PrimalProgram::Row> columns;  // label pair and profile of each u variable
  std::vector<std::size_t> mass_variables;
  Rational value(const LPSolution& sol) const { return -sol.objective; }
};

// Throws DegenerateFunction if no pair contributes a constraint, i.e.
// f^{-1}(a) is empty for every listed winner.
PrimalProgram build_primal(const SocialChoiceFunction& f, std::span<const LabelPair> pairs);
PrimalProgram build_primal(const SocialChoiceFunction& f, LabelPair labels);
DualProgram build_dual(const SocialChoiceFunction& f, std::span<const LabelPair> pairs);
DualProgram build_dual(const SocialChoiceFunction& f, LabelPair labels);

// A distribution over (profile, challenger) pairs such that for every voter,
// P(x_i = f(x)) < P(x_i = challenger). Produced by general mode when no
// single label pair admits a witness.
struct ChallengeWitness {
  struct Entry {
    ProfileIndex profile;
    Alternative challenger;
    Rational mass;
  };
  int k = 0;
  int n = 0;
  std::vector<Entry> entries;
};

enum class Verdict { IsWeightedPlurality, NotWeightedPlurality };

struct DecisionOutcome {
  Verdict verdict = Verdict::NotWeightedPlurality;
  DecisionMode mode = DecisionMode::Neutral;
  Rational optimum;  // t* = a*
  // The pair used by the LP (neutral mode) or by the witness (general mode);
  // empty when the general-mode LP over all pairs settled the verdict.
  std::optional<LabelPair> labels;
  std::optional<WeightVector> weights;
  std::optional<ExplicitDistribution> witness;
  std::optional<ChallengeWitness> challenge;
};

// Neutral mode: one LP on `labels` (default canonical_labels), throws
// NotNeutral for non-neutral f. General mode: one LP over all ordered pairs;
// `labels` must be empty. Every returned certificate has passed its exact
// verifier; a failed check throws SolverInconsistency.
DecisionOutcome decide(const SocialChoiceFunction& f, DecisionMode mode,
                       std::optional<LabelPair> labels = std::nullopt);

// p_x = q_x / sum q over the preimage of labels.winner. `q[r]` is the
// multiplier of the r-th profile in f.preimage(labels.winner).
ExplicitDistribution extract_witness(std::span<const Rational> q, const SocialChoiceFunction& f,
                                     LabelPair labels);

// For every x and b: sum_{x_i = f(x)} w_i >= sum_{x_i = b} w_i.
bool verify_weights(const SocialChoiceFunction& f, const WeightVector& w);

// f(x) = winner on the whole support, and P(X_i = challenger) >
// P(X_i = winner) for every voter.
bool verify_witness(const SocialChoiceFunction& f, const ExplicitDistribution& p, LabelPair labels);

bool verify_challenge_witness(const SocialChoiceFunction& f, const ChallengeWitness& w);

}  // namespace plurality
