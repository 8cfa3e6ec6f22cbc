#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plurality/weights.hpp"

namespace plurality {

// Alternatives are labelled 0 .. k-1.
using Alternative = int;
using ProfileIndex = std::uint64_t;

// Largest dense truth table we are willing to build.
inline constexpr ProfileIndex kMaxTableSize = 10'000'000;

// Returns k^n, or throws TooLarge if it exceeds `limit`.
ProfileIndex profile_count(int k, int n, ProfileIndex limit = kMaxTableSize);

// A vote for each of the n voters. Voter i (0-based) is the digit of weight
// k^i in the little-endian mixed-radix index.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Alternative> entries) : entries_(std::move(entries)) {}

  static Profile decode(int k, int n, ProfileIndex index);
  // Throws InvalidProfile if any entry is outside [k].
  ProfileIndex encode(int k) const;

  std::size_t size() const { return entries_.size(); }
  Alternative operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Alternative> entries() const { return entries_; }

  friend auto operator<=>(const Profile&, const Profile&) = default;

 private:
  std::vector<Alternative> entries_;
};

// Calls fn(index, digits) for every profile in [k]^n in index order.
template <class Fn>
void for_each_profile(int k, int n, Fn&& fn) {
  const ProfileIndex total = profile_count(k, n);
  std::vector<Alternative> digits(static_cast<std::size_t>(n), 0);
  for (ProfileIndex index = 0; index < total; ++index) {
    fn(index, std::span<const Alternative>(digits));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
  }
}

// A bijection on [k]; perm[a] is the image of a.
using Permutation = std::vector<Alternative>;

// Throws InvalidPermutation unless `sigma` is a bijection on [k].
void check_permutation(const Permutation& sigma, int k);
Permutation inverse(const Permutation& sigma);
// (outer o inner)(a) = outer[inner[a]].
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation identity_permutation(int k);
Permutation transposition(int k, Alternative a, Alternative b);
// a -> a+1 mod k.
Permutation cycle_permutation(int k);
// All k! permutations in lexicographic order.
std::vector<Permutation> all_permutations(int k);

struct NeutralityViolation {
  Permutation sigma;
  Profile profile;  // f(sigma(x)) != sigma(f(x)) at this x
};

struct NeutralityResult {
  bool neutral = true;
  std::optional<NeutralityViolation> counterexample;
  explicit operator bool() const { return neutral; }
};

// Dense truth table for f: [k]^n -> [k].
class SocialChoiceFunction {
 public:
  // Throws InvalidProfile if the table has the wrong length or an entry
  // outside [k].
  SocialChoiceFunction(int k, int n, std::vector<Alternative> table);

  int k() const { return k_; }
  int n() const { return n_; }
  std::span<const Alternative> table() const { return table_; }

  Alternative at(ProfileIndex index) const { return table_[index]; }
  Alternative evaluate(const Profile& x) const;
  Alternative evaluate(std::span<const Alternative> x) const;

  // Indices x with f(x) = a, ascending.
  std::vector<ProfileIndex> preimage(Alternative a) const;

  friend bool operator==(const SocialChoiceFunction&, const SocialChoiceFunction&) = default;

 private:
  int k_;
  int n_;
  std::vector<Alternative> table_;
};

// g(x) = sigma(f(sigma^{-1}(x))).
SocialChoiceFunction permute_alternatives(const SocialChoiceFunction& f, const Permutation& sigma);

// Checks f(sigma(x)) = sigma(f(x)) for the transposition (0 1) and the full
// cycle, which generate the symmetric group.
NeutralityResult is_neutral(const SocialChoiceFunction& f);

// Same check over every one of the k! permutations. Test oracle.
NeutralityResult is_neutral_exhaustive(const SocialChoiceFunction& f);

class TieBreakRule {
 public:
  enum class Kind { FirstMatchingVoter, FixedWinner };

  static TieBreakRule first_matching_voter() { return TieBreakRule(Kind::FirstMatchingVoter, 0); }
  static TieBreakRule fixed_winner(Alternative a) { return TieBreakRule(Kind::FixedWinner, a); }

  Kind kind() const { return kind_; }
  // Only meaningful for FixedWinner.
  Alternative winner() const { return winner_; }

 private:
  TieBreakRule(Kind kind, Alternative winner) : kind_(kind), winner_(winner) {}
  Kind kind_;
  Alternative winner_;
};

// Evaluates a weighted plurality rule directly, without a table. Weights are
// rescaled to integers over their common denominator so comparisons are
// exact.
class WeightedPluralityRule {
 public:
  // Throws InvalidWeights if w.size() != n, InvalidProfile if the fixed
  // winner is outside [k].
  WeightedPluralityRule(int k, const WeightVector& w, TieBreakRule tie_break);

  int k() const { return k_; }
  int n() const { return static_cast<int>(scaled_.size()); }

  // Precondition: x.size() == n(), entries in [k]. `scratch` must have k slots.
  Alternative operator()(std::span<const Alternative> x, std::span<Integer> scratch) const;
  Alternative operator()(std::span<const Alternative> x) const;

 private:
  int k_;
  std::vector<Integer> scaled_;
  TieBreakRule tie_break_;
};

// Same rule with machine-integer weights for Monte Carlo loops. Throws
// TooLarge if the scaled weights do not fit comfortably in 64 bits.
class FastPluralityRule {
 public:
  FastPluralityRule(int k, const WeightVector& w, TieBreakRule tie_break);

  int k() const { return k_; }
  int n() const { return static_cast<int>(scaled_.size()); }

  // `scratch` must have k slots.
  Alternative operator()(std::span<const Alternative> x, std::span<std::int64_t> scratch) const;

 private:
  int k_;
  std::vector<std::int64_t> scaled_;
  TieBreakRule tie_break_;
};

SocialChoiceFunction build_weighted_plurality(int k, int n, const WeightVector& w,
                                              TieBreakRule tie_break);

// Unweighted plurality with first-matching-voter tie-breaks.
SocialChoiceFunction unweighted_plurality(int k, int n);
SocialChoiceFunction dictator(int k, int n, int voter);
SocialChoiceFunction constant_function(int k, int n, Alternative value);
// f(x) = x_1 xor ... xor x_n on {0,1}^n.
SocialChoiceFunction parity(int n);

// One uniformly random admissible value per orbit of x -> sigma(x), extended
// by neutrality. Throws TooLarge unless k <= 4 and k^n <= 10^6.
SocialChoiceFunction random_neutral_function(int k, int n, std::uint64_t seed);

}  // namespace plurality
