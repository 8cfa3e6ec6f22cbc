#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "plurality/rational.hpp"
#include "plurality/scf.hpp"
#include "plurality/weights.hpp"

namespace plurality {

// Independent voters: marginals[i][j] = P(X_i = j).
class ProductDistribution {
 public:
  // Throws InvalidDistribution unless every row has k >= 2 entries in [0,1]
  // summing to exactly 1.
  explicit ProductDistribution(std::vector<std::vector<Rational>> marginals);

  static ProductDistribution uniform(int k, int n);
  // Every voter draws from the same row.
  static ProductDistribution iid(std::vector<Rational> row, int n);

  int k() const { return static_cast<int>(marginals_.front().size()); }
  int n() const { return static_cast<int>(marginals_.size()); }
  const std::vector<std::vector<Rational>>& marginals() const { return marginals_; }

 private:
  std::vector<std::vector<Rational>> marginals_;
};

// Finitely supported measure, keyed by profile index.
class ExplicitDistribution {
 public:
  // Throws InvalidDistribution unless all masses are positive and sum to 1.
  ExplicitDistribution(int k, int n, std::map<ProfileIndex, Rational> support);

  static ExplicitDistribution point_mass(int k, const Profile& x);
  // Uniform over the given (distinct) profiles.
  static ExplicitDistribution uniform_over(int k, const std::vector<Profile>& profiles);

  int k() const { return k_; }
  int n() const { return n_; }
  const std::map<ProfileIndex, Rational>& support() const { return support_; }

  friend bool operator==(const ExplicitDistribution&, const ExplicitDistribution&) = default;

 private:
  int k_;
  int n_;
  std::map<ProfileIndex, Rational> support_;
};

class Distribution {
 public:
  Distribution(ProductDistribution p) : impl_(std::move(p)) {}    // NOLINT(google-explicit-constructor)
  Distribution(ExplicitDistribution p) : impl_(std::move(p)) {}   // NOLINT(google-explicit-constructor)

  int k() const;
  int n() const;
  bool is_product() const { return std::holds_alternative<ProductDistribution>(impl_); }
  const ProductDistribution* as_product() const { return std::get_if<ProductDistribution>(&impl_); }
  const ExplicitDistribution* as_explicit() const { return std::get_if<ExplicitDistribution>(&impl_); }

  // P(X_i = j) with 0-based voter i. Throws IndexError out of range.
  Rational marginal(int voter, Alternative j) const;
  // Throws InvalidProfile on dimension mismatch.
  Rational probability_of(const Profile& x) const;

  // Number of atoms an exact enumeration would visit: k^n for products
  // (throws TooLarge beyond `limit`), the support size otherwise.
  std::uint64_t enumeration_size(std::uint64_t limit = kMaxTableSize) const;

  // Calls fn(index, votes, probability) for every profile of positive mass.
  template <class Fn>
  void for_each_atom(Fn&& fn, std::uint64_t limit = kMaxTableSize) const;

 private:
  std::variant<ProductDistribution, ExplicitDistribution> impl_;
};

// values[j] = sum_i w_i P(X_i = j).
struct ExpectedWeights {
  std::vector<Rational> values;
};

ExpectedWeights expected_weights(const Distribution& p, const WeightVector& w);

// Draws profiles from a distribution using double-precision cumulative
// tables built once at construction. Never feeds exact verdicts.
class Sampler {
 public:
  explicit Sampler(const Distribution& p);

  int n() const { return n_; }
  // Writes one profile into `out` (size n).
  void sample(std::mt19937_64& rng, std::span<Alternative> out) const;
  Profile sample(std::mt19937_64& rng) const;

 private:
  int k_;
  int n_;
  // Product path: per-voter cumulative rows. Explicit path: cumulative mass
  // over `atoms_`.
  std::vector<std::vector<double>> rows_;
  std::vector<double> cumulative_;
  std::vector<Profile> atoms_;
};

template <class Fn>
void Distribution::for_each_atom(Fn&& fn, std::uint64_t limit) const {
  if (const auto* prod = as_product()) {
    const auto& m = prod->marginals();
    const int kk = prod->k();
    const int nn = prod->n();
    profile_count(kk, nn, limit);
    // prefix[i] = prod_{v >= i} P(X_v = x_v). Voter 0 is the fastest digit,
    // so only prefix[0..dirty_from] change between consecutive profiles.
    std::vector<Rational> prefix(static_cast<std::size_t>(nn) + 1);
    prefix[static_cast<std::size_t>(nn)] = 1;
    int dirty_from = nn - 1;
    for_each_profile(kk, nn, [&](ProfileIndex index, std::span<const Alternative> x) {
      for (int i = dirty_from; i >= 0; --i)
        prefix[static_cast<std::size_t>(i)] =
            prefix[static_cast<std::size_t>(i) + 1] * m[static_cast<std::size_t>(i)][static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
      // The next index carries through every leading digit equal to k-1.
      dirty_from = 0;
      while (dirty_from < nn && x[static_cast<std::size_t>(dirty_from)] == kk - 1) ++dirty_from;
      if (dirty_from == nn) dirty_from = nn - 1;
      if (sgn(prefix[0]) != 0) fn(index, x, prefix[0]);
    });
  } else {
    const auto* ex = as_explicit();
    for (const auto& [index, mass] : ex->support()) {
      const Profile x = Profile::decode(ex->k(), ex->n(), index);
      fn(index, x.entries(), mass);
    }
  }
}

}  // namespace plurality
