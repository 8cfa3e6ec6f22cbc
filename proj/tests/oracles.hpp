#pragma once

// Brute-force reference implementations used only by tests. They work from
// the definitions, enumerate profiles with Profile::decode, and share no code
// paths with the library routines they check.

#include <random>
#include <utility>
#include <vector>

#include "plurality/dist.hpp"
#include "plurality/scf.hpp"
#include "plurality/weights.hpp"

namespace plurality::oracle {

using Atoms = std::vector<std::pair<Profile, Rational>>;

inline Atoms product_atoms(const std::vector<std::vector<Rational>>& rows) {
  const int n = static_cast<int>(rows.size());
  const int k = static_cast<int>(rows.front().size());
  ProfileIndex total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<ProfileIndex>(k);
  Atoms atoms;
  for (ProfileIndex x = 0; x < total; ++x) {
    Profile p = Profile::decode(k, n, x);
    Rational mass = 1;
    for (int i = 0; i < n; ++i) mass *= rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
    atoms.emplace_back(std::move(p), mass);
  }
  return atoms;
}

inline Atoms explicit_atoms(const ExplicitDistribution& d) {
  Atoms atoms;
  for (const auto& [x, mass] : d.support()) atoms.emplace_back(Profile::decode(d.k(), d.n(), x), mass);
  return atoms;
}

// The effect definition evaluated literally: conditional probabilities from joint sums.
inline std::vector<Rational> effects(const SocialChoiceFunction& f, const Atoms& atoms) {
  std::vector<Rational> out;
  for (int i = 0; i < f.n(); ++i) {
    Rational e = 0;
    for (int j = 0; j < f.k(); ++j) {
      Rational on = 0, on_hit = 0, off_hit = 0;
      for (const auto& [x, p] : atoms) {
        const bool voted = x[static_cast<std::size_t>(i)] == j;
        const bool won = f.evaluate(x) == j;
        if (voted) on += p;
        if (voted && won) on_hit += p;
        if (!voted && won) off_hit += p;
      }
      const Rational off = 1 - on;
      if (on == 0 || off == 0) continue;
      e += on_hit / on - off_hit / off;
    }
    out.push_back(e);
  }
  return out;
}

// E sum_i w_i sum_j 1{f=j} (1{X_i=j} - p_ij), the left side of the
// covariance identity, by direct expectation.
inline Rational covariance_expectation(const SocialChoiceFunction& f, const Atoms& atoms,
                                       const std::vector<Rational>& w) {
  std::vector<std::vector<Rational>> marg(static_cast<std::size_t>(f.n()),
                                          std::vector<Rational>(static_cast<std::size_t>(f.k()), Rational(0)));
  for (const auto& [x, p] : atoms)
    for (int i = 0; i < f.n(); ++i) marg[static_cast<std::size_t>(i)][static_cast<std::size_t>(x[static_cast<std::size_t>(i)])] += p;
  Rational total = 0;
  for (const auto& [x, p] : atoms) {
    const Alternative won = f.evaluate(x);
    for (int i = 0; i < f.n(); ++i) {
      const Rational ind = x[static_cast<std::size_t>(i)] == won ? 1 : 0;
      total += p * w[static_cast<std::size_t>(i)] * (ind - marg[static_cast<std::size_t>(i)][static_cast<std::size_t>(won)]);
    }
  }
  return total;
}

// The weighted plurality condition checked with rational sums over every profile and every b.
inline bool is_weighted_plurality_with(const SocialChoiceFunction& f, const std::vector<Rational>& w) {
  for (ProfileIndex xi = 0; xi < f.table().size(); ++xi) {
    const Profile x = Profile::decode(f.k(), f.n(), xi);
    const Alternative a = f.at(xi);
    for (int b = 0; b < f.k(); ++b) {
      Rational wa = 0, wb = 0;
      for (int i = 0; i < f.n(); ++i) {
        if (x[static_cast<std::size_t>(i)] == a) wa += w[static_cast<std::size_t>(i)];
        if (x[static_cast<std::size_t>(i)] == b) wb += w[static_cast<std::size_t>(i)];
      }
      if (wa < wb) return false;
    }
  }
  return true;
}

// Random probability row with every entry >= floor.
inline std::vector<Rational> random_row(std::mt19937_64& rng, int k, Rational floor = 0) {
  std::vector<Rational> raw;
  Rational sum = 0;
  std::uniform_int_distribution<int> pick(1, 9);
  for (int j = 0; j < k; ++j) {
    raw.emplace_back(pick(rng));
    sum += raw.back();
  }
  const Rational scale = 1 - floor * k;
  for (auto& r : raw) r = floor + scale * r / sum;
  return raw;
}

inline WeightVector random_weights(std::mt19937_64& rng, int n) {
  std::vector<Rational> raw;
  std::uniform_int_distribution<int> pick(0, 6);
  for (int i = 0; i < n; ++i) raw.emplace_back(pick(rng));
  raw[0] += 1;
  return WeightVector::normalized(std::move(raw));
}

}  // namespace plurality::oracle
