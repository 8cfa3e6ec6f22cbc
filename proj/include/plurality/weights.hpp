#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "plurality/rational.hpp"

namespace plurality {

// Nonnegative voter weights summing to exactly 1.
class WeightVector {
 public:
  // Throws InvalidWeights unless every entry is >= 0 and the sum is 1.
  explicit WeightVector(std::vector<Rational> entries);

  static WeightVector uniform(std::size_t n);
  // Scales nonnegative raw weights (not all zero) to sum 1.
  static WeightVector normalized(std::vector<Rational> raw);
  // Unit vector on voter `voter` (0-based).
  static WeightVector dictator(std::size_t n, std::size_t voter);

  std::size_t size() const { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Rational> entries() const { return entries_; }
  // Entries times the lcm of their denominators.
  std::vector<Integer> scaled_to_integers() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Rational> entries_;
};

}  // namespace plurality
