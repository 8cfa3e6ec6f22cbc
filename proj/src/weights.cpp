#include "plurality/weights.hpp"

#include <numeric>
#include <string>

#include "plurality/errors.hpp"

namespace plurality {

WeightVector::WeightVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidWeights("weight vector is empty");
  Rational sum = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (sgn(entries_[i]) < 0)
      throw InvalidWeights("weight " + std::to_string(i + 1) + " is negative");
    sum += entries_[i];
  }
  if (sum != 1) throw InvalidWeights("weights sum to " + to_string(sum) + ", not 1");
}

WeightVector WeightVector::uniform(std::size_t n) {
  return WeightVector(std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n))));
}

WeightVector WeightVector::normalized(std::vector<Rational> raw) {
  Rational sum = 0;
  for (const auto& r : raw) {
    if (sgn(r) < 0) throw InvalidWeights("raw weight is negative");
    sum += r;
  }
  if (sgn(sum) == 0) throw InvalidWeights("raw weights are all zero");
  for (auto& r : raw) r /= sum;
  return WeightVector(std::move(raw));
}

WeightVector WeightVector::dictator(std::size_t n, std::size_t voter) {
  if (voter >= n) throw InvalidWeights("dictator voter out of range");
  std::vector<Rational> w(n, Rational(0));
  w[voter] = 1;
  return WeightVector(std::move(w));
}

std::vector<Integer> WeightVector::scaled_to_integers() const {
  Integer lcm = 1;
  for (const auto& r : entries_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), r.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(entries_.size());
  for (const auto& r : entries_) out.push_back(r.get_num() * (lcm / r.get_den()));
  return out;
}

}  // namespace plurality
