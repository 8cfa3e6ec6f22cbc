#include "plurality/dist.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "plurality/errors.hpp"

namespace plurality {

ProductDistribution::ProductDistribution(std::vector<std::vector<Rational>> marginals)
    : marginals_(std::move(marginals)) {
  if (marginals_.empty()) throw InvalidDistribution("product distribution has no voters");
  const std::size_t k = marginals_.front().size();
  if (k < 2) throw InvalidDistribution("product distribution needs k >= 2");
  for (std::size_t i = 0; i < marginals_.size(); ++i) {
    const auto& row = marginals_[i];
    if (row.size() != k)
      throw InvalidDistribution("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(k));
    Rational sum = 0;
    for (const auto& p : row) {
      if (sgn(p) < 0 || p > 1) throw InvalidDistribution("row " + std::to_string(i + 1) + " has an entry outside [0,1]");
      sum += p;
    }
    if (sum != 1) throw InvalidDistribution("row " + std::to_string(i + 1) + " sums to " + to_string(sum));
  }
}

ProductDistribution ProductDistribution::uniform(int k, int n) {
  return iid(std::vector<Rational>(static_cast<std::size_t>(k), Rational(1, static_cast<unsigned long>(k))), n);
}

ProductDistribution ProductDistribution::iid(std::vector<Rational> row, int n) {
  if (n < 1) throw InvalidDistribution("n must be at least 1");
  return ProductDistribution(std::vector<std::vector<Rational>>(static_cast<std::size_t>(n), row));
}

ExplicitDistribution::ExplicitDistribution(int k, int n, std::map<ProfileIndex, Rational> support)
    : k_(k), n_(n), support_(std::move(support)) {
  const ProfileIndex total = profile_count(k, n, std::numeric_limits<ProfileIndex>::max() / 64);
  if (support_.empty()) throw InvalidDistribution("explicit distribution has empty support");
  Rational sum = 0;
  for (const auto& [index, mass] : support_) {
    if (index >= total) throw InvalidDistribution("support profile index out of range");
    if (sgn(mass) <= 0) throw InvalidDistribution("support masses must be positive");
    sum += mass;
  }
  if (sum != 1) throw InvalidDistribution("support masses sum to " + to_string(sum));
}

ExplicitDistribution ExplicitDistribution::point_mass(int k, const Profile& x) {
  return ExplicitDistribution(k, static_cast<int>(x.size()), {{x.encode(k), Rational(1)}});
}

ExplicitDistribution ExplicitDistribution::uniform_over(int k, const std::vector<Profile>& profiles) {
  if (profiles.empty()) throw InvalidDistribution("no profiles given");
  std::map<ProfileIndex, Rational> support;
  const Rational mass(1, static_cast<unsigned long>(profiles.size()));
  for (const auto& x : profiles) {
    if (x.size() != profiles.front().size()) throw InvalidProfile("profiles differ in length");
    if (!support.emplace(x.encode(k), mass).second) throw InvalidDistribution("duplicate profile");
  }
  return ExplicitDistribution(k, static_cast<int>(profiles.front().size()), std::move(support));
}

int Distribution::k() const {
  return std::visit([](const auto& d) { return d.k(); }, impl_);
}

int Distribution::n() const {
  return std::visit([](const auto& d) { return d.n(); }, impl_);
}

Rational Distribution::marginal(int voter, Alternative j) const {
  if (voter < 0 || voter >= n()) throw IndexError("voter " + std::to_string(voter) + " out of range");
  if (j < 0 || j >= k()) throw IndexError("alternative " + std::to_string(j) + " out of range");
  if (const auto* prod = as_product())
    return prod->marginals()[static_cast<std::size_t>(voter)][static_cast<std::size_t>(j)];
  const auto* ex = as_explicit();
  ProfileIndex stride = 1;
  for (int i = 0; i < voter; ++i) stride *= static_cast<ProfileIndex>(ex->k());
  Rational total = 0;
  for (const auto& [index, mass] : ex->support())
    if (static_cast<Alternative>((index / stride) % static_cast<ProfileIndex>(ex->k())) == j) total += mass;
  return total;
}

Rational Distribution::probability_of(const Profile& x) const {
  if (static_cast<int>(x.size()) != n())
    throw InvalidProfile("profile has " + std::to_string(x.size()) + " votes, expected " + std::to_string(n()));
  const ProfileIndex index = x.encode(k());
  if (const auto* prod = as_product()) {
    Rational p = 1;
    for (std::size_t i = 0; i < x.size(); ++i) p *= prod->marginals()[i][static_cast<std::size_t>(x[i])];
    return p;
  }
  const auto& support = as_explicit()->support();
  const auto it = support.find(index);
  return it == support.end() ? Rational(0) : it->second;
}

std::uint64_t Distribution::enumeration_size(std::uint64_t limit) const {
  if (is_product()) return profile_count(k(), n(), limit);
  return as_explicit()->support().size();
}

ExpectedWeights expected_weights(const Distribution& p, const WeightVector& w) {
  if (static_cast<int>(w.size()) != p.n())
    throw InvalidWeights("expected " + std::to_string(p.n()) + " weights, got " + std::to_string(w.size()));
  ExpectedWeights out{std::vector<Rational>(static_cast<std::size_t>(p.k()), Rational(0))};
  if (const auto* prod = p.as_product()) {
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] += w[i] * prod->marginals()[i][j];
    return out;
  }
  // One pass over the support instead of n*k marginal scans.
  p.for_each_atom([&](ProfileIndex, std::span<const Alternative> x, const Rational& mass) {
    for (std::size_t i = 0; i < x.size(); ++i) out.values[static_cast<std::size_t>(x[i])] += w[i] * mass;
  });
  return out;
}

Sampler::Sampler(const Distribution& p) : k_(p.k()), n_(p.n()) {
  if (const auto* prod = p.as_product()) {
    for (const auto& row : prod->marginals()) {
      std::vector<double> cum;
      Rational acc = 0;
      for (const auto& v : row) {
        acc += v;
        cum.push_back(to_double(acc));
      }
      cum.back() = 1.0;
      rows_.push_back(std::move(cum));
    }
    return;
  }
  const auto* ex = p.as_explicit();
  Rational acc = 0;
  for (const auto& [index, mass] : ex->support()) {
    acc += mass;
    cumulative_.push_back(to_double(acc));
    atoms_.push_back(Profile::decode(k_, n_, index));
  }
  cumulative_.back() = 1.0;
}

void Sampler::sample(std::mt19937_64& rng, std::span<Alternative> out) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (!rows_.empty()) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double u = unit(rng);
      const auto& cum = rows_[i];
      std::size_t j = 0;
      while (j + 1 < cum.size() && u >= cum[j]) ++j;
      out[i] = static_cast<Alternative>(j);
    }
    return;
  }
  const double u = unit(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const auto& x = atoms_[static_cast<std::size_t>(it - cumulative_.begin())];
  std::copy(x.entries().begin(), x.entries().end(), out.begin());
}

Profile Sampler::sample(std::mt19937_64& rng) const {
  std::vector<Alternative> out(static_cast<std::size_t>(n_));
  sample(rng, out);
  return Profile(std::move(out));
}

}  // namespace plurality
