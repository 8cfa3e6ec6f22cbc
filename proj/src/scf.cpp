#include "plurality/scf.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "plurality/errors.hpp"

namespace plurality {

ProfileIndex profile_count(int k, int n, ProfileIndex limit) {
  if (k < 2) throw InvalidProfile("k must be at least 2");
  if (n < 1) throw InvalidProfile("n must be at least 1");
  ProfileIndex total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > limit / static_cast<ProfileIndex>(k))
      throw TooLarge(std::to_string(k) + "^" + std::to_string(n) + " profiles exceeds the limit of " +
                     std::to_string(limit));
    total *= static_cast<ProfileIndex>(k);
  }
  return total;
}

Profile Profile::decode(int k, int n, ProfileIndex index) {
  std::vector<Alternative> entries(static_cast<std::size_t>(n));
  for (auto& e : entries) {
    e = static_cast<Alternative>(index % static_cast<ProfileIndex>(k));
    index /= static_cast<ProfileIndex>(k);
  }
  if (index != 0) throw InvalidProfile("profile index out of range");
  return Profile(std::move(entries));
}

ProfileIndex Profile::encode(int k) const {
  ProfileIndex index = 0;
  for (std::size_t i = entries_.size(); i-- > 0;) {
    if (entries_[i] < 0 || entries_[i] >= k)
      throw InvalidProfile("vote " + std::to_string(entries_[i]) + " outside [" + std::to_string(k) + "]");
    index = index * static_cast<ProfileIndex>(k) + static_cast<ProfileIndex>(entries_[i]);
  }
  return index;
}

void check_permutation(const Permutation& sigma, int k) {
  if (static_cast<int>(sigma.size()) != k)
    throw InvalidPermutation("permutation has " + std::to_string(sigma.size()) + " entries, expected " +
                             std::to_string(k));
  std::vector<bool> seen(static_cast<std::size_t>(k), false);
  for (Alternative a : sigma) {
    if (a < 0 || a >= k || seen[static_cast<std::size_t>(a)])
      throw InvalidPermutation("not a bijection on [" + std::to_string(k) + "]");
    seen[static_cast<std::size_t>(a)] = true;
  }
}

Permutation inverse(const Permutation& sigma) {
  Permutation inv(sigma.size());
  for (std::size_t a = 0; a < sigma.size(); ++a) inv[static_cast<std::size_t>(sigma[a])] = static_cast<Alternative>(a);
  return inv;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (std::size_t a = 0; a < inner.size(); ++a) out[a] = outer[static_cast<std::size_t>(inner[a])];
  return out;
}

Permutation identity_permutation(int k) {
  Permutation p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation transposition(int k, Alternative a, Alternative b) {
  Permutation p = identity_permutation(k);
  std::swap(p.at(static_cast<std::size_t>(a)), p.at(static_cast<std::size_t>(b)));
  return p;
}

Permutation cycle_permutation(int k) {
  Permutation p(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) p[static_cast<std::size_t>(a)] = (a + 1) % k;
  return p;
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(k);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

SocialChoiceFunction::SocialChoiceFunction(int k, int n, std::vector<Alternative> table)
    : k_(k), n_(n), table_(std::move(table)) {
  const ProfileIndex expected = profile_count(k, n);
  if (table_.size() != expected)
    throw InvalidProfile("truth table has " + std::to_string(table_.size()) + " entries, expected " +
                         std::to_string(expected));
  for (Alternative a : table_)
    if (a < 0 || a >= k) throw InvalidProfile("table value " + std::to_string(a) + " outside [k]");
}

Alternative SocialChoiceFunction::evaluate(const Profile& x) const { return evaluate(x.entries()); }

Alternative SocialChoiceFunction::evaluate(std::span<const Alternative> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw InvalidProfile("profile has " + std::to_string(x.size()) + " votes, expected " + std::to_string(n_));
  return table_[Profile(std::vector<Alternative>(x.begin(), x.end())).encode(k_)];
}

std::vector<ProfileIndex> SocialChoiceFunction::preimage(Alternative a) const {
  std::vector<ProfileIndex> out;
  for (ProfileIndex x = 0; x < table_.size(); ++x)
    if (table_[x] == a) out.push_back(x);
  return out;
}

namespace {

// Index of sigma(x) for every x, in one pass over the table.
std::vector<ProfileIndex> permuted_indices(int k, int n, const Permutation& sigma) {
  std::vector<ProfileIndex> powers(static_cast<std::size_t>(n));
  ProfileIndex p = 1;
  for (auto& pw : powers) {
    pw = p;
    p *= static_cast<ProfileIndex>(k);
  }
  std::vector<ProfileIndex> out(p);
  ProfileIndex image = 0;
  for_each_profile(k, n, [&](ProfileIndex index, std::span<const Alternative> x) {
    image = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      image += static_cast<ProfileIndex>(sigma[static_cast<std::size_t>(x[i])]) * powers[i];
    out[index] = image;
  });
  return out;
}

std::optional<ProfileIndex> first_violation(const SocialChoiceFunction& f, const Permutation& sigma) {
  const auto image = permuted_indices(f.k(), f.n(), sigma);
  for (ProfileIndex x = 0; x < image.size(); ++x)
    if (f.at(image[x]) != sigma[static_cast<std::size_t>(f.at(x))]) return x;
  return std::nullopt;
}

NeutralityResult check_against(const SocialChoiceFunction& f, const std::vector<Permutation>& perms) {
  for (const auto& sigma : perms) {
    if (auto x = first_violation(f, sigma))
      return {false, NeutralityViolation{sigma, Profile::decode(f.k(), f.n(), *x)}};
  }
  return {};
}

}  // namespace

SocialChoiceFunction permute_alternatives(const SocialChoiceFunction& f, const Permutation& sigma) {
  check_permutation(sigma, f.k());
  // g(sigma(x)) = sigma(f(x)).
  const auto image = permuted_indices(f.k(), f.n(), sigma);
  std::vector<Alternative> table(f.table().size());
  for (ProfileIndex x = 0; x < image.size(); ++x)
    table[image[x]] = sigma[static_cast<std::size_t>(f.at(x))];
  return SocialChoiceFunction(f.k(), f.n(), std::move(table));
}

NeutralityResult is_neutral(const SocialChoiceFunction& f) {
  std::vector<Permutation> generators{transposition(f.k(), 0, 1)};
  if (f.k() > 2) generators.push_back(cycle_permutation(f.k()));
  return check_against(f, generators);
}

NeutralityResult is_neutral_exhaustive(const SocialChoiceFunction& f) {
  return check_against(f, all_permutations(f.k()));
}

namespace {

// Shared tie-break logic over any totals type.
template <class Totals>
Alternative pick_winner(std::span<const Alternative> x, const Totals& totals, int k, const TieBreakRule& tb) {
  auto best = totals[0];
  int tied = 0;
  for (int a = 1; a < k; ++a)
    if (totals[static_cast<std::size_t>(a)] > best) best = totals[static_cast<std::size_t>(a)];
  Alternative only = 0;
  for (int a = 0; a < k; ++a)
    if (totals[static_cast<std::size_t>(a)] == best) {
      ++tied;
      only = a;
    }
  if (tied == 1) return only;
  if (tb.kind() == TieBreakRule::Kind::FixedWinner && totals[static_cast<std::size_t>(tb.winner())] == best)
    return tb.winner();
  // First voter whose vote is among the tied maximizers. Exists because the
  // maximum total is positive.
  for (Alternative v : x)
    if (totals[static_cast<std::size_t>(v)] == best) return v;
  return only;
}

}  // namespace

WeightedPluralityRule::WeightedPluralityRule(int k, const WeightVector& w, TieBreakRule tie_break)
    : k_(k), scaled_(w.scaled_to_integers()), tie_break_(tie_break) {
  if (k < 2) throw InvalidProfile("k must be at least 2");
  if (tie_break.kind() == TieBreakRule::Kind::FixedWinner && (tie_break.winner() < 0 || tie_break.winner() >= k))
    throw InvalidProfile("fixed tie-break winner outside [k]");
}

Alternative WeightedPluralityRule::operator()(std::span<const Alternative> x, std::span<Integer> scratch) const {
  for (auto& s : scratch) s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) scratch[static_cast<std::size_t>(x[i])] += scaled_[i];
  return pick_winner(x, scratch, k_, tie_break_);
}

Alternative WeightedPluralityRule::operator()(std::span<const Alternative> x) const {
  std::vector<Integer> scratch(static_cast<std::size_t>(k_));
  return (*this)(x, scratch);
}

FastPluralityRule::FastPluralityRule(int k, const WeightVector& w, TieBreakRule tie_break)
    : k_(k), tie_break_(tie_break) {
  WeightedPluralityRule validate(k, w, tie_break);
  (void)validate;
  const auto big = w.scaled_to_integers();
  Integer total = 0;
  for (const auto& v : big) total += v;
  if (total > Integer(std::numeric_limits<std::int64_t>::max() / 2))
    throw TooLarge("weight denominators too large for the fast evaluator");
  for (const auto& v : big) scaled_.push_back(v.get_si());
}

Alternative FastPluralityRule::operator()(std::span<const Alternative> x, std::span<std::int64_t> scratch) const {
  for (auto& s : scratch) s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) scratch[static_cast<std::size_t>(x[i])] += scaled_[i];
  return pick_winner(x, scratch, k_, tie_break_);
}

SocialChoiceFunction build_weighted_plurality(int k, int n, const WeightVector& w, TieBreakRule tie_break) {
  if (static_cast<int>(w.size()) != n)
    throw InvalidWeights("expected " + std::to_string(n) + " weights, got " + std::to_string(w.size()));
  const WeightedPluralityRule rule(k, w, tie_break);
  std::vector<Alternative> table(profile_count(k, n));
  std::vector<Integer> scratch(static_cast<std::size_t>(k));
  for_each_profile(k, n, [&](ProfileIndex index, std::span<const Alternative> x) { table[index] = rule(x, scratch); });
  return SocialChoiceFunction(k, n, std::move(table));
}

SocialChoiceFunction unweighted_plurality(int k, int n) {
  return build_weighted_plurality(k, n, WeightVector::uniform(static_cast<std::size_t>(n)),
                                  TieBreakRule::first_matching_voter());
}

SocialChoiceFunction dictator(int k, int n, int voter) {
  if (voter < 0 || voter >= n) throw IndexError("dictator voter out of range");
  std::vector<Alternative> table(profile_count(k, n));
  for_each_profile(k, n, [&](ProfileIndex index, std::span<const Alternative> x) {
    table[index] = x[static_cast<std::size_t>(voter)];
  });
  return SocialChoiceFunction(k, n, std::move(table));
}

SocialChoiceFunction constant_function(int k, int n, Alternative value) {
  return SocialChoiceFunction(k, n, std::vector<Alternative>(profile_count(k, n), value));
}

SocialChoiceFunction parity(int n) {
  std::vector<Alternative> table(profile_count(2, n));
  for (ProfileIndex x = 0; x < table.size(); ++x) table[x] = std::popcount(x) % 2;
  return SocialChoiceFunction(2, n, std::move(table));
}

SocialChoiceFunction random_neutral_function(int k, int n, std::uint64_t seed) {
  if (k > 4) throw TooLarge("random neutral functions need k <= 4");
  const ProfileIndex total = profile_count(k, n, 1'000'000);
  const auto perms = all_permutations(k);
  std::vector<std::vector<ProfileIndex>> images;
  images.reserve(perms.size());
  for (const auto& sigma : perms) images.push_back(permuted_indices(k, n, sigma));

  std::mt19937_64 rng(seed);
  std::vector<Alternative> table(total, -1);
  std::vector<Alternative> admissible;
  for (ProfileIndex x = 0; x < total; ++x) {
    if (table[x] >= 0) continue;
    // A value v is admissible iff every sigma fixing x fixes v: v is one of
    // x's votes, or the single alternative x does not use.
    const Profile px = Profile::decode(k, n, x);
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (Alternative a : px.entries()) used[static_cast<std::size_t>(a)] = true;
    admissible.clear();
    for (int a = 0; a < k; ++a)
      if (used[static_cast<std::size_t>(a)]) admissible.push_back(a);
    if (static_cast<int>(admissible.size()) == k - 1)
      for (int a = 0; a < k; ++a)
        if (!used[static_cast<std::size_t>(a)]) admissible.push_back(a);
    std::uniform_int_distribution<std::size_t> pick(0, admissible.size() - 1);
    const Alternative v = admissible[pick(rng)];
    for (std::size_t s = 0; s < perms.size(); ++s) table[images[s][x]] = perms[s][static_cast<std::size_t>(v)];
  }
  return SocialChoiceFunction(k, n, std::move(table));
}

}  // namespace plurality
