#include "plurality/decide.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace plurality {

LabelPair canonical_labels(int k) { return k >= 3 ? LabelPair{1, 2} : LabelPair{1, 0}; }

std::vector<LabelPair> all_label_pairs(int k) {
  std::vector<LabelPair> pairs;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      if (a != b) pairs.push_back({a, b});
  return pairs;
}

namespace {

void check_labels(const SocialChoiceFunction& f, LabelPair labels) {
  if (labels.winner < 0 || labels.winner >= f.k() || labels.challenger < 0 || labels.challenger >= f.k())
    throw InvalidArgument("label outside [k]");
  if (labels.winner == labels.challenger) throw InvalidArgument("label pair must name two distinct alternatives");
}

// +1 if x_i is the winner label, -1 if the challenger, else 0.
int label_sign(Alternative vote, LabelPair labels) {
  if (vote == labels.winner) return 1;
  if (vote == labels.challenger) return -1;
  return 0;
}

std::string profile_name(ProfileIndex x) { return "x" + std::to_string(x); }

std::string pair_name(LabelPair p) { return std::to_string(p.winner) + ">" + std::to_string(p.challenger); }

}  // namespace

PrimalProgram build_primal(const SocialChoiceFunction& f, std::span<const LabelPair> pairs) {
  PrimalProgram prog;
  auto& lp = prog.lp;
  prog.t_plus = lp.add_variable("t+", 1);
  prog.t_minus = lp.add_variable("t-", -1);
  for (int i = 0; i < f.n(); ++i) prog.weight_variables.push_back(lp.add_variable("w" + std::to_string(i + 1)));

  std::vector<StandardFormLP::Term> normalization;
  for (std::size_t v : prog.weight_variables) normalization.push_back({v, Rational(1)});
  lp.add_constraint(std::move(normalization), 1, "sum_w");

  for (const LabelPair& labels : pairs) {
    check_labels(f, labels);
    const bool tagged = pairs.size() > 1;
    for (ProfileIndex x : f.preimage(labels.winner)) {
      const Profile votes = Profile::decode(f.k(), f.n(), x);
      const std::string suffix = tagged ? profile_name(x) + "@" + pair_name(labels) : profile_name(x);
      const std::size_t slack = lp.add_variable("g_" + suffix);
      std::vector<StandardFormLP::Term> terms;
      for (int i = 0; i < f.n(); ++i) {
        const int s = label_sign(votes[static_cast<std::size_t>(i)], labels);
        if (s != 0) terms.push_back({prog.weight_variables[static_cast<std::size_t>(i)], Rational(s)});
      }
      terms.push_back({slack, Rational(-1)});
      terms.push_back({prog.t_plus, Rational(-1)});
      terms.push_back({prog.t_minus, Rational(1)});
      lp.add_constraint(std::move(terms), 0, suffix);
      prog.rows.push_back({labels, x});
    }
  }
  if (prog.rows.empty()) throw DegenerateFunction("f never selects any winner label; the LP has no constraints");
  return prog;
}

PrimalProgram build_primal(const SocialChoiceFunction& f, LabelPair labels) {
  return build_primal(f, std::span<const LabelPair>(&labels, 1));
}

DualProgram build_dual(const SocialChoiceFunction& f, std::span<const LabelPair> pairs) {
  DualProgram prog;
  auto& lp = prog.lp;
  const std::size_t a_plus = lp.add_variable("a+", -1);
  const std::size_t a_minus = lp.add_variable("a-", 1);

  std::vector<std::vector<StandardFormLP::Term>> voter_rows(static_cast<std::size_t>(f.n()));
  for (auto& row : voter_rows) {
    row.push_back({a_plus, Rational(1)});
    row.push_back({a_minus, Rational(-1)});
  }
  std::vector<StandardFormLP::Term> mass;
  for (const LabelPair& labels : pairs) {
    check_labels(f, labels);
    const bool tagged = pairs.size() > 1;
    for (ProfileIndex x : f.preimage(labels.winner)) {
      const Profile votes = Profile::decode(f.k(), f.n(), x);
      const std::string suffix = tagged ? profile_name(x) + "@" + pair_name(labels) : profile_name(x);
      const std::size_t u = lp.add_variable("u_" + suffix);
      prog.mass_variables.push_back(u);
      prog.columns.push_back({labels, x});
      mass.push_back({u, Rational(1)});
      for (int i = 0; i < f.n(); ++i) {
        const int s = label_sign(votes[static_cast<std::size_t>(i)], labels);
        if (s != 0) voter_rows[static_cast<std::size_t>(i)].push_back({u, Rational(-s)});
      }
    }
  }
  if (prog.columns.empty()) throw DegenerateFunction("f never selects any winner label; the LP has no constraints");

  // Both the t+ and t- columns of the primal constrain sum q, so the mass
  // row is an equality.
  lp.add_constraint(std::move(mass), 1, "mass");
  for (int i = 0; i < f.n(); ++i) {
    const std::size_t s = lp.add_variable("s" + std::to_string(i + 1));
    auto& row = voter_rows[static_cast<std::size_t>(i)];
    row.push_back({s, Rational(-1)});
    lp.add_constraint(std::move(row), 0, "voter" + std::to_string(i + 1));
  }
  return prog;
}

DualProgram build_dual(const SocialChoiceFunction& f, LabelPair labels) {
  return build_dual(f, std::span<const LabelPair>(&labels, 1));
}

ExplicitDistribution extract_witness(std::span<const Rational> q, const SocialChoiceFunction& f,
                                     LabelPair labels) {
  const auto preimage = f.preimage(labels.winner);
  if (q.size() != preimage.size())
    throw SolverInconsistency("dual vector has " + std::to_string(q.size()) + " entries, preimage has " +
                              std::to_string(preimage.size()));
  Rational total = 0;
  for (const auto& v : q) {
    if (sgn(v) > 0) throw SolverInconsistency("dual multiplier q_x is positive");
    total += v;
  }
  if (sgn(total) >= 0) throw SolverInconsistency("dual multipliers do not normalize (sum q >= 0)");
  std::map<ProfileIndex, Rational> support;
  for (std::size_t r = 0; r < q.size(); ++r)
    if (sgn(q[r]) != 0) support.emplace(preimage[r], q[r] / total);
  return ExplicitDistribution(f.k(), f.n(), std::move(support));
}

bool verify_weights(const SocialChoiceFunction& f, const WeightVector& w) {
  if (static_cast<int>(w.size()) != f.n()) return false;
  const auto scaled = w.scaled_to_integers();
  std::vector<Integer> totals(static_cast<std::size_t>(f.k()));
  bool ok = true;
  for_each_profile(f.k(), f.n(), [&](ProfileIndex index, std::span<const Alternative> x) {
    if (!ok) return;
    for (auto& t : totals) t = 0;
    for (std::size_t i = 0; i < x.size(); ++i) totals[static_cast<std::size_t>(x[i])] += scaled[i];
    const Integer& chosen = totals[static_cast<std::size_t>(f.at(index))];
    for (const auto& t : totals)
      if (t > chosen) {
        ok = false;
        return;
      }
  });
  return ok;
}

bool verify_witness(const SocialChoiceFunction& f, const ExplicitDistribution& p, LabelPair labels) {
  if (p.k() != f.k() || p.n() != f.n()) return false;
  if (labels.winner == labels.challenger) return false;
  for (const auto& [x, mass] : p.support())
    if (f.at(x) != labels.winner) return false;
  const Distribution dist(p);
  for (int i = 0; i < f.n(); ++i)
    if (!(dist.marginal(i, labels.challenger) > dist.marginal(i, labels.winner))) return false;
  return true;
}

bool verify_challenge_witness(const SocialChoiceFunction& f, const ChallengeWitness& w) {
  if (w.k != f.k() || w.n != f.n() || w.entries.empty()) return false;
  Rational total = 0;
  // sum over entries of mass * (1{x_i = f(x)} - 1{x_i = challenger}), per voter.
  std::vector<Rational> gap(static_cast<std::size_t>(f.n()), Rational(0));
  for (const auto& e : w.entries) {
    if (sgn(e.mass) <= 0 || e.profile >= f.table().size()) return false;
    const Alternative chosen = f.at(e.profile);
    if (e.challenger < 0 || e.challenger >= f.k() || e.challenger == chosen) return false;
    total += e.mass;
    const Profile x = Profile::decode(f.k(), f.n(), e.profile);
    for (int i = 0; i < f.n(); ++i) {
      const Alternative v = x[static_cast<std::size_t>(i)];
      if (v == chosen) gap[static_cast<std::size_t>(i)] += e.mass;
      if (v == e.challenger) gap[static_cast<std::size_t>(i)] -= e.mass;
    }
  }
  if (total != 1) return false;
  return std::all_of(gap.begin(), gap.end(), [](const Rational& g) { return sgn(g) < 0; });
}

namespace {

struct SolvedPrimal {
  PrimalProgram program;
  LPSolution solution;
};

SolvedPrimal solve_primal(const SocialChoiceFunction& f, std::span<const LabelPair> pairs) {
  SolvedPrimal out{build_primal(f, pairs), {}};
  out.solution = solve(out.program.lp);
  // Feasible (t free, g absorbs slack) and bounded (t <= 1) by construction.
  if (out.solution.status != LPStatus::Optimal)
    throw SolverInconsistency(std::string("weighted-plurality LP reported ") + to_string(out.solution.status));
  return out;
}

WeightVector weights_from(const SolvedPrimal& s) {
  std::vector<Rational> w;
  for (std::size_t v : s.program.weight_variables) w.push_back(s.solution.primal[v]);
  return WeightVector(std::move(w));
}

ExplicitDistribution single_pair_witness(const SocialChoiceFunction& f, const SolvedPrimal& s, LabelPair labels) {
  // Rows follow f.preimage(labels.winner) order.
  std::vector<Rational> q(s.solution.dual.begin() + 1, s.solution.dual.end());
  auto witness = extract_witness(q, f, labels);
  if (!verify_witness(f, witness, labels))
    throw SolverInconsistency("extracted witness failed verification for labels " + pair_name(labels));
  return witness;
}

ChallengeWitness challenge_witness(const SocialChoiceFunction& f, const SolvedPrimal& s) {
  ChallengeWitness w{f.k(), f.n(), {}};
  Rational total = 0;
  for (std::size_t r = 0; r < s.program.rows.size(); ++r) {
    const Rational& q = s.solution.dual[r + 1];
    if (sgn(q) > 0) throw SolverInconsistency("dual multiplier q_x is positive");
    total += q;
  }
  if (sgn(total) >= 0) throw SolverInconsistency("dual multipliers do not normalize (sum q >= 0)");
  for (std::size_t r = 0; r < s.program.rows.size(); ++r) {
    const Rational& q = s.solution.dual[r + 1];
    if (sgn(q) != 0) w.entries.push_back({s.program.rows[r].profile, s.program.rows[r].labels.challenger, q / total});
  }
  if (!verify_challenge_witness(f, w)) throw SolverInconsistency("challenge witness failed verification");
  return w;
}

}  // namespace

DecisionOutcome decide(const SocialChoiceFunction& f, DecisionMode mode, std::optional<LabelPair> labels) {
  DecisionOutcome out;
  out.mode = mode;

  if (mode == DecisionMode::Neutral) {
    if (auto check = is_neutral(f); !check)
      throw NotNeutral("function is not neutral", *check.counterexample);
    const LabelPair pair = labels.value_or(canonical_labels(f.k()));
    check_labels(f, pair);
    const auto solved = solve_primal(f, std::span<const LabelPair>(&pair, 1));
    out.labels = pair;
    out.optimum = solved.solution.objective;
    if (sgn(out.optimum) >= 0) {
      out.verdict = Verdict::IsWeightedPlurality;
      out.weights = weights_from(solved);
      if (!verify_weights(f, *out.weights)) throw SolverInconsistency("LP weights fail the weighted-plurality check");
    } else {
      out.verdict = Verdict::NotWeightedPlurality;
      out.witness = single_pair_witness(f, solved, pair);
    }
    return out;
  }

  if (labels) throw InvalidArgument("label pairs apply to neutral mode only");
  const auto pairs = all_label_pairs(f.k());
  const auto solved = solve_primal(f, pairs);
  out.optimum = solved.solution.objective;
  if (sgn(out.optimum) >= 0) {
    out.verdict = Verdict::IsWeightedPlurality;
    out.weights = weights_from(solved);
    if (!verify_weights(f, *out.weights)) throw SolverInconsistency("LP weights fail the weighted-plurality check");
    return out;
  }
  out.verdict = Verdict::NotWeightedPlurality;
  // Prefer a single-pair witness: P(f = a) = 1 while every voter favors b.
  for (const LabelPair& pair : pairs) {
    if (f.preimage(pair.winner).empty()) continue;
    const auto single = solve_primal(f, std::span<const LabelPair>(&pair, 1));
    if (sgn(single.solution.objective) < 0) {
      out.labels = pair;
      out.witness = single_pair_witness(f, single, pair);
      return out;
    }
  }
  out.challenge = challenge_witness(f, solved);
  return out;
}

}  // namespace plurality
