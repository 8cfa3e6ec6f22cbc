#include "plurality/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "plurality/errors.hpp"

namespace plurality::io {

SocialChoiceFunction read_truth_table(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("truth table: missing header line 'k n'");
  std::istringstream hs(header);
  long long k = 0, n = 0;
  std::string extra;
  if (!(hs >> k >> n) || (hs >> extra)) throw ParseError("truth table: header must be 'k n'");
  if (k < 2 || n < 1 || k > std::numeric_limits<int>::max() || n > std::numeric_limits<int>::max())
    throw ParseError("truth table: need k >= 2 and n >= 1");
  ProfileIndex total = 0;
  try {
    total = profile_count(static_cast<int>(k), static_cast<int>(n));
  } catch (const TooLarge& e) {
    throw TooLarge(std::string("truth table: ") + e.what());
  }

  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(std::move(tok));

  std::vector<Alternative> table;
  table.reserve(total);
  if (tokens.size() == 1 && total > 1 && k <= 10 && tokens[0].size() == total) {
    for (char c : tokens[0]) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("truth table: compact row must be digits");
      table.push_back(c - '0');
    }
  } else {
    if (tokens.size() != total)
      throw ParseError("truth table: expected " + std::to_string(total) + " values, found " +
                       std::to_string(tokens.size()));
    for (const auto& tok : tokens) {
      std::size_t used = 0;
      long value = -1;
      try {
        value = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("truth table: '" + tok + "' is not an integer");
      table.push_back(static_cast<Alternative>(value));
      if (value < 0 || value >= k) throw ParseError("truth table: value " + tok + " outside [k]");
    }
  }
  for (Alternative a : table)
    if (a < 0 || a >= k) throw ParseError("truth table: value " + std::to_string(a) + " outside [k]");
  return SocialChoiceFunction(static_cast<int>(k), static_cast<int>(n), std::move(table));
}

void write_truth_table(std::ostream& out, const SocialChoiceFunction& f) {
  out << f.k() << ' ' << f.n() << '\n';
  const auto table = f.table();
  for (std::size_t i = 0; i < table.size(); ++i) out << (i ? " " : "") << table[i];
  out << '\n';
}

SocialChoiceFunction load_truth_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open truth table '" + path + "'");
  return read_truth_table(in);
}

void save_truth_table(const std::string& path, const SocialChoiceFunction& f) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_truth_table(out, f);
}

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(value.dump());
  // Shortest round-trip decimal of the double, read exactly.
  if (value.is_number_float()) return parse_rational(value.dump());
  throw ParseError("expected a rational, got " + value.dump());
}

Json rational_to_json(const Rational& value) { return to_string(value); }

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class Fn>
auto wrap_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidDistribution& e) {
    throw ParseError(e.what());
  } catch (const InvalidWeights& e) {
    throw ParseError(e.what());
  } catch (const InvalidProfile& e) {
    throw ParseError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

Distribution distribution_from_json(const Json& j, int k) {
  return wrap_errors([&]() -> Distribution {
    const std::string type = require(j, "type").get<std::string>();
    if (type == "product") {
      std::vector<std::vector<Rational>> rows;
      for (const auto& row : require(j, "p")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(rational_from_json(v));
        rows.push_back(std::move(r));
      }
      return ProductDistribution(std::move(rows));
    }
    if (type == "explicit") {
      if (j.contains("k")) k = j.at("k").get<int>();
      const auto& support = require(j, "support");
      if (!support.is_array() || support.empty()) throw ParseError("explicit distribution needs a nonempty support");
      std::map<ProfileIndex, Rational> masses;
      int n = -1;
      for (const auto& atom : support) {
        std::vector<Alternative> votes = require(atom, "x").get<std::vector<Alternative>>();
        if (n < 0) n = static_cast<int>(votes.size());
        if (static_cast<int>(votes.size()) != n) throw ParseError("support profiles differ in length");
        const ProfileIndex index = Profile(std::move(votes)).encode(k);
        if (!masses.emplace(index, rational_from_json(require(atom, "p"))).second)
          throw ParseError("duplicate profile in support");
      }
      return ExplicitDistribution(k, n, std::move(masses));
    }
    throw ParseError("unknown distribution type '" + type + "'");
  });
}

Json explicit_to_json(const ExplicitDistribution& p) {
  Json support = Json::array();
  for (const auto& [index, mass] : p.support()) {
    const Profile x = Profile::decode(p.k(), p.n(), index);
    support.push_back(Json{{"x", std::vector<Alternative>(x.entries().begin(), x.entries().end())},
                           {"p", rational_to_json(mass)}});
  }
  return Json{{"type", "explicit"}, {"k", p.k()}, {"support", std::move(support)}};
}

Json distribution_to_json(const Distribution& p) {
  if (const auto* ex = p.as_explicit()) return explicit_to_json(*ex);
  Json rows = Json::array();
  for (const auto& row : p.as_product()->marginals()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_to_json(v));
    rows.push_back(std::move(r));
  }
  return Json{{"type", "product"}, {"p", std::move(rows)}};
}

WeightVector weights_from_json(const Json& j) {
  return wrap_errors([&] {
    const Json& arr = j.is_object() ? require(j, "weights") : j;
    if (!arr.is_array()) throw ParseError("weights must be a JSON array");
    std::vector<Rational> w;
    for (const auto& v : arr) w.push_back(rational_from_json(v));
    return WeightVector::normalized(std::move(w));
  });
}

Json weights_to_json(const WeightVector& w) {
  Json arr = Json::array();
  for (const auto& v : w.entries()) arr.push_back(rational_to_json(v));
  return arr;
}

Json challenge_to_json(const ChallengeWitness& w) {
  Json support = Json::array();
  for (const auto& e : w.entries) {
    const Profile x = Profile::decode(w.k, w.n, e.profile);
    support.push_back(Json{{"x", std::vector<Alternative>(x.entries().begin(), x.entries().end())},
                           {"challenger", e.challenger},
                           {"p", rational_to_json(e.mass)}});
  }
  return Json{{"type", "challenge"}, {"k", w.k}, {"support", std::move(support)}};
}

Json decision_to_json(const DecisionOutcome& outcome) {
  Json j;
  j["verdict"] = outcome.verdict == Verdict::IsWeightedPlurality ? "wp" : "not-wp";
  j["mode"] = outcome.mode == DecisionMode::Neutral ? "neutral" : "general";
  j["optimum"] = rational_to_json(outcome.optimum);
  j["labels"] = outcome.labels ? Json::array({outcome.labels->winner, outcome.labels->challenger}) : Json::array();
  if (outcome.weights) j["weights"] = weights_to_json(*outcome.weights);
  if (outcome.witness) j["witness"] = explicit_to_json(*outcome.witness);
  if (outcome.challenge) j["witness"] = challenge_to_json(*outcome.challenge);
  return j;
}

Json effects_to_json(const EffectVector& effects) {
  Json j;
  if (effects.method.kind == EffectMethod::Kind::Exact) {
    j["method"] = "exact";
    Json values = Json::array();
    for (const auto& v : effects.exact) values.push_back(rational_to_json(v));
    j["values"] = std::move(values);
    return j;
  }
  j["method"] = "monte-carlo";
  j["samples"] = effects.method.samples;
  j["seed"] = effects.method.seed;
  j["values"] = effects.estimate;
  j["stderr"] = effects.standard_error;
  return j;
}

Json aggregation_to_json(const AggregationReport& report) {
  Json effects = Json::array();
  for (const auto& e : report.effects) effects.push_back(rational_to_json(e));
  return Json{{"A", report.set},
              {"delta", rational_to_json(report.delta)},
              {"pNotA", rational_to_json(report.p_not_in_set)},
              {"covSum", rational_to_json(report.covariance_sum)},
              {"effectBound", rational_to_json(report.effect_bound)},
              {"effects", std::move(effects)},
              {"covariancesNonnegative", report.covariances_nonnegative},
              {"vacuous", report.vacuous()},
              {"inequalities",
               Json{{"deltaTimesPNotALeCovSum", report.chain_holds},
                    {"pNotALeEffectBoundOverDelta", report.effect_bound_holds}}},
              {"allApplicableHold", report.all_applicable_hold()}};
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingPoint>& points) {
  out << "n,estimate,stderr\n";
  out << std::setprecision(17);
  for (const auto& p : points) out << p.n << ',' << p.estimate << ',' << p.standard_error << '\n';
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace plurality::io
