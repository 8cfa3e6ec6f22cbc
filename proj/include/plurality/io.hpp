#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "plurality/decide.hpp"
#include "plurality/dist.hpp"
#include "plurality/effects.hpp"
#include "plurality/scf.hpp"
#include "plurality/weights.hpp"

namespace plurality::io {

using Json = nlohmann::ordered_json;

// Truth-table text: "k n" on the first line, then k^n values in index order,
// whitespace separated, or (k <= 10) one undelimited digit string. All
// parsers throw ParseError with a message naming the problem.
SocialChoiceFunction read_truth_table(std::istream& in);
void write_truth_table(std::ostream& out, const SocialChoiceFunction& f);
SocialChoiceFunction load_truth_table(const std::string& path);
void save_truth_table(const std::string& path, const SocialChoiceFunction& f);

// A JSON string "a/b" or decimal, or a JSON number.
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);

// {"type":"product","p":[[...],...]} or
// {"type":"explicit","support":[{"x":[...],"p":"a/b"},...]}. Explicit
// distributions take k from an optional "k" field, else from `k`.
Distribution distribution_from_json(const Json& j, int k);
Json distribution_to_json(const Distribution& p);
Json explicit_to_json(const ExplicitDistribution& p);

// A bare array of nonnegative rationals, or {"weights": [...]}, rescaled to sum 1.
WeightVector weights_from_json(const Json& j);
Json weights_to_json(const WeightVector& w);

Json challenge_to_json(const ChallengeWitness& w);
Json decision_to_json(const DecisionOutcome& outcome);
Json effects_to_json(const EffectVector& effects);
Json aggregation_to_json(const AggregationReport& report);
void write_scaling_csv(std::ostream& out, const std::vector<ScalingPoint>& points);

Json load_json(const std::string& path);
// Pretty-printed with a trailing newline.
void save_json(const std::string& path, const Json& j);

}  // namespace plurality::io
