#include <doctest.h>

#include <sstream>

#include "plurality/errors.hpp"
#include "plurality/io.hpp"

using namespace plurality;

TEST_CASE("truth table round trip and compact form") {
  const auto f = unweighted_plurality(3, 3);
  std::stringstream buffer;
  io::write_truth_table(buffer, f);
  CHECK(io::read_truth_table(buffer) == f);

  std::istringstream compact("2 2\n0111\n");
  CHECK(io::read_truth_table(compact) == SocialChoiceFunction(2, 2, {0, 1, 1, 1}));
  std::istringstream spaced("2 2\n0 1\n1 1\n");
  CHECK(io::read_truth_table(spaced) == SocialChoiceFunction(2, 2, {0, 1, 1, 1}));
}

TEST_CASE("truth table errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return io::read_truth_table(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("2\n01\n"), ParseError);
  CHECK_THROWS_AS(parse("2 2\n0 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("2 2\n0 1 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse("2 2\n0121\n"), ParseError);
  CHECK_THROWS_AS(parse("2 2\n0 x 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse("1 2\n0\n"), ParseError);
  CHECK_THROWS_AS(parse("10 9\n0\n"), TooLarge);
}

TEST_CASE("distribution JSON") {
  const auto prod = io::distribution_from_json(
      io::Json::parse(R"({"type":"product","p":[["1/3","2/3"],[0.25, "0.75"]]})"), 2);
  REQUIRE(prod.is_product());
  CHECK(prod.marginal(1, 0) == Rational(1, 4));
  CHECK(io::distribution_from_json(io::distribution_to_json(prod), 2).as_product()->marginals() ==
        prod.as_product()->marginals());

  const auto ex = io::distribution_from_json(
      io::Json::parse(R"({"type":"explicit","support":[{"x":[1,0,0],"p":"1/3"},{"x":[0,1,0],"p":"2/3"}]})"), 2);
  REQUIRE(ex.as_explicit());
  CHECK(ex.probability_of(Profile({0, 1, 0})) == Rational(2, 3));
  CHECK(*io::distribution_from_json(io::distribution_to_json(ex), 2).as_explicit() == *ex.as_explicit());

  CHECK_THROWS_AS(io::distribution_from_json(io::Json::parse(R"({"type":"product","p":[["1/2","1/3"]]})"), 2),
                  ParseError);
  CHECK_THROWS_AS(io::distribution_from_json(io::Json::parse(R"({"type":"mystery"})"), 2), ParseError);
  CHECK_THROWS_AS(io::distribution_from_json(
                      io::Json::parse(R"({"type":"explicit","support":[{"x":[3],"p":"1"}]})"), 2),
                  ParseError);
  CHECK_THROWS_AS(io::distribution_from_json(
                      io::Json::parse(R"({"type":"explicit","support":[{"x":[1],"p":"1/2"},{"x":[1],"p":"1/2"}]})"), 2),
                  ParseError);
}

TEST_CASE("weights JSON") {
  CHECK(io::weights_from_json(io::Json::parse(R"(["1/2","1/4",0.25])")) ==
        WeightVector({Rational(1, 2), Rational(1, 4), Rational(1, 4)}));
  CHECK(io::weights_from_json(io::Json::parse(R"({"weights":[1,0]})")) == WeightVector::dictator(2, 0));
  CHECK(io::weights_from_json(io::Json::parse(R"([1,1])")) == WeightVector::uniform(2));
  CHECK_THROWS_AS(io::weights_from_json(io::Json::parse(R"([0,0])")), ParseError);
  CHECK_THROWS_AS(io::weights_from_json(io::Json::parse(R"(["-1",2])")), ParseError);
  CHECK(io::weights_to_json(WeightVector::uniform(3)).dump() == R"(["1/3","1/3","1/3"])");
}

TEST_CASE("decision report JSON layout") {
  const auto out = decide(parity(3), DecisionMode::Neutral);
  const auto j = io::decision_to_json(out);
  CHECK(j["verdict"] == "not-wp");
  CHECK(j["labels"] == io::Json::array({1, 0}));
  CHECK(j["optimum"].get<std::string>() == to_string(out.optimum));
  CHECK(j["witness"]["type"] == "explicit");
  const auto back = io::distribution_from_json(j["witness"], 2);
  CHECK(verify_witness(parity(3), *back.as_explicit(), LabelPair{1, 0}));

  const auto wp = io::decision_to_json(decide(dictator(2, 2, 0), DecisionMode::Neutral));
  CHECK(wp["verdict"] == "wp");
  CHECK(wp["optimum"] == "1");
  CHECK(wp.contains("weights"));
  CHECK_FALSE(wp.contains("witness"));
}

TEST_CASE("scaling CSV") {
  std::ostringstream out;
  io::write_scaling_csv(out, {{9, 0.5, 0.25}});
  CHECK(out.str() == "n,estimate,stderr\n9,0.5,0.25\n");
}
