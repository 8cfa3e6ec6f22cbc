// plurality: decide, certify and analyse weighted plurality rules.
//
// Exit codes:
//   0  success / the function is a weighted plurality
//   1  internal error (a certificate failed its exact re-check)
//   2  unreadable or malformed input, bad usage
//   3  the function is not a weighted plurality (witness written)
//   4  neutral mode requested for a non-neutral function
//   5  enumeration or table size guard exceeded
//   6  the supplied weights do not realize the function
//   7  an applicable aggregation inequality failed

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plurality/decide.hpp"
#include "plurality/dist.hpp"
#include "plurality/effects.hpp"
#include "plurality/errors.hpp"
#include "plurality/io.hpp"
#include "plurality/scf.hpp"

namespace {

using namespace plurality;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kBadInput = 2,
  kNotWeightedPlurality = 3,
  kNotNeutral = 4,
  kTooLarge = 5,
  kBadWeights = 6,
  kInequalityFailed = 7,
};

void emit(const io::Json& j, const std::string& path) {
  if (path.empty())
    std::cout << j.dump(2) << '\n';
  else
    io::save_json(path, j);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("'" + text + "' is not a comma-separated integer list");
    out.push_back(v);
  }
  return out;
}

std::string describe(const NeutralityViolation& v) {
  std::ostringstream out;
  out << "sigma = (";
  for (std::size_t a = 0; a < v.sigma.size(); ++a) out << (a ? " " : "") << v.sigma[a];
  out << "), x = (";
  for (std::size_t i = 0; i < v.profile.size(); ++i) out << (i ? " " : "") << v.profile[i];
  out << ")";
  return out.str();
}

io::Json violation_json(const NeutralityViolation& v) {
  return io::Json{{"sigma", v.sigma},
                  {"x", std::vector<Alternative>(v.profile.entries().begin(), v.profile.entries().end())}};
}

TieBreakRule parse_tiebreak(const std::string& text) {
  if (text == "first-match") return TieBreakRule::first_matching_voter();
  if (text.rfind("fixed:", 0) == 0) {
    const auto a = parse_int_list(text.substr(6));
    if (a.size() != 1) throw ParseError("--tiebreak fixed:a needs one alternative");
    return TieBreakRule::fixed_winner(a[0]);
  }
  throw ParseError("unknown tie-break '" + text + "' (first-match | fixed:a)");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PLURALITY_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError("PLURALITY_SEED is not an unsigned integer");
    }
  }
  return 0;
}

struct CheckOptions {
  std::string input;
  std::string mode = "neutral";
  std::string labels;
  std::string output;
  std::string dump_lp;
};

int run_check(const CheckOptions& opt) {
  const auto f = io::load_truth_table(opt.input);
  DecisionMode mode;
  if (opt.mode == "neutral")
    mode = DecisionMode::Neutral;
  else if (opt.mode == "general")
    mode = DecisionMode::General;
  else
    throw ParseError("--mode must be neutral or general");
  std::optional<LabelPair> labels;
  if (!opt.labels.empty()) {
    const auto l = parse_int_list(opt.labels);
    if (l.size() != 2) throw ParseError("--labels needs two alternatives a,b");
    labels = LabelPair{l[0], l[1]};
  }
  if (!opt.dump_lp.empty()) {
    std::ofstream out(opt.dump_lp);
    if (mode == DecisionMode::Neutral)
      write_lp(out, build_primal(f, labels.value_or(canonical_labels(f.k()))).lp);
    else
      write_lp(out, build_primal(f, all_label_pairs(f.k())).lp);
  }
  try {
    const auto outcome = decide(f, mode, labels);
    emit(io::decision_to_json(outcome), opt.output);
    return outcome.verdict == Verdict::IsWeightedPlurality ? kOk : kNotWeightedPlurality;
  } catch (const NotNeutral& e) {
    std::cerr << "error: " << e.what() << ": f(sigma(x)) != sigma(f(x)) at " << describe(e.violation())
              << "\nhint: use --mode general for non-neutral functions\n";
    return kNotNeutral;
  }
}

int run_neutral(const std::string& input, const std::string& output) {
  const auto f = io::load_truth_table(input);
  const auto result = is_neutral(f);
  io::Json j{{"neutral", result.neutral}};
  if (result.counterexample) j["counterexample"] = violation_json(*result.counterexample);
  emit(j, output);
  return result.neutral ? kOk : kNotNeutral;
}

struct EffectsOptions {
  std::string input;
  std::string dist;
  bool exact = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  unsigned streams = 1;
  std::string output;
};

int run_effects(const EffectsOptions& opt) {
  const auto f = io::load_truth_table(opt.input);
  const auto p = io::distribution_from_json(io::load_json(opt.dist), f.k());
  if (opt.exact && opt.samples) throw ParseError("--exact and --samples are exclusive");
  EffectMethod method = EffectMethod::exact();
  if (opt.samples) {
    if (*opt.samples == 0) throw ParseError("--samples must be positive");
    method = EffectMethod::monte_carlo(*opt.samples, opt.seed.value_or(default_seed()), opt.streams);
  }
  try {
    emit(io::effects_to_json(effect_vector(f, p, method)), opt.output);
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\nhint: use --samples N for a Monte Carlo estimate\n";
    return kTooLarge;
  }
  return kOk;
}

struct VerifyOptions {
  std::string input;
  std::string weights;
  std::string dist;
  std::string set;
  std::string output;
};

int run_verify_a(const VerifyOptions& opt) {
  const auto f = io::load_truth_table(opt.input);
  const auto w = io::weights_from_json(io::load_json(opt.weights));
  const auto p = io::distribution_from_json(io::load_json(opt.dist), f.k());
  const auto set = parse_int_list(opt.set);
  AggregationReport report;
  try {
    report = aggregation_report(f, w, p, set);
  } catch (const NotAWeightedPlurality& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadWeights;
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  emit(io::aggregation_to_json(report), opt.output);
  if (report.vacuous()) std::cerr << "note: delta <= 0, the inequalities are vacuous\n";
  return report.all_applicable_hold() ? kOk : kInequalityFailed;
}

struct GenOptions {
  std::string rule = "weighted-plurality";
  std::string weights;
  std::string tiebreak = "first-match";
  int k = 0;
  int n = 0;
  int voter = 1;
  std::optional<std::uint64_t> seed;
  std::string output;
};

int run_gen(GenOptions opt) {
  if (opt.rule == "parity" && opt.k == 0) opt.k = 2;
  if (opt.k < 2 || opt.n < 1) throw ParseError("need -k >= 2 and -n >= 1");
  profile_count(opt.k, opt.n);
  std::optional<SocialChoiceFunction> f;
  if (opt.rule == "weighted-plurality") {
    const WeightVector w = opt.weights.empty() ? WeightVector::uniform(static_cast<std::size_t>(opt.n))
                                               : io::weights_from_json(io::load_json(opt.weights));
    if (static_cast<int>(w.size()) != opt.n)
      throw ParseError("weights file has " + std::to_string(w.size()) + " entries, -n is " + std::to_string(opt.n));
    const auto tb = parse_tiebreak(opt.tiebreak);
    if (tb.kind() == TieBreakRule::Kind::FixedWinner && (tb.winner() < 0 || tb.winner() >= opt.k))
      throw ParseError("fixed tie-break winner outside [k]");
    f = build_weighted_plurality(opt.k, opt.n, w, tb);
  } else if (opt.rule == "random-neutral") {
    f = random_neutral_function(opt.k, opt.n, opt.seed.value_or(default_seed()));
  } else if (opt.rule == "dictator") {
    f = dictator(opt.k, opt.n, opt.voter - 1);
  } else if (opt.rule == "parity") {
    if (opt.k != 0 && opt.k != 2) throw ParseError("parity needs -k 2");
    f = parity(opt.n);
  } else {
    throw ParseError("unknown rule '" + opt.rule + "'");
  }
  if (opt.output.empty())
    io::write_truth_table(std::cout, *f);
  else
    io::save_truth_table(opt.output, *f);
  return kOk;
}

struct ExperimentOptions {
  int k = 3;
  std::string family = "uniform";
  std::string delta = "0";
  std::string n_values;
  std::uint64_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::string output;
};

int run_experiment(const ExperimentOptions& opt) {
  ScalingExperiment config;
  config.k = opt.k;
  if (opt.family == "uniform")
    config.family = ScalingExperiment::Family::Uniform;
  else if (opt.family == "biased")
    config.family = ScalingExperiment::Family::Biased;
  else
    throw ParseError("--family must be uniform or biased");
  config.delta = parse_rational(opt.delta);
  config.n_values = parse_int_list(opt.n_values);
  config.samples = opt.samples;
  config.seed = opt.seed.value_or(default_seed());
  if (config.samples == 0) throw ParseError("--samples must be positive");
  const auto points = effect_scaling_experiment(config);
  if (opt.output.empty()) {
    io::write_scaling_csv(std::cout, points);
  } else {
    std::ofstream out(opt.output);
    if (!out) throw Error("cannot write '" + opt.output + "'");
    io::write_scaling_csv(out, points);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide, certify and analyse weighted plurality social choice functions"};
  app.require_subcommand(1);
  int code = kOk;
  std::function<int()> action;

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Decide whether a function is a weighted plurality");
  check_cmd->add_option("input", check.input, "Truth table (.tt)")->required();
  check_cmd->add_option("--mode", check.mode, "neutral (single label pair) or general (all pairs)")
      ->capture_default_str();
  check_cmd->add_option("--labels", check.labels, "Label pair a,b for neutral mode");
  check_cmd->add_option("-o,--output", check.output, "Decision report JSON (default stdout)");
  check_cmd->add_option("--dump-lp", check.dump_lp, "Write the primal LP in text form");
  check_cmd->callback([&] { action = [&] { return run_check(check); }; });

  std::string neutral_input, neutral_output;
  auto* neutral_cmd = app.add_subcommand("neutral", "Check neutrality; prints a counterexample if any");
  neutral_cmd->add_option("input", neutral_input, "Truth table (.tt)")->required();
  neutral_cmd->add_option("-o,--output", neutral_output, "Report JSON (default stdout)");
  neutral_cmd->callback([&] { action = [&] { return run_neutral(neutral_input, neutral_output); }; });

  EffectsOptions effects;
  std::uint64_t effects_samples = 0, effects_seed = 0;
  auto* effects_cmd = app.add_subcommand("effects", "Voter effects e_i(f, P)");
  effects_cmd->add_option("input", effects.input, "Truth table (.tt)")->required();
  effects_cmd->add_option("--dist", effects.dist, "Distribution JSON")->required();
  effects_cmd->add_flag("--exact", effects.exact, "Exact rational computation (default)");
  auto* samples_opt = effects_cmd->add_option("--samples", effects_samples, "Monte Carlo sample count");
  auto* seed_opt = effects_cmd->add_option("--seed", effects_seed, "Monte Carlo seed (default $PLURALITY_SEED or 0)");
  effects_cmd->add_option("--streams", effects.streams, "Independent sampling streams (threads)");
  effects_cmd->add_option("-o,--output", effects.output, "Effects JSON (default stdout)");
  effects_cmd->callback([&] {
    if (*samples_opt) effects.samples = effects_samples;
    if (*seed_opt) effects.seed = effects_seed;
    action = [&] { return run_effects(effects); };
  });

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-a", "Exact aggregation report for a weighted plurality");
  verify_cmd->add_option("input", verify.input, "Truth table (.tt)")->required();
  verify_cmd->add_option("--weights", verify.weights, "Weights JSON")->required();
  verify_cmd->add_option("--dist", verify.dist, "Distribution JSON")->required();
  verify_cmd->add_option("--set", verify.set, "The set A, e.g. 0 or 0,2")->required();
  verify_cmd->add_option("-o,--output", verify.output, "Report JSON (default stdout)");
  verify_cmd->callback([&] { action = [&] { return run_verify_a(verify); }; });

  GenOptions gen;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a truth table");
  gen_cmd->add_option("--rule", gen.rule, "weighted-plurality | random-neutral | dictator | parity")
      ->capture_default_str();
  gen_cmd->add_option("--weights", gen.weights, "Weights JSON (default uniform)");
  gen_cmd->add_option("--tiebreak", gen.tiebreak, "first-match | fixed:a")->capture_default_str();
  gen_cmd->add_option("-k", gen.k, "Number of alternatives (parity: 2)");
  gen_cmd->add_option("-n", gen.n, "Number of voters")->required();
  gen_cmd->add_option("--voter", gen.voter, "Dictator voter (1-based)")->capture_default_str();
  auto* gen_seed_opt = gen_cmd->add_option("--seed", gen_seed, "Seed for random-neutral");
  gen_cmd->add_option("-o,--output", gen.output, "Output .tt (default stdout)");
  gen_cmd->callback([&] {
    if (*gen_seed_opt) gen.seed = gen_seed;
    action = [&] { return run_gen(gen); };
  });

  ExperimentOptions experiment;
  std::uint64_t experiment_seed = 0;
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo effect of voter 1 under plurality as n grows");
  exp_cmd->add_option("-k", experiment.k, "Number of alternatives")->capture_default_str();
  exp_cmd->add_option("--family", experiment.family, "uniform | biased")->capture_default_str();
  exp_cmd->add_option("--delta", experiment.delta, "Bias gap for the biased family")->capture_default_str();
  exp_cmd->add_option("--n", experiment.n_values, "Ascending voter counts, e.g. 9,81")->required();
  exp_cmd->add_option("--samples", experiment.samples, "Samples per n")->capture_default_str();
  auto* exp_seed_opt = exp_cmd->add_option("--seed", experiment_seed, "Seed");
  exp_cmd->add_option("-o,--output", experiment.output, "CSV n,estimate,stderr (default stdout)");
  exp_cmd->callback([&] {
    if (*exp_seed_opt) experiment.seed = experiment_seed;
    action = [&] { return run_experiment(experiment); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    code = action();
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kTooLarge;
  } catch (const NotNeutral& e) {
    std::cerr << "error: " << e.what() << ": " << describe(e.violation()) << '\n';
    code = kNotNeutral;
  } catch (const SolverInconsistency& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    code = kInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    code = kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    code = kInternal;
  }
  return code;
}
