// Command-line front end: parse | critical-epsilon | pvc | vote | simulate |
// experiment | aggregate | insert-eval. Exit codes: 0 success, 1 usage
// error, 2 data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vetocore/harness.hpp"
#include "vetocore/profile.hpp"
#include "vetocore/pvc.hpp"
#include "vetocore/querysim.hpp"
#include "vetocore/rules.hpp"

namespace {

using nlohmann::json;
namespace vc = vetocore;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vc::Error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

vc::Profile load_profile(const std::string& path) {
  return vc::parse_profile(read_file(path));
}

vc::AlternativeDistribution load_distribution(const std::string& source, int m) {
  vc::AlternativeDistribution dist;
  if (source.empty() || source == "uniform") {
    dist = vc::uniform_distribution(m);
  } else if (source.rfind("btl:", 0) == 0) {
    dist = vc::btl_distribution(vc::parse_utilities(read_file(source.substr(4))));
  } else {
    dist = vc::parse_distribution(read_file(source));
  }
  vc::validate_distribution(dist, m);
  return dist;
}

// Option values are usage errors when malformed; file contents are not.
vc::Rational option_rational(const std::string& text, const std::string& flag) {
  try {
    return vc::parse_rational(text);
  } catch (const vc::Error& e) {
    throw UsageError("bad value for " + flag + ": " + e.what());
  }
}

json witness_json(const vc::BlockingWitness& witness) {
  json w;
  w["coalition"] = witness.coalition;
  w["blocking_set"] = witness.blocking_set;
  w["slack"] = vc::to_string(witness.slack);
  return w;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vc::Error("cannot write '" + path.string() + "'");
  out << text;
}

struct Options {
  std::string profile;
  std::string dist = "uniform";
  std::string format = "json";
  std::string rule;
  std::string mode = "min";
  std::string config;
  std::string records;
  std::string insert;
  std::string out_dir;
  std::string epsilon;
  std::string delta;
  int alt = -1;
  bool all = false;
  bool witness = false;
  bool trace = false;
  int runs = 1;
  std::uint64_t seed = 0;
};

void cmd_parse(const Options& opt) {
  vc::Profile profile = load_profile(opt.profile);
  if (opt.format == "csv") {
    std::cout << vc::serialize_profile(profile);
    return;
  }
  std::map<std::vector<int>, long long> groups;
  for (const auto& r : profile.rankings()) ++groups[r];
  json out;
  out["voters"] = profile.num_voters();
  out["alternatives"] = profile.num_alternatives();
  json list = json::array();
  for (const auto& [ranking, count] : groups)
    list.push_back({{"count", count}, {"ranking", ranking}});
  out["ballots"] = list;
  std::cout << out.dump() << '\n';
}

void cmd_critical_epsilon(const Options& opt) {
  if (opt.all == (opt.alt >= 0))
    throw UsageError("give exactly one of --alt or --all");
  vc::Profile profile = load_profile(opt.profile);
  auto dist = load_distribution(opt.dist, profile.num_alternatives());
  std::vector<int> targets;
  if (opt.all)
    for (int a = 0; a < profile.num_alternatives(); ++a) targets.push_back(a);
  else
    targets.push_back(opt.alt);

  if (opt.format == "csv") std::cout << "alt,critical_epsilon\n";
  for (int a : targets) {
    auto result = vc::critical_epsilon(profile, dist, a);
    if (opt.format == "csv") {
      std::cout << a << ',' << vc::to_string(result.value) << '\n';
      continue;
    }
    json out;
    out["alt"] = a;
    out["critical_epsilon"] = vc::to_string(result.value);
    if (opt.witness && result.witness)
      out["witness"] = witness_json(*result.witness);
    std::cout << out.dump() << '\n';
  }
}

void cmd_pvc(const Options& opt) {
  vc::Profile profile = load_profile(opt.profile);
  auto dist = load_distribution(opt.dist, profile.num_alternatives());
  vc::Rational eps = option_rational(opt.epsilon, "--epsilon");
  if (eps < 0) throw UsageError("--epsilon must be nonnegative");
  auto core = vc::epsilon_pvc(profile, dist, eps);
  if (opt.format == "csv") {
    for (int a : core) std::cout << a << '\n';
    return;
  }
  json out;
  out["pvc"] = core;
  std::cout << out.dump() << '\n';
}

void cmd_vote(const Options& opt) {
  const auto& rules = vc::known_rules();
  if (std::find(rules.begin(), rules.end(), opt.rule) == rules.end())
    throw UsageError("unknown rule '" + opt.rule + "'");
  vc::Profile profile = load_profile(opt.profile);
  vc::RuleOutcome outcome = vc::run_rule(profile, opt.rule, opt.seed);
  if (opt.format == "csv") {
    std::cout << "rule,winner\n" << outcome.rule << ',' << outcome.winner << '\n';
    return;
  }
  json out;
  out["rule"] = outcome.rule;
  out["winner"] = outcome.winner;
  if (opt.trace) out["trace"] = outcome.trace;
  std::cout << out.dump() << '\n';
}

void cmd_simulate(const Options& opt) {
  vc::Profile profile = load_profile(opt.profile);
  auto dist = load_distribution(opt.dist, profile.num_alternatives());
  vc::Rational eps = option_rational(opt.epsilon, "--epsilon");
  vc::Rational delta = option_rational(opt.delta, "--delta");
  vc::QueryMode mode;
  if (opt.mode == "min")
    mode = vc::QueryMode::kMinQueries;
  else if (opt.mode == "pairwise")
    mode = vc::QueryMode::kPairwise;
  else
    throw UsageError("--mode must be min or pairwise");
  if (opt.runs < 1) throw UsageError("--runs must be positive");

  if (opt.format == "csv")
    std::cout << "run,survivor,critical_epsilon,in_eps_pvc,generative,min_queries,pairwise\n";
  long successes = 0;
  for (int run = 0; run < opt.runs; ++run) {
    vc::OracleEnvironment env(profile, dist,
                              vc::derive_seed(opt.seed, run, 0x0e11));
    auto result = vc::find_epsilon_pvc_element(
        env, eps, delta, mode, vc::derive_seed(opt.seed, run, 0xa160));
    auto crit = vc::critical_epsilon(profile, dist, result.survivor);
    bool inside = crit.value <= eps;
    if (inside) ++successes;
    if (opt.format == "csv") {
      std::cout << run << ',' << result.survivor << ','
                << vc::to_string(crit.value) << ',' << (inside ? 1 : 0) << ','
                << result.trace.generative << ',' << result.trace.min_queries
                << ',' << result.trace.pairwise << '\n';
      continue;
    }
    json out;
    out["run"] = run;
    out["survivor"] = result.survivor;
    out["critical_epsilon"] = vc::to_string(crit.value);
    out["in_eps_pvc"] = inside;
    out["trace"] = {{"generative", result.trace.generative},
                    {"min_queries", result.trace.min_queries},
                    {"pairwise", result.trace.pairwise}};
    std::cout << out.dump() << '\n';
  }
  if (opt.format == "json") {
    json out;
    out["runs"] = opt.runs;
    out["successes"] = successes;
    out["success_rate"] = vc::to_string(vc::make_rational(successes, opt.runs));
    std::cout << out.dump() << '\n';
  }
}

void cmd_experiment(const Options& opt) {
  vc::ExperimentConfig config = vc::parse_experiment_config(read_file(opt.config));
  auto records = vc::run_experiment(config);
  auto report = vc::aggregate(records);
  std::filesystem::path out_dir = opt.out_dir.empty() ? "." : opt.out_dir;
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "records.jsonl", vc::records_to_jsonl(records));
  write_text(out_dir / "summary.csv", vc::summary_to_csv(report));
  write_text(out_dir / "cdf.csv", vc::cdf_to_csv(report));
  json out;
  out["records"] = records.size();
  out["out"] = out_dir.string();
  std::cout << out.dump() << '\n';
}

void cmd_aggregate(const Options& opt) {
  auto records = vc::records_from_jsonl(read_file(opt.records));
  if (records.empty()) throw vc::Error("no records to aggregate");
  auto report = vc::aggregate(records);
  if (!opt.out_dir.empty()) {
    std::filesystem::path out_dir = opt.out_dir;
    std::filesystem::create_directories(out_dir);
    write_text(out_dir / "summary.csv", vc::summary_to_csv(report));
    write_text(out_dir / "cdf.csv", vc::cdf_to_csv(report));
  }
  if (opt.format == "csv") {
    std::cout << vc::summary_to_csv(report);
    return;
  }
  for (const auto& row : report.rows) {
    json out;
    out["rule"] = row.rule;
    out["count"] = row.count;
    out["mean"] = vc::to_string(row.mean);
    out["p99"] = vc::to_string(row.p99);
    out["frac_lt_0.01"] = vc::to_string(row.frac_lt_001);
    std::cout << out.dump() << '\n';
  }
}

void cmd_insert_eval(const Options& opt) {
  vc::Profile profile = load_profile(opt.profile);
  auto dist = load_distribution(opt.dist, profile.num_alternatives());
  vc::InsertedStatement statement = vc::parse_insertion(read_file(opt.insert));
  auto result = vc::evaluate_insertion(profile, dist, statement);
  if (opt.format == "csv") {
    std::cout << "label,critical_epsilon\n"
              << statement.label << ',' << vc::to_string(result.value) << '\n';
    return;
  }
  json out;
  out["label"] = statement.label;
  out["critical_epsilon"] = vc::to_string(result.value);
  if (opt.witness && result.witness) out["witness"] = witness_json(*result.witness);
  std::cout << out.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proportional veto core toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* parse = app.add_subcommand("parse", "Validate and echo a ballot file");
  parse->add_option("--profile", opt.profile, "ballot file")->required();
  add_format(parse);

  auto* crit = app.add_subcommand("critical-epsilon",
                                  "Smallest eps keeping an alternative unblocked");
  crit->add_option("--profile", opt.profile)->required();
  crit->add_option("--dist", opt.dist, "uniform | btl:FILE | weights file");
  crit->add_option("--alt", opt.alt, "challenged alternative id");
  crit->add_flag("--all", opt.all, "evaluate every alternative");
  crit->add_flag("--witness", opt.witness, "include the blocking witness");
  add_format(crit);

  auto* pvc = app.add_subcommand("pvc", "Alternatives unblocked at eps");
  pvc->add_option("--profile", opt.profile)->required();
  pvc->add_option("--dist", opt.dist);
  pvc->add_option("--epsilon", opt.epsilon)->required();
  add_format(pvc);

  auto* vote = app.add_subcommand("vote", "Run a voting rule");
  vote->add_option("--rule", opt.rule, "vbc|borda|schulze|irv|plurality|random|veto")
      ->required();
  vote->add_option("--profile", opt.profile)->required();
  vote->add_option("--seed", opt.seed);
  vote->add_flag("--trace", opt.trace, "include the per-step trace");
  add_format(vote);

  auto* sim = app.add_subcommand("simulate",
                                 "Query-limited veto-core element search");
  sim->add_option("--profile", opt.profile)->required();
  sim->add_option("--dist", opt.dist);
  sim->add_option("--epsilon", opt.epsilon)->required();
  sim->add_option("--delta", opt.delta)->required();
  sim->add_option("--mode", opt.mode, "min or pairwise");
  sim->add_option("--runs", opt.runs);
  sim->add_option("--seed", opt.seed);
  add_format(sim);

  auto* exp = app.add_subcommand("experiment", "Run a subsampling experiment");
  exp->add_option("--config", opt.config, "key = value plan file")->required();
  exp->add_option("--out", opt.out_dir, "output directory");

  auto* agg = app.add_subcommand("aggregate", "Summarize an experiment record stream");
  agg->add_option("--records", opt.records, "records.jsonl")->required();
  agg->add_option("--out", opt.out_dir, "also write summary.csv/cdf.csv here");
  add_format(agg);

  auto* ins = app.add_subcommand("insert-eval",
                                 "Score an inserted zero-weight statement");
  ins->add_option("--profile", opt.profile)->required();
  ins->add_option("--dist", opt.dist);
  ins->add_option("--insert", opt.insert, "label + voter_id,position lines")
      ->required();
  ins->add_flag("--witness", opt.witness);
  add_format(ins);

  try {
    app.parse(argc, argv);
    if (parse->parsed()) cmd_parse(opt);
    if (crit->parsed()) cmd_critical_epsilon(opt);
    if (pvc->parsed()) cmd_pvc(opt);
    if (vote->parsed()) cmd_vote(opt);
    if (sim->parsed()) cmd_simulate(opt);
    if (exp->parsed()) cmd_experiment(opt);
    if (agg->parsed()) cmd_aggregate(opt);
    if (ins->parsed()) cmd_insert_eval(opt);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const vc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
