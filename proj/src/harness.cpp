#include "vetocore/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vetocore/rules.hpp"

namespace vetocore {

namespace {

using nlohmann::json;

std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string token;
  while (std::getline(ss, token, sep)) out.push_back(strip(token));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

long long parse_int(const std::string& value, const std::string& key) {
  try {
    size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error("bad integer '" + value + "' for " + key);
  }
}

bool is_synthetic_source(const std::string& source) {
  return source.rfind("ic:", 0) == 0 || source.rfind("mallows:", 0) == 0 ||
         source.rfind("two-bloc:", 0) == 0 ||
         source.rfind("two-bloc-mallows:", 0) == 0 ||
         source.rfind("two-bloc-center:", 0) == 0;
}

Profile synthesize_profile(const std::string& source, std::uint64_t seed) {
  auto parts = split(source, ':');
  const std::string& model = parts[0];
  auto want = [&](size_t k) {
    if (parts.size() != k)
      throw Error("source '" + source + "' needs " + std::to_string(k - 1) +
                  " parameters");
  };
  if (model == "ic") {
    want(3);
    return generate_impartial_culture(
        static_cast<int>(parse_int(parts[1], "n")),
        static_cast<int>(parse_int(parts[2], "m")), seed);
  }
  if (model == "mallows") {
    want(4);
    int m = static_cast<int>(parse_int(parts[2], "m"));
    return generate_mallows(static_cast<int>(parse_int(parts[1], "n")), m,
                            std::stod(parts[3]), {}, seed);
  }
  if (model == "two-bloc") {
    want(4);
    int m = static_cast<int>(parse_int(parts[2], "m"));
    std::vector<int> forward(m), backward(m);
    for (int i = 0; i < m; ++i) {
      forward[i] = i;
      backward[i] = m - 1 - i;
    }
    return generate_two_bloc(static_cast<int>(parse_int(parts[1], "n")),
                             parse_rational(parts[3]), forward, backward);
  }
  if (model == "two-bloc-mallows") {
    want(5);
    return generate_two_bloc_mallows(
        static_cast<int>(parse_int(parts[1], "n")),
        static_cast<int>(parse_int(parts[2], "m")), parse_rational(parts[3]),
        std::stod(parts[4]), seed);
  }
  if (model == "two-bloc-center") {
    want(6);
    return generate_centrist_mixture(
        static_cast<int>(parse_int(parts[1], "n")),
        static_cast<int>(parse_int(parts[2], "m")), parse_rational(parts[3]),
        parse_rational(parts[4]), std::stod(parts[5]), seed);
  }
  throw Error("unknown synthetic source '" + source + "'");
}

AlternativeDistribution load_distribution(const std::string& source, int m) {
  AlternativeDistribution dist;
  if (source.empty() || source == "uniform") {
    dist = uniform_distribution(m);
  } else if (source.rfind("btl:", 0) == 0) {
    dist = btl_distribution(parse_utilities(read_file(source.substr(4))));
  } else {
    dist = parse_distribution(read_file(source));
  }
  validate_distribution(dist, m);
  return dist;
}

std::string format_decimal(const Rational& value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer,
                                 to_double(value));
  if (ec != std::errc()) throw Error("internal: decimal formatting failed");
  return std::string(buffer, end);
}

// Seed-stream tags so profile generation, subsampling, and rule randomness
// never collide.
constexpr std::uint64_t kProfileStream = 0x70726f66;
constexpr std::uint64_t kSubsampleStream = 0x73616d70;
constexpr std::uint64_t kRuleStream = 0x72756c65;

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  bool saw_profile = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = strip(s);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line);
    std::string key = strip(s.substr(0, eq));
    std::string value = strip(s.substr(eq + 1));
    if (key == "profile") {
      config.profile_source = value;
      saw_profile = true;
    } else if (key == "distribution") {
      config.distribution_source = value;
    } else if (key == "sub_voters") {
      config.sub_voters = static_cast<int>(parse_int(value, key));
    } else if (key == "sub_alts") {
      config.sub_alts = static_cast<int>(parse_int(value, key));
    } else if (key == "replications") {
      config.replications = static_cast<int>(parse_int(value, key));
    } else if (key == "subsamples") {
      config.subsamples_per_replication = static_cast<int>(parse_int(value, key));
    } else if (key == "rules") {
      config.rules = split(value, ',');
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(value, key));
    } else if (key == "insertions") {
      config.insertion_files = split(value, ',');
    } else if (key == "threads") {
      config.threads = static_cast<int>(parse_int(value, key));
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!saw_profile) throw ParseError("config needs a 'profile' entry", 1);
  return config;
}

InsertedStatement parse_insertion(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  InsertedStatement statement;
  bool have_label = false;
  std::map<int, int> by_voter;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = strip(s);
    if (s.empty()) continue;
    if (!have_label) {
      statement.label = s;
      have_label = true;
      continue;
    }
    auto parts = split(s, ',');
    if (parts.size() != 2)
      throw ParseError("expected 'voter_id,position'", line);
    int voter = static_cast<int>(parse_int(parts[0], "voter_id"));
    int position = static_cast<int>(parse_int(parts[1], "position"));
    if (voter < 0) throw ParseError("negative voter id", line);
    if (position < 0) throw ParseError("negative position", line);
    if (by_voter.count(voter))
      throw ParseError("duplicate voter " + std::to_string(voter), line);
    by_voter[voter] = position;
  }
  if (!have_label) throw ParseError("missing label line", 1);
  if (by_voter.empty()) throw ParseError("no positions given", line == 0 ? 1 : line);
  statement.positions.resize(by_voter.size());
  for (const auto& [voter, position] : by_voter) {
    if (voter >= static_cast<int>(statement.positions.size()))
      throw ParseError("voter ids must cover 0.." +
                       std::to_string(statement.positions.size() - 1));
    statement.positions[voter] = position;
  }
  return statement;
}

std::pair<Profile, AlternativeDistribution> insert_statement(
    const Profile& profile, const AlternativeDistribution& dist,
    const InsertedStatement& statement) {
  validate_distribution(dist, profile.num_alternatives());
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  if (static_cast<int>(statement.positions.size()) != n)
    throw Error("insertion must give a position for each of the " +
                std::to_string(n) + " voters");
  std::vector<std::vector<int>> rankings;
  rankings.reserve(n);
  for (int v = 0; v < n; ++v) {
    int position = statement.positions[v];
    if (position < 0 || position > m)
      throw Error("position " + std::to_string(position) + " for voter " +
                  std::to_string(v) + " outside 0.." + std::to_string(m));
    std::vector<int> r = profile.ranking(v);
    r.insert(r.begin() + position, m);
    rankings.push_back(std::move(r));
  }
  AlternativeDistribution extended = dist;
  extended.weights.push_back(Rational(0));
  return {Profile(std::move(rankings)), std::move(extended)};
}

CriticalEpsilonResult evaluate_insertion(const Profile& profile,
                                         const AlternativeDistribution& dist,
                                         const InsertedStatement& statement) {
  auto [extended, extended_dist] = insert_statement(profile, dist, statement);
  return critical_epsilon(extended, extended_dist, profile.num_alternatives());
}

std::vector<EvaluationRecord> run_experiment(const ExperimentConfig& config) {
  if (config.replications < 1) throw Error("need at least one replication");
  if (config.subsamples_per_replication < 1)
    throw Error("need at least one subsample per replication");
  std::vector<std::string> rules =
      config.rules.empty() ? known_rules() : config.rules;
  for (const auto& rule : rules)
    if (std::find(known_rules().begin(), known_rules().end(), rule) ==
        known_rules().end())
      throw Error("unknown rule '" + rule + "'");

  const bool synthetic = is_synthetic_source(config.profile_source);
  std::optional<Profile> file_profile;
  if (!synthetic) file_profile = parse_profile(read_file(config.profile_source));

  auto profile_for = [&](int replication) -> Profile {
    if (synthetic)
      return synthesize_profile(
          config.profile_source,
          derive_seed(config.seed, replication, kProfileStream));
    return *file_profile;
  };

  auto run_replication = [&](int replication) {
    Profile full = profile_for(replication);
    AlternativeDistribution dist =
        load_distribution(config.distribution_source, full.num_alternatives());
    std::vector<EvaluationRecord> records;
    for (int s = 0; s < config.subsamples_per_replication; ++s) {
      std::uint64_t sub_seed =
          derive_seed(config.seed, replication * 1000003ULL + s, kSubsampleStream);
      auto [sub, map] =
          subsample(full, config.sub_voters, config.sub_alts, sub_seed);
      for (size_t r = 0; r < rules.size(); ++r) {
        RuleOutcome outcome =
            run_rule(sub, rules[r], derive_seed(sub_seed, r, kRuleStream));
        int full_winner = map.alt_indices[outcome.winner];
        CriticalEpsilonResult crit = critical_epsilon(full, dist, full_winner);
        records.push_back({replication, s, rules[r],
                           std::to_string(full_winner), crit.value,
                           "steps=" + std::to_string(outcome.trace.size())});
      }
    }
    // Inserted statements are judged against the full replication profile.
    for (const auto& path : config.insertion_files) {
      InsertedStatement statement = parse_insertion(read_file(path));
      CriticalEpsilonResult crit = evaluate_insertion(full, dist, statement);
      records.push_back({replication, -1, "insertion", statement.label,
                         crit.value, "full-profile"});
    }
    return records;
  };

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  std::vector<EvaluationRecord> all;
  std::vector<std::future<std::vector<EvaluationRecord>>> futures;
  for (int rep = 0; rep < config.replications; ++rep) {
    futures.push_back(threads == 1
                          ? std::async(std::launch::deferred, run_replication, rep)
                          : std::async(std::launch::async, run_replication, rep));
    if (static_cast<int>(futures.size()) == threads ||
        rep + 1 == config.replications) {
      for (auto& f : futures) {
        auto part = f.get();
        all.insert(all.end(), part.begin(), part.end());
      }
      futures.clear();
    }
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::tie(a.replication, a.subsample, a.rule) <
           std::tie(b.replication, b.subsample, b.rule);
  });
  return all;
}

const std::vector<Rational>& default_cdf_grid() {
  static const std::vector<Rational> grid = [] {
    std::vector<Rational> g;
    for (auto [num, den] : {std::pair<long, long>{0, 1}, {1, 1000}, {1, 400},
                            {1, 200}, {1, 100}, {1, 40}, {1, 20}, {1, 10},
                            {1, 4}, {1, 2}, {1, 1}})
      g.push_back(make_rational(num, den));
    return g;
  }();
  return grid;
}

AggregateReport aggregate(const std::vector<EvaluationRecord>& records,
                          const std::vector<Rational>& grid) {
  if (records.empty()) throw Error("no records to aggregate");
  std::map<std::string, std::vector<Rational>> by_rule;
  for (const auto& record : records)
    by_rule[record.rule].push_back(record.critical_epsilon);

  AggregateReport report;
  const Rational hundredth = make_rational(1, 100);
  for (auto& [rule, values] : by_rule) {
    std::sort(values.begin(), values.end());
    const long count = static_cast<long>(values.size());
    Rational sum = 0;
    long below = 0;
    for (const auto& v : values) {
      sum += v;
      if (v < hundredth) ++below;
    }
    AggregateRow row;
    row.rule = rule;
    row.count = static_cast<int>(count);
    row.mean = sum / count;
    // Nearest-rank percentile: the ceil(0.99 * count)-th smallest value.
    Rational rank = make_rational(99, 100) * count;
    Integer idx = (rank.get_num() + rank.get_den() - 1) / rank.get_den();
    row.p99 = values[idx.get_si() - 1];
    row.frac_lt_001 = make_rational(below, count);
    report.rows.push_back(std::move(row));

    for (const auto& eps : grid) {
      long hit = static_cast<long>(
          std::upper_bound(values.begin(), values.end(), eps) - values.begin());
      report.cdf.push_back({rule, eps, make_rational(hit, count)});
    }
  }
  return report;
}

std::string records_to_jsonl(const std::vector<EvaluationRecord>& records) {
  std::ostringstream out;
  for (const auto& record : records) {
    json j;
    j["replication"] = record.replication;
    j["subsample"] = record.subsample;
    j["rule"] = record.rule;
    j["winner"] = record.winner;
    j["critical_epsilon"] = to_string(record.critical_epsilon);
    j["trace"] = record.trace_summary;
    out << j.dump() << '\n';
  }
  return out.str();
}

std::vector<EvaluationRecord> records_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  std::vector<EvaluationRecord> records;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = strip(raw);
    if (s.empty()) continue;
    try {
      json j = json::parse(s);
      records.push_back({j.at("replication").get<int>(),
                         j.at("subsample").get<int>(),
                         j.at("rule").get<std::string>(),
                         j.at("winner").get<std::string>(),
                         parse_rational(j.at("critical_epsilon").get<std::string>()),
                         j.value("trace", "")});
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad record: ") + e.what(), line);
    }
  }
  return records;
}

std::string summary_to_csv(const AggregateReport& report) {
  std::ostringstream out;
  out << "rule,mean,p99,frac_lt_0.01\n";
  for (const auto& row : report.rows)
    out << row.rule << ',' << format_decimal(row.mean) << ','
        << format_decimal(row.p99) << ',' << format_decimal(row.frac_lt_001)
        << '\n';
  return out.str();
}

std::string cdf_to_csv(const AggregateReport& report) {
  std::ostringstream out;
  out << "rule,epsilon,cumulative_fraction\n";
  for (const auto& point : report.cdf)
    out << point.rule << ',' << format_decimal(point.epsilon) << ','
        << format_decimal(point.cumulative_fraction) << '\n';
  return out.str();
}

}  // namespace vetocore
