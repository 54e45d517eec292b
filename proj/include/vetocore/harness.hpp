#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vetocore/profile.hpp"
#include "vetocore/pvc.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

// Experiment plan: subsample a full profile, let each rule pick a winner
// from partial information, and score that winner's critical epsilon
// against the full profile.
//
// profile_source: a ballot file path or a synthetic spec --
//   "ic:N:M" | "mallows:N:M:PHI" | "two-bloc:N:M:FRAC" |
//   "two-bloc-mallows:N:M:FRAC:PHI".
// Synthetic sources draw a fresh profile per replication (seed derived from
// the master seed and replication id); file sources reuse the same profile.
// distribution_source: "uniform", "btl:<utility csv>", or a weights file.
struct ExperimentConfig {
  std::string profile_source;
  std::string distribution_source = "uniform";
  int sub_voters = 20;
  int sub_alts = 20;
  int replications = 10;
  int subsamples_per_replication = 4;
  std::vector<std::string> rules;
  std::uint64_t seed = 0;
  std::vector<std::string> insertion_files;
  int threads = 0;  // 0 = hardware concurrency
};

// "key = value" lines, '#' comments; lists are comma-separated.
ExperimentConfig parse_experiment_config(const std::string& text);

struct EvaluationRecord {
  int replication = 0;
  int subsample = 0;   // -1 for full-profile evaluations (insertions)
  std::string rule;
  std::string winner;  // full-profile alternative id, or insertion label
  Rational critical_epsilon;
  std::string trace_summary;
};

// An external statement spliced into every ballot: first line is a label,
// then one "voter_id,position" line per voter (position 0 = top). The
// statement itself carries zero weight.
struct InsertedStatement {
  std::string label;
  std::vector<int> positions;
};

InsertedStatement parse_insertion(const std::string& text);

// Extended profile/distribution with the statement as alternative id m.
std::pair<Profile, AlternativeDistribution> insert_statement(
    const Profile& profile, const AlternativeDistribution& dist,
    const InsertedStatement& statement);

// Critical epsilon of the inserted statement in the extended instance.
// Inserting never changes the original alternatives' critical epsilons.
CriticalEpsilonResult evaluate_insertion(const Profile& profile,
                                         const AlternativeDistribution& dist,
                                         const InsertedStatement& statement);

// Runs the whole plan. Replications execute in parallel with per-task seeds
// derived from (seed, replication, subsample); records come back sorted by
// (replication, subsample, rule), so the stream is deterministic.
std::vector<EvaluationRecord> run_experiment(const ExperimentConfig& config);

struct AggregateRow {
  std::string rule;
  int count = 0;
  Rational mean;
  Rational p99;          // nearest-rank
  Rational frac_lt_001;  // fraction of records with critical epsilon < 1/100
};

struct CdfPoint {
  std::string rule;
  Rational epsilon;
  Rational cumulative_fraction;  // P(critical epsilon <= epsilon)
};

struct AggregateReport {
  std::vector<AggregateRow> rows;    // sorted by rule name
  std::vector<CdfPoint> cdf;         // rule-major, grid order
};

const std::vector<Rational>& default_cdf_grid();

AggregateReport aggregate(const std::vector<EvaluationRecord>& records,
                          const std::vector<Rational>& grid = default_cdf_grid());

// Serialization used by both the CLI and the experiment driver.
std::string records_to_jsonl(const std::vector<EvaluationRecord>& records);
std::vector<EvaluationRecord> records_from_jsonl(const std::string& text);
std::string summary_to_csv(const AggregateReport& report);
std::string cdf_to_csv(const AggregateReport& report);

}  // namespace vetocore
