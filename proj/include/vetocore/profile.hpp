#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vetocore/rational.hpp"
#include "vetocore/rng.hpp"

namespace vetocore {

// A preference profile: n voters, m alternatives with dense ids 0..m-1, and
// one complete strict ranking per voter, best to worst. Immutable after
// construction; position lookups are precomputed.
class Profile {
 public:
  Profile(std::vector<std::vector<int>> rankings,
          std::vector<std::string> names = {});

  int num_voters() const { return static_cast<int>(rankings_.size()); }
  int num_alternatives() const { return num_alternatives_; }

  const std::vector<std::vector<int>>& rankings() const { return rankings_; }
  const std::vector<int>& ranking(int voter) const { return rankings_[voter]; }

  // 0 = best. position(v, a) < position(v, b) iff voter v prefers a to b.
  int position(int voter, int alt) const {
    return positions_[voter][alt];
  }
  bool prefers(int voter, int a, int b) const {
    return positions_[voter][a] < positions_[voter][b];
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::vector<int>> rankings_;
  std::vector<std::vector<int>> positions_;
  std::vector<std::string> names_;
  int num_alternatives_ = 0;
};

// Weights over alternative ids; exact rationals, nonnegative, sum exactly 1.
// Zero weights are legal (e.g. freshly inserted statements).
struct AlternativeDistribution {
  std::vector<Rational> weights;

  int size() const { return static_cast<int>(weights.size()); }
  Rational mass_of(const std::vector<int>& alts) const;
};

// Per-voter utilities over alternatives; each row sums to exactly 1.
struct UtilityProfile {
  std::vector<std::vector<Rational>> utilities;

  int num_voters() const { return static_cast<int>(utilities.size()); }
};

// Which full-profile voters/alternatives a sub-profile was built from.
// Sub id k corresponds to voter_indices[k] / alt_indices[k] (ascending).
struct SubsampleMap {
  std::vector<int> voter_indices;
  std::vector<int> alt_indices;
  std::uint64_t seed = 0;
};

// Strict-order ballot text: one "COUNT: id,id,...,id" line per ballot group,
// '#' starts a comment, ids of the first data line fix m. Errors carry line
// numbers. Ties, duplicate ids, and missing ids are rejected.
Profile parse_profile(const std::string& text);

// Canonical form: ballots grouped, ordered lexicographically by ranking.
// parse_profile(serialize_profile(p)) has the same n, m and ballot multiset.
std::string serialize_profile(const Profile& profile);

AlternativeDistribution uniform_distribution(int num_alternatives);

// One weight per line ("p/q" or decimal), order-aligned with alternative ids.
AlternativeDistribution parse_distribution(const std::string& text);

// Mean-utility weights: weight_j = (1/n) * sum_i u[i][j].
AlternativeDistribution btl_distribution(const UtilityProfile& utilities);

// CSV: one row per voter, one column per alternative.
UtilityProfile parse_utilities(const std::string& text);

void validate_distribution(const AlternativeDistribution& dist,
                           int num_alternatives);
void validate_utilities(const UtilityProfile& utilities,
                        int num_alternatives);

// k_voters/k_alts distinct picks, uniform without replacement, deterministic
// in seed. Rankings are restricted, preserving relative order. Picking
// everything returns the original profile (ids unchanged).
std::pair<Profile, SubsampleMap> subsample(const Profile& profile,
                                           int k_voters, int k_alts,
                                           std::uint64_t seed);

Profile generate_impartial_culture(int num_voters, int num_alternatives,
                                   std::uint64_t seed);

// Repeated-insertion sampling around `reference`; phi = 0 copies the
// reference exactly, phi = 1 is impartial culture.
Profile generate_mallows(int num_voters, int num_alternatives, double phi,
                         const std::vector<int>& reference,
                         std::uint64_t seed);

// First round(fraction * n) voters use ranking_a, the rest ranking_b.
Profile generate_two_bloc(int num_voters, const Rational& fraction,
                          const std::vector<int>& ranking_a,
                          const std::vector<int>& ranking_b);

// Two Mallows populations around opposed references; used by the experiment
// harness ("two-bloc-mallows" source).
Profile generate_two_bloc_mallows(int num_voters, int num_alternatives,
                                  const Rational& fraction, double phi,
                                  std::uint64_t seed);

// Alternatives ordered by distance from the middle of 0..m-1: for m = 6
// this is 2,3,1,4,0,5. The reference ranking of the centrist population in
// generate_centrist_mixture.
std::vector<int> middle_out_ranking(int num_alternatives);

// Two pure opposed blocs (identity / reversed rankings) plus a centrist
// remainder drawn Mallows(phi) around middle_out_ranking. The classic
// vote-splitting electorate: plurality sees only the bloc extremes while
// transfer- and consensus-based rules can reach the centre.
Profile generate_centrist_mixture(int num_voters, int num_alternatives,
                                  const Rational& bloc_a_fraction,
                                  const Rational& bloc_b_fraction, double phi,
                                  std::uint64_t seed);

}  // namespace vetocore
