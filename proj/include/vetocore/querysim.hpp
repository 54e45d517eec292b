#pragma once

#include <cstdint>
#include <vector>

#include "vetocore/profile.hpp"
#include "vetocore/rational.hpp"
#include "vetocore/rng.hpp"

namespace vetocore {

struct QueryTrace {
  long long generative = 0;
  long long min_queries = 0;
  long long pairwise = 0;
};

// Query-access wrapper around a hidden profile and distribution. Algorithms
// under test receive only this object and may observe the hidden state
// exclusively through the query methods below, each of which bills the
// trace. Sampling is exact: an alternative is drawn with exactly its
// rational weight (interval refinement over random bits).
class OracleEnvironment {
 public:
  OracleEnvironment(Profile profile, AlternativeDistribution dist,
                    std::uint64_t seed);

  int voter_count() const { return profile_.num_voters(); }
  int alternative_count() const { return profile_.num_alternatives(); }

  // One draw from the hidden distribution. Zero-weight ids are never drawn.
  int generative_query();

  // Voter's least favorite among a nonempty multiset of alternative ids.
  int min_query(int voter, const std::vector<int>& alts);

  // Which of two distinct alternatives the voter prefers.
  int pairwise_query(int voter, int a, int b);

  // min_query semantics built from exactly |alts| - 1 pairwise comparisons
  // (linear scan). Comparing two copies of the same id is billed like any
  // other comparison but answered without consulting the hidden ranking.
  int min_via_pairwise(int voter, const std::vector<int>& alts);

  const QueryTrace& trace() const { return trace_; }

 private:
  void check_voter(int voter) const;
  void check_alt(int alt) const;

  Profile profile_;
  AlternativeDistribution dist_;
  std::vector<Rational> cumulative_;
  Rng rng_;
  QueryTrace trace_;
};

// Sample count tau(eps, delta) = ceil((8/eps^2) * ln(z * ln(z))) with
// z = 32/(eps^2 * delta); natural logs, evaluated in extended precision.
// Requires 0 < eps <= 1 and 0 < delta < 1.
long long compute_tau(const Rational& eps, const Rational& delta);

enum class QueryMode { kMinQueries, kPairwise };

struct SimulationRun {
  int survivor = -1;
  QueryTrace trace;            // this run's query consumption
  std::vector<int> samples;    // the generative multiset, in draw order
  std::vector<int> voter_sequence;  // the tau - 1 sampled voters
};

// Draws tau generative samples, then runs tau - 1 sequential-veto rounds:
// each round picks a voter uniformly at random (with replacement, from
// `seed`) who strikes one copy of their least favorite remaining sample.
// Query budget: tau generative plus tau - 1 min queries (min mode) or
// tau*(tau-1)/2 pairwise queries (pairwise mode). Both modes return the
// same survivor for the same environment and seed.
SimulationRun find_epsilon_pvc_element(OracleEnvironment& env,
                                       const Rational& eps,
                                       const Rational& delta,
                                       QueryMode mode,
                                       std::uint64_t seed);

// The sub-instance a simulation run played out on: its sampled voter
// multiset and sampled alternatives, restricted to the distinct sampled
// alternatives, weighted by multiplicity. find_epsilon_pvc_element's
// survivor is always in this instance's classic veto core.
struct SubInstance {
  Profile profile;
  AlternativeDistribution dist;
  std::vector<int> alt_ids;  // distinct sampled ids, ascending; local id k = alt_ids[k]
};
SubInstance build_sub_instance(const Profile& full,
                               const std::vector<int>& samples,
                               const std::vector<int>& voter_sequence);

enum class FixtureKind { kSplitDistribution, kSplitPopulation };

// Paired worst-case environments: identical-looking instances whose veto
// cores at eps are disjoint singletons {0} and {1}. kSplitDistribution keeps
// one opposed two-voter profile and moves weight between the alternatives;
// kSplitPopulation keeps uniform weights and tilts the population split. The
// tilt is strictly wider than eps so the singletons are exact at eps.
struct LowerBoundPair {
  Profile profile_a;
  AlternativeDistribution dist_a;
  Profile profile_b;
  AlternativeDistribution dist_b;
};
LowerBoundPair lower_bound_fixture(FixtureKind kind, const Rational& eps);

}  // namespace vetocore
