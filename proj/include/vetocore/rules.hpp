#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vetocore/profile.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

struct RuleOutcome {
  int winner = -1;
  std::string rule;
  std::vector<std::string> trace;  // per-step log, including tie-break notes
};

// Sequential veto: voters take turns (in `voter_order`, which must have
// m - 1 entries; entries may repeat) striking their least-favorite remaining
// alternative. The survivor wins.
RuleOutcome vote_by_veto(const Profile& profile,
                         const std::vector<int>& voter_order);

struct GammaVetoResult {
  std::vector<int> survivors;   // ascending ids
  Rational remaining_mass;      // total leftover capacity; equals eps
  std::vector<std::string> trace;
};

// Capacity-sharing veto: each voter in turn consumes exactly
// gamma = (1 - eps)/n of remaining capacity from the bottom of their ranking
// (cheapest tail first; zero-weight alternatives cost nothing). Everything
// fully consumed is removed; a partially consumed top-of-tail element stays
// with reduced capacity. Requires eps > 0 so capacity never runs dry.
GammaVetoResult vote_by_gamma_veto(const Profile& profile,
                                   const AlternativeDistribution& dist,
                                   const Rational& eps,
                                   const std::vector<int>& voter_order);

struct ConsumptionEvent {
  Rational time;
  std::vector<int> removed;   // alternatives exhausted at this instant
  Rational total_remaining;   // capacity left across all alternatives
};

struct VbcSimulation {
  RuleOutcome outcome;
  std::vector<ConsumptionEvent> events;
};

// Veto by consumption: every alternative starts with capacity 1; every voter
// continuously eats their worst remaining alternative at rate 1. Event-driven
// with exact rational event times. The last alternative(s) to be exhausted
// win; ties break to the lowest id.
VbcSimulation run_veto_by_consumption(const Profile& profile);
RuleOutcome veto_by_consumption(const Profile& profile);

RuleOutcome borda(const Profile& profile);
RuleOutcome plurality(const Profile& profile);

// Instant-runoff: repeatedly eliminate the plurality-lowest remaining
// alternative (lowest id on ties) until one remains.
RuleOutcome instant_runoff(const Profile& profile);

// Schulze with winning-votes link strengths and all-pairs widest-path;
// winner = alternative whose path strength is unbeaten (lowest id on ties).
RuleOutcome schulze(const Profile& profile);

// wins[x][y] = number of voters preferring x to y (used by schulze; exposed
// for tests).
std::vector<std::vector<int>> pairwise_wins(const Profile& profile);

RuleOutcome random_winner(const Profile& profile, std::uint64_t seed);

// Dispatch by rule name: vbc, borda, schulze, irv, plurality, random, veto.
// veto uses voters 0, 1, ... (mod n) as the order; random consumes the seed.
RuleOutcome run_rule(const Profile& profile, const std::string& rule,
                     std::uint64_t seed);

const std::vector<std::string>& known_rules();

}  // namespace vetocore
