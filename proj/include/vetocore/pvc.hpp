#pragma once

#include <optional>
#include <vector>

#include "vetocore/flow.hpp"
#include "vetocore/profile.hpp"
#include "vetocore/rational.hpp"

namespace vetocore {

// A coalition/blocking-set pair certifying how far an alternative is from
// being unblocked: every coalition member prefers every blocking-set element
// to the challenged alternative, and
//   slack = mass(blocking_set) + |coalition|/n - 1.
// The alternative is eps-blocked exactly when slack > eps.
struct BlockingWitness {
  std::vector<int> coalition;     // ascending voter ids
  std::vector<int> blocking_set;  // ascending alternative ids, excludes the challenged one
  Rational slack;
};

enum class CriticalMethod { kFlow, kBruteForce };

// value = smallest eps >= 0 keeping the alternative unblocked; witness is the
// maximizing pair when some pair has positive slack, absent otherwise.
struct CriticalEpsilonResult {
  Rational value;
  std::optional<BlockingWitness> witness;
  CriticalMethod method = CriticalMethod::kFlow;
};

inline constexpr int kDefaultEnumerationCap = 16;

// Exhaustive oracle: enumerates every nonempty coalition, takes its maximal
// blocking set, and maximizes the slack. Exponential in n; refuses n above
// the cap so callers are pushed to the flow method.
CriticalEpsilonResult max_blocking_slack(const Profile& profile,
                                         const AlternativeDistribution& dist,
                                         int alt,
                                         int enumeration_cap = kDefaultEnumerationCap);

// Normalized blocking network for one challenged alternative: source ->
// voter edges of capacity 1/n, alternative j != alt -> sink edges of
// capacity weight_j, and infinite voter -> alternative edges wherever the
// voter prefers the challenged alternative to j. Node layout: 0 = source,
// 1..n = voters, n+1..n+m = alternatives, n+m+1 = sink.
FlowNetwork build_blocking_network(const Profile& profile,
                                   const AlternativeDistribution& dist,
                                   int alt);

// Critical epsilon via max-flow/min-cut: value = max(0, 1 - weight_alt - cut).
// The witness is read off the min cut (source-side voters, sink-side
// alternatives) whenever the value is positive.
CriticalEpsilonResult critical_epsilon(const Profile& profile,
                                       const AlternativeDistribution& dist,
                                       int alt);

// Alternatives whose critical epsilon is <= eps (exact comparison).
// Never empty for eps >= 0; nested in eps: epsilon_pvc(e1) subset of
// epsilon_pvc(e2) when e1 <= e2.
std::vector<int> epsilon_pvc(const Profile& profile,
                             const AlternativeDistribution& dist,
                             const Rational& eps);

// Number of vetoes a coalition of x voters commands: ceil(x*m/n - 1).
long long veto_function(long long x, long long n, long long m);

// Unblocked alternatives of the classic finite veto core: a is vetoed iff
// some coalition T can strike |S_T| >= m - f(|T|) alternatives it ranks
// above a. Coalition enumeration up to `enumeration_cap` voters (the
// integer-arithmetic route); larger instances use the flow route, which
// agrees with it (uniform weights, eps = 0).
std::vector<int> classic_pvc(const Profile& profile,
                             int enumeration_cap = kDefaultEnumerationCap);

}  // namespace vetocore
