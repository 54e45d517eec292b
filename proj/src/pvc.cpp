#include "vetocore/pvc.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace vetocore {

namespace {

// Fixed-width bitset over alternatives, flat-packed per coalition mask.
int words_for(int m) { return (m + 63) / 64; }

void build_preferred_masks(const Profile& profile, int alt,
                           std::vector<std::uint64_t>& masks, int words) {
  // masks[i*words + w] = bit b set iff voter i prefers alternative b to alt.
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  masks.assign(static_cast<size_t>(n) * words, 0);
  for (int i = 0; i < n; ++i) {
    const int cut = profile.position(i, alt);
    for (int b = 0; b < m; ++b)
      if (profile.position(i, b) < cut)
        masks[static_cast<size_t>(i) * words + b / 64] |= 1ULL << (b % 64);
  }
}

int popcount_row(const std::uint64_t* row, int words) {
  int total = 0;
  for (int w = 0; w < words; ++w) total += std::popcount(row[w]);
  return total;
}

std::vector<int> bits_of(const std::uint64_t* row, int words) {
  std::vector<int> out;
  for (int w = 0; w < words; ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(w * 64 + b);
      bits &= bits - 1;
    }
  }
  return out;
}

void check_instance(const Profile& profile, const AlternativeDistribution& dist,
                    int alt) {
  validate_distribution(dist, profile.num_alternatives());
  if (alt < 0 || alt >= profile.num_alternatives())
    throw Error("alternative " + std::to_string(alt) + " out of range");
}

// S_T masks for every coalition mask, via S[T] = S[T minus lowest voter]
// AND preferred[lowest voter].
std::vector<std::uint64_t> coalition_blocking_masks(
    const std::vector<std::uint64_t>& pref, int n, int words) {
  std::vector<std::uint64_t> table(static_cast<size_t>(1 << n) * words, ~0ULL);
  for (std::uint32_t t = 1; t < (1u << n); ++t) {
    int low = std::countr_zero(t);
    std::uint32_t rest = t & (t - 1);
    const std::uint64_t* base = &table[static_cast<size_t>(rest) * words];
    const std::uint64_t* voter = &pref[static_cast<size_t>(low) * words];
    std::uint64_t* out = &table[static_cast<size_t>(t) * words];
    for (int w = 0; w < words; ++w) out[w] = base[w] & voter[w];
  }
  return table;
}

}  // namespace

CriticalEpsilonResult max_blocking_slack(const Profile& profile,
                                         const AlternativeDistribution& dist,
                                         int alt, int enumeration_cap) {
  check_instance(profile, dist, alt);
  const int n = profile.num_voters();
  if (n > enumeration_cap)
    throw Error("max_blocking_slack: " + std::to_string(n) +
                " voters exceed the enumeration cap of " +
                std::to_string(enumeration_cap) + "; use the flow method");

  const int m = profile.num_alternatives();
  const int words = words_for(m);
  std::vector<std::uint64_t> pref;
  build_preferred_masks(profile, alt, pref, words);
  std::vector<std::uint64_t> table = coalition_blocking_masks(pref, n, words);

  bool found = false;
  Rational best_slack;
  std::uint32_t best_t = 0;
  for (std::uint32_t t = 1; t < (1u << n); ++t) {
    const std::uint64_t* row = &table[static_cast<size_t>(t) * words];
    Rational mass = 0;
    for (int b : bits_of(row, words)) mass += dist.weights[b];
    Rational slack = mass + make_rational(std::popcount(t), n) - 1;
    if (!found || slack > best_slack) {
      found = true;
      best_slack = slack;
      best_t = t;
    }
  }

  CriticalEpsilonResult result;
  result.method = CriticalMethod::kBruteForce;
  if (found && best_slack > 0) {
    result.value = best_slack;
    BlockingWitness witness;
    for (int i = 0; i < n; ++i)
      if (best_t & (1u << i)) witness.coalition.push_back(i);
    witness.blocking_set =
        bits_of(&table[static_cast<size_t>(best_t) * words], words);
    witness.slack = best_slack;
    result.witness = std::move(witness);
  } else {
    result.value = 0;
  }
  return result;
}

FlowNetwork build_blocking_network(const Profile& profile,
                                   const AlternativeDistribution& dist,
                                   int alt) {
  check_instance(profile, dist, alt);
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  // Nodes: source, one per voter, one per alternative other than the
  // challenged one, sink. Alternative j occupies 1 + n + j, shifted down by
  // one past the challenged alternative.
  FlowNetwork net;
  net.node_count = n + m + 1;
  net.source = 0;
  net.sink = n + m;
  const auto alt_node = [&](int j) { return 1 + n + (j < alt ? j : j - 1); };
  const Rational voter_cap = make_rational(1, n);
  for (int i = 0; i < n; ++i)
    net.edges.push_back({net.source, 1 + i, voter_cap, false});
  for (int j = 0; j < m; ++j) {
    if (j == alt) continue;
    net.edges.push_back({alt_node(j), net.sink, dist.weights[j], false});
  }
  for (int i = 0; i < n; ++i) {
    const int cut = profile.position(i, alt);
    for (int j = 0; j < m; ++j)
      if (profile.position(i, j) > cut)  // voter prefers the challenged one
        net.edges.push_back({1 + i, alt_node(j), Rational(0), true});
  }
  return net;
}

CriticalEpsilonResult critical_epsilon(const Profile& profile,
                                       const AlternativeDistribution& dist,
                                       int alt) {
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  FlowNetwork net = build_blocking_network(profile, dist, alt);
  MaxFlowResult flow = max_flow(net);

  CriticalEpsilonResult result;
  result.method = CriticalMethod::kFlow;
  Rational value = 1 - dist.weights[alt] - flow.value;
  if (value < 0) value = 0;
  result.value = value;
  if (value > 0) {
    BlockingWitness witness;
    for (int i = 0; i < n; ++i)
      if (flow.source_side[1 + i]) witness.coalition.push_back(i);
    for (int j = 0; j < m; ++j)
      if (j != alt &&
          !flow.source_side[1 + n + (j < alt ? j : j - 1)])
        witness.blocking_set.push_back(j);
    witness.slack = dist.mass_of(witness.blocking_set) +
                    make_rational(static_cast<long>(witness.coalition.size()), n) - 1;
    if (witness.slack != value)
      throw Error("internal: min-cut witness slack " + to_string(witness.slack) +
                  " does not match critical epsilon " + to_string(value));
    result.witness = std::move(witness);
  }
  return result;
}

std::vector<int> epsilon_pvc(const Profile& profile,
                             const AlternativeDistribution& dist,
                             const Rational& eps) {
  if (eps < 0) throw Error("eps must be nonnegative");
  validate_distribution(dist, profile.num_alternatives());
  std::vector<int> core;
  for (int a = 0; a < profile.num_alternatives(); ++a)
    if (critical_epsilon(profile, dist, a).value <= eps) core.push_back(a);
  return core;
}

long long veto_function(long long x, long long n, long long m) {
  if (n < 1 || m < 1) throw Error("veto_function: n and m must be positive");
  if (x < 1 || x > n) throw Error("veto_function: x out of range 1..n");
  return (x * m - 1) / n;  // = ceil(x*m/n - 1); x*m >= 1
}

std::vector<int> classic_pvc(const Profile& profile, int enumeration_cap) {
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();

  if (n > enumeration_cap) {
    // Polynomial route; agrees with the enumeration by the uniform-weights
    // equivalence (exercised by the acceptance suite).
    return epsilon_pvc(profile, uniform_distribution(m), Rational(0));
  }

  std::vector<long long> vetoes(n + 1);
  for (int x = 1; x <= n; ++x) vetoes[x] = veto_function(x, n, m);

  const int words = words_for(m);
  std::vector<int> core;
  std::vector<std::uint64_t> pref;
  for (int a = 0; a < m; ++a) {
    build_preferred_masks(profile, a, pref, words);
    std::vector<std::uint64_t> table = coalition_blocking_masks(pref, n, words);
    bool vetoed = false;
    for (std::uint32_t t = 1; !vetoed && t < (1u << n); ++t) {
      int strikes = popcount_row(&table[static_cast<size_t>(t) * words], words);
      vetoed = strikes >= m - vetoes[std::popcount(t)];
    }
    if (!vetoed) core.push_back(a);
  }
  return core;
}

}  // namespace vetocore
