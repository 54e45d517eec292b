#include "vetocore/querysim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace vetocore {

OracleEnvironment::OracleEnvironment(Profile profile,
                                     AlternativeDistribution dist,
                                     std::uint64_t seed)
    : profile_(std::move(profile)), dist_(std::move(dist)), rng_(seed) {
  validate_distribution(dist_, profile_.num_alternatives());
  cumulative_.reserve(dist_.weights.size());
  Rational acc = 0;
  for (const auto& w : dist_.weights) {
    acc += w;
    cumulative_.push_back(acc);
  }
}

void OracleEnvironment::check_voter(int voter) const {
  if (voter < 0 || voter >= profile_.num_voters())
    throw Error("voter " + std::to_string(voter) + " out of range");
}

void OracleEnvironment::check_alt(int alt) const {
  if (alt < 0 || alt >= profile_.num_alternatives())
    throw Error("alternative " + std::to_string(alt) + " out of range");
}

int OracleEnvironment::generative_query() {
  ++trace_.generative;
  // Refine a uniform u in [0, 1) by 64 bits at a time until the dyadic
  // interval [acc, acc+1)/2^bits sits inside one alternative's segment
  // [cum_{j-1}, cum_j). Exact for every rational weight; expected two draws.
  Integer acc = 0;
  Integer scale = 1;
  for (;;) {
    acc <<= 64;
    acc += Integer(static_cast<unsigned long>(rng_()));
    scale <<= 64;
    Rational lo(acc, scale);
    lo.canonicalize();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), lo);
    int j = static_cast<int>(it - cumulative_.begin());
    Rational hi(acc + 1, scale);
    hi.canonicalize();
    if (hi <= cumulative_[j]) return j;
  }
}

int OracleEnvironment::min_query(int voter, const std::vector<int>& alts) {
  check_voter(voter);
  if (alts.empty()) throw Error("min_query over an empty multiset");
  ++trace_.min_queries;
  int worst = alts[0];
  check_alt(worst);
  for (size_t k = 1; k < alts.size(); ++k) {
    check_alt(alts[k]);
    if (profile_.position(voter, alts[k]) > profile_.position(voter, worst))
      worst = alts[k];
  }
  return worst;
}

int OracleEnvironment::pairwise_query(int voter, int a, int b) {
  check_voter(voter);
  check_alt(a);
  check_alt(b);
  if (a == b) throw Error("pairwise query needs two distinct alternatives");
  ++trace_.pairwise;
  return profile_.prefers(voter, a, b) ? a : b;
}

int OracleEnvironment::min_via_pairwise(int voter, const std::vector<int>& alts) {
  check_voter(voter);
  if (alts.empty()) throw Error("min_via_pairwise over an empty multiset");
  int worst = alts[0];
  check_alt(worst);
  for (size_t k = 1; k < alts.size(); ++k) {
    if (alts[k] == worst) {
      // Two copies of one alternative: the comparison is billed but the
      // answer is forced, so the hidden ranking is not consulted.
      check_alt(alts[k]);
      ++trace_.pairwise;
      continue;
    }
    int preferred = pairwise_query(voter, worst, alts[k]);
    worst = preferred == worst ? alts[k] : worst;
  }
  return worst;
}

long long compute_tau(const Rational& eps, const Rational& delta) {
  if (eps <= 0 || eps > 1) throw Error("eps must be in (0, 1]");
  if (delta <= 0 || delta >= 1) throw Error("delta must be in (0, 1)");
  const auto to_ld = [](const Rational& q) {
    return static_cast<long double>(q.get_num().get_d()) /
           static_cast<long double>(q.get_den().get_d());
  };
  const long double e = to_ld(eps);
  const long double d = to_ld(delta);
  const long double inner = 32.0L / (e * e * d);
  const long double value = 8.0L / (e * e) * std::log(inner * std::log(inner));
  return static_cast<long long>(std::ceil(value));
}

SimulationRun find_epsilon_pvc_element(OracleEnvironment& env,
                                       const Rational& eps,
                                       const Rational& delta,
                                       QueryMode mode,
                                       std::uint64_t seed) {
  const long long tau = compute_tau(eps, delta);
  const QueryTrace before = env.trace();
  SimulationRun run;
  run.samples.reserve(tau);
  for (long long i = 0; i < tau; ++i) run.samples.push_back(env.generative_query());

  std::vector<int> pool = run.samples;
  Rng rng(seed);
  run.voter_sequence.reserve(tau - 1);
  for (long long round = 0; round + 1 < tau; ++round) {
    int voter = static_cast<int>(
        rand_below(rng, static_cast<std::uint64_t>(env.voter_count())));
    run.voter_sequence.push_back(voter);
    int worst = mode == QueryMode::kMinQueries ? env.min_query(voter, pool)
                                               : env.min_via_pairwise(voter, pool);
    pool.erase(std::find(pool.begin(), pool.end(), worst));
  }
  run.survivor = pool.front();
  const QueryTrace after = env.trace();
  run.trace.generative = after.generative - before.generative;
  run.trace.min_queries = after.min_queries - before.min_queries;
  run.trace.pairwise = after.pairwise - before.pairwise;
  return run;
}

SubInstance build_sub_instance(const Profile& full,
                               const std::vector<int>& samples,
                               const std::vector<int>& voter_sequence) {
  if (samples.empty() || voter_sequence.empty())
    throw Error("sub-instance needs samples and voters");
  std::map<int, long> counts;
  for (int a : samples) ++counts[a];

  std::vector<int> alt_ids;
  AlternativeDistribution dist;
  std::vector<int> local(full.num_alternatives(), -1);
  for (const auto& [id, count] : counts) {
    local[id] = static_cast<int>(alt_ids.size());
    alt_ids.push_back(id);
    dist.weights.push_back(
        make_rational(count, static_cast<long>(samples.size())));
  }

  std::vector<std::vector<int>> rankings;
  rankings.reserve(voter_sequence.size());
  for (int v : voter_sequence) {
    std::vector<int> r;
    r.reserve(alt_ids.size());
    for (int alt : full.ranking(v))
      if (local[alt] >= 0) r.push_back(local[alt]);
    rankings.push_back(std::move(r));
  }
  return {Profile(std::move(rankings)), std::move(dist), std::move(alt_ids)};
}

LowerBoundPair lower_bound_fixture(FixtureKind kind, const Rational& eps) {
  if (eps <= 0 || eps >= make_rational(1, 2))
    throw Error("eps must be in (0, 1/2)");
  // Strictly wider tilt than eps, so the eps-core boundary is not grazed:
  // blocking is strict, and a gap of exactly eps would leave the disfavored
  // alternative *at* critical epsilon = eps, i.e. still inside the core.
  Rational narrow = 3 * eps / 2;
  Rational wide = (2 * eps + 1) / 4;
  Rational gap = narrow < wide ? narrow : wide;

  if (kind == FixtureKind::kSplitDistribution) {
    Profile opposed({{0, 1}, {1, 0}});
    AlternativeDistribution lean_first{{make_rational(1, 2) + gap,
                                        make_rational(1, 2) - gap}};
    AlternativeDistribution lean_second{{make_rational(1, 2) - gap,
                                         make_rational(1, 2) + gap}};
    return {opposed, lean_first, opposed, lean_second};
  }

  Rational fraction = make_rational(1, 2) + gap;
  int population = static_cast<int>(fraction.get_den().get_si());
  Profile favor_first =
      generate_two_bloc(population, fraction, {0, 1}, {1, 0});
  Profile favor_second =
      generate_two_bloc(population, fraction, {1, 0}, {0, 1});
  AlternativeDistribution uniform = uniform_distribution(2);
  return {std::move(favor_first), uniform, std::move(favor_second), uniform};
}

}  // namespace vetocore
