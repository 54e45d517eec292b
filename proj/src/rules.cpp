#include "vetocore/rules.hpp"

#include <algorithm>
#include <sstream>

namespace vetocore {

namespace {

std::string join_ids(const std::vector<int>& ids) {
  std::ostringstream out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out << ',';
    out << ids[i];
  }
  return out.str();
}

int lowest_id_argbest(const std::vector<long long>& scores,
                      const std::vector<bool>& active, bool maximize,
                      bool* tied = nullptr) {
  int best = -1;
  int hits = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!active[i]) continue;
    if (best < 0 || (maximize ? scores[i] > scores[best] : scores[i] < scores[best])) {
      best = static_cast<int>(i);
      hits = 1;
    } else if (scores[i] == scores[best]) {
      ++hits;
    }
  }
  if (tied) *tied = hits > 1;
  return best;
}

}  // namespace

RuleOutcome vote_by_veto(const Profile& profile,
                         const std::vector<int>& voter_order) {
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  if (static_cast<int>(voter_order.size()) != m - 1)
    throw Error("voter order must have exactly m - 1 entries");
  for (int v : voter_order)
    if (v < 0 || v >= n) throw Error("voter " + std::to_string(v) + " out of range");

  std::vector<bool> active(m, true);
  RuleOutcome outcome;
  outcome.rule = "veto";
  for (int v : voter_order) {
    int worst = -1;
    for (int alt : profile.ranking(v))
      if (active[alt]) worst = alt;  // last active entry = least favorite
    active[worst] = false;
    outcome.trace.push_back("voter " + std::to_string(v) + " strikes " +
                            std::to_string(worst));
  }
  for (int a = 0; a < m; ++a)
    if (active[a]) outcome.winner = a;
  return outcome;
}

GammaVetoResult vote_by_gamma_veto(const Profile& profile,
                                   const AlternativeDistribution& dist,
                                   const Rational& eps,
                                   const std::vector<int>& voter_order) {
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  validate_distribution(dist, m);
  if (eps <= 0 || eps > 1) throw Error("eps must be in (0, 1]");
  if (static_cast<int>(voter_order.size()) != n)
    throw Error("voter order must list every voter exactly once");
  std::vector<bool> seen(n, false);
  for (int v : voter_order) {
    if (v < 0 || v >= n) throw Error("voter " + std::to_string(v) + " out of range");
    if (seen[v]) throw Error("voter " + std::to_string(v) + " listed twice");
    seen[v] = true;
  }

  const Rational gamma = (1 - eps) / n;
  std::vector<Rational> capacity = dist.weights;
  std::vector<bool> active(m, true);
  GammaVetoResult result;

  for (int v : voter_order) {
    // Walk the voter's ranking bottom-up until the tail holds >= gamma of
    // remaining capacity. The tail minus its best element is always fully
    // consumed; the best element only partially, and is removed only when
    // its capacity is exactly exhausted.
    const auto& ranking = profile.ranking(v);
    std::vector<int> tail;
    Rational tail_capacity = 0;
    for (int pos = m - 1; pos >= 0 && tail_capacity < gamma; --pos) {
      int alt = ranking[pos];
      if (!active[alt]) continue;
      tail.push_back(alt);
      tail_capacity += capacity[alt];
    }
    if (tail_capacity < gamma)
      throw Error("internal: remaining capacity below gamma");
    if (tail.empty()) continue;  // gamma = 0 (eps = 1): nothing to consume

    int top = tail.back();  // best-ranked tail element, the last one added
    Rational below = tail_capacity - capacity[top];
    for (size_t k = 0; k + 1 < tail.size(); ++k) {
      active[tail[k]] = false;
      capacity[tail[k]] = 0;
    }
    Rational need = gamma - below;
    if (capacity[top] == need) {
      active[top] = false;
      capacity[top] = 0;
      result.trace.push_back("voter " + std::to_string(v) + " consumes tail {" +
                             join_ids(tail) + "}, exhausting " +
                             std::to_string(top));
    } else {
      capacity[top] -= need;
      result.trace.push_back("voter " + std::to_string(v) + " consumes tail {" +
                             join_ids(tail) + "}, leaving " + std::to_string(top) +
                             " at " + to_string(capacity[top]));
    }
  }

  result.remaining_mass = 0;
  for (int a = 0; a < m; ++a) {
    if (active[a]) {
      result.survivors.push_back(a);
      result.remaining_mass += capacity[a];
    }
  }
  return result;
}

VbcSimulation run_veto_by_consumption(const Profile& profile) {
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  std::vector<Rational> capacity(m, Rational(1));
  std::vector<bool> active(m, true);
  std::vector<int> cursor(n, m - 1);  // index into each ranking, from the bottom
  VbcSimulation sim;
  sim.outcome.rule = "vbc";

  Rational now = 0;
  int remaining = m;
  std::vector<int> rate(m, 0);
  while (remaining > 0) {
    std::fill(rate.begin(), rate.end(), 0);
    for (int v = 0; v < n; ++v) {
      while (!active[profile.ranking(v)[cursor[v]]]) --cursor[v];
      ++rate[profile.ranking(v)[cursor[v]]];
    }
    // Next exhaustion: the smallest capacity / rate among consumed alternatives.
    Rational step;
    bool have_step = false;
    for (int a = 0; a < m; ++a) {
      if (!active[a] || rate[a] == 0) continue;
      Rational t = capacity[a] / rate[a];
      if (!have_step || t < step) {
        step = t;
        have_step = true;
      }
    }
    now += step;
    ConsumptionEvent event;
    event.time = now;
    for (int a = 0; a < m; ++a) {
      if (!active[a] || rate[a] == 0) continue;
      capacity[a] -= step * rate[a];
      if (capacity[a] == 0) {
        active[a] = false;
        --remaining;
        event.removed.push_back(a);
      }
    }
    event.total_remaining = 0;
    for (int a = 0; a < m; ++a) event.total_remaining += capacity[a];
    sim.outcome.trace.push_back("t=" + to_string(event.time) + " exhausted {" +
                                join_ids(event.removed) + "}");
    sim.events.push_back(std::move(event));
  }

  const auto& last = sim.events.back().removed;
  sim.outcome.winner = *std::min_element(last.begin(), last.end());
  if (last.size() > 1)
    sim.outcome.trace.push_back("tie among {" + join_ids(last) +
                                "}, lowest id wins");
  return sim;
}

RuleOutcome veto_by_consumption(const Profile& profile) {
  return run_veto_by_consumption(profile).outcome;
}

RuleOutcome borda(const Profile& profile) {
  const int m = profile.num_alternatives();
  std::vector<long long> score(m, 0);
  for (const auto& ranking : profile.rankings())
    for (int pos = 0; pos < m; ++pos) score[ranking[pos]] += m - 1 - pos;
  RuleOutcome outcome;
  outcome.rule = "borda";
  bool tied = false;
  outcome.winner = lowest_id_argbest(score, std::vector<bool>(m, true), true, &tied);
  if (tied) outcome.trace.push_back("score tie, lowest id wins");
  return outcome;
}

RuleOutcome plurality(const Profile& profile) {
  const int m = profile.num_alternatives();
  std::vector<long long> firsts(m, 0);
  for (const auto& ranking : profile.rankings()) ++firsts[ranking[0]];
  RuleOutcome outcome;
  outcome.rule = "plurality";
  bool tied = false;
  outcome.winner = lowest_id_argbest(firsts, std::vector<bool>(m, true), true, &tied);
  if (tied) outcome.trace.push_back("count tie, lowest id wins");
  return outcome;
}

RuleOutcome instant_runoff(const Profile& profile) {
  const int m = profile.num_alternatives();
  std::vector<bool> active(m, true);
  RuleOutcome outcome;
  outcome.rule = "irv";
  int remaining = m;
  while (remaining > 1) {
    std::vector<long long> firsts(m, 0);
    for (const auto& ranking : profile.rankings())
      for (int alt : ranking)
        if (active[alt]) {
          ++firsts[alt];
          break;
        }
    bool tied = false;
    int loser = lowest_id_argbest(firsts, active, false, &tied);
    active[loser] = false;
    --remaining;
    outcome.trace.push_back("eliminate " + std::to_string(loser) + " with " +
                            std::to_string(firsts[loser]) + " first places" +
                            (tied ? " (tie, lowest id eliminated)" : ""));
  }
  for (int a = 0; a < m; ++a)
    if (active[a]) outcome.winner = a;
  return outcome;
}

std::vector<std::vector<int>> pairwise_wins(const Profile& profile) {
  const int m = profile.num_alternatives();
  std::vector<std::vector<int>> wins(m, std::vector<int>(m, 0));
  for (const auto& ranking : profile.rankings())
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) ++wins[ranking[i]][ranking[j]];
  return wins;
}

RuleOutcome schulze(const Profile& profile) {
  const int m = profile.num_alternatives();
  auto wins = pairwise_wins(profile);
  // Winning-votes link strength, then widest paths.
  std::vector<std::vector<long long>> path(m, std::vector<long long>(m, 0));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (x != y && wins[x][y] > wins[y][x]) path[x][y] = wins[x][y];
  for (int k = 0; k < m; ++k)
    for (int x = 0; x < m; ++x) {
      if (x == k) continue;
      for (int y = 0; y < m; ++y) {
        if (y == k || y == x) continue;
        path[x][y] = std::max(path[x][y], std::min(path[x][k], path[k][y]));
      }
    }
  RuleOutcome outcome;
  outcome.rule = "schulze";
  std::vector<int> unbeaten;
  for (int x = 0; x < m; ++x) {
    bool ok = true;
    for (int y = 0; y < m && ok; ++y)
      if (y != x && path[y][x] > path[x][y]) ok = false;
    if (ok) unbeaten.push_back(x);
  }
  if (unbeaten.empty()) throw Error("internal: empty Schulze winner set");
  outcome.winner = unbeaten.front();
  if (unbeaten.size() > 1)
    outcome.trace.push_back("potential winners {" + join_ids(unbeaten) +
                            "}, lowest id wins");
  return outcome;
}

RuleOutcome random_winner(const Profile& profile, std::uint64_t seed) {
  Rng rng(seed);
  RuleOutcome outcome;
  outcome.rule = "random";
  outcome.winner = static_cast<int>(
      rand_below(rng, static_cast<std::uint64_t>(profile.num_alternatives())));
  return outcome;
}

RuleOutcome run_rule(const Profile& profile, const std::string& rule,
                     std::uint64_t seed) {
  if (rule == "vbc") return veto_by_consumption(profile);
  if (rule == "borda") return borda(profile);
  if (rule == "schulze") return schulze(profile);
  if (rule == "irv") return instant_runoff(profile);
  if (rule == "plurality") return plurality(profile);
  if (rule == "random") return random_winner(profile, seed);
  if (rule == "veto") {
    std::vector<int> order(profile.num_alternatives() - 1);
    for (size_t i = 0; i < order.size(); ++i)
      order[i] = static_cast<int>(i % profile.num_voters());
    return vote_by_veto(profile, order);
  }
  throw Error("unknown rule '" + rule + "'");
}

const std::vector<std::string>& known_rules() {
  static const std::vector<std::string> rules = {
      "vbc", "borda", "schulze", "irv", "plurality", "random", "veto"};
  return rules;
}

}  // namespace vetocore
