#include "vetocore/profile.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace vetocore {

namespace {

void check_ranking(const std::vector<int>& ranking, int m, long line) {
  std::vector<char> seen(m, 0);
  if (static_cast<int>(ranking.size()) != m)
    throw ParseError("expected " + std::to_string(m) + " alternatives, got " +
                         std::to_string(ranking.size()),
                     line);
  for (int alt : ranking) {
    if (alt < 0 || alt >= m)
      throw ParseError("alternative id " + std::to_string(alt) +
                           " outside 0.." + std::to_string(m - 1),
                       line);
    if (seen[alt])
      throw ParseError("duplicate alternative " + std::to_string(alt), line);
    seen[alt] = 1;
  }
}

std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

long long parse_count(const std::string& token, long line) {
  std::string t = strip(token);
  if (t.empty()) throw ParseError("missing ballot count", line);
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed ballot count '" + t + "'", line);
  long long value = 0;
  try {
    value = std::stoll(t);
  } catch (const std::exception&) {
    throw ParseError("ballot count out of range '" + t + "'", line);
  }
  if (value <= 0) throw ParseError("ballot count must be positive", line);
  return value;
}

std::vector<int> parse_id_list(const std::string& text, long line) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = strip(token);
    if (token.empty()) throw ParseError("empty alternative id", line);
    for (char c : token)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("malformed alternative id '" + token + "'", line);
    ids.push_back(std::stoi(token));
  }
  if (ids.empty()) throw ParseError("empty ranking", line);
  return ids;
}

}  // namespace

Profile::Profile(std::vector<std::vector<int>> rankings,
                 std::vector<std::string> names)
    : rankings_(std::move(rankings)), names_(std::move(names)) {
  if (rankings_.empty()) throw Error("profile needs at least one voter");
  num_alternatives_ = static_cast<int>(rankings_[0].size());
  if (num_alternatives_ == 0) throw Error("profile needs at least one alternative");
  if (!names_.empty() && static_cast<int>(names_.size()) != num_alternatives_)
    throw Error("name list length does not match alternative count");
  positions_.resize(rankings_.size());
  for (size_t v = 0; v < rankings_.size(); ++v) {
    check_ranking(rankings_[v], num_alternatives_, 0);
    positions_[v].assign(num_alternatives_, -1);
    for (int pos = 0; pos < num_alternatives_; ++pos)
      positions_[v][rankings_[v][pos]] = pos;
  }
}

Rational AlternativeDistribution::mass_of(const std::vector<int>& alts) const {
  Rational total = 0;
  for (int a : alts) total += weights.at(a);
  return total;
}

Profile parse_profile(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  int m = -1;
  std::vector<std::vector<int>> rankings;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = strip(s);
    if (s.empty()) continue;
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'COUNT: id,id,...'", line);
    long long count = parse_count(s.substr(0, colon), line);
    std::vector<int> ranking = parse_id_list(s.substr(colon + 1), line);
    if (m < 0) m = static_cast<int>(ranking.size());
    check_ranking(ranking, m, line);
    if (count > 1'000'000) throw ParseError("ballot count too large", line);
    for (long long i = 0; i < count; ++i) rankings.push_back(ranking);
  }
  if (rankings.empty()) throw ParseError("no ballots found", line == 0 ? 1 : line);
  return Profile(std::move(rankings));
}

std::string serialize_profile(const Profile& profile) {
  std::map<std::vector<int>, long long> groups;
  for (const auto& r : profile.rankings()) ++groups[r];
  std::ostringstream out;
  out << "# " << profile.num_voters() << " voters, "
      << profile.num_alternatives() << " alternatives\n";
  for (const auto& [ranking, count] : groups) {
    out << count << ": ";
    for (size_t i = 0; i < ranking.size(); ++i) {
      if (i) out << ',';
      out << ranking[i];
    }
    out << '\n';
  }
  return out.str();
}

AlternativeDistribution uniform_distribution(int num_alternatives) {
  if (num_alternatives <= 0) throw Error("need at least one alternative");
  AlternativeDistribution dist;
  dist.weights.assign(num_alternatives, make_rational(1, num_alternatives));
  return dist;
}

AlternativeDistribution parse_distribution(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  AlternativeDistribution dist;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = strip(s);
    if (s.empty()) continue;
    try {
      dist.weights.push_back(parse_rational(s));
    } catch (const Error& e) {
      throw ParseError(e.what(), line);
    }
  }
  if (dist.weights.empty()) throw ParseError("no weights found", 1);
  validate_distribution(dist, dist.size());
  return dist;
}

AlternativeDistribution btl_distribution(const UtilityProfile& utilities) {
  if (utilities.utilities.empty()) throw Error("utility profile has no voters");
  const int n = utilities.num_voters();
  const int m = static_cast<int>(utilities.utilities[0].size());
  validate_utilities(utilities, m);
  AlternativeDistribution dist;
  dist.weights.assign(m, Rational(0));
  for (const auto& row : utilities.utilities)
    for (int j = 0; j < m; ++j) dist.weights[j] += row[j];
  for (int j = 0; j < m; ++j) dist.weights[j] /= n;
  return dist;
}

UtilityProfile parse_utilities(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  long line = 0;
  UtilityProfile up;
  size_t width = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = strip(s);
    if (s.empty()) continue;
    std::vector<Rational> row;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(parse_rational(cell));
      } catch (const Error& e) {
        throw ParseError(e.what(), line);
      }
    }
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw ParseError("expected " + std::to_string(width) + " columns", line);
    up.utilities.push_back(std::move(row));
  }
  if (up.utilities.empty()) throw ParseError("no utility rows found", 1);
  validate_utilities(up, static_cast<int>(width));
  return up;
}

void validate_distribution(const AlternativeDistribution& dist,
                           int num_alternatives) {
  if (dist.size() != num_alternatives)
    throw Error("distribution has " + std::to_string(dist.size()) +
                " weights for " + std::to_string(num_alternatives) +
                " alternatives");
  Rational total = 0;
  for (const auto& w : dist.weights) {
    if (w < 0) throw Error("negative weight " + to_string(w));
    total += w;
  }
  if (total != 1)
    throw Error("weights sum to " + to_string(total) + ", expected 1");
}

void validate_utilities(const UtilityProfile& utilities, int num_alternatives) {
  for (size_t v = 0; v < utilities.utilities.size(); ++v) {
    const auto& row = utilities.utilities[v];
    if (static_cast<int>(row.size()) != num_alternatives)
      throw Error("utility row " + std::to_string(v) + " has wrong width");
    Rational total = 0;
    for (const auto& u : row) {
      if (u < 0 || u > 1)
        throw Error("utility outside [0,1] in row " + std::to_string(v));
      total += u;
    }
    if (total != 1)
      throw Error("utility row " + std::to_string(v) + " sums to " +
                  to_string(total) + ", expected 1");
  }
}

std::pair<Profile, SubsampleMap> subsample(const Profile& profile,
                                           int k_voters, int k_alts,
                                           std::uint64_t seed) {
  const int n = profile.num_voters();
  const int m = profile.num_alternatives();
  if (k_voters < 1 || k_voters > n)
    throw Error("k_voters out of range 1.." + std::to_string(n));
  if (k_alts < 1 || k_alts > m)
    throw Error("k_alts out of range 1.." + std::to_string(m));
  Rng rng(seed);
  SubsampleMap map;
  map.seed = seed;
  map.voter_indices = sample_without_replacement(n, k_voters, rng);
  map.alt_indices = sample_without_replacement(m, k_alts, rng);

  std::vector<int> local(m, -1);
  for (int k = 0; k < k_alts; ++k) local[map.alt_indices[k]] = k;
  std::vector<std::vector<int>> rankings;
  rankings.reserve(k_voters);
  for (int v : map.voter_indices) {
    std::vector<int> r;
    r.reserve(k_alts);
    for (int alt : profile.ranking(v))
      if (local[alt] >= 0) r.push_back(local[alt]);
    rankings.push_back(std::move(r));
  }
  return {Profile(std::move(rankings)), std::move(map)};
}

Profile generate_impartial_culture(int num_voters, int num_alternatives,
                                   std::uint64_t seed) {
  if (num_voters < 1 || num_alternatives < 1)
    throw Error("need at least one voter and one alternative");
  Rng rng(seed);
  std::vector<std::vector<int>> rankings(num_voters);
  for (auto& r : rankings) {
    r.resize(num_alternatives);
    for (int i = 0; i < num_alternatives; ++i) r[i] = i;
    shuffle(r, rng);
  }
  return Profile(std::move(rankings));
}

namespace {

std::vector<int> mallows_ballot(const std::vector<int>& reference, double phi,
                                Rng& rng) {
  // Repeated insertion: item k goes to slot j in {0..k} with probability
  // proportional to phi^(k-j); j = k keeps the reference order.
  const int m = static_cast<int>(reference.size());
  std::vector<int> ballot;
  ballot.reserve(m);
  for (int k = 0; k < m; ++k) {
    std::vector<double> w(k + 1);
    double total = 0;
    for (int j = 0; j <= k; ++j) {
      w[j] = std::pow(phi, k - j);
      total += w[j];
    }
    double u = (rng() >> 11) * 0x1.0p-53 * total;  // uniform in [0, total)
    int slot = k;
    double acc = 0;
    for (int j = 0; j <= k; ++j) {
      acc += w[j];
      if (u < acc) {
        slot = j;
        break;
      }
    }
    ballot.insert(ballot.begin() + slot, reference[k]);
  }
  return ballot;
}

}  // namespace

Profile generate_mallows(int num_voters, int num_alternatives, double phi,
                         const std::vector<int>& reference,
                         std::uint64_t seed) {
  if (num_voters < 1 || num_alternatives < 1)
    throw Error("need at least one voter and one alternative");
  if (phi < 0.0 || phi > 1.0) throw Error("phi must be in [0,1]");
  std::vector<int> ref = reference;
  if (ref.empty()) {
    ref.resize(num_alternatives);
    for (int i = 0; i < num_alternatives; ++i) ref[i] = i;
  }
  if (static_cast<int>(ref.size()) != num_alternatives)
    throw Error("reference ranking length does not match alternative count");
  Rng rng(seed);
  std::vector<std::vector<int>> rankings(num_voters);
  for (auto& r : rankings) r = mallows_ballot(ref, phi, rng);
  return Profile(std::move(rankings));
}

Profile generate_two_bloc(int num_voters, const Rational& fraction,
                          const std::vector<int>& ranking_a,
                          const std::vector<int>& ranking_b) {
  if (num_voters < 1) throw Error("need at least one voter");
  if (fraction < 0 || fraction > 1) throw Error("fraction must be in [0,1]");
  if (ranking_a.size() != ranking_b.size())
    throw Error("bloc rankings must have the same length");
  // round(fraction * n), exact arithmetic.
  Rational scaled = fraction * num_voters + make_rational(1, 2);
  Integer count_a_z = scaled.get_num() / scaled.get_den();
  long count_a = count_a_z.get_si();
  std::vector<std::vector<int>> rankings;
  rankings.reserve(num_voters);
  for (int v = 0; v < num_voters; ++v)
    rankings.push_back(v < count_a ? ranking_a : ranking_b);
  return Profile(std::move(rankings));
}

Profile generate_two_bloc_mallows(int num_voters, int num_alternatives,
                                  const Rational& fraction, double phi,
                                  std::uint64_t seed) {
  if (num_voters < 1 || num_alternatives < 1)
    throw Error("need at least one voter and one alternative");
  std::vector<int> ref_a(num_alternatives), ref_b(num_alternatives);
  for (int i = 0; i < num_alternatives; ++i) {
    ref_a[i] = i;
    ref_b[i] = num_alternatives - 1 - i;
  }
  Rational scaled = fraction * num_voters + make_rational(1, 2);
  Integer count_a_z = scaled.get_num() / scaled.get_den();
  long count_a = count_a_z.get_si();
  Rng rng(seed);
  std::vector<std::vector<int>> rankings(num_voters);
  for (int v = 0; v < num_voters; ++v)
    rankings[v] = mallows_ballot(v < count_a ? ref_a : ref_b, phi, rng);
  return Profile(std::move(rankings));
}

std::vector<int> middle_out_ranking(int num_alternatives) {
  if (num_alternatives < 1) throw Error("need at least one alternative");
  std::vector<int> order;
  order.reserve(num_alternatives);
  int lo = (num_alternatives - 1) / 2;
  int hi = lo + 1;
  while (lo >= 0 || hi < num_alternatives) {
    if (lo >= 0) order.push_back(lo--);
    if (hi < num_alternatives) order.push_back(hi++);
  }
  return order;
}

Profile generate_centrist_mixture(int num_voters, int num_alternatives,
                                  const Rational& bloc_a_fraction,
                                  const Rational& bloc_b_fraction, double phi,
                                  std::uint64_t seed) {
  if (num_voters < 1 || num_alternatives < 1)
    throw Error("need at least one voter and one alternative");
  if (bloc_a_fraction < 0 || bloc_b_fraction < 0 ||
      bloc_a_fraction + bloc_b_fraction > 1)
    throw Error("bloc fractions must be nonnegative and sum to at most 1");
  if (phi < 0.0 || phi > 1.0) throw Error("phi must be in [0,1]");

  const auto rounded = [&](const Rational& fraction) {
    Rational scaled = fraction * num_voters + make_rational(1, 2);
    return static_cast<long>(
        Integer(scaled.get_num() / scaled.get_den()).get_si());
  };
  long count_a = rounded(bloc_a_fraction);
  long count_b = rounded(bloc_b_fraction);
  if (count_a + count_b > num_voters) count_b = num_voters - count_a;

  std::vector<int> forward(num_alternatives), backward(num_alternatives);
  for (int i = 0; i < num_alternatives; ++i) {
    forward[i] = i;
    backward[i] = num_alternatives - 1 - i;
  }
  const std::vector<int> centre = middle_out_ranking(num_alternatives);

  Rng rng(seed);
  std::vector<std::vector<int>> rankings;
  rankings.reserve(num_voters);
  for (int v = 0; v < num_voters; ++v) {
    if (v < count_a)
      rankings.push_back(forward);
    else if (v < count_a + count_b)
      rankings.push_back(backward);
    else
      rankings.push_back(mallows_ballot(centre, phi, rng));
  }
  return Profile(std::move(rankings));
}

}  // namespace vetocore
