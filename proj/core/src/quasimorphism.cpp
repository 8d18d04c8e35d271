#include "scl/quasimorphism.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "json.hpp"
#include "scl/chain.hpp"
#include "scl/errors.hpp"
#include "scl/rng.hpp"
#include "scl/sampling.hpp"

namespace scl {

CountingSet::CountingSet(std::vector<std::string> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  for (const auto& w : words_) {
    if (w.empty()) throw InvalidSetError("counting sets may not contain the empty word");
    if (!is_reduced(w)) throw InvalidSetError("counting-set word is not reduced: " + w);
  }
}

CountingSet CountingSet::inverses() const {
  std::vector<std::string> inv;
  inv.reserve(words_.size());
  for (const auto& w : words_) inv.push_back(invert_letters(w));
  return CountingSet(inv);
}

namespace {

// Maximal disjoint packing of set words in a linear word.
long packing_count(const std::vector<std::string>& words, const std::string& w) {
  const std::size_t n = w.size();
  std::vector<long> dp(n + 1, 0);
  for (std::size_t end = 1; end <= n; ++end) {
    dp[end] = dp[end - 1];
    for (const auto& sigma : words) {
      if (sigma.size() > end) continue;
      if (w.compare(end - sigma.size(), sigma.size(), sigma) == 0) {
        dp[end] = std::max(dp[end], dp[end - sigma.size()] + 1);
      }
    }
  }
  return dp[n];
}

struct RatioEdge {
  int from;
  int to;
  long count;
  long len;
};

// Maximum cycle ratio sum(count)/sum(len) of a strongly connected
// cyclic-position graph, as an exact rational. Iterated Bellman-Ford:
// each round either certifies the current candidate or extracts a
// strictly better cycle.
Rational max_cycle_ratio(int num_nodes, const std::vector<RatioEdge>& edges,
                         Rational lambda) {
  while (true) {
    long p = lambda.get_num().get_si();
    long q = lambda.get_den().get_si();
    std::vector<long> dist(num_nodes, 0);
    std::vector<int> pred(num_nodes, -1);
    int relaxed_node = -1;
    for (int round = 0; round <= num_nodes; ++round) {
      relaxed_node = -1;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        long w = edges[e].count * q - p * edges[e].len;
        if (dist[edges[e].from] + w > dist[edges[e].to]) {
          dist[edges[e].to] = dist[edges[e].from] + w;
          pred[edges[e].to] = static_cast<int>(e);
          relaxed_node = edges[e].to;
        }
      }
      if (relaxed_node < 0) break;
    }
    if (relaxed_node < 0) return lambda;  // no cycle beats lambda
    // Walk back into the positive cycle and read it off.
    int node = relaxed_node;
    for (int i = 0; i < num_nodes; ++i) node = edges[pred[node]].from;
    long count = 0, len = 0;
    int cur = node;
    do {
      const RatioEdge& e = edges[pred[cur]];
      count += e.count;
      len += e.len;
      cur = e.from;
    } while (cur != node);
    Rational better(count, len);
    better.canonicalize();
    if (better <= lambda) {
      throw InternalError("cycle-ratio search failed to make progress");
    }
    lambda = better;
  }
}

}  // namespace

SmallCount small_count(const CountingSet& s, const Word& w) {
  SmallCount out;
  out.c_s = packing_count(s.words(), w.str());
  out.h_s = out.c_s - packing_count(s.inverses().words(), w.str());
  return out;
}

Rational packing_density(const CountingSet& s, const CyclicWord& w) {
  const std::size_t n = w.length();
  if (n == 0) return 0;

  // Occurrence arcs (start, length), with wrap.
  std::set<std::pair<int, long>> arcs;
  for (const auto& sigma : s.words()) {
    for (std::size_t i = 0; i < n; ++i) {
      bool match = true;
      for (std::size_t t = 0; t < sigma.size() && match; ++t) {
        match = w.at(i + t) == sigma[t];
      }
      if (match) arcs.insert({static_cast<int>(i), static_cast<long>(sigma.size())});
    }
  }
  if (arcs.empty()) return 0;

  std::set<int> interesting;
  for (const auto& [start, len] : arcs) {
    interesting.insert(start);
    interesting.insert(static_cast<int>((start + len) % n));
  }
  std::vector<int> nodes(interesting.begin(), interesting.end());
  std::unordered_map<int, int> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<int>(i);

  std::vector<RatioEdge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::size_t j = (i + 1) % nodes.size();
    long gap = (nodes[j] - nodes[i] + static_cast<long>(n)) % static_cast<long>(n);
    if (gap == 0) gap = static_cast<long>(n);  // single node: full loop
    edges.push_back({static_cast<int>(i), static_cast<int>(j), 0, gap});
  }
  Rational seed(0);
  for (const auto& [start, len] : arcs) {
    int to = static_cast<int>((start + len) % n);
    edges.push_back({index[start], index[to], 1, len});
    // Cycle through this arc alone: arc plus the skip back around.
    long back = ((start - to) % static_cast<long>(n) + n) % static_cast<long>(n);
    Rational single(1, back == 0 ? len : len + back);
    single.canonicalize();
    if (single > seed) seed = single;
  }
  Rational lambda = max_cycle_ratio(static_cast<int>(nodes.size()), edges, seed);
  return lambda * static_cast<long>(n);
}

Rational homogenized_qm(const CountingSet& s, const CyclicWord& w) {
  return packing_density(s, w) - packing_density(s.inverses(), w);
}

long defect_probe(const CountingSet& s, int trials, int max_len, std::uint64_t seed,
                  int rank) {
  if (trials < 1) throw RangeError("defect probe needs at least one trial");
  Alphabet alphabet(rank);
  long worst = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(t)));
    auto draw = [&](std::uint64_t salt) {
      std::size_t len = rng.below(static_cast<std::uint64_t>(max_len) + 1);
      RandomWordSpec spec{alphabet, len, split_seed(seed, 2 * t + salt), false};
      return random_reduced_word(spec);
    };
    Word g = draw(0);
    Word h = draw(1);
    Word gh = concat(g, h);
    long defect = std::labs(small_count(s, gh).h_s - small_count(s, g).h_s -
                            small_count(s, h).h_s);
    worst = std::max(worst, defect);
  }
  return worst;
}

Certificate rigidity_certificate(const Word& v, double epsilon, int rank,
                                 std::size_t offset) {
  Alphabet alphabet(rank);
  alphabet.require_word(v.str());
  if (!is_cyclically_reduced(v.str())) {
    throw DegenerateError("certificate input must be cyclically reduced");
  }
  if (!is_homologically_trivial(v.str(), alphabet)) {
    throw NotABoundaryError("certificate input must lie in [F,F]");
  }
  if (v.length() < 4) throw DegenerateError("certificate needs |v| >= 4");

  Certificate cert;
  cert.rank = rank;
  cert.epsilon = epsilon;
  cert.L = 1.0 + epsilon;
  CyclicWord cw(v);
  cert.word = cw.str();
  const std::size_t n = cw.length();
  cert.m = scale_m(n, rank);
  cert.block_length = static_cast<std::size_t>(std::ceil(cert.L * cert.m));
  cert.offset = offset % n;
  if (cert.block_length < 1 || cert.block_length > n) {
    throw DegenerateError("word too short for a single block");
  }

  // Cyclic substring table: word of length block_length at each start.
  std::unordered_map<std::string, int> substrings;
  for (std::size_t i = 0; i < n; ++i) ++substrings[cw.subword(i, cert.block_length)];

  std::size_t tiles = n / cert.block_length;
  std::set<std::string> s_set, s_prime;
  for (std::size_t i = 0; i < tiles; ++i) {
    std::string block = cw.subword(cert.offset + i * cert.block_length, cert.block_length);
    cert.blocks.push_back(block);
    s_set.insert(block);
  }
  for (const auto& sigma : s_set) {
    if (substrings.find(invert_letters(sigma)) == substrings.end()) {
      s_prime.insert(sigma);
    }
  }
  cert.s_prime.assign(s_prime.begin(), s_prime.end());
  if (cert.s_prime.empty()) {
    cert.value = 0;
  } else {
    cert.value = homogenized_qm(CountingSet(cert.s_prime), cw);
  }
  cert.defect_bound = 6;
  cert.lower_bound = cert.value / (2 * cert.defect_bound);
  return cert;
}

std::string certificate_to_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["word"] = cert.word;
  j["rank"] = cert.rank;
  j["epsilon"] = cert.epsilon;
  j["L"] = cert.L;
  j["m"] = cert.m;
  j["block_length"] = cert.block_length;
  j["offset"] = cert.offset;
  j["blocks"] = cert.blocks;
  j["s_prime"] = cert.s_prime;
  j["value"] = to_string(cert.value);
  j["defect_bound"] = cert.defect_bound;
  j["lower_bound"] = to_string(cert.lower_bound);
  return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Certificate cert;
  cert.word = j.at("word").get<std::string>();
  cert.rank = j.at("rank").get<int>();
  cert.epsilon = j.at("epsilon").get<double>();
  cert.L = j.at("L").get<double>();
  cert.m = j.at("m").get<double>();
  cert.block_length = j.at("block_length").get<std::size_t>();
  cert.offset = j.at("offset").get<std::size_t>();
  cert.blocks = j.at("blocks").get<std::vector<std::string>>();
  cert.s_prime = j.at("s_prime").get<std::vector<std::string>>();
  cert.value = parse_rational(j.at("value").get<std::string>());
  cert.defect_bound = j.at("defect_bound").get<int>();
  cert.lower_bound = parse_rational(j.at("lower_bound").get<std::string>());
  return cert;
}

CertificateCheck verify_certificate(const Certificate& cert) {
  CertificateCheck check;
  auto fail = [&check](const std::string& why) {
    check.ok = false;
    check.failures.push_back(why);
  };
  Alphabet alphabet(cert.rank);
  try {
    alphabet.require_word(cert.word);
  } catch (const AlphabetError&) {
    fail("word contains letters outside the alphabet");
    return check;
  }
  if (!is_cyclically_reduced(cert.word)) {
    fail("word is not cyclically reduced");
    return check;
  }
  if (!is_homologically_trivial(cert.word, alphabet)) {
    fail("word does not lie in [F,F]");
  }
  CyclicWord cw(cert.word);
  const std::size_t n = cw.length();
  if (cert.block_length < 1 || cert.block_length > n) {
    fail("block length out of range");
    return check;
  }
  // Blocks really tile the cyclic word at the stated offset.
  std::size_t tiles = n / cert.block_length;
  if (cert.blocks.size() != tiles) fail("wrong number of tiling blocks");
  for (std::size_t i = 0; i < std::min(tiles, cert.blocks.size()); ++i) {
    if (cert.blocks[i] != cw.subword(cert.offset + i * cert.block_length, cert.block_length)) {
      fail("block " + std::to_string(i) + " does not match the tiling");
    }
  }
  // S' consists of blocks, and no inverse of an S' word appears in v.
  std::set<std::string> block_set(cert.blocks.begin(), cert.blocks.end());
  std::unordered_map<std::string, int> substrings;
  for (std::size_t i = 0; i < n; ++i) ++substrings[cw.subword(i, cert.block_length)];
  for (const auto& sigma : cert.s_prime) {
    if (block_set.find(sigma) == block_set.end()) {
      fail("S' word is not a tiling block: " + sigma);
    }
    if (substrings.find(invert_letters(sigma)) != substrings.end()) {
      fail("inverse of S' word appears in the word: " + sigma);
    }
  }
  // Exact homogenized value and the Bavard bound.
  if (!cert.s_prime.empty()) {
    Rational value = homogenized_qm(CountingSet(cert.s_prime), cw);
    if (value != cert.value) fail("homogenized value mismatch");
  } else if (cert.value != 0) {
    fail("empty S' must have value 0");
  }
  if (cert.defect_bound != 6) fail("defect bound must be 6");
  if (cert.lower_bound != cert.value / 12) fail("lower bound must be value/12");
  return check;
}

}  // namespace scl
