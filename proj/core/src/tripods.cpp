#include "scl/tripods.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

#include "scl/chain.hpp"
#include "scl/errors.hpp"
#include "scl/sampling.hpp"

namespace scl {

Integer tripod_abstract_count(int L, int rank) {
  if (L < 1) throw RangeError("tripod edge length must be positive");
  Integer q = 2 * rank - 1;
  Integer count = Integer(2 * rank) * q * Integer(2 * rank - 2);
  for (int i = 0; i < 3 * (L - 1); ++i) count *= q;
  return count / 3;
}

int default_tripod_length(std::size_t n, int rank) {
  double m = scale_m(n, rank);
  int L = static_cast<int>(std::floor(0.4 * m));
  return std::max(1, L);
}

namespace {

// Level-L cyclic subword ids: prefix u_i and suffix w_i per position of
// the doubled segment s_i = v[i .. i+2L).
struct LevelIndex {
  int num_words = 0;
  std::vector<int> prefix;   // u_i id
  std::vector<int> suffix;   // w_i id
  std::vector<int> inverse;  // word id -> id of inverse word, or -1
  std::vector<std::string> word_of;
  std::vector<std::vector<int>> positions_by_prefix;

  LevelIndex(const CyclicWord& v, int L) {
    const std::size_t n = v.length();
    std::unordered_map<std::string, int> ids;
    auto intern = [&](const std::string& s) {
      auto [it, inserted] = ids.try_emplace(s, num_words);
      if (inserted) {
        ++num_words;
        word_of.push_back(s);
      }
      return it->second;
    };
    prefix.resize(n);
    suffix.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      prefix[i] = intern(v.subword(i, L));
      suffix[i] = intern(v.subword(i + L, L));
    }
    inverse.assign(num_words, -1);
    for (int w = 0; w < num_words; ++w) {
      auto it = ids.find(invert_letters(word_of[w]));
      if (it != ids.end()) inverse[w] = it->second;
    }
    positions_by_prefix.resize(num_words);
    for (std::size_t i = 0; i < n; ++i) positions_by_prefix[prefix[i]].push_back(i);
  }
};

}  // namespace

TripodEnumeration enumerate_tripods(const CyclicWord& v, int L, int rank) {
  const std::size_t n = v.length();
  if (L < 1 || 2 * static_cast<std::size_t>(L) > n) {
    throw RangeError("tripod edge length must satisfy 1 <= L <= |v|/2");
  }
  TripodEnumeration out;
  out.edge_length = L;
  out.abstract_count = tripod_abstract_count(L, rank);

  LevelIndex idx(v, L);
  // Edge i -> j when inv(w_i) = u_j; tripod copies are 3-cycles.
  auto adjacency = [&](int i) -> const std::vector<int>& {
    static const std::vector<int> empty;
    int target = idx.inverse[idx.suffix[i]];
    if (target < 0) return empty;
    return idx.positions_by_prefix[target];
  };
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    for (int i2 : adjacency(static_cast<int>(i1))) {
      if (i2 < static_cast<int>(i1)) continue;
      for (int i3 : adjacency(i2)) {
        if (i3 < static_cast<int>(i1)) continue;
        // Close the cycle and keep one rotation representative.
        int target = idx.inverse[idx.suffix[i3]];
        if (target < 0 || target != idx.prefix[i1]) continue;
        std::array<int, 3> t{static_cast<int>(i1), i2, i3};
        std::array<int, 3> r1{t[1], t[2], t[0]}, r2{t[2], t[0], t[1]};
        if (t <= r1 && t <= r2) out.copies.push_back({t[0], t[1], t[2]});
      }
    }
  }
  return out;
}

ImbalanceReport imbalance_statistic(const CyclicWord& v, int L, int rank) {
  const std::size_t n = v.length();
  if (L < 1 || 2 * static_cast<std::size_t>(L) > n) {
    throw RangeError("tripod edge length must satisfy 1 <= L <= |v|/2");
  }
  (void)rank;
  LevelIndex idx(v, L);

  // T2[x][y] = number of positions whose segment has prefix x, suffix y.
  const long W = idx.num_words;
  std::vector<long> t2(static_cast<std::size_t>(W) * W, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++t2[static_cast<std::size_t>(idx.prefix[i]) * W + idx.suffix[i]];
  }

  // Doubled buffers avoid modular arithmetic in the extension loop.
  std::string vv = v.str() + v.str();
  std::string iv = vv;
  for (char& c : iv) c = inverse_letter(c);

  ImbalanceReport report;
  report.mass = 0;
  report.imbalance = 0;
  std::vector<std::pair<std::uint64_t, long>> dmu;
  long total_weight = 0;

  // One pass over corner pairs (i1, i3): i3 -> i1 must be an edge, and
  // the number of middle positions i2 is T2[inv(w_i1)][inv(u_i3)].
  for (std::size_t i3 = 0; i3 < n; ++i3) {
    int target = idx.inverse[idx.suffix[i3]];
    if (target < 0) continue;
    int zinv = idx.inverse[idx.prefix[i3]];
    if (zinv < 0) continue;
    for (int i1 : idx.positions_by_prefix[target]) {
      int yid = idx.inverse[idx.suffix[i1]];
      if (yid < 0) continue;
      long weight = t2[static_cast<std::size_t>(yid) * W + zinv];
      if (weight == 0) continue;
      // Maximal joint of the pair: x at [i1, i1+L), X at [i3+L, i3+2L),
      // extended left of x and right of X while letters stay inverse.
      long e = 0;
      long left = i1 - 1 + static_cast<long>(n);            // index into vv
      long right = (static_cast<long>(i3) + 2 * L) % static_cast<long>(n);  // into iv
      while (e < static_cast<long>(n) && vv[left - e] == iv[right + e]) ++e;
      int a = static_cast<int>((i1 - e + static_cast<long>(n)) % static_cast<long>(n));
      int b = static_cast<int>((static_cast<long>(i3) + L) % static_cast<long>(n));
      long len = L + e;
      std::uint64_t key =
          (static_cast<std::uint64_t>(a) * n + b) * (2 * n + 1) + static_cast<std::uint64_t>(len);
      dmu.emplace_back(key, weight);
      total_weight += weight;
    }
  }
  if (total_weight == 0) {
    report.no_tripods = true;
    return report;
  }
  if (total_weight % 3 != 0) {
    throw InternalError("tripod corner count is not a multiple of three");
  }
  report.mass = total_weight / 3;
  report.boundary_mass = total_weight;

  std::sort(dmu.begin(), dmu.end());
  std::vector<std::pair<std::uint64_t, long>> agg;
  for (const auto& [key, weight] : dmu) {
    if (!agg.empty() && agg.back().first == key) {
      agg.back().second += weight;
    } else {
      agg.emplace_back(key, weight);
    }
  }
  Integer imbalance = 0;
  for (const auto& [key, weight] : agg) {
    std::uint64_t len = key % (2 * n + 1);
    std::uint64_t ab = key / (2 * n + 1);
    std::uint64_t a = ab / n, b = ab % n;
    std::uint64_t swapped = (b * n + a) * (2 * n + 1) + len;
    auto it = std::lower_bound(agg.begin(), agg.end(), std::make_pair(swapped, 0L));
    long other = (it != agg.end() && it->first == swapped) ? it->second : 0;
    imbalance += std::labs(weight - other);
  }
  report.imbalance = imbalance;
  return report;
}

namespace {

struct Rect {
  int start;
  int len;
};

struct SeamEnd {
  int start_slot = -1;  // a left (starting) red side
  int end_slot = -1;    // a right (ending) red side
  int dart = -1;        // fatgraph dart anchored at this end
};

}  // namespace

UpperBoundResult assemble_upper_bound(const CyclicWord& v, int L, int rank,
                                      long rounding_budget) {
  const std::size_t n = v.length();
  Alphabet alphabet(rank);
  alphabet.require_word(v.str());
  if (!is_homologically_trivial(v.str(), alphabet)) {
    throw NotABoundaryError("tripod assembly needs a homologically trivial word");
  }
  if (L < 1 || 2 * static_cast<std::size_t>(L) > n) {
    throw RangeError("tripod edge length must satisfy 1 <= L <= |v|/2");
  }

  auto enumeration = enumerate_tripods(v, L, rank);
  auto& all_copies = enumeration.copies;
  if (rounding_budget >= 0 && static_cast<long>(all_copies.size()) > rounding_budget) {
    all_copies.resize(rounding_budget);
  }

  const std::vector<TripodCopy>& copies = all_copies;
  std::vector<long> cover(n, 0);
  std::vector<Rect> rects;
  for (const auto& c : copies) {
    for (int s : {c.i1, c.i2, c.i3}) {
      rects.push_back({s, 2 * L});
      for (int t = 0; t < 2 * L; ++t) ++cover[(s + t) % n];
    }
  }
  long coverage = 1;
  for (long c : cover) coverage = std::max(coverage, c);
  // Short rectangles fill every position up to N'.
  std::vector<int> short_of_position;  // flattened with multiplicity
  std::vector<int> first_short(n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    for (long t = cover[p]; t < coverage; ++t) {
      if (first_short[p] < 0) first_short[p] = static_cast<int>(rects.size());
      rects.push_back({static_cast<int>(p), 1});
      short_of_position.push_back(static_cast<int>(p));
    }
  }

  // Red slots: slot 2r = left (cut start), 2r+1 = right (cut start+len).
  auto slot_cut = [&](int slot) {
    const Rect& r = rects[slot / 2];
    return slot % 2 == 0 ? r.start : (r.start + r.len) % static_cast<int>(n);
  };

  // Seams and their ends. Tripod seam ends: outer = (first-rect left,
  // third-rect right); the inner ends meet at the copy's center vertex.
  struct Seam {
    std::string label;
    int outer_end;   // index into ends
    int inner_end;   // -1 for short seams (they have two orbit ends)
  };
  std::vector<Seam> seams;
  std::vector<SeamEnd> ends;
  std::vector<int> slot_end(2 * rects.size(), -1);

  auto new_end = [&](int start_slot, int end_slot) {
    SeamEnd e;
    e.start_slot = start_slot;
    e.end_slot = end_slot;
    slot_end[start_slot] = static_cast<int>(ends.size());
    slot_end[end_slot] = static_cast<int>(ends.size());
    ends.push_back(e);
    return static_cast<int>(ends.size() - 1);
  };

  struct Leaf {
    int copy;
    int corner;
    int end;  // seam-end index
  };
  std::vector<Leaf> leaves;

  for (std::size_t c = 0; c < copies.size(); ++c) {
    int r1 = static_cast<int>(3 * c), r2 = r1 + 1, r3 = r1 + 2;
    int starts[3] = {copies[c].i1, copies[c].i2, copies[c].i3};
    int first_rect[3] = {r1, r2, r3};
    int third_rect[3] = {r3, r1, r2};
    for (int corner = 0; corner < 3; ++corner) {
      Seam seam;
      seam.label = v.subword(starts[corner], L);
      seam.outer_end = new_end(2 * first_rect[corner], 2 * third_rect[corner] + 1);
      seam.inner_end = -1;  // tripod centers are separate vertices
      seams.push_back(seam);
      leaves.push_back({static_cast<int>(c), corner, seam.outer_end});
    }
  }

  // Short seams: pair leftover letters along maximal inverse strips,
  // so that consecutive short seams share reciprocal red gluings and
  // later merge into long edges. Queues hold unconsumed instances.
  std::vector<std::vector<int>> free_shorts(n);
  std::vector<long> remaining(n, 0);
  for (std::size_t i = 0; i < short_of_position.size(); ++i) {
    int rect = static_cast<int>(3 * copies.size() + i);
    free_shorts[short_of_position[i]].push_back(rect);
    ++remaining[short_of_position[i]];
  }
  struct ShortPair {
    int pos_rect;  // lowercase side
    int neg_rect;
  };
  std::vector<std::vector<ShortPair>> strips;
  auto strip_length = [&](std::size_t p, std::size_t q) {
    // Simulated consumption: count how far the inverse match extends.
    std::map<std::size_t, long> used;
    long t = 0;
    while (true) {
      std::size_t a = (p + t) % n, b = (q + n - t) % n;
      if (a == b) break;
      if (v.at(a) != inverse_letter(v.at(b))) break;
      if (remaining[a] - used[a] < 1) break;
      ++used[a];
      if (remaining[b] - used[b] < 1) break;
      ++used[b];
      ++t;
    }
    return t;
  };
  for (std::size_t p = 0; p < n; ++p) {
    while (remaining[p] > 0) {
      if (v.at(p) >= 'A' && v.at(p) <= 'Z') break;  // anchor on lowercase only
      long best_len = 0;
      std::size_t best_q = n;
      for (std::size_t q = 0; q < n; ++q) {
        if (q == p || remaining[q] == 0) continue;
        if (v.at(q) != inverse_letter(v.at(p))) continue;
        long len = strip_length(p, q);
        if (len > best_len) {
          best_len = len;
          best_q = q;
        }
      }
      if (best_q == n) {
        throw AssemblyFailure("short rectangles do not balance per generator");
      }
      std::vector<ShortPair> strip;
      for (long t = 0; t < best_len; ++t) {
        std::size_t a = (p + t) % n, b = (best_q + n - t) % n;
        ShortPair pair{free_shorts[a].back(), free_shorts[b].back()};
        free_shorts[a].pop_back();
        --remaining[a];
        free_shorts[b].pop_back();
        --remaining[b];
        strip.push_back(pair);
      }
      strips.push_back(std::move(strip));
    }
  }
  // Any leftover uppercase anchors pair with remaining lowercase ones.
  for (std::size_t p = 0; p < n; ++p) {
    while (remaining[p] > 0 && v.at(p) >= 'a') {
      long found = 0;
      for (std::size_t q = 0; q < n && remaining[p] > 0; ++q) {
        if (remaining[q] == 0 || v.at(q) != inverse_letter(v.at(p))) continue;
        ShortPair pair{free_shorts[p].back(), free_shorts[q].back()};
        free_shorts[p].pop_back();
        --remaining[p];
        free_shorts[q].pop_back();
        --remaining[q];
        strips.push_back({pair});
        ++found;
      }
      if (found == 0) {
        throw AssemblyFailure("short rectangles do not balance per generator");
      }
    }
  }
  std::vector<std::pair<int, int>> reserved_reds;  // (ender slot, starter slot)
  for (const auto& strip : strips) {
    for (std::size_t t = 0; t < strip.size(); ++t) {
      Seam seam;
      seam.label = std::string(1, v.at(rects[strip[t].pos_rect].start));
      int end_l = new_end(2 * strip[t].pos_rect, 2 * strip[t].neg_rect + 1);
      int end_r = new_end(2 * strip[t].neg_rect, 2 * strip[t].pos_rect + 1);
      seam.outer_end = end_l;
      seam.inner_end = end_r;
      seams.push_back(seam);
      if (t + 1 < strip.size()) {
        // Reciprocal reds between consecutive strip pairs.
        reserved_reds.push_back({2 * strip[t].pos_rect + 1, 2 * strip[t + 1].pos_rect});
        reserved_reds.push_back({2 * strip[t + 1].neg_rect + 1, 2 * strip[t].neg_rect});
      }
    }
  }

  // Red matching. First the reciprocal tripod-leaf pairings (greedy by
  // key, lexicographic order), then everything else per cut in sorted
  // order.
  std::vector<int> partner(2 * rects.size(), -1);
  for (const auto& [ender, starter] : reserved_reds) {
    partner[ender] = starter;
    partner[starter] = ender;
  }
  std::map<std::pair<int, int>, std::vector<int>> leaves_by_key;
  for (std::size_t l = 0; l < leaves.size(); ++l) {
    const SeamEnd& e = ends[leaves[l].end];
    leaves_by_key[{slot_cut(e.start_slot), slot_cut(e.end_slot)}].push_back(
        static_cast<int>(l));
  }
  for (auto& [key, list] : leaves_by_key) {
    if (key.first >= key.second) continue;  // handle each unordered pair once
    auto other = leaves_by_key.find({key.second, key.first});
    if (other == leaves_by_key.end()) continue;
    std::size_t pairs = std::min(list.size(), other->second.size());
    for (std::size_t i = 0; i < pairs; ++i) {
      const SeamEnd& ea = ends[leaves[list[i]].end];
      const SeamEnd& eb = ends[leaves[other->second[i]].end];
      partner[ea.start_slot] = eb.end_slot;
      partner[eb.end_slot] = ea.start_slot;
      partner[eb.start_slot] = ea.end_slot;
      partner[ea.end_slot] = eb.start_slot;
    }
  }
  {
    // Union-find over seam ends; pairings that close an orbit finish a
    // vertex, so prefer an (ender, starter) pair already connected.
    std::vector<int> parent(ends.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto link = [&](int a, int b) { parent[find(a)] = find(b); };
    for (std::size_t s = 0; s < partner.size(); ++s) {
      if (partner[s] >= 0 && slot_end[s] >= 0 && slot_end[partner[s]] >= 0) {
        link(slot_end[s], slot_end[partner[s]]);
      }
    }
    std::map<int, std::vector<int>> starters, enders;
    for (std::size_t r = 0; r < rects.size(); ++r) {
      int ls = static_cast<int>(2 * r), rs = ls + 1;
      if (partner[ls] < 0) starters[slot_cut(ls)].push_back(ls);
      if (partner[rs] < 0) enders[slot_cut(rs)].push_back(rs);
    }
    std::size_t pending = 0;
    for (auto& [cut, list] : enders) {
      if (starters[cut].size() != list.size()) {
        throw AssemblyFailure("red sides do not balance at a cut");
      }
      pending += list.size();
    }
    // Round-robin over cuts, taking orbit-closing pairs first; when a
    // full round closes nothing, pair arbitrarily once and retry.
    auto take = [&](std::vector<int>& list, std::size_t i) {
      list[i] = list.back();
      list.pop_back();
    };
    while (pending > 0) {
      bool closed = true;
      while (closed) {
        closed = false;
        for (auto& [cut, list] : enders) {
          auto& sl = starters[cut];
          for (std::size_t i = 0; i < list.size(); ++i) {
            for (std::size_t j = 0; j < sl.size(); ++j) {
              if (find(slot_end[list[i]]) == find(slot_end[sl[j]])) {
                partner[list[i]] = sl[j];
                partner[sl[j]] = list[i];
                link(slot_end[list[i]], slot_end[sl[j]]);
                take(list, i);
                take(sl, j);
                --pending;
                closed = true;
                --i;
                break;
              }
            }
          }
        }
      }
      if (pending == 0) break;
      for (auto& [cut, list] : enders) {
        if (list.empty()) continue;
        auto& sl = starters[cut];
        partner[list[0]] = sl[0];
        partner[sl[0]] = list[0];
        link(slot_end[list[0]], slot_end[sl[0]]);
        take(list, 0);
        take(sl, 0);
        --pending;
        break;
      }
    }
  }

  // Corner vertices: orbits of seam-ends under (exit via end slot, enter
  // at partner's owner). Rotation = visiting order.
  Fatgraph y;
  y.multiplicity = coverage;
  std::vector<int> end_vertex(ends.size(), -1);
  std::vector<std::vector<int>> vertex_end_order;
  std::vector<bool> end_seen(ends.size(), false);
  for (std::size_t start = 0; start < ends.size(); ++start) {
    if (end_seen[start]) continue;
    std::vector<int> orbit;
    std::size_t cur = start;
    while (!end_seen[cur]) {
      end_seen[cur] = true;
      orbit.push_back(static_cast<int>(cur));
      int next_slot = partner[ends[cur].end_slot];
      if (next_slot < 0 || slot_end[next_slot] < 0) {
        throw AssemblyFailure("dangling red side during assembly");
      }
      cur = static_cast<std::size_t>(slot_end[next_slot]);
    }
    int vid = y.add_vertex();
    vertex_end_order.push_back(orbit);
    for (int e : orbit) end_vertex[e] = vid;
  }
  // Center vertices, one per copy.
  std::vector<int> center_vertex(copies.size());
  for (std::size_t c = 0; c < copies.size(); ++c) center_vertex[c] = y.add_vertex();

  // Edges: dart 2e sits at the outer end (label read outward-in).
  std::vector<int> dart_of_end(ends.size(), -1);
  for (std::size_t s = 0; s < seams.size(); ++s) {
    int e = static_cast<int>(y.edge_labels.size());
    y.edge_labels.push_back(seams[s].label);
    y.dart_vertex.resize(2 * e + 2, -1);
    dart_of_end[seams[s].outer_end] = 2 * e;
    y.dart_vertex[2 * e] = end_vertex[seams[s].outer_end];
    if (seams[s].inner_end >= 0) {
      dart_of_end[seams[s].inner_end] = 2 * e + 1;
      y.dart_vertex[2 * e + 1] = end_vertex[seams[s].inner_end];
    }
  }
  // Tripod inner darts attach to the centers with rotation (x, y, z).
  for (std::size_t c = 0; c < copies.size(); ++c) {
    for (int corner = 0; corner < 3; ++corner) {
      int seam = static_cast<int>(3 * c) + corner;
      int d = 2 * seam + 1;
      y.dart_vertex[d] = center_vertex[c];
      y.vertex_darts[center_vertex[c]].push_back(d);
    }
  }
  for (std::size_t vid = 0; vid < vertex_end_order.size(); ++vid) {
    for (int e : vertex_end_order[vid]) {
      y.vertex_darts[vid].push_back(dart_of_end[e]);
    }
  }

  UpperBoundResult result;
  result.tripods_used = static_cast<long>(copies.size());
  result.coverage = coverage;
  result.fatgraph = merge_bivalent_vertices(y);

  // chi^- over components (chi > 0 cannot occur for reduced boundaries).
  const Fatgraph& fg = result.fatgraph;
  std::vector<int> comp(fg.num_vertices(), -1);
  int num_comp = 0;
  for (int v0 = 0; v0 < fg.num_vertices(); ++v0) {
    if (comp[v0] >= 0) continue;
    std::vector<int> stack{v0};
    comp[v0] = num_comp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int d : fg.vertex_darts[u]) {
        int w = fg.dart_vertex[d ^ 1];
        if (comp[w] < 0) {
          comp[w] = num_comp;
          stack.push_back(w);
        }
      }
    }
    ++num_comp;
  }
  std::vector<long> cv(num_comp, 0), ce(num_comp, 0);
  for (int u = 0; u < fg.num_vertices(); ++u) ++cv[comp[u]];
  for (int e = 0; e < fg.num_edges(); ++e) ++ce[comp[fg.dart_vertex[2 * e]]];
  long minus_chi_minus = 0;
  for (int c = 0; c < num_comp; ++c) {
    long chi = cv[c] - ce[c];
    if (chi < 0) minus_chi_minus -= chi;
  }
  result.upper_bound = Rational(minus_chi_minus, 2 * coverage);
  result.upper_bound.canonicalize();
  return result;
}

}  // namespace scl
