#include "scl/fatgraph.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "scl/errors.hpp"
#include "scl/pieces.hpp"
#include "scl/sampling.hpp"

namespace scl {

std::size_t Fatgraph::total_edge_length() const {
  std::size_t total = 0;
  for (const auto& l : edge_labels) total += l.size();
  return total;
}

bool Fatgraph::trivalent() const {
  for (const auto& v : vertex_darts) {
    if (v.size() != 3) return false;
  }
  return num_vertices() > 0;
}

int Fatgraph::add_vertex() {
  vertex_darts.emplace_back();
  return num_vertices() - 1;
}

int Fatgraph::add_edge(int vertex_a, int vertex_b, const std::string& label) {
  int e = num_edges();
  edge_labels.push_back(label);
  dart_vertex.resize(2 * e + 2, -1);
  dart_vertex[2 * e] = vertex_a;
  dart_vertex[2 * e + 1] = vertex_b;
  vertex_darts[vertex_a].push_back(2 * e);
  vertex_darts[vertex_b].push_back(2 * e + 1);
  return e;
}

std::vector<std::string> Fatgraph::boundary_words() const {
  // Faces of the combinatorial map: next(d) = rotation successor of the
  // twin of d at its vertex; traversing dart d reads its label.
  std::vector<int> succ(dart_vertex.size(), -1);
  for (const auto& darts : vertex_darts) {
    for (std::size_t i = 0; i < darts.size(); ++i) {
      succ[darts[i] ^ 1] = darts[(i + 1) % darts.size()];
    }
  }
  std::vector<bool> seen(dart_vertex.size(), false);
  std::vector<std::string> words;
  for (std::size_t start = 0; start < succ.size(); ++start) {
    if (seen[start] || succ[start] < 0) continue;
    std::string w;
    std::size_t d = start;
    while (!seen[d]) {
      seen[d] = true;
      int e = static_cast<int>(d / 2);
      if (d % 2 == 0) {
        w += edge_labels[e];
      } else {
        w += invert_letters(edge_labels[e]);
      }
      d = static_cast<std::size_t>(succ[d]);
    }
    words.push_back(w);
  }
  return words;
}

FatgraphReport verify_fatgraph(const Fatgraph& y, const Chain& chain, int rank) {
  FatgraphReport report;
  Alphabet alphabet(rank);
  Chain target = chain.normalized() ? chain : normalize_chain(chain);

  auto words = y.boundary_words();
  report.boundary_reduced = true;
  std::size_t boundary_length = 0;
  std::vector<ChainTerm> terms;
  for (const auto& w : words) {
    if (w.empty()) {
      ++report.degenerate_boundary_circles;
      continue;
    }
    boundary_length += w.size();
    if (!is_cyclically_reduced(w)) {
      report.boundary_reduced = false;
      continue;
    }
    terms.push_back({Rational(1), CyclicWord(w)});
  }
  if (report.boundary_reduced) {
    Chain boundary(terms, alphabet);
    Chain lhs = normalize_chain(boundary);
    Chain rhs = normalize_chain(scale_chain(Rational(y.multiplicity), target));
    report.boundary_matches = lhs.terms().size() == rhs.terms().size();
    if (report.boundary_matches) {
      for (std::size_t i = 0; i < lhs.terms().size(); ++i) {
        if (lhs.terms()[i].coefficient != rhs.terms()[i].coefficient ||
            !(lhs.terms()[i].word == rhs.terms()[i].word)) {
          report.boundary_matches = false;
        }
      }
    }
  }

  report.euler_consistent = (y.chi() == y.num_vertices() - y.num_edges());
  report.trivalent = y.trivalent();
  if (report.trivalent) {
    report.trivalent_identities =
        (2 * y.num_edges() == 3 * y.num_vertices()) && (-y.chi() * 3 == y.num_edges());
  }
  report.length_identity = (boundary_length == 2 * y.total_edge_length());

  if (y.num_edges() > 0) {
    report.average_edge_length =
        static_cast<double>(y.total_edge_length()) / y.num_edges();
    long excess = 0;
    for (const auto& v : y.vertex_darts) excess += static_cast<long>(v.size()) - 3;
    report.ell_alternative = static_cast<double>(y.total_edge_length()) /
                             (static_cast<double>(y.num_edges()) + excess);
  }
  if (target.terms().size() == 1 && target.terms()[0].coefficient == 1) {
    std::size_t n = target.terms()[0].word.length();
    if (n >= 2 && y.num_edges() > 0) {
      double m = scale_m(n, rank);
      report.ell = report.average_edge_length / m;
      if (report.ell > 0) {
        report.accounting_value = static_cast<double>(n) / (12.0 * report.ell * m);
      }
    }
  }
  if (y.multiplicity > 0) {
    report.minus_chi_over_2n = Rational(-y.chi(), 2 * y.multiplicity);
    report.minus_chi_over_2n.canonicalize();
  }
  return report;
}

namespace {

struct Slot {
  int kind;      // 0 = square, 1 = triangle
  int instance;  // index into the instance arrays
  int sub;       // square: 0 = left, 1 = right; triangle: arc index
};

}  // namespace

Fatgraph extract_fatgraph(const SclResult& result, const Chain& chain) {
  if (!result.exact) {
    throw RangeError("fatgraph extraction needs an exact primal solution");
  }
  Chain c = chain.normalized() ? chain : normalize_chain(chain);
  Fatgraph y;
  if (c.is_zero()) {
    y.multiplicity = 1;
    return y;
  }
  PieceSystem sys = enumerate_pieces(c);
  const std::size_t num_squares = sys.squares().size();

  // Common denominator of the primal weights and the coefficients.
  Integer denom = 1;
  auto fold_lcm = [&denom](const Integer& v) {
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), v.get_mpz_t());
  };
  for (const auto& x : result.primal) {
    if (x != 0) fold_lcm(Integer(x.get_den()));
  }
  for (const auto& t : c.terms()) fold_lcm(Integer(t.coefficient.get_den()));

  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<long> mult(result.primal.size(), 0);
    for (std::size_t j = 0; j < result.primal.size(); ++j) {
      Rational scaled = result.primal[j] * Rational(denom);
      mult[j] = scaled.get_num().get_si();
    }
    // Instances.
    std::vector<int> square_of_instance, triangle_of_instance;
    for (std::size_t j = 0; j < result.primal.size(); ++j) {
      for (long copy = 0; copy < mult[j]; ++copy) {
        if (j < num_squares) {
          square_of_instance.push_back(static_cast<int>(j));
        } else {
          triangle_of_instance.push_back(static_cast<int>(j - num_squares));
        }
      }
    }
    // Interface slots grouped by directed gap pair, in instance order.
    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    std::vector<Slot> slots;
    auto add_slot = [&](int kind, int inst, int sub, std::pair<int, int> dir) {
      by_pair[dir].push_back(static_cast<int>(slots.size()));
      slots.push_back(Slot{kind, inst, sub});
    };
    for (std::size_t i = 0; i < square_of_instance.size(); ++i) {
      const auto& sq = sys.squares()[square_of_instance[i]];
      auto ifs = sys.square_interfaces(sq);
      // sub 0 = left side (t(q), t(prev p)), sub 1 = right (t(p), t(prev q)).
      add_slot(0, static_cast<int>(i), 0, ifs[1]);
      add_slot(0, static_cast<int>(i), 1, ifs[0]);
    }
    for (std::size_t i = 0; i < triangle_of_instance.size(); ++i) {
      const auto& tr = sys.triangles()[triangle_of_instance[i]];
      auto ifs = PieceSystem::triangle_interfaces(tr);
      for (int a = 0; a < 3; ++a) add_slot(1, static_cast<int>(i), a, ifs[a]);
    }
    // Deterministic pairing; self-directed pairs must come in twos.
    bool needs_doubling = false;
    std::vector<int> partner(slots.size(), -1);
    for (auto& [dir, list] : by_pair) {
      if (dir.first == dir.second) {
        if (list.size() % 2 != 0) {
          needs_doubling = true;
          break;
        }
        for (std::size_t i = 0; i + 1 < list.size(); i += 2) {
          partner[list[i]] = list[i + 1];
          partner[list[i + 1]] = list[i];
        }
        continue;
      }
      auto rev = by_pair.find({dir.second, dir.first});
      if (rev == by_pair.end() || rev->second.size() != list.size()) {
        throw InternalError("interface balance violated during extraction");
      }
      for (std::size_t i = 0; i < list.size(); ++i) {
        partner[list[i]] = rev->second[i];
        partner[rev->second[i]] = list[i];
      }
    }
    if (needs_doubling) {
      denom *= 2;
      continue;
    }

    // Fatgraph: one vertex per triangle instance, edges from square
    // chains and triangle-triangle gluings.
    y.vertex_darts.clear();
    y.edge_labels.clear();
    y.dart_vertex.clear();
    y.multiplicity = denom.get_si();
    for (std::size_t v = 0; v < triangle_of_instance.size(); ++v) y.add_vertex();

    // Dart slots per vertex in arc order; edges discovered in slot order.
    int total_tri_slots = static_cast<int>(3 * triangle_of_instance.size());
    std::vector<int> slot_of_dartpos(total_tri_slots, -1);
    std::vector<bool> slot_done(slots.size(), false);
    // Precompute global slot index of triangle (inst, arc).
    std::vector<int> tri_slot_base(triangle_of_instance.size());
    {
      int base = static_cast<int>(2 * square_of_instance.size());
      for (std::size_t i = 0; i < triangle_of_instance.size(); ++i) {
        tri_slot_base[i] = base + static_cast<int>(3 * i);
      }
    }
    // Keep each vertex's rotation in arc order: reserve placeholders.
    std::vector<std::vector<int>> rotations(triangle_of_instance.size(),
                                            std::vector<int>(3, -1));
    for (std::size_t i = 0; i < triangle_of_instance.size(); ++i) {
      for (int a = 0; a < 3; ++a) {
        int s = tri_slot_base[i] + a;
        if (slot_done[s]) continue;
        // Walk through square instances to the far triangle slot.
        std::string label;
        int cur = partner[s];
        while (slots[cur].kind == 0) {
          const Slot& sq = slots[cur];
          const auto& piece = sys.squares()[square_of_instance[sq.instance]];
          // Entering via left (sub 0) reads the top letter; via right
          // (sub 1) the bottom letter.
          label.push_back(sq.sub == 0 ? sys.letter(piece.p) : sys.letter(piece.q));
          int other = (cur ^ 1);  // square slots are adjacent even/odd ids
          cur = partner[other];
        }
        const Slot& far = slots[cur];
        slot_done[s] = true;
        slot_done[cur] = true;
        int far_vertex = far.instance;
        int e = static_cast<int>(y.edge_labels.size());
        y.edge_labels.push_back(label);
        y.dart_vertex.resize(2 * e + 2, -1);
        y.dart_vertex[2 * e] = static_cast<int>(i);
        y.dart_vertex[2 * e + 1] = far_vertex;
        rotations[i][a] = 2 * e;
        rotations[far_vertex][far.sub] = 2 * e + 1;
      }
    }
    for (std::size_t v = 0; v < rotations.size(); ++v) {
      y.vertex_darts[v] = rotations[v];
      for (int d : rotations[v]) {
        if (d < 0) throw InternalError("extraction left an unglued triangle side");
      }
    }
    return y;
  }
  throw InternalError("extraction failed to even out self-interfaces");
}

Fatgraph merge_bivalent_vertices(const Fatgraph& input) {
  Fatgraph y = input;
  auto read_along = [&](int d) {
    return d % 2 == 0 ? y.edge_labels[d / 2] : invert_letters(y.edge_labels[d / 2]);
  };
  std::vector<bool> dead_vertex(y.vertex_darts.size(), false);
  std::vector<bool> dead_edge(y.edge_labels.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < y.num_vertices(); ++v) {
      if (dead_vertex[v] || y.vertex_darts[v].size() != 2) continue;
      int d1 = y.vertex_darts[v][0];
      int d2 = y.vertex_darts[v][1];
      if (d1 == (d2 ^ 1)) continue;  // lone circle component; leave it
      int u1 = y.dart_vertex[d1 ^ 1];
      int u2 = y.dart_vertex[d2 ^ 1];
      std::string label = invert_letters(read_along(d1)) + read_along(d2);
      int e = static_cast<int>(y.edge_labels.size());
      y.edge_labels.push_back(label);
      dead_edge.push_back(false);
      y.dart_vertex.resize(2 * e + 2, -1);
      y.dart_vertex[2 * e] = u1;
      y.dart_vertex[2 * e + 1] = u2;
      // Replace the far darts in place, preserving both rotations.
      for (int& d : y.vertex_darts[u1]) {
        if (d == (d1 ^ 1)) d = 2 * e;
      }
      for (int& d : y.vertex_darts[u2]) {
        if (d == (d2 ^ 1)) d = 2 * e + 1;
      }
      dead_edge[d1 / 2] = true;
      dead_edge[d2 / 2] = true;
      dead_vertex[v] = true;
      y.vertex_darts[v].clear();
      changed = true;
    }
  }
  // Compact.
  Fatgraph out;
  out.multiplicity = y.multiplicity;
  std::vector<int> vmap(y.vertex_darts.size(), -1);
  for (int v = 0; v < y.num_vertices(); ++v) {
    if (!dead_vertex[v]) vmap[v] = out.add_vertex();
  }
  std::vector<int> emap(y.edge_labels.size(), -1);
  for (int e = 0; e < y.num_edges(); ++e) {
    if (dead_edge[e]) continue;
    emap[e] = static_cast<int>(out.edge_labels.size());
    out.edge_labels.push_back(y.edge_labels[e]);
    out.dart_vertex.resize(out.dart_vertex.size() + 2, -1);
    out.dart_vertex[2 * emap[e]] = vmap[y.dart_vertex[2 * e]];
    out.dart_vertex[2 * emap[e] + 1] = vmap[y.dart_vertex[2 * e + 1]];
  }
  for (int v = 0; v < y.num_vertices(); ++v) {
    if (dead_vertex[v]) continue;
    for (int d : y.vertex_darts[v]) {
      out.vertex_darts[vmap[v]].push_back(2 * emap[d / 2] + (d % 2));
    }
  }
  return out;
}

std::string fatgraph_to_text(const Fatgraph& y) {
  std::ostringstream os;
  os << "fatgraph v1\n";
  os << "multiplicity " << y.multiplicity << "\n";
  os << "vertices " << y.num_vertices() << "\n";
  for (int v = 0; v < y.num_vertices(); ++v) {
    os << "vertex " << v;
    for (int d : y.vertex_darts[v]) os << " " << d;
    os << "\n";
  }
  os << "edges " << y.num_edges() << "\n";
  for (int e = 0; e < y.num_edges(); ++e) {
    os << "edge " << e << " " << y.dart_vertex[2 * e] << " " << y.dart_vertex[2 * e + 1]
       << " " << (y.edge_labels[e].empty() ? "-" : y.edge_labels[e]) << "\n";
  }
  return os.str();
}

Fatgraph fatgraph_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string tag, version;
  is >> tag >> version;
  if (tag != "fatgraph" || version != "v1") {
    throw SyntaxError("expected 'fatgraph v1' header", 0);
  }
  Fatgraph y;
  std::string key;
  int count = 0;
  is >> key >> y.multiplicity;
  if (key != "multiplicity") throw SyntaxError("expected multiplicity", 0);
  is >> key >> count;
  if (key != "vertices") throw SyntaxError("expected vertices", 0);
  y.vertex_darts.resize(count);
  for (int i = 0; i < count; ++i) {
    int v = 0;
    is >> key >> v;
    std::string rest;
    std::getline(is, rest);
    std::istringstream line(rest);
    int d = 0;
    while (line >> d) y.vertex_darts[v].push_back(d);
  }
  is >> key >> count;
  if (key != "edges") throw SyntaxError("expected edges", 0);
  y.edge_labels.resize(count);
  y.dart_vertex.assign(2 * count, -1);
  for (int i = 0; i < count; ++i) {
    int e = 0, a = 0, b = 0;
    std::string label;
    is >> key >> e >> a >> b >> label;
    y.dart_vertex[2 * e] = a;
    y.dart_vertex[2 * e + 1] = b;
    y.edge_labels[e] = label == "-" ? "" : label;
  }
  return y;
}

}  // namespace scl
