#pragma once

#include <string>
#include <vector>

#include "scl/chain.hpp"
#include "scl/scl_solver.hpp"

namespace scl {

/// Labeled ribbon graph. Edge e owns darts 2e and 2e+1; dart 2e reads
/// the edge label, its twin the inverse. vertex_darts lists the darts
/// leaving each vertex in the cyclic order induced by the orientation
/// of the thickened surface. Edges may have empty labels (length 0).
class Fatgraph {
 public:
  std::vector<std::vector<int>> vertex_darts;
  std::vector<std::string> edge_labels;
  std::vector<int> dart_vertex;  // dart id -> vertex id
  long multiplicity = 1;

  int num_vertices() const { return static_cast<int>(vertex_darts.size()); }
  int num_edges() const { return static_cast<int>(edge_labels.size()); }
  long chi() const { return num_vertices() - num_edges(); }
  std::size_t total_edge_length() const;
  bool trivalent() const;

  int add_vertex();
  /// Adds an edge with the label read from dart_a's vertex to dart_b's;
  /// darts are appended to the vertices' rotations in call order.
  int add_edge(int vertex_a, int vertex_b, const std::string& label);

  /// Boundary components: the cyclic letter sequences read around the
  /// thickened surface (not normalized, possibly empty for components
  /// passing only length-0 edges).
  std::vector<std::string> boundary_words() const;
};

/// Itemized result of verify_fatgraph. Value checks are exact.
struct FatgraphReport {
  bool boundary_reduced = false;   // every boundary word cyclically reduced
  bool boundary_matches = false;   // boundary chain == N * chain, exactly
  bool euler_consistent = false;   // chi == V - E recomputation
  bool trivalent = false;
  bool trivalent_identities = false;  // 2E == 3V and -chi == E/3 (when trivalent)
  bool length_identity = false;       // boundary length == 2 * edge length
  int degenerate_boundary_circles = 0;

  // Statistics (single-word chains): average edge length written as
  // ell * m, and the accounting value n log(2k-1) / (12 ell log n).
  double average_edge_length = 0;
  double ell = 0;
  double ell_alternative = 0;  // total length / (E + sum(valence - 3))
  double accounting_value = 0;
  Rational minus_chi_over_2n;

  bool all_passed() const {
    return boundary_reduced && boundary_matches && euler_consistent && length_identity &&
           (!trivalent || trivalent_identities);
  }
};

/// Checks a fatgraph against N * chain and reports the accounting
/// statistics. Never throws; failures are itemized.
FatgraphReport verify_fatgraph(const Fatgraph& y, const Chain& chain, int rank);

/// Builds the fatgraph of an exact LP solution: scales the primal to
/// integers, pairs interfaces in sorted order, merges square chains
/// into labeled edges (triangle-triangle gluings become length-0
/// edges). The result verifies against the chain.
Fatgraph extract_fatgraph(const SclResult& result, const Chain& chain);

/// Splices out 2-valent vertices, concatenating the labels of the two
/// incident edges. Neither the surface nor its boundary changes.
Fatgraph merge_bivalent_vertices(const Fatgraph& y);

/// Serialization of fatgraphs in a line-based text format, shared by
/// the LP extractor and the tripod assembler.
std::string fatgraph_to_text(const Fatgraph& y);
Fatgraph fatgraph_from_text(const std::string& text);

}  // namespace scl
