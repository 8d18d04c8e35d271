#pragma once

#include <cstdint>
#include <vector>

#include "scl/fatgraph.hpp"
#include "scl/rational.hpp"
#include "scl/word.hpp"

namespace scl {

/// One copy of a tripod of edge length L in a cyclic word: the starts
/// of the three segments xY, yZ, zX. Segments may overlap.
struct TripodCopy {
  int i1;
  int i2;
  int i3;
};

struct TripodEnumeration {
  int edge_length = 1;
  std::vector<TripodCopy> copies;
  Integer abstract_count;  // (2k)(2k-1)(2k-2)(2k-1)^{3(L-1)} / 3
};

/// All tripod copies of edge length L in v, one per rotation class of
/// the defining 3-cycle. Requires 1 <= L <= |v|/2.
TripodEnumeration enumerate_tripods(const CyclicWord& v, int L, int rank);

/// Number of tripods of edge length L over the rank-k alphabet.
Integer tripod_abstract_count(int L, int rank);

/// Total-variation imbalance |d mu - iota d mu| of the uniform measure
/// on tripod copies, pushed to maximal joints, via aggregated counts
/// (no explicit copy enumeration).
struct ImbalanceReport {
  Integer imbalance;
  Integer mass;            // |mu| = number of tripod copies
  Integer boundary_mass;   // |d mu| = 3 |mu|
  bool no_tripods = false;
};

ImbalanceReport imbalance_statistic(const CyclicWord& v, int L, int rank);

/// Default tripod edge length floor((1/2 - 0.1) m), clamped to >= 1.
int default_tripod_length(std::size_t n, int rank);

/// Constructive upper bound: tripod copies (capped by rounding_budget)
/// become long rectangles, coverage is completed with short rectangles,
/// joints are matched greedily and the rest is glued in sorted order.
/// The fatgraph bounds multiplicity * v and -chi^- / (2 multiplicity)
/// is an upper bound for scl(v).
struct UpperBoundResult {
  Fatgraph fatgraph;
  Rational upper_bound;
  long tripods_used = 0;
  long coverage = 0;  // N'
};

UpperBoundResult assemble_upper_bound(const CyclicWord& v, int L, int rank,
                                      long rounding_budget = 200000);

}  // namespace scl
