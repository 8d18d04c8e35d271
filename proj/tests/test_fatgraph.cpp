#include "doctest.h"

#include "scl/fatgraph.hpp"
#include "scl/rng.hpp"
#include "scl/sampling.hpp"

using namespace scl;

TEST_CASE("extraction for abAB gives the two-triangle surface") {
  Alphabet f2(2);
  Chain c = chain_of("abAB", f2);
  auto r = scl::scl(c, SolveMode::kExact);
  Fatgraph y = extract_fatgraph(r, c);

  CHECK(y.num_vertices() == 2);
  CHECK(y.num_edges() == 3);
  CHECK(y.chi() == -1);
  CHECK(y.multiplicity == 1);
  int zero_length = 0;
  for (const auto& l : y.edge_labels) {
    if (l.empty()) ++zero_length;
  }
  CHECK(zero_length == 1);

  auto report = verify_fatgraph(y, c, 2);
  CHECK(report.all_passed());
  CHECK(report.trivalent);
  CHECK(report.trivalent_identities);
  CHECK(report.minus_chi_over_2n == make_rational(1, 2));

  REQUIRE(y.boundary_words().size() == 1);
  CHECK(CyclicWord(y.boundary_words()[0]) == CyclicWord("abAB"));
}

TEST_CASE("zero chain extracts to the empty fatgraph") {
  Alphabet f2(2);
  Chain zero = chain_of("abAB - abAB", f2);
  auto r = scl::scl(zero, SolveMode::kExact);
  Fatgraph y = extract_fatgraph(r, zero);
  CHECK(y.num_vertices() == 0);
  CHECK(y.num_edges() == 0);
  CHECK(y.chi() == 0);
  auto report = verify_fatgraph(y, zero, 2);
  CHECK(report.boundary_matches);
}

TEST_CASE("extraction is consistent with the solver on powers") {
  Alphabet f2(2);
  Chain c = chain_of("abABabAB", f2);
  auto r = scl::scl(c, SolveMode::kExact);
  Fatgraph y = extract_fatgraph(r, c);
  auto report = verify_fatgraph(y, c, 2);
  CHECK(report.all_passed());
  CHECK(report.minus_chi_over_2n == r.value);
  CHECK(report.minus_chi_over_2n == 1);
}

TEST_CASE("a boundary letter flip is caught") {
  Alphabet f2(2);
  Chain c = chain_of("abAB", f2);
  auto r = scl::scl(c, SolveMode::kExact);
  Fatgraph y = extract_fatgraph(r, c);
  for (auto& label : y.edge_labels) {
    if (!label.empty()) {
      label[0] = inverse_letter(label[0]);
      break;
    }
  }
  auto report = verify_fatgraph(y, c, 2);
  CHECK_FALSE(report.all_passed());
  bool boundary_ok = report.boundary_reduced && report.boundary_matches;
  CHECK_FALSE(boundary_ok);
}

TEST_CASE("hand-entered extremal fatgraph for a + b + AB + abAB") {
  // Structure with twelve edge units on eight trivalent vertices,
  // bounding three copies of the chain; only the boundary identity is
  // asserted, not the value.
  const char* text = R"(fatgraph v1
multiplicity 3
vertices 8
vertex 0 0 2 4
vertex 1 5 6 8
vertex 2 10 12 1
vertex 3 14 16 11
vertex 4 9 7 18
vertex 5 19 17 15
vertex 6 20 3 21
vertex 7 22 23 13
edges 12
edge 0 0 2 -
edge 1 0 6 b
edge 2 0 1 ab
edge 3 1 4 A
edge 4 1 4 a
edge 5 2 3 BA
edge 6 2 7 A
edge 7 3 5 B
edge 8 3 5 b
edge 9 4 5 -
edge 10 6 6 a
edge 11 7 7 B
)";
  Fatgraph y = fatgraph_from_text(text);
  CHECK(y.num_vertices() == 8);
  CHECK(y.num_edges() == 12);
  CHECK(y.chi() == -4);
  CHECK(y.total_edge_length() == 12);

  Alphabet f2(2);
  Chain c = chain_of("a + b + AB + abAB", f2);
  auto report = verify_fatgraph(y, c, 2);
  CHECK(report.boundary_reduced);
  CHECK(report.boundary_matches);
  CHECK(report.length_identity);
  CHECK(report.trivalent);
}

TEST_CASE("fatgraph text round-trips") {
  Alphabet f2(2);
  Chain c = chain_of("aabAAB", f2);
  auto r = scl::scl(c, SolveMode::kExact);
  Fatgraph y = extract_fatgraph(r, c);
  Fatgraph z = fatgraph_from_text(fatgraph_to_text(y));
  CHECK(z.num_vertices() == y.num_vertices());
  CHECK(z.num_edges() == y.num_edges());
  CHECK(z.multiplicity == y.multiplicity);
  CHECK(verify_fatgraph(z, c, 2).all_passed());
}

TEST_CASE("random feasible points extract to honest surfaces") {
  // Not just optima: any feasible vertex of the gluing polytope must
  // glue into a surface bounding the chain with the right coverage.
  Alphabet f2(2);
  Rng rng(41);
  int done = 0;
  for (std::uint64_t seed = 0; done < 6; ++seed) {
    Word w = random_commutator_word({f2, 6 + 2 * (seed % 2), seed, true});
    Chain c = normalize_chain(parse_chain(cyclic_reduce(w).core.str(), f2));
    if (c.is_zero()) continue;
    PieceSystem sys = enumerate_pieces(c);
    GluingLP lp = build_gluing_lp(sys);
    StandardLp std_lp;
    std_lp.num_rows = lp.num_rows();
    for (const auto& col : lp.cols()) {
      std_lp.cols.push_back(col.entries);
      // Random nonnegative costs give a random feasible vertex.
      std_lp.cost.push_back(make_rational(1 + rng.below_int(16), 16));
    }
    for (const auto& row : lp.rows()) std_lp.rhs.push_back(row.rhs);
    RevisedSimplex<Rational> solver(std_lp);
    auto sol = solver.solve_dual();
    REQUIRE(sol.status == LpStatus::kOptimal);
    SclResult fake;
    fake.exact = true;
    fake.primal = sol.x;
    Fatgraph y = extract_fatgraph(fake, c);
    auto report = verify_fatgraph(y, c, 2);
    CHECK(report.boundary_reduced);
    CHECK(report.boundary_matches);
    CHECK(report.length_identity);
    ++done;
  }
}
