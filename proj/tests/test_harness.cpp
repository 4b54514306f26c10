#include <doctest.h>

#include <algorithm>
#include <set>

#include "medalg/harness.hpp"
#include "medalg/io.hpp"

using namespace medalg;

TEST_CASE("subalgebra enumeration oracle") {
  CHECK(enumerate_subalgebras(make_hypercube(1)).size() == 3);
  // The square is conservative, so every nonempty subset is closed.
  CHECK(enumerate_subalgebras(make_hypercube(2)).size() == 15);
  // Frozen oracle constant for the 3-cube.
  CHECK(enumerate_subalgebras(make_hypercube(3)).size() == 165);
  CHECK_THROWS_AS(enumerate_subalgebras(make_hypercube(4)), Error);
}

TEST_CASE("random closures are deterministic") {
  CorpusSpec spec;
  FiniteMedianAlgebra cube5 = make_hypercube(5);
  FiniteMedianAlgebra a = random_subalgebra(spec, cube5, 3, 17);
  FiniteMedianAlgebra b = random_subalgebra(spec, cube5, 3, 17);
  CHECK(a == b);
  FiniteMedianAlgebra c = random_subalgebra(spec, cube5, 3, 18);
  CHECK(a.size() >= 1);
  CHECK(median_closure(cube5, {0}).size() == 1);
  (void)c;
}

TEST_CASE("default corpus shape") {
  CorpusSpec spec;
  spec.cube5_closures = 10;
  spec.c333_closures = 10;
  spec.tree_count = 5;
  spec.product_count = 5;
  auto corpus = build_default_corpus(spec);
  CHECK(corpus.size() > 180);  // 165 cube3 subalgebras plus the fixed shapes

  std::set<std::string> ids;
  int products = 0;
  for (const auto& inst : corpus) {
    CHECK(ids.insert(inst.id).second);  // unique ids
    CHECK(inst.algebra.size() <= spec.instance_cap);
    if (inst.product_factors) ++products;
  }
  CHECK(products == 5);

  // Same seed, same corpus.
  auto corpus2 = build_default_corpus(spec);
  REQUIRE(corpus2.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(corpus[i].id == corpus2[i].id);
    CHECK(corpus[i].algebra == corpus2[i].algebra);
  }
}

TEST_CASE("registry coverage") {
  // One executable check per in-scope statement; the build fails if the
  // registry drifts.
  std::set<std::string> expected = {
      "axioms",
      "branch-convexity",
      "branch-equivalence",
      "subbasic-stars",
      "gate-composition",
      "ray-preimages",
      "chain-image",
      "median-uniform-continuity",
      "initial-uniformity",
      "chain-solvable-t2",
      "discrete-hausdorff",
      "finite-rank-hausdorff",
      "roller-unique",
      "discreteness-criterion",
      "halfspace-topology-equivalence",
      "fingerprint-injectivity",
      "convex-restriction",
      "product-uniformity",
      "product-t2",
      "automorphism-equivariance",
  };
  std::set<std::string> got;
  for (const auto& c : theorem_registry()) CHECK(got.insert(c.id).second);
  CHECK(got == expected);
}

TEST_CASE("registry runs deterministically on a small corpus") {
  CorpusSpec spec;
  spec.cube5_closures = 4;
  spec.c333_closures = 4;
  spec.tree_count = 3;
  spec.product_count = 3;
  spec.starlet_max = 4;
  auto corpus = build_default_corpus(spec);

  auto r1 = run_registry(corpus, {"axioms", "roller-unique"}, 2);
  auto r2 = run_registry(corpus, {"axioms", "roller-unique"}, 4);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].check_id == r2[i].check_id);
    CHECK(r1[i].instance_id == r2[i].instance_id);
    CHECK(r1[i].pass == r2[i].pass);
  }
  CHECK(all_pass(r1));

  CHECK_THROWS_AS(run_registry(corpus, {"no-such-check"}), Error);
}

TEST_CASE("failures embed a reproducer") {
  // A corrupted table smuggled around the loader: build a legal algebra and
  // lie to the registry via a product-only check mismatch is not possible, so
  // instead check the witness plumbing with a mutated instance.
  FiniteMedianAlgebra c4 = make_chain(4);
  std::vector<int> table;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 4; ++z) table.push_back(c4.med(x, y, z));
  table[1 * 16 + 2 * 4 + 3] = 0;  // med(1,2,3): 2 -> 0
  CHECK_THROWS_AS(from_median_table(4, table), Error);
}

TEST_CASE("worked examples all pass") {
  auto reports = worked_examples();
  CHECK(reports.size() >= 12);
  for (const auto& r : reports) {
    INFO(r.check_id);
    CHECK(r.pass);
  }
}
